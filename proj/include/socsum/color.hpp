/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "socsum/core.hpp"

namespace socsum {

// Full-range BT.601 both ways. All stored pixels are 8-bit; intermediate
// math in double, rounded half away from zero, clamped.

inline std::uint8_t clamp_u8(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

inline std::uint8_t rgb_to_y(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return clamp_u8(0.299 * r + 0.587 * g + 0.114 * b);
}

inline std::array<double, 3> rgb_to_ycbcr(double r, double g, double b) {
  return {0.299 * r + 0.587 * g + 0.114 * b,
          -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0,
          0.5 * r - 0.418688 * g - 0.081312 * b + 128.0};
}

inline std::array<std::uint8_t, 3> ycbcr_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr) {
  double yd = y, cbd = cb - 128.0, crd = cr - 128.0;
  return {clamp_u8(yd + 1.402 * crd),
          clamp_u8(yd - 0.344136 * cbd - 0.714136 * crd),
          clamp_u8(yd + 1.772 * cbd)};
}

// Hue in degrees [0,360), saturation and value in [0,1]. Grey pixels
// (max == min) take hue 0 and saturation 0.
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

inline Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
  double mx = std::max({r, g, b}), mn = std::min({r, g, b});
  double d = mx - mn;
  Hsv out;
  out.v = mx;
  if (mx > 0.0) out.s = d / mx;
  if (d > 0.0) {
    double h;
    if (mx == r)
      h = 60.0 * std::fmod((g - b) / d, 6.0);
    else if (mx == g)
      h = 60.0 * ((b - r) / d + 2.0);
    else
      h = 60.0 * ((r - g) / d + 4.0);
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
  }
  return out;
}

// Interleaved 8-bit RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> px;  // r,g,b per pixel, row major

  const std::uint8_t* pixel(int r, int c) const {
    return px.data() + 3 * (static_cast<std::size_t>(r) * width + c);
  }
  std::uint8_t* pixel(int r, int c) {
    return px.data() + 3 * (static_cast<std::size_t>(r) * width + c);
  }
  std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
};

// Decodes one frame to interleaved RGB. 4:2:0 chroma is upsampled by
// nearest neighbour; descriptor math downstream does not warrant more.
inline RgbImage frame_to_rgb(const Frame& f) {
  RgbImage img;
  img.width = f.plane[0].width;
  img.height = f.plane[0].height;
  img.px.resize(img.pixels() * 3);
  if (f.format == PixelFormat::rgb24p) {
    for (int r = 0; r < img.height; ++r) {
      const std::uint8_t* pr = f.plane[0].row(r);
      const std::uint8_t* pg = f.plane[1].row(r);
      const std::uint8_t* pb = f.plane[2].row(r);
      for (int c = 0; c < img.width; ++c) {
        std::uint8_t* out = img.pixel(r, c);
        out[0] = pr[c];
        out[1] = pg[c];
        out[2] = pb[c];
      }
    }
    return img;
  }
  for (int r = 0; r < img.height; ++r) {
    const std::uint8_t* py = f.plane[0].row(r);
    const std::uint8_t* pcb = f.plane[1].row(r / 2);
    const std::uint8_t* pcr = f.plane[2].row(r / 2);
    for (int c = 0; c < img.width; ++c) {
      auto rgb = ycbcr_to_rgb(py[c], pcb[c / 2], pcr[c / 2]);
      std::uint8_t* out = img.pixel(r, c);
      out[0] = rgb[0];
      out[1] = rgb[1];
      out[2] = rgb[2];
    }
  }
  return img;
}

// Rows [row_begin, row_end) of img.
inline RgbImage crop_rows(const RgbImage& img, int row_begin, int row_end) {
  if (row_begin < 0 || row_end > img.height || row_begin >= row_end)
    throw analysis_error("bad crop bounds");
  RgbImage out;
  out.width = img.width;
  out.height = row_end - row_begin;
  out.px.assign(img.px.begin() + 3 * static_cast<std::size_t>(row_begin) * img.width,
                img.px.begin() + 3 * static_cast<std::size_t>(row_end) * img.width);
  return out;
}

// Luma access for all analysis that runs on brightness alone. For 4:2:0
// input this is a zero-copy view of the Y planes; planar RGB is converted
// once up front.
class LumaSequence {
 public:
  LumaSequence() = default;

  explicit LumaSequence(const FrameSequence& seq) : seq_(&seq) {
    const VideoConfig& cfg = seq.config();
    width_ = cfg.width;
    height_ = cfg.height;
    count_ = seq.frame_count();
    if (cfg.format == PixelFormat::rgb24p) {
      std::size_t wh = static_cast<std::size_t>(width_) * height_;
      backing_.resize(wh * static_cast<std::size_t>(count_));
      for (std::int64_t i = 0; i < count_; ++i) {
        Frame f = seq.frame(i);
        std::uint8_t* dst = backing_.data() + wh * static_cast<std::size_t>(i);
        for (int r = 0; r < height_; ++r) {
          const std::uint8_t* pr = f.plane[0].row(r);
          const std::uint8_t* pg = f.plane[1].row(r);
          const std::uint8_t* pb = f.plane[2].row(r);
          for (int c = 0; c < width_; ++c) dst[static_cast<std::size_t>(r) * width_ + c] = rgb_to_y(pr[c], pg[c], pb[c]);
        }
      }
    }
  }

  std::int64_t frame_count() const { return count_; }
  int width() const { return width_; }
  int height() const { return height_; }

  PlaneView frame(std::int64_t i) const {
    if (i < 0 || i >= count_) throw analysis_error("luma frame index out of range");
    if (!backing_.empty()) {
      std::size_t wh = static_cast<std::size_t>(width_) * height_;
      return {backing_.data() + wh * static_cast<std::size_t>(i), width_, height_};
    }
    return seq_->frame(i).plane[0];
  }

 private:
  const FrameSequence* seq_ = nullptr;
  std::vector<std::uint8_t> backing_;
  std::int64_t count_ = 0;
  int width_ = 0;
  int height_ = 0;
};

}  // namespace socsum
