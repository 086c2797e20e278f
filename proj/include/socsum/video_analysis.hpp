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

#include "socsum/color.hpp"
#include "socsum/core.hpp"
#include "socsum/motion.hpp"

namespace socsum {

// ---------------------------------------------------------------------------
// Dominant colors
// ---------------------------------------------------------------------------

struct DominantColor {
  double r = 0.0, g = 0.0, b = 0.0;
  double fraction = 0.0;  // of image pixels
};

// Deterministic k-means over RGB pixels: seeds at fixed pixel strides,
// Lloyd iterations on a fixed-stride subsample, final assignment over the
// full image. Ties assign to the lowest cluster index; empty clusters keep
// their centroid. Clusters under 1% of the image are dropped; the rest
// come back sorted by fraction (descending, stable).
inline std::vector<DominantColor> dominant_colors(const RgbImage& img, int k = 8,
                                                  int iterations = 10) {
  if (img.pixels() == 0) throw analysis_error("empty image");
  if (k < 1) throw analysis_error("cluster count must be positive");
  std::size_t n = img.pixels();
  if (static_cast<std::size_t>(k) > n) k = static_cast<int>(n);

  std::vector<std::array<double, 3>> centroid(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    const std::uint8_t* p = img.px.data() + 3 * (static_cast<std::size_t>(c) * n / static_cast<std::size_t>(k));
    centroid[static_cast<std::size_t>(c)] = {static_cast<double>(p[0]), static_cast<double>(p[1]),
                                             static_cast<double>(p[2])};
  }

  std::size_t stride = (n + 4095) / 4096;  // at most ~4096 training pixels
  auto nearest = [&](const std::uint8_t* p) {
    int best = 0;
    double best_d = 0.0;
    for (int c = 0; c < k; ++c) {
      double dr = p[0] - centroid[static_cast<std::size_t>(c)][0];
      double dg = p[1] - centroid[static_cast<std::size_t>(c)][1];
      double db = p[2] - centroid[static_cast<std::size_t>(c)][2];
      double d = dr * dr + dg * dg + db * db;
      if (c == 0 || d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  for (int it = 0; it < iterations; ++it) {
    std::vector<std::array<double, 3>> sum(static_cast<std::size_t>(k), {0.0, 0.0, 0.0});
    std::vector<std::int64_t> cnt(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; i += stride) {
      const std::uint8_t* p = img.px.data() + 3 * i;
      int c = nearest(p);
      sum[static_cast<std::size_t>(c)][0] += p[0];
      sum[static_cast<std::size_t>(c)][1] += p[1];
      sum[static_cast<std::size_t>(c)][2] += p[2];
      ++cnt[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (cnt[static_cast<std::size_t>(c)] == 0) continue;
      double m = static_cast<double>(cnt[static_cast<std::size_t>(c)]);
      centroid[static_cast<std::size_t>(c)] = {sum[static_cast<std::size_t>(c)][0] / m,
                                               sum[static_cast<std::size_t>(c)][1] / m,
                                               sum[static_cast<std::size_t>(c)][2] / m};
    }
  }

  std::vector<std::int64_t> members(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < n; ++i) ++members[static_cast<std::size_t>(nearest(img.px.data() + 3 * i))];

  std::vector<DominantColor> out;
  for (int c = 0; c < k; ++c) {
    double frac = static_cast<double>(members[static_cast<std::size_t>(c)]) / static_cast<double>(n);
    if (frac < 0.01) continue;
    out.push_back({centroid[static_cast<std::size_t>(c)][0], centroid[static_cast<std::size_t>(c)][1],
                   centroid[static_cast<std::size_t>(c)][2], frac});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DominantColor& a, const DominantColor& b) { return a.fraction > b.fraction; });
  return out;
}

// ---------------------------------------------------------------------------
// Color layout (8x8 DCT of the pooled image, per YCbCr channel)
// ---------------------------------------------------------------------------

struct ColorLayout {
  std::array<double, 64> y{}, cb{}, cr{};  // row-major 8x8 coefficients
};

namespace detail {

// Orthonormal 2-D DCT-II of one 8x8 tile; out[0] is 8 * tile mean.
inline std::array<double, 64> dct_8x8(const std::array<double, 64>& tile) {
  constexpr double pi = 3.14159265358979323846264338327950288;
  std::array<double, 64> out{};
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
          acc += tile[static_cast<std::size_t>(r * 8 + c)] *
                 std::cos((2 * r + 1) * u * pi / 16.0) * std::cos((2 * c + 1) * v * pi / 16.0);
      double au = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      double av = v == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      out[static_cast<std::size_t>(u * 8 + v)] = au * av * acc;
    }
  }
  return out;
}

// Average-pools the image to 8x8 per channel, in YCbCr.
inline std::array<std::array<double, 64>, 3> pool_8x8_ycbcr(const RgbImage& img) {
  std::array<std::array<double, 64>, 3> pooled{};
  std::array<std::array<double, 64>, 3> cnt{};
  for (int r = 0; r < img.height; ++r) {
    int pr = r * 8 / img.height;
    for (int c = 0; c < img.width; ++c) {
      int pc = c * 8 / img.width;
      const std::uint8_t* p = img.pixel(r, c);
      auto ycc = rgb_to_ycbcr(p[0], p[1], p[2]);
      std::size_t idx = static_cast<std::size_t>(pr * 8 + pc);
      for (int ch = 0; ch < 3; ++ch) {
        pooled[static_cast<std::size_t>(ch)][idx] += ycc[static_cast<std::size_t>(ch)];
        cnt[static_cast<std::size_t>(ch)][idx] += 1.0;
      }
    }
  }
  for (int ch = 0; ch < 3; ++ch)
    for (std::size_t i = 0; i < 64; ++i)
      if (cnt[static_cast<std::size_t>(ch)][i] > 0.0) pooled[static_cast<std::size_t>(ch)][i] /= cnt[static_cast<std::size_t>(ch)][i];
  return pooled;
}

}  // namespace detail

// Pooling to 8x8 then orthonormal DCT per channel. Images smaller than
// 8x8 in either dimension are rejected (some pool cells would be empty).
inline ColorLayout color_layout(const RgbImage& img) {
  if (img.width < 8 || img.height < 8) throw analysis_error("image too small for color layout");
  auto pooled = detail::pool_8x8_ycbcr(img);
  ColorLayout out;
  out.y = detail::dct_8x8(pooled[0]);
  out.cb = detail::dct_8x8(pooled[1]);
  out.cr = detail::dct_8x8(pooled[2]);
  return out;
}

// First 9 AC coefficients in zig-zag order of one 8x8 coefficient block.
inline std::array<double, 9> first_ac_zigzag(const std::array<double, 64>& coeff) {
  // (row, col) visits of the standard zig-zag, skipping DC.
  static constexpr int kIdx[9] = {0 * 8 + 1, 1 * 8 + 0, 2 * 8 + 0, 1 * 8 + 1, 0 * 8 + 2,
                                  0 * 8 + 3, 1 * 8 + 2, 2 * 8 + 1, 3 * 8 + 0};
  std::array<double, 9> out;
  for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(i)] = coeff[static_cast<std::size_t>(kIdx[i])];
  return out;
}

inline double population_variance(const double* v, std::size_t n) {
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += v[i];
  mean /= static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = v[i] - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Long shot (wide field view)
// ---------------------------------------------------------------------------

struct LongShotParams {
  double green_fraction = 0.45;  // dominant green must cover at least this
  double chroma_variance_max = 25.0;  // of the first 9 zig-zag AC DCT coefficients
};

struct LongShotDecision {
  bool long_shot = false;
  bool green_dominant = false;
  double cb_variance = 0.0;
  double cr_variance = 0.0;
};

// A keyframe shows the full field when, with the top third (stands,
// scoreboard) cropped away, the dominant color is green with enough
// coverage and both chroma layouts are nearly flat.
inline LongShotDecision classify_long_shot(const RgbImage& keyframe, const LongShotParams& params) {
  LongShotDecision out;
  int crop_top = keyframe.height / 3;
  RgbImage field = crop_rows(keyframe, crop_top, keyframe.height);

  std::vector<DominantColor> colors = dominant_colors(field);
  if (!colors.empty()) {
    const DominantColor& top = colors.front();
    out.green_dominant = top.g > top.r && top.g > top.b && top.fraction >= params.green_fraction;
  }

  ColorLayout layout = color_layout(field);
  auto cb = first_ac_zigzag(layout.cb);
  auto cr = first_ac_zigzag(layout.cr);
  out.cb_variance = population_variance(cb.data(), cb.size());
  out.cr_variance = population_variance(cr.data(), cr.size());

  out.long_shot = out.green_dominant && out.cb_variance < params.chroma_variance_max &&
                  out.cr_variance < params.chroma_variance_max;
  return out;
}

// ---------------------------------------------------------------------------
// Skin fraction and the persons flag
// ---------------------------------------------------------------------------

// RGB rule AND HSV rule; both are the usual broad-daylight skin gates.
inline bool is_skin_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  int mx = std::max({static_cast<int>(r), static_cast<int>(g), static_cast<int>(b)});
  int mn = std::min({static_cast<int>(r), static_cast<int>(g), static_cast<int>(b)});
  bool rgb_ok = r > 95 && g > 40 && b > 20 && mx - mn > 15 && r > g && r > b;
  if (!rgb_ok) return false;
  Hsv hsv = rgb_to_hsv(r, g, b);
  return hsv.h >= 0.0 && hsv.h <= 50.0 && hsv.s >= 0.1 && hsv.s <= 0.68;
}

inline double skin_fraction(const RgbImage& img) {
  if (img.pixels() == 0) throw analysis_error("empty image");
  std::size_t hits = 0;
  const std::uint8_t* p = img.px.data();
  for (std::size_t i = 0; i < img.pixels(); ++i, p += 3)
    if (is_skin_pixel(p[0], p[1], p[2])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(img.pixels());
}

struct PersonsParams {
  double skin_fraction_min = 0.08;
};

// A shot shows people close up when any keyframe clears the skin gate or
// an external detector marked the shot in the sidecar.
inline bool persons_flag(const std::vector<double>& keyframe_skin, bool sidecar_mark,
                         const PersonsParams& params) {
  if (sidecar_mark) return true;
  for (double s : keyframe_skin)
    if (s >= params.skin_fraction_min) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Zoom detection on motion fields
// ---------------------------------------------------------------------------

struct ZoomParams {
  double focal_dispersion_max = 2.0;  // RMS distance of intersections, grid units
  int min_zoom_frames = 5;            // consecutive zoom frames per shot
  int min_nonzero_regions = 6;        // of the 9 golden-section regions
};

// Grid line positions splitting n cells 3:5:3 (golden sections), rounded
// to the nearest grid line.
inline std::array<int, 2> golden_splits(int n) {
  return {static_cast<int>(std::llround(n * 3.0 / 11.0)),
          static_cast<int>(std::llround(n * 8.0 / 11.0))};
}

struct ZoomFrameDecision {
  bool zoom = false;
  int nonzero_regions = 0;
  double dispersion = 0.0;  // RMS distance of pairwise intersections to their centroid
  bool has_intersections = false;
};

namespace detail {

struct RegionRay {
  double cx, cy;  // region center, grid units
  double vx, vy;  // mean vector
};

// Intersection of the two rays' carrier lines, if they are not (near)
// parallel. Angle floor of 2 degrees keeps noise-parallel lines out.
inline bool line_intersection(const RegionRay& a, const RegionRay& b, double& ix, double& iy) {
  double cross = a.vx * b.vy - a.vy * b.vx;
  double na = std::sqrt(a.vx * a.vx + a.vy * a.vy);
  double nb = std::sqrt(b.vx * b.vx + b.vy * b.vy);
  constexpr double kMinSin = 0.03489949670250097;  // sin(2 deg)
  if (na <= 0.0 || nb <= 0.0 || std::abs(cross) < kMinSin * na * nb) return false;
  double t = ((b.cx - a.cx) * b.vy - (b.cy - a.cy) * b.vx) / cross;
  ix = a.cx + t * a.vx;
  iy = a.cy + t * a.vy;
  return true;
}

}  // namespace detail

// Zoom test for one motion field: median-filter, split the grid 3:5:3 both
// ways, average each region; a zoom shows most regions moving along lines
// that meet near one focal point (the focus of expansion). Pans give
// parallel lines (no intersections), chaotic fields give scattered ones.
inline ZoomFrameDecision classify_zoom_frame(const MotionField& field, const ZoomParams& params) {
  ZoomFrameDecision out;
  MotionField filt = median_filter_3x3(field);

  auto [cx0, cx1] = golden_splits(filt.grid_width);
  auto [cy0, cy1] = golden_splits(filt.grid_height);
  int xedges[4] = {0, cx0, cx1, filt.grid_width};
  int yedges[4] = {0, cy0, cy1, filt.grid_height};

  std::vector<detail::RegionRay> rays;
  for (int ry = 0; ry < 3; ++ry) {
    for (int rx = 0; rx < 3; ++rx) {
      int x0 = xedges[rx], x1 = xedges[rx + 1];
      int y0 = yedges[ry], y1 = yedges[ry + 1];
      if (x0 >= x1 || y0 >= y1) continue;  // degenerate region on tiny grids
      double sx = 0.0, sy = 0.0, scx = 0.0, scy = 0.0;
      int cnt = 0;
      for (int r = y0; r < y1; ++r) {
        for (int c = x0; c < x1; ++c) {
          sx += filt.at(r, c).dx;
          sy += filt.at(r, c).dy;
          scx += c + 0.5;
          scy += r + 0.5;
          ++cnt;
        }
      }
      detail::RegionRay ray{scx / cnt, scy / cnt, sx / cnt, sy / cnt};
      if (std::sqrt(ray.vx * ray.vx + ray.vy * ray.vy) > 1e-9) {
        ++out.nonzero_regions;
        rays.push_back(ray);
      }
    }
  }
  if (out.nonzero_regions < params.min_nonzero_regions) return out;

  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      double ix, iy;
      if (detail::line_intersection(rays[i], rays[j], ix, iy)) pts.emplace_back(ix, iy);
    }
  }
  if (pts.empty()) return out;
  out.has_intersections = true;

  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double acc = 0.0;
  for (auto [x, y] : pts) acc += (x - mx) * (x - mx) + (y - my) * (y - my);
  out.dispersion = std::sqrt(acc / static_cast<double>(pts.size()));

  out.zoom = out.dispersion < params.focal_dispersion_max;
  return out;
}

// A shot zooms when at least min_zoom_frames CONSECUTIVE fields classify
// as zoom frames. `fields` must be the shot's fields in display order.
inline bool detect_zoom(const std::vector<const MotionField*>& fields, const ZoomParams& params) {
  int run = 0;
  for (const MotionField* f : fields) {
    if (classify_zoom_frame(*f, params).zoom) {
      if (++run >= params.min_zoom_frames) return true;
    } else {
      run = 0;
    }
  }
  return false;
}

}  // namespace socsum
