/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#ifndef SOCSUM_TESTS_SUPPORT_HPP
#define SOCSUM_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "socsum/color.hpp"
#include "socsum/core.hpp"

namespace testsupport {

// mt19937 sequences are pinned by the standard, so seeds freeze fixtures.
using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double rand_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline socsum::FrameSequence make_seq(int w, int h, socsum::Rational fps = {25, 1},
                                      socsum::PixelFormat fmt = socsum::PixelFormat::ycbcr420) {
  socsum::VideoConfig cfg;
  cfg.width = w;
  cfg.height = h;
  cfg.fps = fps;
  cfg.format = fmt;
  return socsum::FrameSequence(cfg);
}

// One 4:2:0 frame with flat planes, luma jittered by +/- noise.
inline void push_flat(socsum::FrameSequence& seq, int y, int noise = 0, Rng* rng = nullptr,
                      int cb = 128, int cr = 128) {
  const int w = seq.config().width, h = seq.config().height;
  std::vector<std::uint8_t> buf(socsum::frame_bytes(seq.config()));
  for (int i = 0; i < w * h; ++i) {
    int v = y;
    if (noise > 0 && rng) v += rand_int(*rng, -noise, noise);
    buf[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  std::fill(buf.begin() + w * h, buf.begin() + w * h + w * h / 4,
            static_cast<std::uint8_t>(cb));
  std::fill(buf.begin() + w * h + w * h / 4, buf.end(), static_cast<std::uint8_t>(cr));
  seq.push_frame(buf.data(), buf.size());
}

// One planar RGB frame of a single color.
inline void push_rgb(socsum::FrameSequence& seq, int r, int g, int b) {
  const int n = seq.config().width * seq.config().height;
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(3 * n));
  std::fill_n(buf.begin(), n, static_cast<std::uint8_t>(r));
  std::fill_n(buf.begin() + n, n, static_cast<std::uint8_t>(g));
  std::fill_n(buf.begin() + 2 * n, n, static_cast<std::uint8_t>(b));
  seq.push_frame(buf.data(), buf.size());
}

inline socsum::RgbImage solid_rgb(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  socsum::RgbImage img;
  img.width = w;
  img.height = h;
  img.px.resize(static_cast<std::size_t>(3 * w * h));
  for (int i = 0; i < w * h; ++i) {
    img.px[static_cast<std::size_t>(3 * i)] = r;
    img.px[static_cast<std::size_t>(3 * i) + 1] = g;
    img.px[static_cast<std::size_t>(3 * i) + 2] = b;
  }
  return img;
}

inline void paint_rows(socsum::RgbImage& img, int row_begin, int row_end, std::uint8_t r,
                       std::uint8_t g, std::uint8_t b) {
  for (int y = row_begin; y < row_end; ++y)
    for (int x = 0; x < img.width; ++x) {
      std::size_t i = static_cast<std::size_t>(3 * (y * img.width + x));
      img.px[i] = r;
      img.px[i + 1] = g;
      img.px[i + 2] = b;
    }
}

// ---- independent oracles -------------------------------------------------

inline double oracle_chi_square(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = a[i] + b[i];
    if (s > 0.0) acc += (a[i] - b[i]) * (a[i] - b[i]) / s;
  }
  return 0.5 * acc;
}

// Direct DFT bin power over one 100 ms audio frame.
inline double oracle_dft_power(const std::int16_t* x, int n, int k) {
  double re = 0.0, im = 0.0;
  for (int i = 0; i < n; ++i) {
    double ph = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(i) / n;
    re += static_cast<double>(x[i]) * std::cos(ph);
    im += static_cast<double>(x[i]) * std::sin(ph);
  }
  return re * re + im * im;
}

// Keyframe recursion restated as an explicit work stack, left child first,
// candidate cap checked when a segment is taken up.
inline std::vector<std::int64_t> oracle_keyframes(const std::vector<double>& activity,
                                                  std::int64_t start, std::int64_t end,
                                                  double alpha, int cap) {
  std::vector<std::int64_t> out;
  std::vector<std::pair<std::int64_t, std::int64_t>> stack;
  std::int64_t lo = start + 1, hi = end;
  if (lo >= hi) return {start};
  stack.emplace_back(lo, hi);
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (static_cast<int>(out.size()) >= cap) continue;
    if (a >= b) continue;
    std::vector<double> sorted(activity.begin() + a, activity.begin() + b);
    std::sort(sorted.begin(), sorted.end());
    std::size_t m = sorted.size();
    double med = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    std::int64_t arg_max = a, arg_min = a;
    for (std::int64_t i = a; i < b; ++i) {
      if (activity[static_cast<std::size_t>(i)] >
          activity[static_cast<std::size_t>(arg_max)])
        arg_max = i;
      if (activity[static_cast<std::size_t>(i)] <
          activity[static_cast<std::size_t>(arg_min)])
        arg_min = i;
    }
    if (b - a >= 2 && alpha * med < activity[static_cast<std::size_t>(arg_max)]) {
      stack.emplace_back(arg_max + 1, b);  // right runs after left
      stack.emplace_back(a, arg_max);
    } else {
      out.push_back(arg_min);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Inverse of the orthonormal 8x8 DCT-II.
inline std::array<double, 64> oracle_idct_8x8(const std::array<double, 64>& coeff) {
  auto basis = [](int k, int n) {
    double c = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
    return c * std::cos((2.0 * n + 1.0) * k * M_PI / 16.0);
  };
  std::array<double, 64> out{};
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v)
          acc += coeff[static_cast<std::size_t>(u * 8 + v)] * basis(u, y) * basis(v, x);
      out[static_cast<std::size_t>(y * 8 + x)] = acc;
    }
  return out;
}

// ---- filesystem helpers ----------------------------------------------------

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("socsum_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string file(const std::string& name) const { return (path / name).string(); }
};

// Minimal RIFF/WAVE writer for loader tests.
inline std::vector<std::uint8_t> wav_bytes(const std::vector<std::int16_t>& samples,
                                           int channels = 1, int rate = 48000,
                                           int bits = 16, int format_tag = 1) {
  auto u16 = [](std::vector<std::uint8_t>& v, unsigned x) {
    v.push_back(static_cast<std::uint8_t>(x & 0xff));
    v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xff));
  };
  auto u32 = [](std::vector<std::uint8_t>& v, unsigned long x) {
    for (int i = 0; i < 4; ++i) v.push_back(static_cast<std::uint8_t>((x >> (8 * i)) & 0xff));
  };
  std::vector<std::uint8_t> v;
  unsigned long data_len = samples.size() * 2;
  v.insert(v.end(), {'R', 'I', 'F', 'F'});
  u32(v, 36 + data_len);
  v.insert(v.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  u32(v, 16);
  u16(v, static_cast<unsigned>(format_tag));
  u16(v, static_cast<unsigned>(channels));
  u32(v, static_cast<unsigned long>(rate));
  u32(v, static_cast<unsigned long>(rate * channels * bits / 8));
  u16(v, static_cast<unsigned>(channels * bits / 8));
  u16(v, static_cast<unsigned>(bits));
  v.insert(v.end(), {'d', 'a', 't', 'a'});
  u32(v, data_len);
  for (std::int16_t s : samples) {
    v.push_back(static_cast<std::uint8_t>(static_cast<std::uint16_t>(s) & 0xff));
    v.push_back(static_cast<std::uint8_t>((static_cast<std::uint16_t>(s) >> 8) & 0xff));
  }
  return v;
}

}  // namespace testsupport

#endif  // SOCSUM_TESTS_SUPPORT_HPP
