/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "socsum/color.hpp"
#include "socsum/core.hpp"

namespace socsum {

// Counts of luma values in `bins` equal-width buckets. 256 must divide
// evenly so bucket edges land on integer pixel values.
inline std::vector<std::int64_t> luma_histogram(const PlaneView& luma, int bins) {
  if (bins <= 0 || 256 % bins != 0) throw analysis_error("bin count must divide 256");
  int shift = 0;
  for (int b = bins; b < 256; b <<= 1) ++shift;  // divisors of 256 are powers of two
  std::vector<std::int64_t> hist(bins, 0);
  for (int r = 0; r < luma.height; ++r) {
    const std::uint8_t* row = luma.row(r);
    for (int c = 0; c < luma.width; ++c) ++hist[row[c] >> shift];
  }
  return hist;
}

// Scales counts to sum 1. All-zero input (empty image) is rejected.
inline std::vector<double> normalize_histogram(const std::vector<std::int64_t>& hist) {
  std::int64_t total = 0;
  for (auto v : hist) total += v;
  if (total <= 0) throw analysis_error("cannot normalize empty histogram");
  std::vector<double> out(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i) out[i] = static_cast<double>(hist[i]) / static_cast<double>(total);
  return out;
}

// Symmetric chi-square distance between two normalized histograms:
//   d = 1/2 * sum (a-b)^2 / (a+b),   terms with a+b == 0 contribute 0.
// Range [0,1] for distributions; 1 iff supports are disjoint.
inline double chi_square_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw analysis_error("histogram sizes differ");
  if (a.empty()) throw analysis_error("empty histograms");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = a[i] + b[i];
    if (s > 0.0) {
      double d = a[i] - b[i];
      acc += d * d / s;
    }
  }
  return 0.5 * acc;
}

// 16x4x4 HSV histogram (hue x saturation x value), normalized. Used for
// keyframe near-duplicate tests.
inline std::vector<double> hsv_histogram(const RgbImage& img, int hue_bins = 16, int sat_bins = 4,
                                         int val_bins = 4) {
  if (hue_bins <= 0 || sat_bins <= 0 || val_bins <= 0) throw analysis_error("bad HSV bin counts");
  std::vector<std::int64_t> hist(static_cast<std::size_t>(hue_bins) * sat_bins * val_bins, 0);
  const std::uint8_t* p = img.px.data();
  for (std::size_t i = 0; i < img.pixels(); ++i, p += 3) {
    Hsv hsv = rgb_to_hsv(p[0], p[1], p[2]);
    int hb = static_cast<int>(hsv.h / 360.0 * hue_bins);
    if (hb >= hue_bins) hb = hue_bins - 1;
    int sb = static_cast<int>(hsv.s * sat_bins);
    if (sb >= sat_bins) sb = sat_bins - 1;
    int vb = static_cast<int>(hsv.v * val_bins);
    if (vb >= val_bins) vb = val_bins - 1;
    ++hist[(static_cast<std::size_t>(hb) * sat_bins + sb) * val_bins + vb];
  }
  return normalize_histogram(hist);
}

}  // namespace socsum
