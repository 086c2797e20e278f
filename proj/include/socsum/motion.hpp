/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include "socsum/color.hpp"
#include "socsum/core.hpp"
#include "socsum/parallel.hpp"

namespace socsum {

struct MotionVector {
  double dx = 0.0;
  double dy = 0.0;

  double magnitude() const { return std::sqrt(dx * dx + dy * dy); }
};

// Forward motion field between a frame pair: grid of one vector per block
// of the later frame, meaning later[p] ~ earlier[p - v]. frame_index is the
// later frame, which is also the frame the field's activity is charged to.
struct MotionField {
  std::int64_t frame_index = 0;
  int block_size = 16;
  int grid_width = 0;
  int grid_height = 0;
  std::vector<MotionVector> v;

  const MotionVector& at(int r, int c) const { return v[static_cast<std::size_t>(r) * grid_width + c]; }
  MotionVector& at(int r, int c) { return v[static_cast<std::size_t>(r) * grid_width + c]; }
};

struct MotionParams {
  int block_size = 16;
  int search_radius = 4;
};

namespace detail {

inline int clamp_coord(int v, int hi) {
  if (v < 0) return 0;
  if (v >= hi) return hi - 1;
  return v;
}

// SAD over one block row pair; exact integer sum, any width.
inline std::int64_t row_sad(const std::uint8_t* a, const std::uint8_t* b, int n) {
  std::int64_t acc = 0;
  int i = 0;
#if defined(__SSE2__)
  __m128i sums = _mm_setzero_si128();
  for (; i + 16 <= n; i += 16) {
    __m128i va = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i));
    __m128i vb = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i));
    sums = _mm_add_epi64(sums, _mm_sad_epu8(va, vb));
  }
  acc = _mm_cvtsi128_si64(sums) + _mm_cvtsi128_si64(_mm_unpackhi_epi64(sums, sums));
#endif
  for (; i < n; ++i) acc += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  return acc;
}

}  // namespace detail

// Exhaustive block matching. Blocks partition the later frame (partial
// blocks at the right/bottom edges); each block scans displacements in
// [-radius, radius]^2 minimizing SAD against the earlier frame with
// border-replicated reads. Ties break on smallest |dx|+|dy|, then dy,
// then dx; candidates are scanned in exactly that order so the first
// strict improvement wins.
inline MotionField estimate_motion(const PlaneView& earlier, const PlaneView& later,
                                   int block_size, int search_radius) {
  if (earlier.width != later.width || earlier.height != later.height)
    throw analysis_error("motion frames differ in size");
  if (block_size < 1 || search_radius < 0) throw analysis_error("bad motion parameters");
  int w = later.width, h = later.height;

  MotionField field;
  field.block_size = block_size;
  field.grid_width = (w + block_size - 1) / block_size;
  field.grid_height = (h + block_size - 1) / block_size;
  field.v.resize(static_cast<std::size_t>(field.grid_width) * field.grid_height);

  // Candidates ordered by (|dx|+|dy|, dy, dx): the tie-break order.
  std::vector<std::pair<int, int>> cand;  // (dy, dx)
  for (int dy = -search_radius; dy <= search_radius; ++dy)
    for (int dx = -search_radius; dx <= search_radius; ++dx) cand.emplace_back(dy, dx);
  std::stable_sort(cand.begin(), cand.end(), [](auto a, auto b) {
    int la = std::abs(a.first) + std::abs(a.second);
    int lb = std::abs(b.first) + std::abs(b.second);
    if (la != lb) return la < lb;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });

  for (int by = 0; by < field.grid_height; ++by) {
    int y0 = by * block_size;
    int y1 = std::min(h, y0 + block_size);
    for (int bx = 0; bx < field.grid_width; ++bx) {
      int x0 = bx * block_size;
      int x1 = std::min(w, x0 + block_size);
      bool interior = y0 - search_radius >= 0 && y1 + search_radius <= h &&
                      x0 - search_radius >= 0 && x1 + search_radius <= w;
      std::int64_t best = -1;
      int best_dy = 0, best_dx = 0;
      for (auto [dy, dx] : cand) {
        std::int64_t sad = 0;
        if (interior) {
          for (int y = y0; y < y1; ++y) {
            sad += detail::row_sad(later.row(y) + x0, earlier.row(y - dy) + (x0 - dx), x1 - x0);
            if (best >= 0 && sad >= best) break;  // cannot beat an earlier candidate
          }
        } else {
          for (int y = y0; y < y1 && (best < 0 || sad < best); ++y) {
            const std::uint8_t* lrow = later.row(y);
            const std::uint8_t* erow = earlier.row(detail::clamp_coord(y - dy, h));
            for (int x = x0; x < x1; ++x)
              sad += std::abs(static_cast<int>(lrow[x]) -
                              static_cast<int>(erow[detail::clamp_coord(x - dx, w)]));
          }
        }
        if (best < 0 || sad < best) {
          best = sad;
          best_dy = dy;
          best_dx = dx;
        }
      }
      field.at(by, bx) = {static_cast<double>(best_dx), static_cast<double>(best_dy)};
    }
  }
  return field;
}

// Population standard deviation of the vector magnitudes. A uniform field
// (pure pan or static scene) scores 0; mixed motion scores high.
inline double motion_activity(const MotionField& field) {
  if (field.v.empty()) throw analysis_error("empty motion field");
  double mean = 0.0;
  for (const auto& mv : field.v) mean += mv.magnitude();
  mean /= static_cast<double>(field.v.size());
  double acc = 0.0;
  for (const auto& mv : field.v) {
    double d = mv.magnitude() - mean;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(field.v.size()));
}

// Component-wise 3x3 median filter; border cells use the neighbours that
// exist. Median of an even count is the lower middle, which keeps filtered
// components on values present in the input.
inline MotionField median_filter_3x3(const MotionField& field) {
  MotionField out = field;
  double xs[9], ys[9];
  for (int r = 0; r < field.grid_height; ++r) {
    for (int c = 0; c < field.grid_width; ++c) {
      int n = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= field.grid_height || cc < 0 || cc >= field.grid_width) continue;
          xs[n] = field.at(rr, cc).dx;
          ys[n] = field.at(rr, cc).dy;
          ++n;
        }
      }
      std::sort(xs, xs + n);
      std::sort(ys, ys + n);
      out.at(r, c) = {xs[(n - 1) / 2], ys[(n - 1) / 2]};
    }
  }
  return out;
}

// Fields for every consecutive pair; entry i maps frames i -> i+1 and
// carries frame_index i+1.
inline std::vector<MotionField> sequence_motion_fields(const LumaSequence& seq,
                                                       const MotionParams& params,
                                                       int threads = 1) {
  std::int64_t pairs = seq.frame_count() - 1;
  if (pairs < 0) pairs = 0;
  std::vector<MotionField> fields(static_cast<std::size_t>(pairs));
  parallel_for(pairs, threads, [&](std::int64_t i) {
    MotionField f = estimate_motion(seq.frame(i), seq.frame(i + 1), params.block_size,
                                    params.search_radius);
    f.frame_index = i + 1;
    fields[static_cast<std::size_t>(i)] = std::move(f);
  });
  return fields;
}

// Per-frame activity; index f holds the activity of the field ending at
// frame f. Index 0 has no incoming field and reads 0.
inline std::vector<double> activity_series(const std::vector<MotionField>& fields,
                                           std::int64_t frame_count) {
  std::vector<double> act(static_cast<std::size_t>(frame_count), 0.0);
  for (const MotionField& f : fields) {
    if (f.frame_index <= 0 || f.frame_index >= frame_count)
      throw analysis_error("motion field frame index out of range");
    act[static_cast<std::size_t>(f.frame_index)] = motion_activity(f);
  }
  return act;
}

}  // namespace socsum
