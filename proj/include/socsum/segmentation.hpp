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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "socsum/color.hpp"
#include "socsum/core.hpp"
#include "socsum/histogram.hpp"
#include "socsum/parallel.hpp"

namespace socsum {

struct SegmentationParams {
  int bins = 64;               // luma histogram buckets
  double cut_threshold = 0.25; // chi-square distance that declares a hard cut
  int min_shot_frames = 12;    // no two boundaries closer than this
  int rank_window = 10;        // histograms per rank-trace window
  double rank_epsilon = 0.1;   // singular value counts while > eps * largest
  int min_dissolve_frames = 12;// shortest rank excursion reported as dissolve
};

// Broadcast phase schedule. Dissolves are editorial transitions; in-game
// footage only hard-cuts, so dissolve detection is restricted to the
// out-of-game spans listed here. Spans are half-open frame ranges.
class PhaseSchedule {
 public:
  PhaseSchedule() = default;  // everything in-game

  static PhaseSchedule out_of_game_frames(std::vector<std::pair<std::int64_t, std::int64_t>> spans) {
    PhaseSchedule p;
    p.spans_ = std::move(spans);
    return p;
  }

  static PhaseSchedule out_of_game_seconds(const std::vector<std::pair<double, double>>& spans,
                                           Rational fps) {
    std::vector<std::pair<std::int64_t, std::int64_t>> fr;
    fr.reserve(spans.size());
    for (auto [a, b] : spans)
      fr.emplace_back(static_cast<std::int64_t>(std::llround(a * fps.to_double())),
                      static_cast<std::int64_t>(std::llround(b * fps.to_double())));
    return out_of_game_frames(std::move(fr));
  }

  bool out_of_game(std::int64_t frame) const {
    for (auto [a, b] : spans_)
      if (frame >= a && frame < b) return true;
    return false;
  }

  bool empty() const { return spans_.empty(); }

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> spans_;
};

// Normalized luma histogram per frame.
inline std::vector<std::vector<double>> sequence_histograms(const LumaSequence& seq, int bins,
                                                            int threads = 1) {
  std::vector<std::vector<double>> hists(static_cast<std::size_t>(seq.frame_count()));
  parallel_for(seq.frame_count(), threads, [&](std::int64_t i) {
    hists[static_cast<std::size_t>(i)] = normalize_histogram(luma_histogram(seq.frame(i), bins));
  });
  return hists;
}

// Frames t+1 where the histogram distance between t and t+1 crosses the
// threshold, with no minimum-spacing applied. Building block for
// detect_hard_cuts; exposed because the crossing set is what is monotone
// in the threshold.
inline std::vector<std::int64_t> hard_cut_crossings(const std::vector<std::vector<double>>& hists,
                                                    double threshold) {
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t + 1 < hists.size(); ++t)
    if (chi_square_distance(hists[t], hists[t + 1]) > threshold)
      out.push_back(static_cast<std::int64_t>(t) + 1);
  return out;
}

// Hard-cut boundaries: threshold crossings kept only when at least
// min_shot_frames have passed since the previously kept boundary (stream
// start counts as a boundary at frame 0).
inline std::vector<std::int64_t> detect_hard_cuts(const std::vector<std::vector<double>>& hists,
                                                  double threshold, int min_shot_frames) {
  if (min_shot_frames < 1) throw analysis_error("min shot length must be at least 1");
  std::vector<std::int64_t> out;
  std::int64_t last = 0;
  for (std::int64_t b : hard_cut_crossings(hists, threshold)) {
    if (b - last >= min_shot_frames) {
      out.push_back(b);
      last = b;
    }
  }
  return out;
}

// Effective rank of each sliding window of `window` consecutive normalized
// histograms: the number of singular values above eps * sigma_max. Entry t
// covers frames [t, t+window). Computed from the window Gram matrix, whose
// eigenvalues are the squared singular values.
inline std::vector<int> effective_rank_series(const std::vector<std::vector<double>>& hists,
                                              int window, double eps) {
  if (window < 2) throw analysis_error("rank window must be at least 2");
  std::int64_t n = static_cast<std::int64_t>(hists.size());
  if (n < window) throw analysis_error("sequence shorter than rank window");
  std::size_t bins = hists[0].size();
  std::vector<int> ranks(static_cast<std::size_t>(n - window + 1));
  Eigen::MatrixXd gram(window, window);
  for (std::int64_t t = 0; t + window <= n; ++t) {
    for (int i = 0; i < window; ++i) {
      for (int j = i; j < window; ++j) {
        const std::vector<double>& a = hists[static_cast<std::size_t>(t + i)];
        const std::vector<double>& b = hists[static_cast<std::size_t>(t + j)];
        double dot = 0.0;
        for (std::size_t k = 0; k < bins; ++k) dot += a[k] * b[k];
        gram(i, j) = dot;
        gram(j, i) = dot;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    double smax = std::sqrt(std::max(0.0, ev(window - 1)));
    int rank = 0;
    for (int i = 0; i < window; ++i)
      if (std::sqrt(std::max(0.0, ev(i))) > eps * smax) ++rank;
    ranks[static_cast<std::size_t>(t)] = rank;
  }
  return ranks;
}

// Gradual-transition boundaries from the rank trace: maximal runs of
// window positions with effective rank > 1 that last at least
// min_dissolve_frames report one boundary at the run midpoint, shifted by
// half a window so it lands inside the transition.
inline std::vector<std::int64_t> rank_trace_dissolves(const std::vector<std::vector<double>>& hists,
                                                      int window, double eps,
                                                      int min_dissolve_frames) {
  std::vector<int> ranks = effective_rank_series(hists, window, eps);
  std::vector<std::int64_t> out;
  std::size_t t = 0;
  while (t < ranks.size()) {
    if (ranks[t] <= 1) {
      ++t;
      continue;
    }
    std::size_t begin = t;
    while (t < ranks.size() && ranks[t] > 1) ++t;
    std::size_t len = t - begin;  // run is [begin, t)
    if (len >= static_cast<std::size_t>(min_dissolve_frames))
      out.push_back(static_cast<std::int64_t>((begin + (t - 1)) / 2) + window / 2);
  }
  return out;
}

// Full segmentation: hard cuts everywhere, dissolves only out of game,
// merged under the common minimum shot length (earlier boundary wins; on
// an exact tie the hard cut wins). Returns shots tiling [0, frame_count).
inline std::vector<Shot> segment_shots(const std::vector<std::vector<double>>& hists,
                                       const PhaseSchedule& schedule,
                                       const SegmentationParams& params) {
  std::int64_t n = static_cast<std::int64_t>(hists.size());
  if (n <= 0) throw analysis_error("cannot segment an empty sequence");

  struct Boundary {
    std::int64_t frame;
    Transition kind;
  };
  std::vector<Boundary> cand;
  if (n >= 2)
    for (std::int64_t b : hard_cut_crossings(hists, params.cut_threshold))
      cand.push_back({b, Transition::hard_cut});
  if (n >= params.rank_window && !schedule.empty())
    for (std::int64_t b : rank_trace_dissolves(hists, params.rank_window, params.rank_epsilon,
                                               params.min_dissolve_frames))
      if (schedule.out_of_game(b) && b > 0 && b < n) cand.push_back({b, Transition::dissolve});
  std::sort(cand.begin(), cand.end(), [](const Boundary& a, const Boundary& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.kind == Transition::hard_cut && b.kind != Transition::hard_cut;
  });

  std::vector<Boundary> kept;
  std::int64_t last = 0;
  for (const Boundary& b : cand) {
    if (b.frame == last) continue;  // duplicate frame, first (hard cut) already kept
    if (b.frame - last >= params.min_shot_frames) {
      kept.push_back(b);
      last = b.frame;
    }
  }

  std::vector<Shot> shots;
  std::int64_t start = 0;
  Transition trans = Transition::stream_start;
  for (const Boundary& b : kept) {
    shots.push_back({static_cast<std::int64_t>(shots.size()), start, b.frame, trans});
    start = b.frame;
    trans = b.kind;
  }
  shots.push_back({static_cast<std::int64_t>(shots.size()), start, n, trans});
  return shots;
}

inline std::vector<Shot> segment_shots(const LumaSequence& seq, const PhaseSchedule& schedule,
                                       const SegmentationParams& params, int threads = 1) {
  return segment_shots(sequence_histograms(seq, params.bins, threads), schedule, params);
}

}  // namespace socsum
