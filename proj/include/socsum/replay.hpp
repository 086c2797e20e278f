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
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "socsum/color.hpp"
#include "socsum/core.hpp"
#include "socsum/parallel.hpp"

namespace socsum {

struct ReplayParams {
  double luma_jump = 8.0;      // |mean luma delta| that nominates a candidate
  int clusters = 4;            // k for the candidate clustering
  double match_threshold = 12.0;  // MAD below which a frame matches the template
  double min_gap_s = 2.0;      // logo pair window
  double max_gap_s = 60.0;
  bool single_logo = false;    // broadcaster uses one logo per replay, not a pair
  double single_logo_span_s = 10.0;
};

// Per-frame luma mean and population variance.
struct FrameStats {
  std::vector<double> mean;
  std::vector<double> variance;
};

inline FrameStats frame_luma_stats(const LumaSequence& seq, int threads = 1) {
  FrameStats st;
  std::int64_t n = seq.frame_count();
  st.mean.resize(static_cast<std::size_t>(n));
  st.variance.resize(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](std::int64_t i) {
    PlaneView p = seq.frame(i);
    std::int64_t acc = 0, acc2 = 0;
    for (int r = 0; r < p.height; ++r) {
      const std::uint8_t* row = p.row(r);
      for (int c = 0; c < p.width; ++c) {
        acc += row[c];
        acc2 += static_cast<std::int64_t>(row[c]) * row[c];
      }
    }
    double cnt = static_cast<double>(p.width) * p.height;
    double m = static_cast<double>(acc) / cnt;
    st.mean[static_cast<std::size_t>(i)] = m;
    st.variance[static_cast<std::size_t>(i)] = static_cast<double>(acc2) / cnt - m * m;
  });
  return st;
}

// Frames that may carry the logo animation: sharp luminance jumps from the
// previous frame, plus everything within two frames of a shot boundary.
// Sorted, unique.
inline std::vector<std::int64_t> logo_candidates(const FrameStats& stats,
                                                 const std::vector<std::int64_t>& boundaries,
                                                 double luma_jump) {
  std::int64_t n = static_cast<std::int64_t>(stats.mean.size());
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (std::int64_t f = 1; f < n; ++f)
    if (std::abs(stats.mean[static_cast<std::size_t>(f)] - stats.mean[static_cast<std::size_t>(f - 1)]) > luma_jump)
      mark[static_cast<std::size_t>(f)] = 1;
  for (std::int64_t b : boundaries)
    for (std::int64_t f = b - 2; f <= b + 2; ++f)
      if (f >= 0 && f < n) mark[static_cast<std::size_t>(f)] = 1;
  std::vector<std::int64_t> out;
  for (std::int64_t f = 0; f < n; ++f)
    if (mark[static_cast<std::size_t>(f)]) out.push_back(f);
  return out;
}

// Grayscale logo template: the pixel mean of the most self-similar
// candidate cluster.
struct LogoTemplate {
  int width = 0;
  int height = 0;
  std::vector<float> px;
  std::vector<std::int64_t> members;  // candidate frames behind the template
};

// Mean absolute difference between a frame and the template.
inline double template_mad(const LogoTemplate& tmpl, const PlaneView& luma) {
  if (tmpl.width != luma.width || tmpl.height != luma.height)
    throw analysis_error("template size does not match frames");
  double acc = 0.0;
  std::size_t i = 0;
  for (int r = 0; r < luma.height; ++r) {
    const std::uint8_t* row = luma.row(r);
    for (int c = 0; c < luma.width; ++c, ++i) acc += std::abs(static_cast<double>(row[c]) - tmpl.px[i]);
  }
  return acc / static_cast<double>(tmpl.px.size());
}

namespace detail {

inline double frame_pair_mad(const PlaneView& a, const PlaneView& b) {
  double acc = 0.0;
  for (int r = 0; r < a.height; ++r) {
    const std::uint8_t* ra = a.row(r);
    const std::uint8_t* rb = b.row(r);
    for (int c = 0; c < a.width; ++c) acc += std::abs(static_cast<int>(ra[c]) - static_cast<int>(rb[c]));
  }
  return acc / (static_cast<double>(a.width) * a.height);
}

}  // namespace detail

// Clusters the candidates on standardized (mean, variance) with k-means
// (farthest-point seeding from the earliest candidate; ties earliest) and
// returns the cluster whose member frames are most alike in pixel MAD.
// The logo animation repeats almost exactly across a broadcast, so its
// cluster is far tighter than crowd or play frames. Needs at least one
// candidate; clusters with one member score as infinitely loose.
inline std::optional<LogoTemplate> discover_logo_template(const std::vector<std::int64_t>& candidates,
                                                          const LumaSequence& seq, int k) {
  if (candidates.empty()) return std::nullopt;
  if (k < 1) throw analysis_error("cluster count must be positive");
  std::size_t n = candidates.size();
  FrameStats st;
  st.mean.resize(n);
  st.variance.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    PlaneView p = seq.frame(candidates[i]);
    std::int64_t acc = 0, acc2 = 0;
    for (int r = 0; r < p.height; ++r) {
      const std::uint8_t* row = p.row(r);
      for (int c = 0; c < p.width; ++c) {
        acc += row[c];
        acc2 += static_cast<std::int64_t>(row[c]) * row[c];
      }
    }
    double cnt = static_cast<double>(p.width) * p.height;
    st.mean[i] = static_cast<double>(acc) / cnt;
    st.variance[i] = static_cast<double>(acc2) / cnt - st.mean[i] * st.mean[i];
  }

  // Standardize both features; a zero-spread feature contributes nothing.
  auto standardize = [n](std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n);
    double sd = std::sqrt(var);
    for (double& x : v) x = sd > 0.0 ? (x - mean) / sd : 0.0;
  };
  standardize(st.mean);
  standardize(st.variance);

  if (static_cast<std::size_t>(k) > n) k = static_cast<int>(n);

  // Farthest-point seeding.
  std::vector<std::size_t> seeds{0};
  while (static_cast<int>(seeds.size()) < k) {
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dmin = std::numeric_limits<double>::infinity();
      for (std::size_t s : seeds) {
        double dx = st.mean[i] - st.mean[s];
        double dy = st.variance[i] - st.variance[s];
        dmin = std::min(dmin, dx * dx + dy * dy);
      }
      if (dmin > best_d) {
        best_d = dmin;
        best = i;
      }
    }
    seeds.push_back(best);
  }

  std::vector<std::pair<double, double>> centroid(seeds.size());
  for (std::size_t c = 0; c < seeds.size(); ++c)
    centroid[c] = {st.mean[seeds[c]], st.variance[seeds[c]]};
  std::vector<int> assign(n, 0);
  for (int it = 0; it < 50; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = 0.0;
      for (std::size_t c = 0; c < centroid.size(); ++c) {
        double dx = st.mean[i] - centroid[c].first;
        double dy = st.variance[i] - centroid[c].second;
        double d = dx * dx + dy * dy;
        if (c == 0 || d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        moved = true;
      }
    }
    if (!moved && it > 0) break;
    std::vector<std::pair<double, double>> sum(centroid.size(), {0.0, 0.0});
    std::vector<std::int64_t> cnt(centroid.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(assign[i])].first += st.mean[i];
      sum[static_cast<std::size_t>(assign[i])].second += st.variance[i];
      ++cnt[static_cast<std::size_t>(assign[i])];
    }
    for (std::size_t c = 0; c < centroid.size(); ++c)
      if (cnt[c] > 0)
        centroid[c] = {sum[c].first / static_cast<double>(cnt[c]),
                       sum[c].second / static_cast<double>(cnt[c])};
  }

  // Self-similarity score per cluster: mean pairwise MAD over (at most 60
  // of) its member frames.
  int best_cluster = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroid.size(); ++c) {
    std::vector<std::int64_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (assign[i] == static_cast<int>(c)) members.push_back(candidates[i]);
    if (members.size() < 2) continue;
    std::size_t take = std::min<std::size_t>(members.size(), 60);
    double acc = 0.0;
    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < take; ++i) {
      for (std::size_t j = i + 1; j < take; ++j) {
        acc += detail::frame_pair_mad(seq.frame(members[i]), seq.frame(members[j]));
        ++pairs;
      }
    }
    double score = acc / static_cast<double>(pairs);
    if (score < best_score) {
      best_score = score;
      best_cluster = static_cast<int>(c);
    }
  }
  if (best_cluster < 0) best_cluster = assign[0];  // all clusters degenerate

  LogoTemplate tmpl;
  tmpl.width = seq.width();
  tmpl.height = seq.height();
  for (std::size_t i = 0; i < n; ++i)
    if (assign[i] == best_cluster) tmpl.members.push_back(candidates[i]);
  tmpl.px.assign(static_cast<std::size_t>(tmpl.width) * tmpl.height, 0.0f);
  std::vector<double> acc(tmpl.px.size(), 0.0);
  for (std::int64_t f : tmpl.members) {
    PlaneView p = seq.frame(f);
    std::size_t i = 0;
    for (int r = 0; r < p.height; ++r) {
      const std::uint8_t* row = p.row(r);
      for (int c = 0; c < p.width; ++c, ++i) acc[i] += row[c];
    }
  }
  for (std::size_t i = 0; i < acc.size(); ++i)
    tmpl.px[i] = static_cast<float>(acc[i] / static_cast<double>(tmpl.members.size()));
  return tmpl;
}

// Frames matching the template (MAD < threshold), with runs of consecutive
// matches collapsed to their first frame: one occurrence per logo showing.
inline std::vector<std::int64_t> match_logo(const LogoTemplate& tmpl, const LumaSequence& seq,
                                            double match_threshold, int threads = 1) {
  std::int64_t n = seq.frame_count();
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  parallel_for(n, threads, [&](std::int64_t f) {
    if (template_mad(tmpl, seq.frame(f)) < match_threshold) hit[static_cast<std::size_t>(f)] = 1;
  });
  std::vector<std::int64_t> out;
  for (std::int64_t f = 0; f < n; ++f) {
    if (!hit[static_cast<std::size_t>(f)]) continue;
    if (f == 0 || !hit[static_cast<std::size_t>(f - 1)]) out.push_back(f);
  }
  return out;
}

// Half-open frame interval suspected to be replayed footage.
struct ReplayInterval {
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;
};

// Greedy earliest-first pairing: the earliest unconsumed occurrence opens,
// the next occurrence whose gap falls inside [min_gap, max_gap] seconds
// closes, both are consumed. Occurrences that never find a partner are
// dropped. Intervals cover [opener, closer) and cannot overlap.
inline std::vector<ReplayInterval> pair_logos(const std::vector<std::int64_t>& occurrences,
                                              Rational fps, double min_gap_s, double max_gap_s) {
  if (min_gap_s < 0 || max_gap_s < min_gap_s) throw analysis_error("bad logo gap window");
  std::vector<ReplayInterval> out;
  std::size_t i = 0;
  while (i < occurrences.size()) {
    std::size_t close = 0;
    bool found = false;
    for (std::size_t j = i + 1; j < occurrences.size(); ++j) {
      double gap_s = static_cast<double>(occurrences[j] - occurrences[i]) * fps.den / static_cast<double>(fps.num);
      if (gap_s > max_gap_s) break;
      if (gap_s >= min_gap_s) {
        close = j;
        found = true;
        break;
      }
    }
    if (found) {
      out.push_back({occurrences[i], occurrences[close]});
      i = close + 1;
    } else {
      ++i;
    }
  }
  return out;
}

// Single-logo variant: every occurrence opens a fixed span. Overlapping
// spans merge so the result stays disjoint.
inline std::vector<ReplayInterval> single_logo_intervals(const std::vector<std::int64_t>& occurrences,
                                                         Rational fps, double span_s,
                                                         std::int64_t frame_count) {
  std::int64_t span = static_cast<std::int64_t>(std::llround(span_s * fps.to_double()));
  if (span < 1) span = 1;
  std::vector<ReplayInterval> out;
  for (std::int64_t occ : occurrences) {
    std::int64_t end = std::min(frame_count, occ + span);
    if (!out.empty() && occ <= out.back().end_frame)
      out.back().end_frame = std::max(out.back().end_frame, end);
    else
      out.push_back({occ, end});
  }
  return out;
}

inline bool interval_overlaps_shot(const ReplayInterval& iv, const Shot& s) {
  return iv.start_frame < s.end_frame && s.start_frame < iv.end_frame;
}

inline std::vector<bool> replay_flags_for_shots(const std::vector<Shot>& shots,
                                                const std::vector<ReplayInterval>& intervals) {
  std::vector<bool> out(shots.size(), false);
  for (std::size_t i = 0; i < shots.size(); ++i)
    for (const ReplayInterval& iv : intervals)
      if (interval_overlaps_shot(iv, shots[i])) {
        out[i] = true;
        break;
      }
  return out;
}

struct ReplayAnalysis {
  std::optional<LogoTemplate> tmpl;
  std::vector<std::int64_t> occurrences;
  std::vector<ReplayInterval> intervals;
};

// Full replay chain. A caller-provided template (from config) skips
// discovery; otherwise the template is mined from candidate frames around
// luminance jumps and shot boundaries.
inline ReplayAnalysis detect_replays(const LumaSequence& seq, const FrameStats& stats,
                                     const std::vector<std::int64_t>& boundaries, Rational fps,
                                     const ReplayParams& params,
                                     std::optional<LogoTemplate> user_template, int threads = 1) {
  ReplayAnalysis out;
  if (user_template)
    out.tmpl = std::move(user_template);
  else
    out.tmpl = discover_logo_template(logo_candidates(stats, boundaries, params.luma_jump), seq,
                                      params.clusters);
  if (!out.tmpl) return out;
  out.occurrences = match_logo(*out.tmpl, seq, params.match_threshold, threads);
  if (params.single_logo)
    out.intervals = single_logo_intervals(out.occurrences, fps, params.single_logo_span_s,
                                          seq.frame_count());
  else
    out.intervals = pair_logos(out.occurrences, fps, params.min_gap_s, params.max_gap_s);
  return out;
}

}  // namespace socsum
