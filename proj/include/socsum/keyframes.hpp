/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "socsum/color.hpp"
#include "socsum/core.hpp"
#include "socsum/histogram.hpp"
#include "socsum/motion.hpp"

namespace socsum {

struct KeyframeParams {
  double alpha = 2.0;       // split when alpha * median(activity) < max(activity)
  int max_candidates = 10;  // recursion stops once this many candidates exist
  double dedup_threshold = 0.3;  // HSV chi-square distance below which frames collapse
};

namespace detail {

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Recursive split over activity[lo, hi) (frame indices). High-activity
// spikes split the segment; quiet segments emit their calmest frame.
inline void split_segment(const std::vector<double>& activity, std::int64_t lo, std::int64_t hi,
                          double alpha, int cap, std::vector<std::int64_t>& out) {
  if (static_cast<int>(out.size()) >= cap) return;
  if (lo >= hi) return;
  std::int64_t arg_min = lo, arg_max = lo;
  for (std::int64_t t = lo; t < hi; ++t) {
    if (activity[static_cast<std::size_t>(t)] < activity[static_cast<std::size_t>(arg_min)]) arg_min = t;
    if (activity[static_cast<std::size_t>(t)] > activity[static_cast<std::size_t>(arg_max)]) arg_max = t;
  }
  if (hi - lo >= 2) {
    std::vector<double> seg(activity.begin() + lo, activity.begin() + hi);
    double med = median_of(std::move(seg));
    if (alpha * med < activity[static_cast<std::size_t>(arg_max)]) {
      split_segment(activity, lo, arg_max, alpha, cap, out);
      split_segment(activity, arg_max + 1, hi, alpha, cap, out);
      return;
    }
  }
  out.push_back(arg_min);
}

}  // namespace detail

// Candidate keyframes of one shot from the per-frame motion activity
// series (activity[f] describes the transition into frame f, so the shot's
// own series is frames (start, end)). Emitted in ascending frame order,
// at most max_candidates, at least one. Shots too short to have any
// intra-shot activity fall back to their first frame.
inline std::vector<std::int64_t> keyframe_candidates(const Shot& shot,
                                                     const std::vector<double>& activity,
                                                     const KeyframeParams& params) {
  if (shot.end_frame <= shot.start_frame) throw analysis_error("empty shot");
  if (shot.end_frame > static_cast<std::int64_t>(activity.size()))
    throw analysis_error("activity series shorter than shot");
  if (params.max_candidates < 1) throw analysis_error("candidate cap must be positive");
  std::vector<std::int64_t> out;
  detail::split_segment(activity, shot.start_frame + 1, shot.end_frame, params.alpha,
                        params.max_candidates, out);
  if (out.empty()) out.push_back(shot.start_frame);
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy near-duplicate removal on 16x4x4 HSV histograms: a candidate
// survives only while it keeps distance > threshold to every survivor.
// The first candidate always survives.
inline std::vector<std::int64_t> dedup_keyframes(const std::vector<std::int64_t>& candidates,
                                                 const FrameSequence& video, double threshold) {
  std::vector<std::int64_t> kept;
  std::vector<std::vector<double>> kept_hists;
  for (std::int64_t f : candidates) {
    std::vector<double> h = hsv_histogram(frame_to_rgb(video.frame(f)));
    bool dup = false;
    for (const auto& kh : kept_hists) {
      if (chi_square_distance(h, kh) <= threshold) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      kept.push_back(f);
      kept_hists.push_back(std::move(h));
    }
  }
  return kept;
}

struct ShotKeyframes {
  std::int64_t shot_id = 0;
  std::vector<std::int64_t> frames;
  double mean_activity = 0.0;  // mean over the shot's intra-shot activity series
};

// Candidates plus dedup for every shot. mean_activity is 0 for shots with
// no intra-shot transitions.
inline std::vector<ShotKeyframes> keyframes_for_shots(const std::vector<Shot>& shots,
                                                      const std::vector<double>& activity,
                                                      const FrameSequence& video,
                                                      const KeyframeParams& params) {
  std::vector<ShotKeyframes> out;
  out.reserve(shots.size());
  for (const Shot& s : shots) {
    ShotKeyframes sk;
    sk.shot_id = s.id;
    sk.frames = dedup_keyframes(keyframe_candidates(s, activity, params), video,
                                params.dedup_threshold);
    std::int64_t n = s.end_frame - s.start_frame - 1;
    if (n > 0) {
      double acc = 0.0;
      for (std::int64_t f = s.start_frame + 1; f < s.end_frame; ++f)
        acc += activity[static_cast<std::size_t>(f)];
      sk.mean_activity = acc / static_cast<double>(n);
    }
    out.push_back(std::move(sk));
  }
  return out;
}

}  // namespace socsum
