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
#include <optional>
#include <span>
#include <vector>

#include "socsum/core.hpp"
#include "socsum/parallel.hpp"

namespace socsum {

// Fixed analysis raster: 48 kHz mono, non-overlapping 4800-sample frames
// (100 ms), whistle band 3.5-4.5 kHz = DFT bins 350..450 at 10 Hz spacing.
inline constexpr int kAudioFrameSamples = 4800;
inline constexpr int kAudioRate = 48000;
inline constexpr int kBandLowBin = 350;
inline constexpr int kBandHighBin = 450;
inline constexpr int kBandBins = kBandHighBin - kBandLowBin + 1;

inline std::int64_t audio_frame_count(const AudioTrack& track) {
  return static_cast<std::int64_t>(track.samples.size()) / kAudioFrameSamples;
}

inline std::span<const std::int16_t> audio_frame(const AudioTrack& track, std::int64_t m) {
  if (m < 0 || m >= audio_frame_count(track)) throw analysis_error("audio frame out of range");
  return {track.samples.data() + m * kAudioFrameSamples, kAudioFrameSamples};
}

// Power of DFT bins 350..450 of one 4800-sample frame via Goertzel
// recursion, |X(k)|^2 = q1^2 + q2^2 - c*q1*q2 with c = 2 cos(2 pi k / N).
// Direct evaluation of 101 fixed bins beats an FFT here and needs no
// scratch memory.
inline std::vector<double> goertzel_band_power(std::span<const std::int16_t> frame) {
  if (frame.size() != static_cast<std::size_t>(kAudioFrameSamples))
    throw analysis_error("audio frame must hold 4800 samples");
  std::vector<double> power(kBandBins);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int k = kBandLowBin; k <= kBandHighBin; ++k) {
    double coeff = 2.0 * std::cos(two_pi * k / kAudioFrameSamples);
    double q1 = 0.0, q2 = 0.0;
    for (std::int16_t s : frame) {
      double q0 = coeff * q1 - q2 + static_cast<double>(s);
      q2 = q1;
      q1 = q0;
    }
    power[static_cast<std::size_t>(k - kBandLowBin)] = q1 * q1 + q2 * q2 - coeff * q1 * q2;
  }
  return power;
}

inline double band_energy(const std::vector<double>& power) {
  double acc = 0.0;
  for (double p : power) acc += p;
  return acc;
}

// Shannon entropy (bits) of the band power distribution. Uniform spread
// gives log2(101) ~ 6.658; a clean tone concentrates and scores near 0.
// A zero-energy frame has no distribution, so nullopt (caller treats it
// as non-tonal).
inline std::optional<double> spectral_entropy(const std::vector<double>& power) {
  double total = band_energy(power);
  if (!(total > 0.0)) return std::nullopt;
  double h = 0.0;
  for (double p : power) {
    if (p > 0.0) {
      double rho = p / total;
      h -= rho * std::log2(rho);
    }
  }
  return h;
}

// Local maxima at or above peak_fraction * max(power). Strictly greater
// than both neighbours; a plateau counts once, at its left edge; bins
// past either band edge compare as -infinity. All-zero spectra have no
// peaks.
inline int count_band_peaks(const std::vector<double>& power, double peak_fraction) {
  if (power.empty()) throw analysis_error("empty spectrum");
  double mx = *std::max_element(power.begin(), power.end());
  if (!(mx > 0.0)) return 0;
  double floor = peak_fraction * mx;
  int n = static_cast<int>(power.size());
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (power[static_cast<std::size_t>(i)] < floor) continue;
    double v = power[static_cast<std::size_t>(i)];
    if (i > 0 && power[static_cast<std::size_t>(i - 1)] >= v) continue;  // rising edge only
    int j = i;
    while (j + 1 < n && power[static_cast<std::size_t>(j + 1)] == v) ++j;  // plateau
    bool right_lower = j + 1 >= n || power[static_cast<std::size_t>(j + 1)] < v;
    if (right_lower) ++count;
    i = j;
  }
  return count;
}

struct WhistleParams {
  double energy_db_above_p10 = 20.0;  // adaptive energy gate over the track floor
  double entropy_max = 3.0;           // bits; tonal frames sit well below
  double peak_fraction = 0.2;         // of the frame's band maximum
};

// One whistle event covering audio frames [first_frame, last_frame].
struct WhistleEvent {
  std::int64_t first_frame = 0;
  std::int64_t last_frame = 0;

  double start_s() const { return static_cast<double>(first_frame) * 0.1; }
  double end_s() const { return static_cast<double>(last_frame + 1) * 0.1; }
};

struct WhistleAnalysis {
  std::vector<WhistleEvent> events;
  std::vector<char> frame_flag;     // per audio frame, post-gate decision
  double energy_threshold = 0.0;    // resolved absolute gate
};

// Referee whistles: frames whose band energy clears an adaptive gate
// (10th-percentile band energy raised by energy_db_above_p10 decibels),
// whose band entropy is below entropy_max and which show exactly 2 or 3
// band peaks. Consecutive qualifying frames merge into one event.
inline WhistleAnalysis detect_whistles(const AudioTrack& track, const WhistleParams& params,
                                       int threads = 1) {
  std::int64_t frames = audio_frame_count(track);
  WhistleAnalysis out;
  out.frame_flag.assign(static_cast<std::size_t>(frames), 0);
  if (frames == 0) return out;

  std::vector<std::vector<double>> spectra(static_cast<std::size_t>(frames));
  parallel_for(frames, threads, [&](std::int64_t m) {
    spectra[static_cast<std::size_t>(m)] = goertzel_band_power(audio_frame(track, m));
  });

  std::vector<double> energies(static_cast<std::size_t>(frames));
  for (std::int64_t m = 0; m < frames; ++m) energies[static_cast<std::size_t>(m)] = band_energy(spectra[static_cast<std::size_t>(m)]);

  std::vector<double> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  double p10 = sorted[static_cast<std::size_t>((frames - 1) / 10)];
  out.energy_threshold = p10 * std::pow(10.0, params.energy_db_above_p10 / 10.0);

  for (std::int64_t m = 0; m < frames; ++m) {
    const auto& spec = spectra[static_cast<std::size_t>(m)];
    if (energies[static_cast<std::size_t>(m)] <= out.energy_threshold) continue;
    std::optional<double> h = spectral_entropy(spec);
    if (!h || *h >= params.entropy_max) continue;
    int peaks = count_band_peaks(spec, params.peak_fraction);
    if (peaks != 2 && peaks != 3) continue;
    out.frame_flag[static_cast<std::size_t>(m)] = 1;
  }

  for (std::int64_t m = 0; m < frames; ++m) {
    if (!out.frame_flag[static_cast<std::size_t>(m)]) continue;
    std::int64_t e = m;
    while (e + 1 < frames && out.frame_flag[static_cast<std::size_t>(e + 1)]) ++e;
    out.events.push_back({m, e});
    m = e;
  }
  return out;
}

// Mean-square sample power per 100 ms frame and per whole second (mean of
// ten frames; a trailing partial second is dropped).
struct AudioPowerSeries {
  std::vector<double> per_frame;
  std::vector<double> per_second;
};

inline AudioPowerSeries audio_power(const AudioTrack& track) {
  AudioPowerSeries out;
  std::int64_t frames = audio_frame_count(track);
  out.per_frame.resize(static_cast<std::size_t>(frames));
  for (std::int64_t m = 0; m < frames; ++m) {
    auto fr = audio_frame(track, m);
    double acc = 0.0;
    for (std::int16_t s : fr) {
      double v = static_cast<double>(s);
      acc += v * v;
    }
    out.per_frame[static_cast<std::size_t>(m)] = acc / static_cast<double>(kAudioFrameSamples);
  }
  std::int64_t seconds = frames / 10;
  out.per_second.resize(static_cast<std::size_t>(seconds));
  for (std::int64_t t = 0; t < seconds; ++t) {
    double acc = 0.0;
    for (int i = 0; i < 10; ++i) acc += out.per_frame[static_cast<std::size_t>(t * 10 + i)];
    out.per_second[static_cast<std::size_t>(t)] = acc / 10.0;
  }
  return out;
}

// Per-shot audio flags from the paper's filter bank.
struct AudioFlags {
  bool power_h = false;        // some frame in shot > 0.95 * track max frame power
  bool power_vh = false;       // same at 0.97
  bool intra_inc_50 = false;   // adjacent in-shot seconds with ratio >= 1.5
  bool intra_inc_100 = false;  // ratio >= 2.0
  bool inter_inc_50 = false;   // shot mean power >= 1.5 * previous shot mean
  bool inter_inc_100 = false;  // >= 2.0 * previous
};

namespace detail {

// Audio frame m (100 ms grid) overlaps video shot [a,b) at fps num/den iff
// m/10 < b*den/num and a*den/num < (m+1)/10, kept in exact integers.
inline bool frame_overlaps_shot(std::int64_t m, const Shot& s, Rational fps) {
  return m * fps.num < s.end_frame * fps.den * 10 && s.start_frame * fps.den * 10 < (m + 1) * fps.num;
}

inline bool second_overlaps_shot(std::int64_t t, const Shot& s, Rational fps) {
  return t * fps.num < s.end_frame * fps.den && s.start_frame * fps.den < (t + 1) * fps.num;
}

}  // namespace detail

inline bool whistle_overlaps_shot(const WhistleEvent& ev, const Shot& s, Rational fps) {
  return ev.first_frame * fps.num < s.end_frame * fps.den * 10 &&
         s.start_frame * fps.den * 10 < (ev.last_frame + 1) * fps.num;
}

// Flags for every shot. Ratio tests require a strictly positive base so
// silent material never flags; the first shot has no inter-shot base.
inline std::vector<AudioFlags> audio_flags_for_shots(const std::vector<Shot>& shots, Rational fps,
                                                     const AudioPowerSeries& power) {
  std::vector<AudioFlags> out(shots.size());
  double track_max = 0.0;
  for (double p : power.per_frame) track_max = std::max(track_max, p);

  std::vector<double> shot_mean(shots.size(), 0.0);
  for (std::size_t i = 0; i < shots.size(); ++i) {
    const Shot& s = shots[i];
    AudioFlags& f = out[i];

    double acc = 0.0;
    std::int64_t cnt = 0;
    for (std::int64_t m = 0; m < static_cast<std::int64_t>(power.per_frame.size()); ++m) {
      if (!detail::frame_overlaps_shot(m, s, fps)) continue;
      double p = power.per_frame[static_cast<std::size_t>(m)];
      acc += p;
      ++cnt;
      if (track_max > 0.0) {
        if (p > 0.95 * track_max) f.power_h = true;
        if (p > 0.97 * track_max) f.power_vh = true;
      }
    }
    if (cnt > 0) shot_mean[i] = acc / static_cast<double>(cnt);

    std::int64_t prev_t = -1;
    double prev_p = 0.0;
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(power.per_second.size()); ++t) {
      if (!detail::second_overlaps_shot(t, s, fps)) continue;
      double p = power.per_second[static_cast<std::size_t>(t)];
      if (prev_t == t - 1 && prev_p > 0.0) {
        double ratio = p / prev_p;
        if (ratio >= 1.5) f.intra_inc_50 = true;
        if (ratio >= 2.0) f.intra_inc_100 = true;
      }
      prev_t = t;
      prev_p = p;
    }

    if (i > 0 && shot_mean[i - 1] > 0.0) {
      double ratio = shot_mean[i] / shot_mean[i - 1];
      if (ratio >= 1.5) f.inter_inc_50 = true;
      if (ratio >= 2.0) f.inter_inc_100 = true;
    }
  }
  return out;
}

}  // namespace socsum
