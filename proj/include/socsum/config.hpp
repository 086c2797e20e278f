/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socsum/core.hpp"
#include "socsum/filters.hpp"
#include "socsum/keyframes.hpp"
#include "socsum/motion.hpp"
#include "socsum/replay.hpp"
#include "socsum/segmentation.hpp"
#include "socsum/select.hpp"
#include "socsum/video_analysis.hpp"

namespace socsum {

// Everything a pipeline run needs. Populated from defaults, then the INI
// config file, then CLI flags (CLI wins).
struct PipelineConfig {
  // Inputs / outputs.
  std::string video_path;
  std::string audio_path;
  std::string out_dir = ".";
  VideoConfig video;
  int audio_rate = kAudioRate;  // raw PCM input only
  std::string logo_template_path;
  std::string persons_sidecar_path;
  std::string motion_sidecar_path;
  int threads = 1;

  // Analysis parameters.
  SegmentationParams segmentation;
  std::vector<std::pair<double, double>> out_of_game_s;  // dissolve-eligible spans
  KeyframeParams keyframes;
  MotionParams motion;
  WhistleParams whistle;
  LongShotParams longshot;
  ZoomParams zoom;
  PersonsParams skin;
  ReplayParams replay;
  HighlightParams highlight;

  // Scoring / selection.
  std::vector<AdvancedFilterSpec> filters;  // declaration order
  std::optional<double> total_duration_s;

  PhaseSchedule phase_schedule() const {
    if (out_of_game_s.empty()) return PhaseSchedule();
    return PhaseSchedule::out_of_game_seconds(out_of_game_s, video.fps);
  }

  // Filters as configured, or the stock goal filter when none were given.
  std::vector<AdvancedFilterSpec> effective_filters() const {
    if (!filters.empty()) return filters;
    return {goal_filter_preset()};
  }

  SummarySpec summary_spec() const {
    if (!total_duration_s)
      throw config_error("summary duration missing (set [summary] total_duration or --duration)");
    SummarySpec spec;
    spec.total_duration_s = *total_duration_s;
    for (const AdvancedFilterSpec& f : effective_filters())
      spec.allocations.emplace_back(f.name, f.percent);
    spec.validate();
    return spec;
  }
};

namespace detail {

struct IniEntry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<IniEntry> parse_ini(const std::string& text) {
  std::vector<IniEntry> entries;
  std::string section;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = trim(std::string_view(text).substr(
        pos, nl == std::string::npos ? text.size() - pos : nl - pos));
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!line.empty() && (line[0] == '#' || line[0] == ';')) continue;
    std::size_t hash = line.find(" #");
    if (hash != std::string::npos) line = trim(std::string_view(line).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error("config line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    IniEntry e;
    e.section = section;
    e.key = trim(std::string_view(line).substr(0, eq));
    e.value = trim(std::string_view(line).substr(eq + 1));
    e.line = lineno;
    if (e.key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<std::pair<double, double>> parse_spans(const std::string& value, int line) {
  std::vector<std::pair<double, double>> out;
  std::size_t pos = 0;
  while (pos < value.size()) {
    std::size_t comma = value.find(',', pos);
    std::string item = trim(std::string_view(value).substr(
        pos, comma == std::string::npos ? value.size() - pos : comma - pos));
    pos = comma == std::string::npos ? value.size() : comma + 1;
    if (item.empty()) continue;
    std::size_t dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
      throw config_error("config line " + std::to_string(line) + ": spans are 'start-end' seconds");
    double a = parse_double(trim(std::string_view(item).substr(0, dash)));
    double b = parse_double(trim(std::string_view(item).substr(dash + 1)));
    if (b < a) throw config_error("config line " + std::to_string(line) + ": span ends before it starts");
    out.emplace_back(a, b);
  }
  return out;
}

// "w.<elementary>" or "w.<elementary>@<offset>" with offset in {-2,-1,+1,+2}.
inline void apply_filter_weight(AdvancedFilterSpec& spec, const std::string& key,
                                double value, int line) {
  std::string_view k(key);
  k.remove_prefix(2);  // "w."
  std::size_t at = k.find('@');
  std::string fname(k.substr(0, at));
  int filter = elementary_from_name(fname);
  if (at == std::string_view::npos) {
    spec.weight[static_cast<std::size_t>(filter)] = value;
    return;
  }
  std::string_view off = k.substr(at + 1);
  if (off != "+1" && off != "-1" && off != "+2" && off != "-2")
    throw config_error("config line " + std::to_string(line) +
                       ": neighbor offset must be one of +1, -1, +2, -2");
  int offset = off[1] - '0';
  if (off[0] == '-') offset = -offset;
  spec.neighbors.push_back({offset, filter, value});
}

}  // namespace detail

// Applies an INI config to cfg. Unknown sections or keys are errors, not
// warnings: a typo must never silently run with defaults.
inline void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  auto filter_for = [&](const std::string& section) -> AdvancedFilterSpec& {
    std::string name = section.substr(7);
    if (name.empty()) throw config_error("filter section needs a name: [filter.<name>]");
    for (AdvancedFilterSpec& f : cfg.filters)
      if (f.name == name) return f;
    AdvancedFilterSpec spec;
    spec.name = name;
    cfg.filters.push_back(std::move(spec));
    return cfg.filters.back();
  };

  for (const detail::IniEntry& e : detail::parse_ini(text)) {
    auto bad_key = [&]() {
      throw config_error("config line " + std::to_string(e.line) + ": unknown key '" + e.key +
                         "' in section [" + e.section + "]");
    };
    auto num = [&]() { return parse_double(e.value); };
    auto integer = [&]() { return static_cast<int>(parse_int(e.value)); };
    auto boolean = [&]() {
      if (e.value == "1" || e.value == "true") return true;
      if (e.value == "0" || e.value == "false") return false;
      throw config_error("config line " + std::to_string(e.line) + ": expected boolean");
    };

    if (e.section == "segmentation") {
      if (e.key == "bins") cfg.segmentation.bins = integer();
      else if (e.key == "cut_threshold") cfg.segmentation.cut_threshold = num();
      else if (e.key == "min_shot_frames") cfg.segmentation.min_shot_frames = integer();
      else if (e.key == "rank_window") cfg.segmentation.rank_window = integer();
      else if (e.key == "rank_epsilon") cfg.segmentation.rank_epsilon = num();
      else if (e.key == "min_dissolve_frames") cfg.segmentation.min_dissolve_frames = integer();
      else if (e.key == "out_of_game") cfg.out_of_game_s = detail::parse_spans(e.value, e.line);
      else bad_key();
    } else if (e.section == "keyframes") {
      if (e.key == "alpha") cfg.keyframes.alpha = num();
      else if (e.key == "max_candidates") cfg.keyframes.max_candidates = integer();
      else if (e.key == "dedup_threshold") cfg.keyframes.dedup_threshold = num();
      else bad_key();
    } else if (e.section == "motion") {
      if (e.key == "block_size") cfg.motion.block_size = integer();
      else if (e.key == "search_radius") cfg.motion.search_radius = integer();
      else bad_key();
    } else if (e.section == "audio") {
      if (e.key == "sample_rate") cfg.audio_rate = integer();
      else bad_key();
    } else if (e.section == "whistle") {
      if (e.key == "energy_db_above_p10") cfg.whistle.energy_db_above_p10 = num();
      else if (e.key == "entropy_max") cfg.whistle.entropy_max = num();
      else if (e.key == "peak_fraction") cfg.whistle.peak_fraction = num();
      else bad_key();
    } else if (e.section == "longshot") {
      if (e.key == "green_fraction") cfg.longshot.green_fraction = num();
      else if (e.key == "chroma_variance_max") cfg.longshot.chroma_variance_max = num();
      else bad_key();
    } else if (e.section == "zoom") {
      if (e.key == "focal_dispersion_max") cfg.zoom.focal_dispersion_max = num();
      else if (e.key == "min_zoom_frames") cfg.zoom.min_zoom_frames = integer();
      else if (e.key == "min_nonzero_regions") cfg.zoom.min_nonzero_regions = integer();
      else bad_key();
    } else if (e.section == "skin") {
      if (e.key == "fraction_min") cfg.skin.skin_fraction_min = num();
      else bad_key();
    } else if (e.section == "replay") {
      if (e.key == "luma_jump") cfg.replay.luma_jump = num();
      else if (e.key == "clusters") cfg.replay.clusters = integer();
      else if (e.key == "match_threshold") cfg.replay.match_threshold = num();
      else if (e.key == "min_gap_s") cfg.replay.min_gap_s = num();
      else if (e.key == "max_gap_s") cfg.replay.max_gap_s = num();
      else if (e.key == "single_logo") cfg.replay.single_logo = boolean();
      else if (e.key == "single_logo_span_s") cfg.replay.single_logo_span_s = num();
      else bad_key();
    } else if (e.section == "highlight") {
      if (e.key == "motion_tau") cfg.highlight.motion_activity_min = num();
      else if (e.key == "dur_very_short_max_s") cfg.highlight.durations.very_short_max_s = num();
      else if (e.key == "dur_short_max_s") cfg.highlight.durations.short_max_s = num();
      else if (e.key == "dur_medium_max_s") cfg.highlight.durations.medium_max_s = num();
      else bad_key();
    } else if (e.section == "summary") {
      if (e.key == "total_duration") cfg.total_duration_s = num();
      else bad_key();
    } else if (e.section.starts_with("filter.")) {
      AdvancedFilterSpec& spec = filter_for(e.section);
      if (e.key == "percent") spec.percent = num();
      else if (e.key.starts_with("w.")) detail::apply_filter_weight(spec, e.key, num(), e.line);
      else bad_key();
    } else {
      throw config_error("config line " + std::to_string(e.line) + ": unknown section [" +
                         e.section + "]");
    }
  }
  for (const AdvancedFilterSpec& f : cfg.filters) f.validate();
}

}  // namespace socsum
