/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "socsum/audio.hpp"
#include "socsum/color.hpp"
#include "socsum/config.hpp"
#include "socsum/core.hpp"
#include "socsum/documents.hpp"
#include "socsum/filters.hpp"
#include "socsum/keyframes.hpp"
#include "socsum/media.hpp"
#include "socsum/motion.hpp"
#include "socsum/parallel.hpp"
#include "socsum/replay.hpp"
#include "socsum/segmentation.hpp"
#include "socsum/select.hpp"
#include "socsum/video_analysis.hpp"

namespace socsum {

// Document names inside the output directory; stage outputs are persisted
// so later stages can run in isolation.
inline constexpr const char* kShotsDocName = "shots.xml";
inline constexpr const char* kKeyframesDocName = "keyframes.xml";
inline constexpr const char* kDescriptorsDocName = "descriptors.xml";
inline constexpr const char* kScoresDocName = "scores.xml";
inline constexpr const char* kSummaryDocName = "summary.xml";

namespace detail {

inline std::string doc_path(const PipelineConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline void require_input(const std::string& path, const char* what) {
  if (path.empty()) throw config_error(std::string(what) + " not set");
  if (!std::filesystem::exists(path))
    throw config_error(std::string(what) + " missing: " + path);
}

inline std::string require_doc(const PipelineConfig& cfg, const char* name, const char* stage) {
  std::string path = doc_path(cfg, name);
  if (!std::filesystem::exists(path))
    throw config_error(std::string("stage '") + stage + "' needs " + name +
                       " (run the earlier stages first)");
  return read_file_text(path);
}

template <class F>
auto with_stage(const char* stage, F&& fn) {
  try {
    return fn();
  } catch (const error& e) {
    throw error(std::string("stage '") + stage + "': " + e.what());
  }
}

// Motion fields for frame pairs 1..n-1: the sidecar when configured,
// block matching otherwise. The sidecar must cover every pair with the
// grid geometry its own block size implies.
inline std::vector<MotionField> motion_fields(const PipelineConfig& cfg, const LumaSequence& luma) {
  if (!cfg.motion_sidecar_path.empty()) {
    std::vector<MotionField> fields = parse_motion_sidecar(read_file_text(cfg.motion_sidecar_path));
    std::int64_t pairs = luma.frame_count() - 1;
    if (static_cast<std::int64_t>(fields.size()) != pairs)
      throw format_error("motion sidecar holds " + std::to_string(fields.size()) +
                         " fields, need " + std::to_string(pairs));
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const MotionField& f = fields[i];
      if (f.frame_index != static_cast<std::int64_t>(i) + 1)
        throw format_error("motion sidecar fields must cover frames 1..n-1 in order");
      int gw = (luma.width() + f.block_size - 1) / f.block_size;
      int gh = (luma.height() + f.block_size - 1) / f.block_size;
      if (f.grid_width != gw || f.grid_height != gh)
        throw format_error("motion sidecar grid does not match the video geometry");
    }
    return fields;
  }
  return sequence_motion_fields(luma, cfg.motion, cfg.threads);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stage bodies (pure: inputs in, document struct out)
// ---------------------------------------------------------------------------

inline ShotListDoc stage_segment(const PipelineConfig& cfg, const LumaSequence& luma) {
  ShotListDoc doc;
  doc.fps = cfg.video.fps;
  doc.frame_count = luma.frame_count();
  doc.shots = segment_shots(luma, cfg.phase_schedule(), cfg.segmentation, cfg.threads);
  return doc;
}

inline KeyframesDoc stage_keyframes(const PipelineConfig& cfg, const FrameSequence& video,
                                    const std::vector<MotionField>& fields,
                                    const std::vector<Shot>& shots) {
  KeyframesDoc doc;
  doc.fps = cfg.video.fps;
  std::vector<double> activity = activity_series(fields, video.frame_count());
  doc.shots = keyframes_for_shots(shots, activity, video, cfg.keyframes);
  return doc;
}

inline DescriptorsDoc stage_describe(const PipelineConfig& cfg, const FrameSequence& video,
                                     const LumaSequence& luma,
                                     const std::vector<MotionField>& fields,
                                     const AudioTrack& audio, const std::vector<Shot>& shots,
                                     const KeyframesDoc& keyframes) {
  if (audio.sample_rate != kAudioRate)
    throw config_error("audio analysis requires 48000 Hz input, got " +
                       std::to_string(audio.sample_rate) + " (resample externally)");
  if (keyframes.shots.size() != shots.size())
    throw format_error("keyframes document does not cover every shot");

  DescriptorsDoc doc;
  doc.fps = cfg.video.fps;

  WhistleAnalysis whistles = detect_whistles(audio, cfg.whistle, cfg.threads);
  doc.whistles = whistles.events;
  AudioPowerSeries power = audio_power(audio);
  std::vector<AudioFlags> aflags = audio_flags_for_shots(shots, cfg.video.fps, power);

  std::vector<double> activity = activity_series(fields, video.frame_count());

  std::optional<LogoTemplate> user_tmpl;
  if (!cfg.logo_template_path.empty())
    user_tmpl = load_logo_template(cfg.logo_template_path, cfg.video.width, cfg.video.height);
  std::vector<std::int64_t> boundaries;
  for (const Shot& s : shots)
    if (s.start_frame > 0) boundaries.push_back(s.start_frame);
  FrameStats stats = frame_luma_stats(luma, cfg.threads);
  ReplayAnalysis replays =
      detect_replays(luma, stats, boundaries, cfg.video.fps, cfg.replay, std::move(user_tmpl), cfg.threads);
  std::vector<bool> replay_flags = replay_flags_for_shots(shots, replays.intervals);

  std::vector<char> sidecar_mark(shots.size(), 0);
  if (!cfg.persons_sidecar_path.empty()) {
    PersonsSidecar ps = parse_persons_sidecar(read_file_text(cfg.persons_sidecar_path));
    for (std::int64_t id : ps.shot_ids) {
      if (id < 0 || id >= static_cast<std::int64_t>(shots.size()))
        throw format_error("persons sidecar shot id out of range: " + std::to_string(id));
      sidecar_mark[static_cast<std::size_t>(id)] = 1;
    }
    for (const auto& box : ps.boxes) {
      if (box.frame < 0 || box.frame >= video.frame_count())
        throw format_error("persons sidecar frame out of range: " + std::to_string(box.frame));
      for (std::size_t i = 0; i < shots.size(); ++i)
        if (box.frame >= shots[i].start_frame && box.frame < shots[i].end_frame) {
          sidecar_mark[i] = 1;
          break;
        }
    }
  }

  doc.shots.resize(shots.size());
  parallel_for(static_cast<std::int64_t>(shots.size()), cfg.threads, [&](std::int64_t si) {
    std::size_t i = static_cast<std::size_t>(si);
    const Shot& s = shots[i];
    const ShotKeyframes& sk = keyframes.shots[i];
    ShotDescriptors d;
    d.keyframes = sk.frames;
    d.mean_activity = sk.mean_activity;
    d.audio = aflags[i];
    d.replay = replay_flags[i];

    bool long_shot = false;
    for (std::int64_t f : sk.frames) {
      RgbImage rgb = frame_to_rgb(video.frame(f));
      d.keyframe_skin.push_back(skin_fraction(rgb));
      if (!long_shot && classify_long_shot(rgb, cfg.longshot).long_shot) long_shot = true;
    }
    d.long_shot = long_shot;
    d.persons = persons_flag(d.keyframe_skin, sidecar_mark[i] != 0, cfg.skin);

    std::vector<const MotionField*> shot_fields;
    for (std::int64_t f = s.start_frame + 1; f < s.end_frame; ++f)
      shot_fields.push_back(&fields[static_cast<std::size_t>(f - 1)]);
    d.zoom = detect_zoom(shot_fields, cfg.zoom);

    for (const WhistleEvent& ev : whistles.events)
      if (whistle_overlaps_shot(ev, s, cfg.video.fps)) {
        d.whistle = true;
        break;
      }
    doc.shots[i] = std::move(d);
  });
  return doc;
}

inline ScoresDoc stage_score(const PipelineConfig& cfg, Rational fps,
                             const std::vector<Shot>& shots, const DescriptorsDoc& descriptors) {
  if (descriptors.shots.size() != shots.size())
    throw format_error("descriptors document does not cover every shot");
  std::vector<AdvancedFilterSpec> filters = cfg.effective_filters();
  std::vector<ElementaryVector> elems(shots.size());
  parallel_for(static_cast<std::int64_t>(shots.size()), cfg.threads, [&](std::int64_t i) {
    std::size_t s = static_cast<std::size_t>(i);
    elems[s] = evaluate_elementary(shots[s], descriptors.shots[s], fps, cfg.highlight);
  });
  ScoresDoc doc;
  for (const AdvancedFilterSpec& f : filters) doc.filter_names.push_back(f.name);
  doc.table = score_shots(filters, elems);
  return doc;
}

inline SummaryDoc stage_select(const PipelineConfig& cfg, Rational fps,
                               const std::vector<Shot>& shots, const ScoresDoc& scores) {
  std::vector<AdvancedFilterSpec> filters = cfg.effective_filters();
  if (scores.filter_names.size() != filters.size())
    throw format_error("scores document does not match the configured filters");
  for (std::size_t f = 0; f < filters.size(); ++f)
    if (scores.filter_names[f] != filters[f].name)
      throw format_error("scores document filter order does not match configuration");
  SummaryDoc doc;
  doc.fps = fps;
  doc.summary = select_shots(shots, fps, scores.table, filters, cfg.summary_spec());
  return doc;
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

// Full pipeline: validates inputs up front (no partial outputs on bad
// config), runs every stage in order, persists each stage's document.
inline void run_pipeline(const PipelineConfig& cfg) {
  cfg.video.validate();
  detail::require_input(cfg.video_path, "video file");
  detail::require_input(cfg.audio_path, "audio file");
  if (!cfg.logo_template_path.empty()) detail::require_input(cfg.logo_template_path, "logo template");
  if (!cfg.persons_sidecar_path.empty())
    detail::require_input(cfg.persons_sidecar_path, "persons sidecar");
  if (!cfg.motion_sidecar_path.empty()) detail::require_input(cfg.motion_sidecar_path, "motion sidecar");
  cfg.summary_spec();  // validates duration and percentages before any work
  std::filesystem::create_directories(cfg.out_dir);

  FrameSequence video = detail::with_stage("load", [&] { return load_video(cfg.video_path, cfg.video); });
  AudioTrack audio = detail::with_stage("load", [&] { return load_audio(cfg.audio_path, cfg.audio_rate); });
  LumaSequence luma(video);

  ShotListDoc shots = detail::with_stage("segment", [&] { return stage_segment(cfg, luma); });
  write_file_text(detail::doc_path(cfg, kShotsDocName), write_shot_list(shots));

  std::vector<MotionField> fields =
      detail::with_stage("keyframes", [&] { return detail::motion_fields(cfg, luma); });
  KeyframesDoc keyframes = detail::with_stage(
      "keyframes", [&] { return stage_keyframes(cfg, video, fields, shots.shots); });
  write_file_text(detail::doc_path(cfg, kKeyframesDocName), write_keyframes(keyframes));

  DescriptorsDoc descriptors = detail::with_stage("describe", [&] {
    return stage_describe(cfg, video, luma, fields, audio, shots.shots, keyframes);
  });
  write_file_text(detail::doc_path(cfg, kDescriptorsDocName), write_descriptors(descriptors));

  ScoresDoc scores = detail::with_stage(
      "score", [&] { return stage_score(cfg, shots.fps, shots.shots, descriptors); });
  write_file_text(detail::doc_path(cfg, kScoresDocName), write_scores(scores));

  SummaryDoc summary = detail::with_stage(
      "select", [&] { return stage_select(cfg, shots.fps, shots.shots, scores); });
  write_file_text(detail::doc_path(cfg, kSummaryDocName), write_summary(summary));
}

// One stage from persisted intermediates. Media loads only when the stage
// needs it; score and select run on documents alone.
inline void run_stage(const std::string& stage, const PipelineConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);

  if (stage == "segment") {
    cfg.video.validate();
    detail::require_input(cfg.video_path, "video file");
    FrameSequence video = load_video(cfg.video_path, cfg.video);
    LumaSequence luma(video);
    ShotListDoc shots = detail::with_stage("segment", [&] { return stage_segment(cfg, luma); });
    write_file_text(detail::doc_path(cfg, kShotsDocName), write_shot_list(shots));
    return;
  }
  if (stage == "keyframes") {
    cfg.video.validate();
    detail::require_input(cfg.video_path, "video file");
    ShotListDoc shots = parse_shot_list(detail::require_doc(cfg, kShotsDocName, "keyframes"));
    FrameSequence video = load_video(cfg.video_path, cfg.video);
    LumaSequence luma(video);
    std::vector<MotionField> fields =
        detail::with_stage("keyframes", [&] { return detail::motion_fields(cfg, luma); });
    KeyframesDoc doc = detail::with_stage(
        "keyframes", [&] { return stage_keyframes(cfg, video, fields, shots.shots); });
    write_file_text(detail::doc_path(cfg, kKeyframesDocName), write_keyframes(doc));
    return;
  }
  if (stage == "describe") {
    cfg.video.validate();
    detail::require_input(cfg.video_path, "video file");
    detail::require_input(cfg.audio_path, "audio file");
    ShotListDoc shots = parse_shot_list(detail::require_doc(cfg, kShotsDocName, "describe"));
    KeyframesDoc keyframes = parse_keyframes(detail::require_doc(cfg, kKeyframesDocName, "describe"));
    FrameSequence video = load_video(cfg.video_path, cfg.video);
    LumaSequence luma(video);
    AudioTrack audio = load_audio(cfg.audio_path, cfg.audio_rate);
    std::vector<MotionField> fields =
        detail::with_stage("describe", [&] { return detail::motion_fields(cfg, luma); });
    DescriptorsDoc doc = detail::with_stage("describe", [&] {
      return stage_describe(cfg, video, luma, fields, audio, shots.shots, keyframes);
    });
    write_file_text(detail::doc_path(cfg, kDescriptorsDocName), write_descriptors(doc));
    return;
  }
  if (stage == "score") {
    ShotListDoc shots = parse_shot_list(detail::require_doc(cfg, kShotsDocName, "score"));
    DescriptorsDoc descriptors =
        parse_descriptors(detail::require_doc(cfg, kDescriptorsDocName, "score"));
    ScoresDoc doc = detail::with_stage(
        "score", [&] { return stage_score(cfg, shots.fps, shots.shots, descriptors); });
    write_file_text(detail::doc_path(cfg, kScoresDocName), write_scores(doc));
    return;
  }
  if (stage == "select") {
    ShotListDoc shots = parse_shot_list(detail::require_doc(cfg, kShotsDocName, "select"));
    ScoresDoc scores = parse_scores(detail::require_doc(cfg, kScoresDocName, "select"));
    SummaryDoc doc = detail::with_stage(
        "select", [&] { return stage_select(cfg, shots.fps, shots.shots, scores); });
    write_file_text(detail::doc_path(cfg, kSummaryDocName), write_summary(doc));
    return;
  }
  throw config_error("unknown stage '" + stage + "' (segment, keyframes, describe, score, select)");
}

}  // namespace socsum
