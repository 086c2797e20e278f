/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socsum/audio.hpp"
#include "socsum/core.hpp"
#include "socsum/filters.hpp"
#include "socsum/keyframes.hpp"
#include "socsum/select.hpp"
#include "socsum/xml.hpp"

// The five pipeline documents. Schemas are documented in docs/FORMATS.md;
// field names are a public contract. Frame indices are authoritative;
// second-valued attributes are derived for human reading and ignored on
// parse. Every writer is deterministic byte-for-byte.

namespace socsum {

namespace detail {

inline std::string bool_attr(bool v) { return v ? "1" : "0"; }

inline bool parse_bool(const std::string& s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw format_error("bad boolean '" + s + "'");
}

inline void set_time_attrs(XmlElement& e, std::int64_t start_frame, std::int64_t end_frame,
                           Rational fps) {
  e.set("start", format_ms(frame_start_ms(start_frame, fps)));
  e.set("end", format_ms(frame_start_ms(end_frame, fps)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Shot list
// ---------------------------------------------------------------------------

struct ShotListDoc {
  Rational fps;
  std::int64_t frame_count = 0;
  std::vector<Shot> shots;
};

inline std::string write_shot_list(const ShotListDoc& doc) {
  XmlElement root("shots");
  root.set("fps", doc.fps.to_string());
  root.set("frame_count", std::to_string(doc.frame_count));
  for (const Shot& s : doc.shots) {
    XmlElement& e = root.add_child("shot");
    e.set("id", std::to_string(s.id));
    e.set("start_frame", std::to_string(s.start_frame));
    e.set("end_frame", std::to_string(s.end_frame));
    detail::set_time_attrs(e, s.start_frame, s.end_frame, doc.fps);
    e.set("transition", std::string(to_string(s.transition_in)));
  }
  return xml_serialize(root);
}

inline ShotListDoc parse_shot_list(const std::string& text) {
  XmlElement root = xml_parse(text);
  if (root.name != "shots") throw format_error("expected <shots> document");
  ShotListDoc doc;
  doc.fps = Rational::parse(root.attr("fps"));
  doc.frame_count = parse_int(root.attr("frame_count"));
  for (const XmlElement& e : root.children) {
    if (e.name != "shot") throw format_error("unexpected <" + e.name + "> in shot list");
    Shot s;
    s.id = parse_int(e.attr("id"));
    s.start_frame = parse_int(e.attr("start_frame"));
    s.end_frame = parse_int(e.attr("end_frame"));
    s.transition_in = transition_from_string(e.attr("transition"));
    doc.shots.push_back(s);
  }
  validate_tiling(doc.shots, doc.frame_count);
  return doc;
}

// ---------------------------------------------------------------------------
// Keyframes
// ---------------------------------------------------------------------------

struct KeyframesDoc {
  Rational fps;
  std::vector<ShotKeyframes> shots;
};

inline std::string write_keyframes(const KeyframesDoc& doc) {
  XmlElement root("keyframes");
  root.set("fps", doc.fps.to_string());
  for (const ShotKeyframes& sk : doc.shots) {
    XmlElement& e = root.add_child("shot");
    e.set("id", std::to_string(sk.shot_id));
    e.set("mean_activity", format_double(sk.mean_activity));
    for (std::int64_t f : sk.frames) {
      XmlElement& kf = e.add_child("keyframe");
      kf.set("frame", std::to_string(f));
      kf.set("time", format_ms(frame_start_ms(f, doc.fps)));
    }
  }
  return xml_serialize(root);
}

inline KeyframesDoc parse_keyframes(const std::string& text) {
  XmlElement root = xml_parse(text);
  if (root.name != "keyframes") throw format_error("expected <keyframes> document");
  KeyframesDoc doc;
  doc.fps = Rational::parse(root.attr("fps"));
  for (const XmlElement& e : root.children) {
    if (e.name != "shot") throw format_error("unexpected <" + e.name + "> in keyframes");
    ShotKeyframes sk;
    sk.shot_id = parse_int(e.attr("id"));
    sk.mean_activity = parse_double(e.attr("mean_activity"));
    for (const XmlElement& kf : e.children) {
      if (kf.name != "keyframe") throw format_error("unexpected <" + kf.name + "> in keyframes");
      sk.frames.push_back(parse_int(kf.attr("frame")));
    }
    doc.shots.push_back(std::move(sk));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

struct DescriptorsDoc {
  Rational fps;
  std::vector<WhistleEvent> whistles;
  std::vector<ShotDescriptors> shots;  // index = shot id
};

inline std::string write_descriptors(const DescriptorsDoc& doc) {
  XmlElement root("descriptors");
  root.set("fps", doc.fps.to_string());
  for (const WhistleEvent& w : doc.whistles) {
    XmlElement& e = root.add_child("whistle");
    e.set("first_frame", std::to_string(w.first_frame));
    e.set("last_frame", std::to_string(w.last_frame));
    e.set("start", format_ms(w.first_frame * 100));
    e.set("end", format_ms((w.last_frame + 1) * 100));
  }
  for (std::size_t i = 0; i < doc.shots.size(); ++i) {
    const ShotDescriptors& d = doc.shots[i];
    XmlElement& e = root.add_child("shot");
    e.set("id", std::to_string(i));
    e.set("long_shot", detail::bool_attr(d.long_shot));
    e.set("zoom", detail::bool_attr(d.zoom));
    e.set("whistle", detail::bool_attr(d.whistle));
    e.set("replay", detail::bool_attr(d.replay));
    e.set("persons", detail::bool_attr(d.persons));
    e.set("mean_activity", format_double(d.mean_activity));
    e.set("a_power_h", detail::bool_attr(d.audio.power_h));
    e.set("a_power_vh", detail::bool_attr(d.audio.power_vh));
    e.set("a_intra_inc_50", detail::bool_attr(d.audio.intra_inc_50));
    e.set("a_intra_inc_100", detail::bool_attr(d.audio.intra_inc_100));
    e.set("a_inter_inc_50", detail::bool_attr(d.audio.inter_inc_50));
    e.set("a_inter_inc_100", detail::bool_attr(d.audio.inter_inc_100));
    for (std::size_t k = 0; k < d.keyframes.size(); ++k) {
      XmlElement& kf = e.add_child("keyframe");
      kf.set("frame", std::to_string(d.keyframes[k]));
      kf.set("skin", format_double(d.keyframe_skin[k]));
    }
  }
  return xml_serialize(root);
}

// Parsing enforces completeness: every <shot> must carry every descriptor
// attribute and ids must run 0..n-1 (downstream stages refuse to guess).
inline DescriptorsDoc parse_descriptors(const std::string& text) {
  XmlElement root = xml_parse(text);
  if (root.name != "descriptors") throw format_error("expected <descriptors> document");
  DescriptorsDoc doc;
  doc.fps = Rational::parse(root.attr("fps"));
  std::int64_t next_id = 0;
  for (const XmlElement& e : root.children) {
    if (e.name == "whistle") {
      WhistleEvent w;
      w.first_frame = parse_int(e.attr("first_frame"));
      w.last_frame = parse_int(e.attr("last_frame"));
      doc.whistles.push_back(w);
      continue;
    }
    if (e.name != "shot") throw format_error("unexpected <" + e.name + "> in descriptors");
    if (parse_int(e.attr("id")) != next_id)
      throw format_error("descriptor shot ids must run 0..n-1 in order");
    ++next_id;
    ShotDescriptors d;
    try {
      d.long_shot = detail::parse_bool(e.attr("long_shot"));
      d.zoom = detail::parse_bool(e.attr("zoom"));
      d.whistle = detail::parse_bool(e.attr("whistle"));
      d.replay = detail::parse_bool(e.attr("replay"));
      d.persons = detail::parse_bool(e.attr("persons"));
      d.mean_activity = parse_double(e.attr("mean_activity"));
      d.audio.power_h = detail::parse_bool(e.attr("a_power_h"));
      d.audio.power_vh = detail::parse_bool(e.attr("a_power_vh"));
      d.audio.intra_inc_50 = detail::parse_bool(e.attr("a_intra_inc_50"));
      d.audio.intra_inc_100 = detail::parse_bool(e.attr("a_intra_inc_100"));
      d.audio.inter_inc_50 = detail::parse_bool(e.attr("a_inter_inc_50"));
      d.audio.inter_inc_100 = detail::parse_bool(e.attr("a_inter_inc_100"));
    } catch (const format_error& fe) {
      throw format_error("incomplete descriptors for shot " + std::to_string(next_id - 1) + ": " +
                         fe.what());
    }
    for (const XmlElement& kf : e.children) {
      if (kf.name != "keyframe") throw format_error("unexpected <" + kf.name + "> in descriptors");
      d.keyframes.push_back(parse_int(kf.attr("frame")));
      d.keyframe_skin.push_back(parse_double(kf.attr("skin")));
    }
    doc.shots.push_back(std::move(d));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

struct ScoresDoc {
  std::vector<std::string> filter_names;  // declaration order
  ScoreTable table;
};

inline std::string write_scores(const ScoresDoc& doc) {
  XmlElement root("scores");
  for (const std::string& name : doc.filter_names) root.add_child("filter").set("name", name);
  std::size_t shots = doc.table.global_score.size();
  for (std::size_t s = 0; s < shots; ++s) {
    XmlElement& e = root.add_child("shot");
    e.set("id", std::to_string(s));
    e.set("global", format_double(doc.table.global_score[s]));
    for (std::size_t f = 0; f < doc.filter_names.size(); ++f) {
      XmlElement& l = e.add_child("local");
      l.set("filter", doc.filter_names[f]);
      l.set("value", format_double(doc.table.local[f][s]));
    }
  }
  return xml_serialize(root);
}

inline ScoresDoc parse_scores(const std::string& text) {
  XmlElement root = xml_parse(text);
  if (root.name != "scores") throw format_error("expected <scores> document");
  ScoresDoc doc;
  for (const XmlElement& e : root.children)
    if (e.name == "filter") doc.filter_names.push_back(e.attr("name"));
  doc.table.local.resize(doc.filter_names.size());
  std::int64_t next_id = 0;
  for (const XmlElement& e : root.children) {
    if (e.name == "filter") continue;
    if (e.name != "shot") throw format_error("unexpected <" + e.name + "> in scores");
    if (parse_int(e.attr("id")) != next_id) throw format_error("score shot ids must run 0..n-1");
    ++next_id;
    doc.table.global_score.push_back(parse_double(e.attr("global")));
    if (e.children.size() != doc.filter_names.size())
      throw format_error("shot lacks a local score per filter");
    for (std::size_t f = 0; f < doc.filter_names.size(); ++f) {
      const XmlElement& l = e.children[f];
      if (l.name != "local" || l.attr("filter") != doc.filter_names[f])
        throw format_error("local scores must follow filter declaration order");
      doc.table.local[f].push_back(parse_double(l.attr("value")));
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Summary
// ---------------------------------------------------------------------------

struct SummaryDoc {
  Rational fps;
  Summary summary;
};

inline std::string write_summary(const SummaryDoc& doc) {
  XmlElement root("summary");
  root.set("fps", doc.fps.to_string());
  root.set("target_duration", format_double(doc.summary.target_duration_s));
  for (const SummaryEntry& e : doc.summary.entries) {
    XmlElement& x = root.add_child("shot");
    x.set("id", std::to_string(e.shot_id));
    x.set("start_frame", std::to_string(e.start_frame));
    x.set("end_frame", std::to_string(e.end_frame));
    detail::set_time_attrs(x, e.start_frame, e.end_frame, doc.fps);
    x.set("filter", e.filter);
    x.set("local", format_double(e.local));
    x.set("global", format_double(e.global_score));
  }
  return xml_serialize(root);
}

inline SummaryDoc parse_summary(const std::string& text) {
  XmlElement root = xml_parse(text);
  if (root.name != "summary") throw format_error("expected <summary> document");
  SummaryDoc doc;
  doc.fps = Rational::parse(root.attr("fps"));
  doc.summary.target_duration_s = parse_double(root.attr("target_duration"));
  for (const XmlElement& e : root.children) {
    if (e.name != "shot") throw format_error("unexpected <" + e.name + "> in summary");
    SummaryEntry entry;
    entry.shot_id = parse_int(e.attr("id"));
    entry.start_frame = parse_int(e.attr("start_frame"));
    entry.end_frame = parse_int(e.attr("end_frame"));
    entry.filter = e.attr("filter");
    entry.local = parse_double(e.attr("local"));
    entry.global_score = parse_double(e.attr("global"));
    doc.summary.entries.push_back(std::move(entry));
  }
  return doc;
}

}  // namespace socsum
