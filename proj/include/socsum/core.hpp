/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cstdint>
#include <cstdlib>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socsum {

// Typed error hierarchy. Everything the library throws derives from error,
// so callers can catch one type at the boundary and still branch on cause.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / OS level failure (unreadable file, short read, write failure).
class io_error : public error {
 public:
  explicit io_error(const std::string& msg) : error(msg) {}
};

// Input bytes exist but do not parse (documents, sidecars, WAV headers).
class format_error : public error {
 public:
  explicit format_error(const std::string& msg) : error(msg) {}
};

// Bad user-supplied settings (config file, CLI values, summary spec).
class config_error : public error {
 public:
  explicit config_error(const std::string& msg) : error(msg) {}
};

// Precondition violation inside an analysis op (empty input, size mismatch).
class analysis_error : public error {
 public:
  explicit analysis_error(const std::string& msg) : error(msg) {}
};

// Exact frame rate as a rational. 25/1, 30000/1001 and friends; floating
// point rates drift over a 90 minute match, so all timecode math stays in
// integers until formatting.
struct Rational {
  std::int64_t num = 25;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Rational&) const = default;

  // Accepts "25", "25/1", "30000/1001".
  static Rational parse(std::string_view text) {
    Rational r;
    auto slash = text.find('/');
    std::string_view numpart = text.substr(0, slash);
    const char* nb = numpart.data();
    auto [np, nec] = std::from_chars(nb, nb + numpart.size(), r.num);
    if (nec != std::errc{} || np != nb + numpart.size())
      throw config_error("bad frame rate: " + std::string(text));
    if (slash != std::string_view::npos) {
      std::string_view denpart = text.substr(slash + 1);
      const char* db = denpart.data();
      auto [dp, dec] = std::from_chars(db, db + denpart.size(), r.den);
      if (dec != std::errc{} || dp != db + denpart.size())
        throw config_error("bad frame rate: " + std::string(text));
    } else {
      r.den = 1;
    }
    if (r.num <= 0 || r.den <= 0)
      throw config_error("frame rate must be positive: " + std::string(text));
    return r;
  }

  std::string to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Milliseconds at which frame `index` starts, rounded half up. Exact in
// int64 for any realistic index/rate.
inline std::int64_t frame_start_ms(std::int64_t index, Rational fps) {
  return (index * fps.den * 1000 + fps.num / 2) / fps.num;
}

inline double frame_start_s(std::int64_t index, Rational fps) {
  return static_cast<double>(index) * static_cast<double>(fps.den) / static_cast<double>(fps.num);
}

// "12.345" with exactly three decimals, from integral milliseconds.
inline std::string format_ms(std::int64_t ms) {
  std::string s = std::to_string(ms / 1000);
  s += '.';
  std::int64_t frac = ms % 1000;
  s += static_cast<char>('0' + frac / 100);
  s += static_cast<char>('0' + (frac / 10) % 10);
  s += static_cast<char>('0' + frac % 10);
  return s;
}

// Shortest round-trip decimal form; locale independent.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double v = 0;
  const char* b = text.data();
  auto [p, ec] = std::from_chars(b, b + text.size(), v);
  if (ec != std::errc{} || p != b + text.size())
    throw format_error("bad number: " + std::string(text));
  return v;
}

inline std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* b = text.data();
  auto [p, ec] = std::from_chars(b, b + text.size(), v);
  if (ec != std::errc{} || p != b + text.size())
    throw format_error("bad integer: " + std::string(text));
  return v;
}

enum class PixelFormat { ycbcr420, rgb24p };

inline std::string_view to_string(PixelFormat f) {
  return f == PixelFormat::ycbcr420 ? "yuv420p" : "rgbp";
}

inline PixelFormat pixel_format_from_string(std::string_view s) {
  if (s == "yuv420p") return PixelFormat::ycbcr420;
  if (s == "rgbp" || s == "rgb24p") return PixelFormat::rgb24p;
  throw config_error("unknown pixel format: " + std::string(s));
}

struct VideoConfig {
  int width = 0;
  int height = 0;
  Rational fps{25, 1};
  PixelFormat format = PixelFormat::ycbcr420;

  void validate() const {
    if (width <= 0 || height <= 0)
      throw config_error("frame dimensions must be positive");
    if (format == PixelFormat::ycbcr420 && (width % 2 || height % 2))
      throw config_error("4:2:0 frames need even dimensions");
  }
};

inline std::size_t frame_bytes(const VideoConfig& cfg) {
  std::size_t wh = static_cast<std::size_t>(cfg.width) * cfg.height;
  if (cfg.format == PixelFormat::ycbcr420) return wh + wh / 2;
  return wh * 3;
}

// Non-owning view of one plane; rows are contiguous.
struct PlaneView {
  const std::uint8_t* data = nullptr;
  int width = 0;
  int height = 0;

  const std::uint8_t* row(int r) const { return data + static_cast<std::size_t>(r) * width; }
  std::uint8_t at(int r, int c) const { return row(r)[c]; }
};

// View of one decoded frame inside a FrameSequence buffer.
struct Frame {
  std::int64_t index = 0;
  PixelFormat format = PixelFormat::ycbcr420;
  PlaneView plane[3];
};

// Owns the decoded media: one contiguous buffer, frames laid out
// back-to-back in display order. Views stay valid for the sequence's life.
class FrameSequence {
 public:
  FrameSequence() = default;
  explicit FrameSequence(VideoConfig cfg) : cfg_(cfg) { cfg_.validate(); }

  static FrameSequence adopt(VideoConfig cfg, std::vector<std::uint8_t> bytes) {
    cfg.validate();
    std::size_t per = frame_bytes(cfg);
    if (per == 0 || bytes.size() % per != 0)
      throw format_error("video byte count is not a whole number of frames");
    FrameSequence seq(cfg);
    seq.bytes_ = std::move(bytes);
    seq.count_ = static_cast<std::int64_t>(seq.bytes_.size() / per);
    return seq;
  }

  void push_frame(const std::uint8_t* frame, std::size_t n) {
    if (n != frame_bytes(cfg_)) throw format_error("pushed frame has wrong byte count");
    bytes_.insert(bytes_.end(), frame, frame + n);
    ++count_;
  }

  const VideoConfig& config() const { return cfg_; }
  std::int64_t frame_count() const { return count_; }
  bool empty() const { return count_ == 0; }

  Frame frame(std::int64_t i) const {
    if (i < 0 || i >= count_) throw analysis_error("frame index out of range");
    Frame f;
    f.index = i;
    f.format = cfg_.format;
    const std::uint8_t* base = bytes_.data() + static_cast<std::size_t>(i) * frame_bytes(cfg_);
    int w = cfg_.width, h = cfg_.height;
    if (cfg_.format == PixelFormat::ycbcr420) {
      f.plane[0] = {base, w, h};
      f.plane[1] = {base + static_cast<std::size_t>(w) * h, w / 2, h / 2};
      f.plane[2] = {base + static_cast<std::size_t>(w) * h + static_cast<std::size_t>(w / 2) * (h / 2), w / 2, h / 2};
    } else {
      std::size_t wh = static_cast<std::size_t>(w) * h;
      f.plane[0] = {base, w, h};
      f.plane[1] = {base + wh, w, h};
      f.plane[2] = {base + 2 * wh, w, h};
    }
    return f;
  }

  std::uint8_t* frame_data(std::int64_t i) {
    return bytes_.data() + static_cast<std::size_t>(i) * frame_bytes(cfg_);
  }
  const std::uint8_t* frame_data(std::int64_t i) const {
    return bytes_.data() + static_cast<std::size_t>(i) * frame_bytes(cfg_);
  }

 private:
  VideoConfig cfg_;
  std::vector<std::uint8_t> bytes_;
  std::int64_t count_ = 0;
};

// Mono PCM track, 16-bit samples.
struct AudioTrack {
  int sample_rate = 48000;
  std::vector<std::int16_t> samples;
};

enum class Transition { stream_start, hard_cut, dissolve };

inline std::string_view to_string(Transition t) {
  switch (t) {
    case Transition::stream_start: return "stream-start";
    case Transition::hard_cut: return "hard-cut";
    default: return "dissolve";
  }
}

inline Transition transition_from_string(std::string_view s) {
  if (s == "stream-start") return Transition::stream_start;
  if (s == "hard-cut") return Transition::hard_cut;
  if (s == "dissolve") return Transition::dissolve;
  throw format_error("unknown transition: " + std::string(s));
}

// Half-open frame range [start_frame, end_frame). transition_in describes
// how the shot was entered.
struct Shot {
  std::int64_t id = 0;
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;
  Transition transition_in = Transition::stream_start;

  std::int64_t frames() const { return end_frame - start_frame; }
};

inline double shot_duration_s(const Shot& s, Rational fps) {
  return static_cast<double>(s.frames()) * fps.den / static_cast<double>(fps.num);
}

// Shots must tile [0, frame_count) exactly: no gaps, no overlaps, ids 0..n-1.
inline void validate_tiling(const std::vector<Shot>& shots, std::int64_t frame_count) {
  if (frame_count <= 0) {
    if (!shots.empty()) throw analysis_error("shots present for empty sequence");
    return;
  }
  if (shots.empty()) throw analysis_error("no shots for non-empty sequence");
  std::int64_t expect = 0;
  for (std::size_t i = 0; i < shots.size(); ++i) {
    const Shot& s = shots[i];
    if (s.id != static_cast<std::int64_t>(i)) throw analysis_error("shot ids not sequential");
    if (s.start_frame != expect) throw analysis_error("shots do not tile the sequence");
    if (s.end_frame <= s.start_frame) throw analysis_error("empty shot");
    expect = s.end_frame;
  }
  if (expect != frame_count) throw analysis_error("shots do not cover the sequence");
}

}  // namespace socsum
