/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "socsum/audio.hpp"
#include "socsum/core.hpp"
#include "socsum/motion.hpp"
#include "socsum/replay.hpp"

namespace socsum {

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw io_error("cannot open " + path);
  std::fseek(f, 0, SEEK_END);
  long size = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  if (size < 0) {
    std::fclose(f);
    throw io_error("cannot stat " + path);
  }
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  std::size_t got = size > 0 ? std::fread(bytes.data(), 1, bytes.size(), f) : 0;
  std::fclose(f);
  if (got != bytes.size()) throw io_error("short read on " + path);
  return bytes;
}

inline std::string read_file_text(const std::string& path) {
  std::vector<std::uint8_t> b = read_file_bytes(path);
  return std::string(b.begin(), b.end());
}

inline void write_file_text(const std::string& path, std::string_view text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw io_error("cannot create " + path);
  std::size_t put = text.empty() ? 0 : std::fwrite(text.data(), 1, text.size(), f);
  if (std::fclose(f) != 0 || put != text.size()) throw io_error("short write on " + path);
}

// Headerless planar frames, laid out back to back in stream order.
inline FrameSequence load_video(const std::string& path, const VideoConfig& cfg) {
  cfg.validate();
  std::vector<std::uint8_t> bytes = read_file_bytes(path);
  if (bytes.empty()) throw format_error(path + ": empty video stream");
  if (bytes.size() % frame_bytes(cfg) != 0)
    throw format_error(path + ": truncated stream (not a whole number of frames)");
  return FrameSequence::adopt(cfg, std::move(bytes));
}

namespace detail {

inline std::uint32_t le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

inline std::uint16_t le16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

inline AudioTrack parse_wav(const std::string& path, const std::vector<std::uint8_t>& b) {
  if (b.size() < 12) throw format_error(path + ": truncated RIFF header");
  AudioTrack track;
  bool have_fmt = false, have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    std::string_view id(reinterpret_cast<const char*>(b.data() + pos), 4);
    std::uint32_t size = le32(b.data() + pos + 4);
    pos += 8;
    if (pos + size > b.size()) throw format_error(path + ": chunk overruns file");
    if (id == "fmt ") {
      if (size < 16) throw format_error(path + ": short fmt chunk");
      std::uint16_t format = le16(b.data() + pos);
      std::uint16_t channels = le16(b.data() + pos + 2);
      std::uint32_t rate = le32(b.data() + pos + 4);
      std::uint16_t bits = le16(b.data() + pos + 14);
      if (channels != 1) throw format_error(path + ": multi-channel audio is not supported");
      if (format != 1 || bits != 16)
        throw format_error(path + ": unsupported encoding (need 16-bit PCM)");
      track.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (id == "data") {
      if (size % 2 != 0) throw format_error(path + ": odd sample payload");
      track.samples.resize(size / 2);
      for (std::size_t i = 0; i < track.samples.size(); ++i)
        track.samples[i] = static_cast<std::int16_t>(le16(b.data() + pos + 2 * i));
      have_data = true;
    }
    pos += size + (size % 2);  // chunks are word aligned
  }
  if (!have_fmt || !have_data) throw format_error(path + ": missing fmt or data chunk");
  return track;
}

}  // namespace detail

// Raw s16le mono, or a RIFF/WAVE container with that payload. The rate
// override applies to raw input only; a container states its own.
inline AudioTrack load_audio(const std::string& path, int raw_sample_rate = kAudioRate) {
  std::vector<std::uint8_t> bytes = read_file_bytes(path);
  if (bytes.size() >= 12 && std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) == "RIFF" &&
      std::string_view(reinterpret_cast<const char*>(bytes.data()) + 8, 4) == "WAVE")
    return detail::parse_wav(path, bytes);
  if (bytes.size() % 2 != 0) throw format_error(path + ": odd byte count for s16le samples");
  if (raw_sample_rate <= 0) throw config_error("audio sample rate must be positive");
  AudioTrack track;
  track.sample_rate = raw_sample_rate;
  track.samples.resize(bytes.size() / 2);
  for (std::size_t i = 0; i < track.samples.size(); ++i)
    track.samples[i] = static_cast<std::int16_t>(detail::le16(bytes.data() + 2 * i));
  return track;
}

// Frame-sized grayscale logo template: binary PGM (P5, maxval <= 255) or
// headerless width*height bytes.
inline LogoTemplate load_logo_template(const std::string& path, int width, int height) {
  std::vector<std::uint8_t> bytes = read_file_bytes(path);
  LogoTemplate tmpl;
  tmpl.width = width;
  tmpl.height = height;
  std::size_t need = static_cast<std::size_t>(width) * height;
  const std::uint8_t* px = nullptr;
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    std::size_t pos = 2;
    long vals[3];
    for (int v = 0; v < 3; ++v) {
      for (;;) {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
        if (pos < bytes.size() && bytes[pos] == '#') {
          while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
          break;
        }
      }
      long x = 0;
      bool any = false;
      while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
        x = x * 10 + (bytes[pos] - '0');
        ++pos;
        any = true;
      }
      if (!any) throw format_error(path + ": bad PGM header");
      vals[v] = x;
    }
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw format_error(path + ": bad PGM header");
    ++pos;  // single whitespace before raster
    if (vals[0] != width || vals[1] != height)
      throw format_error(path + ": template is not frame-sized");
    if (vals[2] <= 0 || vals[2] > 255) throw format_error(path + ": PGM maxval must be <= 255");
    if (bytes.size() - pos < need) throw format_error(path + ": truncated PGM raster");
    px = bytes.data() + pos;
  } else {
    if (bytes.size() != need) throw format_error(path + ": raw template must be width*height bytes");
    px = bytes.data();
  }
  tmpl.px.resize(need);
  for (std::size_t i = 0; i < need; ++i) tmpl.px[i] = static_cast<float>(px[i]);
  return tmpl;
}

// ---------------------------------------------------------------------------
// Sidecars
// ---------------------------------------------------------------------------

// Motion sidecar: whitespace-separated text. Header names the block size
// and grid; each `field <frame>` record is followed by grid_h rows of
// grid_w (dx, dy) pairs. Lets externally extracted vectors (e.g. from a
// coded bitstream) replace block matching.
//
//   motion-fields v1
//   block_size 16
//   grid 23 18
//   field 1
//   0 0  0 0  ...
inline std::vector<MotionField> parse_motion_sidecar(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  auto next = [&](const char* what) {
    if (!(in >> word)) throw format_error(std::string("motion sidecar: missing ") + what);
    return word;
  };
  if (next("magic") != "motion-fields" || next("version") != "v1")
    throw format_error("motion sidecar: bad header");
  if (next("block_size keyword") != "block_size") throw format_error("motion sidecar: expected block_size");
  int block = static_cast<int>(parse_int(next("block size")));
  if (next("grid keyword") != "grid") throw format_error("motion sidecar: expected grid");
  int gw = static_cast<int>(parse_int(next("grid width")));
  int gh = static_cast<int>(parse_int(next("grid height")));
  if (block < 1 || gw < 1 || gh < 1) throw format_error("motion sidecar: bad geometry");

  std::vector<MotionField> fields;
  while (in >> word) {
    if (word != "field") throw format_error("motion sidecar: expected 'field', got '" + word + "'");
    MotionField f;
    f.frame_index = parse_int(next("frame index"));
    f.block_size = block;
    f.grid_width = gw;
    f.grid_height = gh;
    f.v.resize(static_cast<std::size_t>(gw) * gh);
    for (auto& mv : f.v) {
      mv.dx = parse_double(next("dx"));
      mv.dy = parse_double(next("dy"));
    }
    if (!fields.empty() && f.frame_index <= fields.back().frame_index)
      throw format_error("motion sidecar: field frame indices must increase");
    fields.push_back(std::move(f));
  }
  return fields;
}

inline std::string format_motion_sidecar(const std::vector<MotionField>& fields) {
  std::string out = "motion-fields v1\n";
  if (!fields.empty()) {
    out += "block_size " + std::to_string(fields.front().block_size) + "\n";
    out += "grid " + std::to_string(fields.front().grid_width) + " " +
           std::to_string(fields.front().grid_height) + "\n";
  } else {
    out += "block_size 16\ngrid 1 1\n";
  }
  for (const MotionField& f : fields) {
    out += "field " + std::to_string(f.frame_index) + "\n";
    for (int r = 0; r < f.grid_height; ++r) {
      for (int c = 0; c < f.grid_width; ++c) {
        if (c) out += "  ";
        out += format_double(f.at(r, c).dx);
        out += ' ';
        out += format_double(f.at(r, c).dy);
      }
      out += '\n';
    }
  }
  return out;
}

// Persons sidecar: external people detections. Lines are either
// `shot <id>` (whole shot shows people) or `frame <index> <x> <y> <w> <h>`
// (a detection box; the containing shot is marked). '#' starts a comment.
struct PersonsSidecar {
  std::vector<std::int64_t> shot_ids;
  struct FrameBox {
    std::int64_t frame;
    std::int64_t x, y, w, h;
  };
  std::vector<FrameBox> boxes;
};

inline PersonsSidecar parse_persons_sidecar(const std::string& text) {
  PersonsSidecar out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto want = [&](const char* what) {
      std::string w;
      if (!(ls >> w))
        throw format_error("persons sidecar line " + std::to_string(lineno) + ": missing " + what);
      return w;
    };
    if (kind == "shot") {
      out.shot_ids.push_back(parse_int(want("shot id")));
    } else if (kind == "frame") {
      PersonsSidecar::FrameBox fb;
      fb.frame = parse_int(want("frame"));
      fb.x = parse_int(want("x"));
      fb.y = parse_int(want("y"));
      fb.w = parse_int(want("w"));
      fb.h = parse_int(want("h"));
      out.boxes.push_back(fb);
    } else {
      throw format_error("persons sidecar line " + std::to_string(lineno) + ": unknown record '" +
                         kind + "'");
    }
    std::string extra;
    if (ls >> extra)
      throw format_error("persons sidecar line " + std::to_string(lineno) + ": trailing content");
  }
  return out;
}

}  // namespace socsum
