/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "socsum/core.hpp"

namespace socsum {

// Minimal XML dialect for the pipeline documents: elements and attributes
// only (no text nodes, no namespaces, no CDATA), double-quoted attribute
// values, UTF-8 passthrough. The writer is deterministic: attributes in
// insertion order, two-space indent, LF line endings. Exactly what the
// readers in this codebase and a human need, nothing more.

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlElement> children;

  XmlElement() = default;
  explicit XmlElement(std::string n) : name(std::move(n)) {}

  XmlElement& set(std::string key, std::string value) {
    attrs.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }

  const std::string& attr(std::string_view key) const {
    const std::string* v = find(key);
    if (!v) throw format_error("<" + name + "> lacks attribute '" + std::string(key) + "'");
    return *v;
  }

  XmlElement& add_child(std::string child_name) {
    children.emplace_back(std::move(child_name));
    return children.back();
  }
};

namespace detail {

inline void xml_escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

inline void xml_write_element(std::string& out, const XmlElement& e, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '<';
  out += e.name;
  for (const auto& [k, v] : e.attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    xml_escape_into(out, v);
    out += '"';
  }
  if (e.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const XmlElement& c : e.children) xml_write_element(out, c, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</";
  out += e.name;
  out += ">\n";
}

class XmlParser {
 public:
  explicit XmlParser(std::string_view text) : text_(text) {}

  XmlElement parse_document() {
    skip_prolog();
    XmlElement root = parse_element();
    skip_space();
    if (pos_ != text_.size()) throw format_error("trailing content after document element");
    return root;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw format_error("XML parse error at byte " + std::to_string(pos_) + ": " + why);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) ++pos_;
  }

  void skip_prolog() {
    skip_space();
    if (text_.substr(pos_).starts_with("<?xml")) {
      std::size_t end = text_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated declaration");
      pos_ = end + 2;
      skip_space();
    }
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c == ':';
  }

  std::string parse_name() {
    std::size_t begin = pos_;
    while (!eof() && name_char(peek())) ++pos_;
    if (pos_ == begin) fail("expected a name");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  std::string parse_attr_value() {
    if (eof() || peek() != '"') fail("expected '\"'");
    ++pos_;
    std::string out;
    while (!eof() && peek() != '"') {
      if (peek() == '&') {
        std::size_t semi = text_.find(';', pos_);
        if (semi == std::string_view::npos) fail("unterminated entity");
        std::string_view ent = text_.substr(pos_ + 1, semi - pos_ - 1);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else fail("unknown entity '&" + std::string(ent) + ";'");
        pos_ = semi + 1;
      } else {
        out += peek();
        ++pos_;
      }
    }
    if (eof()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  XmlElement parse_element() {
    skip_space();
    if (eof() || peek() != '<') fail("expected '<'");
    ++pos_;
    XmlElement e;
    e.name = parse_name();
    for (;;) {
      skip_space();
      if (eof()) fail("unterminated tag");
      if (peek() == '/') {
        ++pos_;
        if (eof() || peek() != '>') fail("expected '>' after '/'");
        ++pos_;
        return e;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      std::string key = parse_name();
      skip_space();
      if (eof() || peek() != '=') fail("expected '='");
      ++pos_;
      skip_space();
      e.attrs.emplace_back(std::move(key), parse_attr_value());
    }
    for (;;) {
      skip_space();
      if (eof()) fail("unterminated element <" + e.name + ">");
      if (peek() != '<') fail("text content is not part of this dialect");
      if (text_.substr(pos_).starts_with("</")) {
        pos_ += 2;
        std::string close = parse_name();
        if (close != e.name) fail("mismatched close tag </" + close + ">");
        skip_space();
        if (eof() || peek() != '>') fail("expected '>'");
        ++pos_;
        return e;
      }
      e.children.push_back(parse_element());
    }
  }
};

}  // namespace detail

inline std::string xml_serialize(const XmlElement& root) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  detail::xml_write_element(out, root, 0);
  return out;
}

inline XmlElement xml_parse(std::string_view text) {
  return detail::XmlParser(text).parse_document();
}

}  // namespace socsum
