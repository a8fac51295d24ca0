#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "orchard/error.hpp"
#include "orchard/network.hpp"

namespace orchard {

// Arc-list document:
//
//   {
//     "format_version": 1,
//     "leaves": ["a", "b"],
//     "internal_order": ["r"],
//     "arcs": [
//       ["r", "a"],
//       ["r", "b"]
//     ]
//   }
//
// Leaves are named by label; arcs are sorted.

inline constexpr int arclist_format_version = 1;

namespace detail {

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

inline std::string string_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += json_string(xs[i]);
  }
  return out + "]";
}

// Reader for the small JSON subset used by the arc-list format.
class ArclistReader {
 public:
  explicit ArclistReader(std::string_view text) : s_(text) {}

  RawNetwork read() {
    RawNetwork raw;
    bool seen[4] = {false, false, false, false};
    expect('{', "'{'");
    skip_ws();
    if (peek() != '}') {
      for (;;) {
        skip_ws();
        const auto [kl, kc] = here();
        const std::string key = string_value();
        expect(':', "':'");
        int slot = -1;
        if (key == "format_version") {
          slot = 0;
          skip_ws();
          const auto [l, c] = here();
          if (integer_value() != arclist_format_version)
            throw Error(Errc::SyntaxError, at(l, c) + "unsupported format_version", l, c);
        } else if (key == "leaves") {
          slot = 1;
          std::vector<std::string> leaves = string_array();
          raw.vertices.insert(raw.vertices.begin(), leaves.begin(), leaves.end());
        } else if (key == "internal_order") {
          slot = 2;
          raw.internal_order = string_array();
          raw.vertices.insert(raw.vertices.end(), raw.internal_order.begin(), raw.internal_order.end());
        } else if (key == "arcs") {
          slot = 3;
          raw.arcs = arc_array();
        } else {
          throw Error(Errc::SyntaxError, at(kl, kc) + "unknown key " + json_string(key), kl, kc);
        }
        if (seen[slot]) throw Error(Errc::SyntaxError, at(kl, kc) + "duplicate key " + json_string(key), kl, kc);
        seen[slot] = true;
        skip_ws();
        if (peek() == ',') {
          advance();
          continue;
        }
        break;
      }
    }
    expect('}', "',' or '}'");
    skip_ws();
    if (pos_ != s_.size()) fail("end of document");
    static constexpr const char* names[] = {"format_version", "leaves", "internal_order", "arcs"};
    for (int i = 0; i < 4; ++i)
      if (!seen[i]) fail(std::string("key \"") + names[i] + "\"");
    return raw;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void advance() {
    const unsigned char c = static_cast<unsigned char>(s_[pos_++]);
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++col_;
    }
  }

  std::pair<std::size_t, std::size_t> here() const { return {line_, col_}; }

  static std::string at(std::size_t l, std::size_t c) {
    return std::to_string(l) + ":" + std::to_string(c) + ": ";
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw Error(Errc::SyntaxError, at(line_, col_) + "expected " + expected + ", got " + got, line_, col_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      advance();
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c) fail(what);
    advance();
  }

  long long integer_value() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000) fail("small integer");
      advance();
    }
    return v;
  }

  std::string string_value() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() != '"') fail("string");
    advance();
    bool escaped = false;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') fail("closing '\"'");
      advance();
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        try {
          return nlohmann::json::parse(s_.substr(start, pos_ - start)).get<std::string>();
        } catch (const nlohmann::json::exception&) {
          throw Error(Errc::SyntaxError, at(line_, col_) + "invalid string escape", line_, col_);
        }
      }
    }
    fail("closing '\"'");
  }

  std::vector<std::string> string_array() {
    std::vector<std::string> out;
    expect('[', "'['");
    skip_ws();
    if (peek() == ']') {
      advance();
      return out;
    }
    for (;;) {
      out.push_back(string_value());
      skip_ws();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']', "',' or ']'");
      return out;
    }
  }

  std::vector<std::pair<VertexId, VertexId>> arc_array() {
    std::vector<std::pair<VertexId, VertexId>> out;
    expect('[', "'['");
    skip_ws();
    if (peek() == ']') {
      advance();
      return out;
    }
    for (;;) {
      expect('[', "'[' opening an arc pair");
      auto from = string_value();
      expect(',', "',' and a second vertex in the arc pair");
      auto to = string_value();
      expect(']', "']' closing the arc pair");
      out.emplace_back(std::move(from), std::move(to));
      skip_ws();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']', "',' or ']'");
      return out;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline std::string serialize_arclist(const PhyloNetwork& net) {
  auto written = [&](PhyloNetwork::Index v) -> const std::string& {
    return net.is_leaf(v) ? net.label(v) : net.name(v);
  };
  std::vector<std::string> internal;
  for (auto v : net.internal_order()) internal.push_back(net.name(v));
  std::vector<std::pair<std::string, std::string>> arcs;
  for (auto [u, v] : net.arcs()) arcs.emplace_back(written(u), written(v));
  std::sort(arcs.begin(), arcs.end());

  std::string out = "{\n";
  out += "  \"format_version\": " + std::to_string(arclist_format_version) + ",\n";
  out += "  \"leaves\": " + detail::string_list(net.leaf_labels()) + ",\n";
  out += "  \"internal_order\": " + detail::string_list(internal) + ",\n";
  out += "  \"arcs\": [";
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    out += i ? ",\n    [" : "\n    [";
    out += detail::json_string(arcs[i].first) + ", " + detail::json_string(arcs[i].second) + "]";
  }
  out += arcs.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

/// Throws SyntaxError with a line/column, then any validate() error.
inline PhyloNetwork parse_arclist(std::string_view text) { return validate(detail::ArclistReader(text).read()); }

}  // namespace orchard
