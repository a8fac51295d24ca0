#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "orchard/error.hpp"
#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

// Profile document: header `leaf,<coord>,...`, then one `label,cell,...`
// row per leaf. A cell is a non-negative integer or `-` (placeholder).

inline std::string serialize_profile(const AncestralProfile& p) {
  std::string out = "leaf";
  for (const auto& c : p.coord_names) out += ',' + c;
  out += '\n';
  for (std::size_t i = 0; i < p.leaf_count(); ++i) {
    out += p.leaf_order[i];
    for (const auto& e : p.rows[i]) out += ',' + (e ? e->str() : std::string("-"));
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

inline Entry parse_cell(std::string_view cell, std::size_t line, std::size_t col) {
  if (cell == "-") return std::nullopt;
  auto all_digits = [](std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  if (cell.size() > 1 && cell[0] == '-' && all_digits(cell.substr(1)))
    throw Error(Errc::NegativeEntry,
                std::to_string(line) + ":" + std::to_string(col) + ": negative entry " + std::string(cell), line, col);
  if (!all_digits(cell))
    throw Error(Errc::SyntaxError,
                std::to_string(line) + ":" + std::to_string(col) + ": expected a non-negative integer or '-', got '" +
                    std::string(cell) + "'",
                line, col);
  return Count(std::string(cell));
}

}  // namespace detail

/// Throws SyntaxError, RaggedRow or NegativeEntry with a line/column.
inline AncestralProfile parse_profile(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  auto syntax = [](std::size_t l, std::size_t c, const std::string& what) {
    return Error(Errc::SyntaxError, std::to_string(l) + ":" + std::to_string(c) + ": " + what, l, c);
  };
  if (lines.empty()) throw syntax(1, 1, "expected header 'leaf,...'");

  AncestralProfile p;
  const auto header = detail::split_fields(lines[0]);
  if (header[0] != "leaf") throw syntax(1, 1, "expected header starting with 'leaf'");
  std::size_t col = 6;
  std::set<std::string_view> coords;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (!detail::valid_vertex_id(header[j])) throw syntax(1, col, "invalid coordinate name '" + std::string(header[j]) + "'");
    if (!coords.insert(header[j]).second)
      throw syntax(1, col, "duplicate coordinate name '" + std::string(header[j]) + "'");
    p.coord_names.emplace_back(header[j]);
    col += detail::utf8_length(header[j]) + 1;
  }

  std::set<std::string_view> leaves;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != header.size())
      throw Error(Errc::RaggedRow,
                  std::to_string(line) + ":1: row has " + std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()),
                  line, 1);
    if (!detail::valid_label(fields[0])) throw syntax(line, 1, "invalid leaf label '" + std::string(fields[0]) + "'");
    if (!leaves.insert(fields[0]).second)
      throw Error(Errc::DuplicateLeafLabel, std::to_string(line) + ":1: duplicate leaf '" + std::string(fields[0]) + "'",
                  line, 1);
    p.leaf_order.emplace_back(fields[0]);
    std::vector<Entry> row;
    std::size_t c = detail::utf8_length(fields[0]) + 2;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row.push_back(detail::parse_cell(fields[j], line, c));
      c += detail::utf8_length(fields[j]) + 1;
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

}  // namespace orchard
