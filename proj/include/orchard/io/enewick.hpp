#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "orchard/error.hpp"
#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

// Extended Newick: each reticulation appears twice as a node tagged
// `#H<int>`; at most one occurrence carries its child subtree, e.g.
// `((a,(b)#H1),#H1);`. Arc lengths are not supported.

namespace detail {

struct NewickNode {
  std::string label;
  int hybrid = 0;  // tag number, 0 if none
  bool has_children = false;
  std::vector<std::unique_ptr<NewickNode>> children;
  std::size_t line = 1, col = 1;
};

class NewickReader {
 public:
  explicit NewickReader(std::string_view text) : s_(text) {}

  std::unique_ptr<NewickNode> read() {
    auto root = subtree();
    skip_ws();
    if (peek() != ';') fail("';'");
    advance();
    skip_ws();
    if (pos_ != s_.size()) fail("end of input after ';'");
    return root;
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

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw Error(Errc::SyntaxError,
                std::to_string(line_) + ":" + std::to_string(col_) + ": expected " + expected + ", got " + got,
                line_, col_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  std::unique_ptr<NewickNode> subtree() {
    skip_ws();
    auto node = std::make_unique<NewickNode>();
    node->line = line_;
    node->col = col_;
    if (peek() == '(') {
      advance();
      node->has_children = true;
      for (;;) {
        node->children.push_back(subtree());
        skip_ws();
        if (peek() == ',') {
          advance();
          continue;
        }
        if (peek() != ')') fail("',' or ')'");
        advance();
        break;
      }
    }
    skip_ws();
    std::string name;
    while (pos_ < s_.size() && is_label_char(s_[pos_])) {
      name += s_[pos_];
      advance();
    }
    // a trailing #H<digits> is the hybrid tag
    auto h = name.rfind("#H");
    if (h != std::string::npos && h + 2 < name.size() &&
        std::all_of(name.begin() + static_cast<std::ptrdiff_t>(h) + 2, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const auto digits = name.substr(h + 2);
      if (digits.size() > 9) fail("a shorter hybrid tag number");
      node->hybrid = std::stoi(digits);
      if (node->hybrid == 0) fail("a positive hybrid tag number");
      name.resize(h);
    }
    node->label = std::move(name);
    if (!node->has_children && node->label.empty() && node->hybrid == 0) fail("a label or '('");
    return node;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class NewickBuilder {
 public:
  RawNetwork build(const NewickNode& root) {
    count_tags(root);
    for (const auto& [tag, n] : tag_count_)
      if (n != 2)
        throw Error(Errc::HybridTagMismatch,
                    "hybrid tag #H" + std::to_string(tag) + " appears " + std::to_string(n) + " time(s), expected 2",
                    "#H" + std::to_string(tag));
    collect_names(root);
    emit(root);
    return raw_;
  }

 private:
  void count_tags(const NewickNode& n) {
    if (n.hybrid) {
      ++tag_count_[n.hybrid];
      if (!n.label.empty() && hybrid_label_[n.hybrid].empty()) hybrid_label_[n.hybrid] = n.label;
      if (n.has_children && !carrier_.insert(n.hybrid).second)
        throw Error(Errc::HybridTagMismatch,
                    "both occurrences of hybrid tag #H" + std::to_string(n.hybrid) + " carry a subtree", n.line,
                    n.col);
    }
    for (const auto& c : n.children) count_tags(*c);
  }

  void collect_names(const NewickNode& n) {
    if (!n.label.empty()) taken_.insert(n.label);
    for (const auto& c : n.children) collect_names(*c);
  }

  std::string fresh() {
    for (;;) {
      std::string name = "v" + std::to_string(counter_++);
      if (!taken_.count(name)) return name;
    }
  }

  // Returns the vertex id of `n`, creating it on first sight.
  std::string emit(const NewickNode& n) {
    std::string id;
    if (n.hybrid) {
      const auto& label = hybrid_label_[n.hybrid];
      id = label.empty() ? "#H" + std::to_string(n.hybrid) : label;
      if (seen_hybrid_.insert(n.hybrid).second) raw_.vertices.push_back(id);
    } else {
      id = n.label.empty() ? fresh() : n.label;
      raw_.vertices.push_back(id);
    }
    for (const auto& c : n.children) raw_.arcs.emplace_back(id, emit(*c));
    return id;
  }

  RawNetwork raw_;
  std::map<int, int> tag_count_;
  std::set<int> carrier_;
  std::set<std::string> taken_;
  std::map<int, std::string> hybrid_label_;
  std::set<int> seen_hybrid_;
  std::size_t counter_ = 0;
};

}  // namespace detail

/// Unlabelled tree vertices are named v0, v1, ... in preorder (skipping
/// names used as labels); an unlabelled reticulation tagged #H<i> is named
/// `#H<i>`.
inline PhyloNetwork parse_enewick(std::string_view text) {
  auto root = detail::NewickReader(text).read();
  return validate(detail::NewickBuilder().build(*root));
}

/// Children are ordered by their smallest descendant leaf label, then by
/// their path counts to the leaves; a reticulation's subtree is written
/// under the parent visited first.
/// Internal vertex names are not written.
inline std::string serialize_enewick(const PhyloNetwork& net) {
  using Index = PhyloNetwork::Index;
  std::vector<std::string> min_leaf(net.vertex_count());
  const auto topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto v = *it;
    if (net.is_leaf(v)) {
      min_leaf[v] = net.label(v);
      continue;
    }
    for (auto c : net.children(v))
      if (min_leaf[v].empty() || min_leaf[c] < min_leaf[v]) min_leaf[v] = min_leaf[c];
  }
  const auto paths = path_counts(net);
  std::vector<int> tag(net.vertex_count(), 0);
  int next_tag = 1;
  std::string out;
  auto rec = [&](auto&& self, Index v) -> void {
    const bool retic = net.kind(v) == VertexKind::Reticulation;
    if (retic && tag[v]) {
      out += "#H" + std::to_string(tag[v]);
      return;
    }
    if (retic) tag[v] = next_tag++;
    if (net.is_leaf(v)) {
      out += net.label(v);
      return;
    }
    std::vector<Index> kids(net.children(v).begin(), net.children(v).end());
    std::sort(kids.begin(), kids.end(), [&](Index x, Index y) {
      return std::tie(min_leaf[x], paths[x], net.name(x)) < std::tie(min_leaf[y], paths[y], net.name(y));
    });
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ',';
      self(self, kids[i]);
    }
    out += ')';
    if (retic) out += "#H" + std::to_string(tag[v]);
  };
  rec(rec, net.root());
  return out + ";\n";
}

}  // namespace orchard
