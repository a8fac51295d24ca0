#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "orchard/error.hpp"
#include "orchard/network.hpp"

namespace orchard {

/// Subdivide the arc into leaf `at` and hang the new leaf `label` there.
struct AddLeaf {
  std::string at;
  std::string label;
  friend bool operator==(const AddLeaf&, const AddLeaf&) = default;
};

/// Subdivide the arcs into leaves a and b with fresh p_a, p_b and add the arc
/// (p_a, p_b); {a, b} becomes a reticulated cherry with reticulation leaf b.
struct AddReticulation {
  std::string a;
  std::string b;
  friend bool operator==(const AddReticulation&, const AddReticulation&) = default;
};

using BuildOp = std::variant<AddLeaf, AddReticulation>;

/// Inverse cherry reductions applied to a single leaf.
struct BuildScript {
  std::string initial;
  std::vector<BuildOp> ops;
  friend bool operator==(const BuildScript&, const BuildScript&) = default;
};

namespace detail {

class Builder {
 public:
  explicit Builder(const BuildScript& script) {
    taken_.insert(script.initial);
    for (const auto& op : script.ops)
      if (auto* add = std::get_if<AddLeaf>(&op)) taken_.insert(add->label);
    if (!valid_label(script.initial))
      throw Error(Errc::ScriptViolation, "invalid initial label '" + script.initial + "'");
    root_ = script.initial;
    leaves_.insert(script.initial);
  }

  void apply(const AddLeaf& op) {
    if (!leaves_.count(op.at)) throw Error(Errc::ScriptViolation, "add-leaf at unknown leaf '" + op.at + "'");
    if (!valid_label(op.label) || leaves_.count(op.label) || internal_.count(op.label))
      throw Error(Errc::ScriptViolation, "label '" + op.label + "' is invalid or already used");
    const auto p = subdivide(op.at);
    children_[p].push_back(op.label);
    parent_[op.label] = p;
    leaves_.insert(op.label);
  }

  void apply(const AddReticulation& op) {
    if (leaves_.size() < 2) throw Error(Errc::ScriptViolation, "add-reticulation needs two leaves");
    if (op.a == op.b || !leaves_.count(op.a) || !leaves_.count(op.b))
      throw Error(Errc::ScriptViolation, "add-reticulation needs two distinct existing leaves");
    const auto pa = subdivide(op.a);
    const auto pb = subdivide(op.b);
    children_[pa].push_back(pb);
  }

  RawNetwork raw() const {
    RawNetwork out;
    out.vertices.assign(leaves_.begin(), leaves_.end());
    for (const auto& [u, kids] : children_) {
      out.vertices.push_back(u);
      for (const auto& c : kids) out.arcs.emplace_back(u, c);
    }
    return out;
  }

 private:
  // Inserts a fresh vertex above leaf x (or a new root above the single vertex).
  std::string subdivide(const std::string& x) {
    auto p = fresh();
    internal_.insert(p);
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      root_ = p;
    } else {
      auto& kids = children_[it->second];
      *std::find(kids.begin(), kids.end(), x) = p;
      parent_[p] = it->second;
    }
    children_[p].push_back(x);
    parent_[x] = p;
    return p;
  }

  std::string fresh() {
    for (;;) {
      auto name = "g" + std::to_string(counter_++);
      if (!taken_.count(name)) return name;
    }
  }

  std::set<std::string> taken_;
  std::set<std::string> leaves_;
  std::set<std::string> internal_;
  std::map<std::string, std::vector<std::string>> children_;
  std::map<std::string, std::string> parent_;  // tree edges into leaves and subdivision vertices
  std::string root_;
  std::size_t counter_ = 0;
};

}  // namespace detail

/// Runs a build script. Fresh internal vertices are named g0, g1, ... in
/// creation order (skipping names used as leaf labels).
inline PhyloNetwork build(const BuildScript& script) {
  detail::Builder b(script);
  for (const auto& op : script.ops) std::visit([&](const auto& o) { b.apply(o); }, op);
  return validate(b.raw());
}

/// a, AddLeaf(a, b), then m times AddReticulation(a, b): two leaves and m
/// stacked reticulations.
inline BuildScript chain_script(std::size_t m) {
  BuildScript s{"a", {AddLeaf{"a", "b"}}};
  for (std::size_t i = 0; i < m; ++i) s.ops.push_back(AddReticulation{"a", "b"});
  return s;
}

inline PhyloNetwork chain_network(std::size_t m) { return build(chain_script(m)); }

inline std::string leaf_name(std::size_t i) { return "x" + std::to_string(i); }

/// Random script with n-1 AddLeaf and k AddReticulation ops; the result is
/// always an orchard network with n leaves x1..xn and k reticulations. Not
/// uniform over orchard networks.
inline BuildScript random_orchard_script(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::InvalidParameters, "need at least one leaf");
  if (n == 1 && k > 0) throw Error(Errc::InvalidParameters, "a single leaf admits no reticulations");
  std::mt19937_64 rng(seed);
  std::vector<char> is_leaf_op;
  if (n >= 2) {
    is_leaf_op.assign(n - 2, 1);
    is_leaf_op.insert(is_leaf_op.end(), k, 0);
    std::shuffle(is_leaf_op.begin(), is_leaf_op.end(), rng);
    is_leaf_op.insert(is_leaf_op.begin(), 1);
  }
  BuildScript s{leaf_name(1), {}};
  std::vector<std::string> leaves{s.initial};
  for (char leaf_op : is_leaf_op) {
    if (leaf_op) {
      std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
      auto label = leaf_name(leaves.size() + 1);
      s.ops.push_back(AddLeaf{leaves[pick(rng)], label});
      leaves.push_back(label);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
      auto i = pick(rng);
      auto j = pick(rng);
      while (j == i) j = pick(rng);
      s.ops.push_back(AddReticulation{leaves[i], leaves[j]});
    }
  }
  return s;
}

inline PhyloNetwork random_orchard(std::size_t n, std::size_t k, std::uint64_t seed) {
  return build(random_orchard_script(n, k, seed));
}

namespace detail {

inline bool tree_child(const PhyloNetwork& net) {
  for (auto v : net.topological_order()) {
    if (net.is_leaf(v)) continue;
    bool ok = false;
    for (auto c : net.children(v))
      ok = ok || net.kind(c) == VertexKind::TreeVertex || net.kind(c) == VertexKind::Leaf;
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// Tree-child network with n leaves and k <= n-1 reticulations. Builds a
/// random script, rejecting any AddReticulation that breaks tree-child and
/// restarting when no admissible one is left.
inline PhyloNetwork random_tree_child(std::size_t n, std::size_t k, std::uint64_t seed,
                                      std::size_t max_attempts = 1000) {
  if (n == 0 || k + 1 > n)
    throw Error(Errc::InvalidParameters, "tree-child networks need n >= 1 and k <= n - 1");
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<char> is_leaf_op;
    if (n >= 2) {
      is_leaf_op.assign(n - 2, 1);
      is_leaf_op.insert(is_leaf_op.end(), k, 0);
      std::shuffle(is_leaf_op.begin(), is_leaf_op.end(), rng);
      is_leaf_op.insert(is_leaf_op.begin(), 1);
    }
    BuildScript s{leaf_name(1), {}};
    std::vector<std::string> leaves{s.initial};
    bool stuck = false;
    for (char leaf_op : is_leaf_op) {
      if (leaf_op) {
        std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
        auto label = leaf_name(leaves.size() + 1);
        s.ops.push_back(AddLeaf{leaves[pick(rng)], label});
        leaves.push_back(label);
        continue;
      }
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = 0; j < leaves.size(); ++j)
          if (i != j) pairs.emplace_back(i, j);
      std::shuffle(pairs.begin(), pairs.end(), rng);
      bool placed = false;
      for (auto [i, j] : pairs) {
        s.ops.push_back(AddReticulation{leaves[i], leaves[j]});
        if (detail::tree_child(build(s))) {
          placed = true;
          break;
        }
        s.ops.pop_back();
      }
      if (!placed) {
        stuck = true;
        break;
      }
    }
    if (!stuck) return build(s);
  }
  throw Error(Errc::GenerationBudgetExceeded,
              "no tree-child network found in " + std::to_string(max_attempts) + " attempts");
}

/// Arbitrary (not necessarily orchard) network with n leaves x1..xn and k
/// reticulations, sampled by wiring internal vertices in a random
/// topological order. Requires n >= 2, or n = 1 with k = 0 or k >= 2.
inline PhyloNetwork random_network(std::size_t n, std::size_t k, std::uint64_t seed,
                                   std::size_t max_attempts = 10000) {
  if (n == 0 || (n == 1 && k == 1)) throw Error(Errc::InvalidParameters, "no network with these counts");
  if (n == 1 && k == 0) return single_vertex_network(leaf_name(1));
  std::mt19937_64 rng(seed);
  const std::size_t t = n + 2 * k - 1;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<char> retic(t, 0);
    std::fill(retic.begin() + 1, retic.begin() + 1 + static_cast<std::ptrdiff_t>(k), 1);
    std::shuffle(retic.begin() + 1, retic.end(), rng);
    std::vector<std::size_t> capacity(t);
    RawNetwork raw;
    for (std::size_t i = 0; i < t; ++i) {
      raw.vertices.push_back("v" + std::to_string(i));
      capacity[i] = retic[i] ? 1 : 2;
    }
    bool ok = true;
    for (std::size_t i = 1; i < t && ok; ++i) {
      std::vector<std::size_t> open;
      for (std::size_t u = 0; u < i; ++u)
        if (capacity[u] > 0) open.push_back(u);
      const std::size_t need = retic[i] ? 2 : 1;
      if (open.size() < need) {
        ok = false;
        break;
      }
      std::shuffle(open.begin(), open.end(), rng);
      for (std::size_t p = 0; p < need; ++p) {
        --capacity[open[p]];
        raw.arcs.emplace_back(raw.vertices[open[p]], raw.vertices[i]);
      }
    }
    if (!ok) continue;
    std::vector<std::size_t> slots;
    for (std::size_t u = 0; u < t; ++u)
      for (std::size_t c = 0; c < capacity[u]; ++c) slots.push_back(u);
    if (slots.size() != n) continue;
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      raw.vertices.push_back(leaf_name(i + 1));
      raw.arcs.emplace_back(raw.vertices[slots[i]], leaf_name(i + 1));
    }
    return validate(raw);
  }
  throw Error(Errc::GenerationBudgetExceeded, "random network sampling failed");
}

// ---------------------------------------------------------------------------
// script text: one op per line

inline std::string serialize_script(const BuildScript& s) {
  std::ostringstream os;
  os << "start " << s.initial << '\n';
  for (const auto& op : s.ops) {
    if (auto* add = std::get_if<AddLeaf>(&op))
      os << "add-leaf " << add->at << ' ' << add->label << '\n';
    else {
      const auto& r = std::get<AddReticulation>(op);
      os << "add-reticulation " << r.a << ' ' << r.b << '\n';
    }
  }
  return os.str();
}

inline BuildScript parse_script(const std::string& text) {
  BuildScript s;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool started = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string tok; words >> tok;) w.push_back(tok);
    if (w.empty()) continue;
    auto fail = [&](const std::string& what) {
      return Error(Errc::SyntaxError, "line " + std::to_string(lineno) + ": " + what, lineno, 1);
    };
    if (!started) {
      if (w.size() != 2 || w[0] != "start") throw fail("expected 'start <label>'");
      s.initial = w[1];
      started = true;
    } else if (w.size() == 3 && w[0] == "add-leaf") {
      s.ops.push_back(AddLeaf{w[1], w[2]});
    } else if (w.size() == 3 && w[0] == "add-reticulation") {
      s.ops.push_back(AddReticulation{w[1], w[2]});
    } else {
      throw fail("expected 'add-leaf <at> <label>' or 'add-reticulation <a> <b>'");
    }
  }
  if (!started) throw Error(Errc::SyntaxError, "empty script", 1, 1);
  return s;
}

}  // namespace orchard
