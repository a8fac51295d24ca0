#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "orchard/generator.hpp"
#include "orchard/network.hpp"

namespace orchard {

namespace detail {

// Enumerates wirings of t internal vertices numbered in a topological order
// (vertex 0 is the root). A wiring is kept only if, whenever i-1 is not a
// parent of i, key(i-1) <= key(i) with key = (is reticulation, parents).
// Swapping such a pair is another topological numbering with a
// lexicographically smaller key sequence, so the lexicographically least
// numbering of every network survives the filter.
template <class Visit>
class WiringEnumerator {
 public:
  WiringEnumerator(std::size_t t, std::size_t k, Visit& visit)
      : t_(t), k_(k), visit_(visit), retic_(t, 0), parents_(t), capacity_(t, 0) {}

  bool run() {
    if (t_ == 0) return true;
    capacity_[0] = 2;
    return place(1, k_);
  }

  const std::vector<char>& retic() const { return retic_; }
  const std::vector<std::vector<std::size_t>>& parents() const { return parents_; }
  const std::vector<std::size_t>& capacity() const { return capacity_; }

 private:
  bool place(std::size_t i, std::size_t retics_left) {
    if (i == t_) return retics_left == 0 ? visit_(*this) : true;
    if (retics_left > t_ - i) return true;
    for (int kind = 0; kind < 2; ++kind) {
      if (kind == 1 && retics_left == 0) continue;
      if (kind == 0 && retics_left == t_ - i) continue;
      retic_[i] = static_cast<char>(kind);
      const std::size_t need = kind ? 2 : 1;
      std::vector<std::size_t> chosen;
      if (!choose(i, need, 0, chosen, retics_left - static_cast<std::size_t>(kind))) return false;
    }
    retic_[i] = 0;
    return true;
  }

  bool choose(std::size_t i, std::size_t need, std::size_t from, std::vector<std::size_t>& chosen,
              std::size_t retics_left) {
    if (chosen.size() == need) {
      if (!ordered(i, chosen)) return true;
      for (auto u : chosen) --capacity_[u];
      parents_[i] = chosen;
      capacity_[i] = retic_[i] ? 1 : 2;
      bool go = place(i + 1, retics_left);
      capacity_[i] = 0;
      parents_[i].clear();
      for (auto u : chosen) ++capacity_[u];
      return go;
    }
    for (std::size_t u = from; u < i; ++u) {
      if (capacity_[u] == 0) continue;
      chosen.push_back(u);
      bool go = choose(i, need, u + 1, chosen, retics_left);
      chosen.pop_back();
      if (!go) return false;
    }
    return true;
  }

  bool ordered(std::size_t i, const std::vector<std::size_t>& chosen) const {
    if (i < 2) return true;
    if (std::find(chosen.begin(), chosen.end(), i - 1) != chosen.end()) return true;
    auto prev = std::pair(retic_[i - 1], std::cref(parents_[i - 1]));
    if (retic_[i - 1] != retic_[i]) return retic_[i - 1] < retic_[i];
    return prev.second.get() <= chosen;
  }

  std::size_t t_, k_;
  Visit& visit_;
  std::vector<char> retic_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::size_t> capacity_;
};

}  // namespace detail

/// Calls `visit(const PhyloNetwork&)` for networks with leaves x1..xn and k
/// reticulations; internal vertices are named v0 (root), v1, ... . Every
/// such network occurs at least once up to isomorphism; some occur several
/// times. `visit` returns false to stop; the function then returns false.
///
/// Wirings are dealt round-robin to `shards` so that independent workers can
/// split the space; shard s visits wirings s, s + shards, ... .
template <class Visit>
bool for_each_network(std::size_t n, std::size_t k, Visit&& visit, std::size_t shard = 0,
                      std::size_t shards = 1) {
  if (n == 0) return true;
  if (n == 1 && k == 0) return shard == 0 ? visit(single_vertex_network(leaf_name(1))) : true;
  const std::size_t t = n + 2 * k - 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t; ++i) names.push_back("v" + std::to_string(i));
  std::size_t wiring = 0;

  auto on_wiring = [&](const auto& e) {
    if (wiring++ % shards != shard) return true;
    std::vector<std::size_t> slots;
    for (std::size_t u = 0; u < t; ++u)
      for (std::size_t c = 0; c < e.capacity()[u]; ++c) slots.push_back(u);
    if (slots.size() != n) return true;
    RawNetwork base;
    base.vertices = names;
    for (std::size_t i = 1; i < t; ++i)
      for (auto u : e.parents()[i]) base.arcs.emplace_back(names[u], names[i]);
    for (std::size_t x = 1; x <= n; ++x) base.vertices.push_back(leaf_name(x));
    // slots are sorted, so next_permutation walks each distinct assignment once
    do {
      RawNetwork raw = base;
      for (std::size_t x = 0; x < n; ++x) raw.arcs.emplace_back(names[slots[x]], leaf_name(x + 1));
      if (!visit(validate(raw))) return false;
    } while (std::next_permutation(slots.begin(), slots.end()));
    return true;
  };
  detail::WiringEnumerator<decltype(on_wiring)> e(t, k, on_wiring);
  return e.run();
}

/// Calls `visit(const BuildScript&)` for every build script starting at x1
/// whose AddLeaf ops introduce x2..xn in order, with k AddReticulation ops.
/// Every orchard network on x1..xn with k reticulations is built by at least
/// one of them.
template <class Visit>
bool for_each_orchard_script(std::size_t n, std::size_t k, Visit&& visit) {
  if (n == 0 || (n == 1 && k > 0)) return true;
  BuildScript script{leaf_name(1), {}};
  std::size_t leaves = 1;
  auto rec = [&](auto&& self, std::size_t adds_left, std::size_t retics_left) -> bool {
    if (adds_left == 0 && retics_left == 0) return visit(static_cast<const BuildScript&>(script));
    if (adds_left > 0) {
      for (std::size_t at = 1; at <= leaves; ++at) {
        script.ops.push_back(AddLeaf{leaf_name(at), leaf_name(leaves + 1)});
        ++leaves;
        bool go = self(self, adds_left - 1, retics_left);
        --leaves;
        script.ops.pop_back();
        if (!go) return false;
      }
    }
    if (retics_left > 0 && leaves >= 2) {
      for (std::size_t a = 1; a <= leaves; ++a)
        for (std::size_t b = 1; b <= leaves; ++b) {
          if (a == b) continue;
          script.ops.push_back(AddReticulation{leaf_name(a), leaf_name(b)});
          bool go = self(self, adds_left, retics_left - 1);
          script.ops.pop_back();
          if (!go) return false;
        }
    }
    return true;
  };
  return rec(rec, n - 1, k);
}

}  // namespace orchard
