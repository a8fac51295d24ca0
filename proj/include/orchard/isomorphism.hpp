#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

using Isomorphism = std::map<VertexId, VertexId>;

namespace detail {

// Backtracking matcher. Leaves are pinned by label; internal vertices of the
// first network are visited children-first, so a candidate image must be a
// common parent of the images of all children. That leaves at most two
// candidates per vertex, further filtered by kind and by the vector of path
// counts to the leaves (an invariant of any label-preserving isomorphism).
class IsoMatcher {
 public:
  using Index = PhyloNetwork::Index;

  IsoMatcher(const PhyloNetwork& a, const PhyloNetwork& b)
      : a_(a), b_(b), ca_(path_counts(a)), cb_(path_counts(b)) {}

  std::optional<std::vector<Index>> run() {
    map_.assign(a_.vertex_count(), PhyloNetwork::npos);
    used_.assign(b_.vertex_count(), 0);
    for (auto x : a_.leaves()) {
      auto y = b_.find_leaf(a_.label(x));
      if (!y) return std::nullopt;
      map_[x] = *y;
      used_[*y] = 1;
    }
    const auto topo = a_.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
      if (!a_.is_leaf(*it)) order_.push_back(*it);
    if (!extend(0)) return std::nullopt;
    return map_;
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Index u = order_[depth];
    const auto kids = a_.children(u);
    const Index anchor = map_[kids.front()];
    for (Index w : b_.parents(anchor)) {
      if (used_[w] || b_.kind(w) != a_.kind(u) || cb_[w] != ca_[u]) continue;
      if (!same_children(u, w)) continue;
      map_[u] = w;
      used_[w] = 1;
      if (extend(depth + 1)) return true;
      used_[w] = 0;
      map_[u] = PhyloNetwork::npos;
    }
    return false;
  }

  bool same_children(Index u, Index w) const {
    const auto ka = a_.children(u);
    const auto kb = b_.children(w);
    if (ka.size() != kb.size()) return false;
    return std::all_of(ka.begin(), ka.end(), [&](Index c) {
      return std::find(kb.begin(), kb.end(), map_[c]) != kb.end();
    });
  }

  const PhyloNetwork& a_;
  const PhyloNetwork& b_;
  std::vector<std::vector<Count>> ca_, cb_;
  std::vector<Index> map_;
  std::vector<char> used_;
  std::vector<Index> order_;
};

}  // namespace detail

/// Leaf-label-preserving isomorphism. Returns the vertex bijection (by id)
/// when one exists.
inline std::optional<Isomorphism> find_isomorphism(const PhyloNetwork& a, const PhyloNetwork& b) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count() ||
      a.reticulation_count() != b.reticulation_count() || a.leaf_labels() != b.leaf_labels())
    return std::nullopt;
  if (a.is_single_vertex()) return Isomorphism{{a.name(a.root()), b.name(b.root())}};

  auto mapping = detail::IsoMatcher(a, b).run();
  if (!mapping) return std::nullopt;
  // Every arc of `a` maps onto an arc of `b` and the arc counts agree, so the
  // bijection also reflects arcs.
  Isomorphism out;
  for (PhyloNetwork::Index v = 0; v < a.vertex_count(); ++v) out[a.name(v)] = b.name((*mapping)[v]);
  return out;
}

inline bool isomorphic(const PhyloNetwork& a, const PhyloNetwork& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace orchard
