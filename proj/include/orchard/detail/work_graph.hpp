#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "orchard/network.hpp"

namespace orchard::detail {

// Mutable copy of a network that supports cherry reductions in O(1) and is
// turned back into a validated PhyloNetwork on demand. Vertex indices are
// those of the source network; deleted vertices are marked dead.
class WorkGraph {
 public:
  using Index = PhyloNetwork::Index;
  static constexpr Index npos = PhyloNetwork::npos;

  explicit WorkGraph(const PhyloNetwork& net)
      : names_(net.vertex_count()),
        labels_(net.vertex_count()),
        children_(net.vertex_count()),
        parents_(net.vertex_count()),
        alive_(net.vertex_count(), 1),
        root_(net.root()),
        order_(net.internal_order().begin(), net.internal_order().end()),
        leaves_(net.leaves().begin(), net.leaves().end()) {
    for (Index v = 0; v < net.vertex_count(); ++v) {
      names_[v] = net.name(v);
      labels_[v] = net.label(v);
      children_[v].assign(net.children(v).begin(), net.children(v).end());
      parents_[v].assign(net.parents(v).begin(), net.parents(v).end());
    }
    live_leaves_ = leaves_.size();
  }

  bool alive(Index v) const { return alive_[v] != 0; }
  bool is_leaf(Index v) const { return children_[v].empty(); }
  bool is_reticulation(Index v) const { return parents_[v].size() == 2; }
  Index parent(Index v) const { return parents_[v].empty() ? npos : parents_[v].front(); }
  const std::vector<Index>& children(Index v) const { return children_[v]; }
  const std::vector<Index>& parents(Index v) const { return parents_[v]; }
  const std::string& label(Index v) const { return labels_[v]; }
  const std::string& name(Index v) const { return names_[v]; }
  Index root() const { return root_; }
  std::size_t live_leaf_count() const { return live_leaves_; }
  bool single_vertex() const { return children_[root_].empty(); }

  /// Leaves still present, in label order.
  std::vector<Index> live_leaves() const {
    std::vector<Index> out;
    for (Index x : leaves_)
      if (alive_[x]) out.push_back(x);
    return out;
  }

  bool is_cherry(Index a, Index b) const {
    return a != b && alive(a) && alive(b) && is_leaf(a) && is_leaf(b) && !parents_[a].empty() &&
           parent(a) == parent(b);
  }

  /// {a, b} with b the reticulation leaf.
  bool is_reticulated_cherry(Index a, Index b) const {
    if (a == b || !alive(a) || !alive(b) || !is_leaf(a) || !is_leaf(b)) return false;
    if (parents_[a].empty() || parents_[b].empty()) return false;
    const Index pa = parent(a), pb = parent(b);
    if (!is_reticulation(pb)) return false;
    return std::find(children_[pa].begin(), children_[pa].end(), pb) != children_[pa].end();
  }

  /// Deletes leaf b of the cherry {a, b} and suppresses the common parent;
  /// returns the suppressed vertex.
  Index reduce_cherry(Index a, Index b) {
    const Index p = parent(b);
    erase(children_[p], b);
    kill(b);
    if (p == root_) {
      kill(p);
      parents_[a].clear();
      root_ = a;
    } else {
      suppress(p);
    }
    return p;
  }

  /// Deletes the arc joining the parents of a and b and suppresses both;
  /// returns (p_a, p_b).
  std::pair<Index, Index> cut(Index a, Index b) {
    const Index pa = parent(a), pb = parent(b);
    erase(children_[pa], pb);
    erase(parents_[pb], pa);
    suppress(pa);
    suppress(pb);
    return {pa, pb};
  }

  RawNetwork to_raw() const {
    RawNetwork raw;
    for (Index v = 0; v < names_.size(); ++v) {
      if (!alive_[v]) continue;
      raw.vertices.push_back(names_[v]);
      if (children_[v].empty() && labels_[v] != names_[v]) raw.leaf_labels[names_[v]] = labels_[v];
      for (Index c : children_[v]) raw.arcs.emplace_back(names_[v], names_[c]);
    }
    for (Index v : order_)
      if (alive_[v]) raw.internal_order.push_back(names_[v]);
    return raw;
  }

  PhyloNetwork to_network() const { return validate(to_raw()); }

 private:
  static void erase(std::vector<Index>& xs, Index x) { xs.erase(std::find(xs.begin(), xs.end(), x)); }
  static void replace(std::vector<Index>& xs, Index from, Index to) {
    *std::find(xs.begin(), xs.end(), from) = to;
  }

  void kill(Index v) {
    if (alive_[v] && labels_[v].size() && children_[v].empty()) --live_leaves_;
    alive_[v] = 0;
  }

  // v has in-degree one and out-degree one.
  void suppress(Index v) {
    const Index u = parents_[v].front();
    const Index c = children_[v].front();
    replace(children_[u], v, c);
    replace(parents_[c], v, u);
    children_[v].clear();
    parents_[v].clear();
    alive_[v] = 0;
  }

  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Index>> children_;
  std::vector<std::vector<Index>> parents_;
  std::vector<char> alive_;
  Index root_;
  std::vector<Index> order_;
  std::vector<Index> leaves_;
  std::size_t live_leaves_ = 0;
};

}  // namespace orchard::detail
