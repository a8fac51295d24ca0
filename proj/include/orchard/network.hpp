#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orchard/error.hpp"

namespace orchard {

using VertexId = std::string;

enum class VertexKind { Root, Leaf, TreeVertex, Reticulation };

constexpr std::string_view kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::Root: return "root";
    case VertexKind::Leaf: return "leaf";
    case VertexKind::TreeVertex: return "tree";
    case VertexKind::Reticulation: return "reticulation";
  }
  return "?";
}

/// Unvalidated vertex/arc description, the input to validate().
struct RawNetwork {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> arcs;
  // Leaf label overrides; a leaf without an entry is labelled by its id.
  std::map<VertexId, std::string> leaf_labels;
  // Empty means: topological order, ties broken lexicographically.
  std::vector<VertexId> internal_order;
};

namespace detail {

inline bool is_label_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.' || c == '#';
}

inline bool valid_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_label_char);
}

// Vertex ids may be any UTF-8 text except separators used by the text formats.
inline bool valid_vertex_id(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (c <= 0x20 || c == 0x7f || c == ',' || c == '"' || c == '\\') return false;
  }
  return true;
}

}  // namespace detail

/// A validated rooted binary phylogenetic network. Immutable.
///
/// Vertices are addressed by dense indices; `name()` gives the opaque id and
/// `label()` the leaf label (empty for non-leaves). The single-vertex
/// network on one leaf has that leaf as its root and no internal vertices.
class PhyloNetwork {
 public:
  using Index = std::size_t;
  static constexpr Index npos = std::numeric_limits<Index>::max();

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t arc_count() const noexcept { return arc_count_; }
  std::size_t leaf_count() const noexcept { return leaves_.size(); }
  std::size_t internal_count() const noexcept { return internal_order_.size(); }
  std::size_t reticulation_count() const noexcept { return reticulations_; }
  std::size_t tree_vertex_count() const noexcept { return tree_vertices_; }
  bool is_single_vertex() const noexcept { return names_.size() == 1; }

  const VertexId& name(Index v) const { return names_.at(v); }
  const std::string& label(Index v) const { return labels_.at(v); }
  VertexKind kind(Index v) const { return kinds_.at(v); }
  bool is_leaf(Index v) const { return kinds_.at(v) == VertexKind::Leaf; }
  Index root() const noexcept { return root_; }

  std::span<const Index> children(Index v) const { return children_.at(v); }
  std::span<const Index> parents(Index v) const { return parents_.at(v); }
  Index parent(Index v) const { return parents_.at(v).empty() ? npos : parents_[v].front(); }

  /// Non-leaf vertices in coordinate order v1..vt.
  std::span<const Index> internal_order() const noexcept { return internal_order_; }
  /// Leaves sorted by label.
  std::span<const Index> leaves() const noexcept { return leaves_; }
  /// All vertices, parents before children.
  std::span<const Index> topological_order() const noexcept { return topo_; }

  std::optional<Index> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index index_of(std::string_view id) const {
    if (auto v = find(id)) return *v;
    throw Error(Errc::UnknownVertex, "unknown vertex '" + std::string(id) + "'", std::string(id));
  }

  std::optional<Index> find_leaf(std::string_view label) const {
    auto it = leaf_index_.find(std::string(label));
    if (it == leaf_index_.end()) return std::nullopt;
    return it->second;
  }

  Index leaf(std::string_view label) const {
    if (auto v = find_leaf(label)) return *v;
    throw Error(Errc::UnknownLeaf, "unknown leaf '" + std::string(label) + "'", std::string(label));
  }

  std::vector<std::string> leaf_labels() const {
    std::vector<std::string> out;
    out.reserve(leaves_.size());
    for (Index x : leaves_) out.push_back(labels_[x]);
    return out;
  }

  /// Arcs sorted by (tail name, head name).
  std::vector<std::pair<Index, Index>> arcs() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(arc_count_);
    for (Index u = 0; u < names_.size(); ++u)
      for (Index c : children_[u]) out.emplace_back(u, c);
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      return std::tie(names_[x.first], names_[x.second]) <
             std::tie(names_[y.first], names_[y.second]);
    });
    return out;
  }

  RawNetwork to_raw() const {
    RawNetwork raw;
    raw.vertices = names_;
    for (auto [u, v] : arcs()) raw.arcs.emplace_back(names_[u], names_[v]);
    for (Index x : leaves_)
      if (labels_[x] != names_[x]) raw.leaf_labels[names_[x]] = labels_[x];
    for (Index v : internal_order_) raw.internal_order.push_back(names_[v]);
    return raw;
  }

  /// The empty network; only useful as a placeholder value.
  PhyloNetwork() = default;

  friend PhyloNetwork validate(const RawNetwork& raw);

 private:
  std::vector<VertexId> names_;
  std::vector<std::string> labels_;
  std::vector<VertexKind> kinds_;
  std::vector<std::vector<Index>> children_;
  std::vector<std::vector<Index>> parents_;
  std::vector<Index> internal_order_;
  std::vector<Index> leaves_;
  std::vector<Index> topo_;
  std::unordered_map<std::string, Index> index_;
  std::unordered_map<std::string, Index> leaf_index_;
  Index root_ = npos;
  std::size_t arc_count_ = 0;
  std::size_t reticulations_ = 0;
  std::size_t tree_vertices_ = 0;
};

/// Checks every structural invariant and returns the validated network, or
/// throws the first violation found.
inline PhyloNetwork validate(const RawNetwork& raw) {
  using Index = PhyloNetwork::Index;
  PhyloNetwork net;
  const std::size_t n = raw.vertices.size();
  if (n == 0) throw Error(Errc::EmptyNetwork, "network has no vertices");

  net.names_ = raw.vertices;
  for (Index v = 0; v < n; ++v) {
    const auto& id = net.names_[v];
    if (!detail::valid_vertex_id(id))
      throw Error(Errc::InvalidName, "invalid vertex id '" + id + "'", id);
    if (!net.index_.emplace(id, v).second)
      throw Error(Errc::DuplicateVertex, "duplicate vertex '" + id + "'", id);
  }

  net.children_.assign(n, {});
  net.parents_.assign(n, {});
  std::set<std::pair<Index, Index>> seen;
  for (const auto& [from, to] : raw.arcs) {
    Index u = net.index_of(from);
    Index v = net.index_of(to);
    if (u == v) throw Error(Errc::CycleDetected, "self-loop at '" + from + "'", from);
    if (!seen.emplace(u, v).second)
      throw Error(Errc::ParallelArcs, "parallel arcs " + from + " -> " + to, from);
    net.children_[u].push_back(v);
    net.parents_[v].push_back(u);
  }
  net.arc_count_ = raw.arcs.size();

  std::vector<Index> sources;
  for (Index v = 0; v < n; ++v)
    if (net.parents_[v].empty()) sources.push_back(v);
  if (sources.empty()) throw Error(Errc::CycleDetected, "no vertex of in-degree zero");
  if (sources.size() > 1)
    throw Error(Errc::MultipleRoots,
                "multiple roots: '" + net.names_[sources[0]] + "' and '" + net.names_[sources[1]] + "'",
                net.names_[sources[1]]);
  net.root_ = sources.front();

  // Kahn's algorithm; lexicographic tie-break gives the default internal order.
  {
    auto by_name = [&](Index x, Index y) { return net.names_[x] > net.names_[y]; };
    std::priority_queue<Index, std::vector<Index>, decltype(by_name)> ready(by_name);
    std::vector<std::size_t> indeg(n);
    for (Index v = 0; v < n; ++v) indeg[v] = net.parents_[v].size();
    ready.push(net.root_);
    while (!ready.empty()) {
      Index v = ready.top();
      ready.pop();
      net.topo_.push_back(v);
      for (Index c : net.children_[v])
        if (--indeg[c] == 0) ready.push(c);
    }
    if (net.topo_.size() != n) {
      for (Index v = 0; v < n; ++v)
        if (indeg[v] != 0)
          throw Error(Errc::CycleDetected, "cycle through '" + net.names_[v] + "'", net.names_[v]);
    }
  }

  net.kinds_.assign(n, VertexKind::Leaf);
  auto bad_degree = [&](Index v) {
    const auto& id = net.names_[v];
    return Error(Errc::BadDegree,
                 "vertex '" + id + "' has in-degree " + std::to_string(net.parents_[v].size()) +
                     " and out-degree " + std::to_string(net.children_[v].size()),
                 id);
  };
  if (n == 1) {
    net.kinds_[0] = VertexKind::Leaf;
  } else {
    for (Index v = 0; v < n; ++v) {
      const std::size_t in = net.parents_[v].size();
      const std::size_t out = net.children_[v].size();
      if (v == net.root_) {
        if (out != 2) throw bad_degree(v);
        net.kinds_[v] = VertexKind::Root;
      } else if (out == 0) {
        if (in != 1) throw bad_degree(v);
        net.kinds_[v] = VertexKind::Leaf;
      } else if (in == 1 && out == 2) {
        net.kinds_[v] = VertexKind::TreeVertex;
        ++net.tree_vertices_;
      } else if (in == 2 && out == 1) {
        net.kinds_[v] = VertexKind::Reticulation;
        ++net.reticulations_;
      } else {
        throw bad_degree(v);
      }
    }
  }

  net.labels_.assign(n, {});
  for (const auto& [id, label] : raw.leaf_labels) {
    Index v = net.index_of(id);
    if (net.kinds_[v] != VertexKind::Leaf)
      throw Error(Errc::LabelOnInternalVertex, "label given for non-leaf '" + id + "'", id);
  }
  for (Index v = 0; v < n; ++v) {
    if (net.kinds_[v] != VertexKind::Leaf) continue;
    auto it = raw.leaf_labels.find(net.names_[v]);
    std::string label = it == raw.leaf_labels.end() ? net.names_[v] : it->second;
    if (label.empty())
      throw Error(Errc::UnlabeledLeaf, "leaf '" + net.names_[v] + "' has no label", net.names_[v]);
    if (!detail::valid_label(label))
      throw Error(Errc::InvalidName, "invalid leaf label '" + label + "'", label);
    if (!net.leaf_index_.emplace(label, v).second)
      throw Error(Errc::DuplicateLeafLabel, "duplicate leaf label '" + label + "'", label);
    net.labels_[v] = std::move(label);
    net.leaves_.push_back(v);
  }
  for (Index x : net.leaves_) {
    const auto& label = net.labels_[x];
    auto it = net.index_.find(label);
    if (it != net.index_.end() && it->second != x)
      throw Error(Errc::InvalidName, "leaf label '" + label + "' collides with a vertex id", label);
  }
  std::sort(net.leaves_.begin(), net.leaves_.end(),
            [&](Index x, Index y) { return net.labels_[x] < net.labels_[y]; });

  if (raw.internal_order.empty()) {
    for (Index v : net.topo_)
      if (net.kinds_[v] != VertexKind::Leaf) net.internal_order_.push_back(v);
  } else {
    std::vector<char> used(n, 0);
    for (const auto& id : raw.internal_order) {
      auto it = net.index_.find(id);
      if (it == net.index_.end())
        throw Error(Errc::BadInternalOrder, "internal order names unknown vertex '" + id + "'", id);
      Index v = it->second;
      if (net.kinds_[v] == VertexKind::Leaf)
        throw Error(Errc::BadInternalOrder, "internal order names leaf '" + id + "'", id);
      if (used[v]++)
        throw Error(Errc::BadInternalOrder, "internal order repeats '" + id + "'", id);
      net.internal_order_.push_back(v);
    }
    for (Index v = 0; v < n; ++v)
      if (net.kinds_[v] != VertexKind::Leaf && !used[v])
        throw Error(Errc::BadInternalOrder, "internal order misses '" + net.names_[v] + "'",
                    net.names_[v]);
  }
  return net;
}

/// True iff there is a directed path (possibly empty) from `from` to `to`.
inline bool reachable(const PhyloNetwork& net, PhyloNetwork::Index from, PhyloNetwork::Index to) {
  std::vector<char> seen(net.vertex_count(), 0);
  std::vector<PhyloNetwork::Index> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (auto c : net.children(v))
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
  }
  return false;
}

inline bool reachable(const PhyloNetwork& net, std::string_view from, std::string_view to) {
  return reachable(net, net.index_of(from), net.index_of(to));
}

/// Builds a network from (tail, head) arcs; every vertex must appear in an
/// arc. Convenience for fixtures and tests.
inline PhyloNetwork network_from_arcs(const std::vector<std::pair<VertexId, VertexId>>& arcs,
                                      std::vector<VertexId> internal_order = {}) {
  RawNetwork raw;
  std::set<VertexId> seen;
  for (const auto& [u, v] : arcs)
    for (const auto* id : {&u, &v})
      if (seen.insert(*id).second) raw.vertices.push_back(*id);
  raw.arcs = arcs;
  raw.internal_order = std::move(internal_order);
  return validate(raw);
}

inline PhyloNetwork single_vertex_network(const std::string& label) {
  RawNetwork raw;
  raw.vertices = {label};
  return validate(raw);
}

}  // namespace orchard
