#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "orchard/error.hpp"
#include "orchard/network.hpp"

namespace orchard {

/// Path counts grow like 2^k on stacked reticulations, so they are unbounded.
using Count = boost::multiprecision::cpp_int;
/// A profile cell: a count, or std::nullopt for the placeholder `-`.
using Entry = std::optional<Count>;

/// Per-leaf tuples of path counts from each internal vertex (coordinate).
/// `rows[i]` belongs to `leaf_order[i]` and has one entry per coordinate.
struct AncestralProfile {
  std::vector<std::string> leaf_order;
  std::vector<VertexId> coord_names;
  std::vector<std::vector<Entry>> rows;

  std::size_t leaf_count() const noexcept { return leaf_order.size(); }
  std::size_t coord_count() const noexcept { return coord_names.size(); }

  std::optional<std::size_t> find_row(std::string_view leaf) const {
    for (std::size_t i = 0; i < leaf_order.size(); ++i)
      if (leaf_order[i] == leaf) return i;
    return std::nullopt;
  }

  std::size_t row_of(std::string_view leaf) const {
    if (auto i = find_row(leaf)) return *i;
    throw Error(Errc::UnknownLeaf, "profile has no leaf '" + std::string(leaf) + "'",
                std::string(leaf));
  }

  std::optional<std::size_t> find_coord(std::string_view name) const {
    for (std::size_t j = 0; j < coord_names.size(); ++j)
      if (coord_names[j] == name) return j;
    return std::nullopt;
  }

  /// A column is live when at least one row carries a count in it.
  bool is_live_column(std::size_t j) const {
    return std::any_of(rows.begin(), rows.end(), [j](const auto& r) { return r[j].has_value(); });
  }

  bool has_placeholders() const {
    for (const auto& r : rows)
      for (const auto& e : r)
        if (!e) return true;
    return false;
  }

  friend bool operator==(const AncestralProfile&, const AncestralProfile&) = default;
};

/// gamma(x): the coordinates with a positive count in x's row.
struct AncestralSets {
  std::vector<std::string> leaf_order;
  std::vector<VertexId> coord_names;
  std::vector<boost::dynamic_bitset<>> sets;

  std::vector<VertexId> names_of(std::size_t row) const {
    std::vector<VertexId> out;
    const auto& s = sets[row];
    for (auto j = s.find_first(); j != boost::dynamic_bitset<>::npos; j = s.find_next(j))
      out.push_back(coord_names[j]);
    return out;
  }
};

/// Multiset of per-internal-vertex tuples, indexed by `leaf_order`. The
/// tuples are kept sorted so that equal multisets compare equal.
struct PathTupleMultiset {
  std::vector<std::string> leaf_order;
  std::vector<std::vector<Count>> tuples;

  friend bool operator==(const PathTupleMultiset&, const PathTupleMultiset&) = default;
};

/// Number of directed paths from every vertex to every leaf, by dynamic
/// programming in reverse topological order. Row v is indexed like
/// `net.leaves()`.
inline std::vector<std::vector<Count>> path_counts(const PhyloNetwork& net) {
  const auto leaves = net.leaves();
  std::vector<std::size_t> leaf_pos(net.vertex_count(), PhyloNetwork::npos);
  for (std::size_t i = 0; i < leaves.size(); ++i) leaf_pos[leaves[i]] = i;

  std::vector<std::vector<Count>> counts(net.vertex_count(), std::vector<Count>(leaves.size()));
  const auto topo = net.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto v = *it;
    if (net.is_leaf(v)) {
      counts[v][leaf_pos[v]] = 1;
      continue;
    }
    for (auto c : net.children(v))
      for (std::size_t i = 0; i < leaves.size(); ++i) counts[v][i] += counts[c][i];
  }
  return counts;
}

inline AncestralProfile ancestral_profile(const PhyloNetwork& net) {
  const auto counts = path_counts(net);
  AncestralProfile p;
  p.leaf_order = net.leaf_labels();
  for (auto v : net.internal_order()) p.coord_names.push_back(net.name(v));
  p.rows.assign(p.leaf_order.size(), std::vector<Entry>(p.coord_names.size()));
  const auto order = net.internal_order();
  for (std::size_t i = 0; i < p.leaf_order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j) p.rows[i][j] = counts[order[j]][i];
  return p;
}

/// Placeholder cells count as absent coordinates.
inline AncestralSets ancestral_sets(const AncestralProfile& p) {
  AncestralSets s;
  s.leaf_order = p.leaf_order;
  s.coord_names = p.coord_names;
  s.sets.reserve(p.rows.size());
  for (const auto& row : p.rows) {
    boost::dynamic_bitset<> bits(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] && *row[j] > 0) bits.set(j);
    s.sets.push_back(std::move(bits));
  }
  return s;
}

/// Transpose of a profile: one tuple per live coordinate, over the profile's
/// leaf order.
inline PathTupleMultiset to_path_tuples(const AncestralProfile& p) {
  PathTupleMultiset m;
  m.leaf_order = p.leaf_order;
  for (std::size_t j = 0; j < p.coord_count(); ++j) {
    if (!p.is_live_column(j)) continue;
    std::vector<Count> tuple;
    tuple.reserve(p.leaf_count());
    for (const auto& row : p.rows) tuple.push_back(row[j].value_or(Count{0}));
    m.tuples.push_back(std::move(tuple));
  }
  std::sort(m.tuples.begin(), m.tuples.end());
  return m;
}

/// Inverse of to_path_tuples: tuple i becomes coordinate `coord_names[i]`.
inline AncestralProfile from_path_tuples(const PathTupleMultiset& m,
                                         const std::vector<VertexId>& coord_names) {
  if (coord_names.size() != m.tuples.size())
    throw Error(Errc::InvalidParameters, "need one coordinate name per path tuple");
  AncestralProfile p;
  p.leaf_order = m.leaf_order;
  p.coord_names = coord_names;
  p.rows.assign(m.leaf_order.size(), std::vector<Entry>(coord_names.size()));
  for (std::size_t j = 0; j < m.tuples.size(); ++j)
    for (std::size_t i = 0; i < m.leaf_order.size(); ++i) p.rows[i][j] = m.tuples[j].at(i);
  return p;
}

/// Pi_N over the lexicographic leaf order.
inline PathTupleMultiset path_tuples(const PhyloNetwork& net) {
  return to_path_tuples(ancestral_profile(net));
}

/// Size of the multiset symmetric difference of the two path-tuple multisets.
inline std::size_t profile_distance(const PhyloNetwork& n1, const PhyloNetwork& n2) {
  if (n1.leaf_labels() != n2.leaf_labels())
    throw Error(Errc::LeafSetMismatch, "networks have different leaf sets");
  std::map<std::vector<Count>, long long> balance;
  for (auto& t : path_tuples(n1).tuples) ++balance[t];
  for (auto& t : path_tuples(n2).tuples) --balance[t];
  std::size_t total = 0;
  for (const auto& [tuple, b] : balance) total += static_cast<std::size_t>(b < 0 ? -b : b);
  return total;
}

}  // namespace orchard
