#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance harness. The oracles deliberately avoid the library's
// algorithms: they work from arcs and explicit enumeration only.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orchard/orchardkit.hpp"

namespace orchard::testing {

using Arcs = std::vector<std::pair<VertexId, VertexId>>;

/// Code of the Error thrown by `f`, or std::nullopt when it returns.
template <class F>
std::optional<Errc> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline PhyloNetwork fix_n1() { return single_vertex_network("a"); }

inline PhyloNetwork fix_c2() { return network_from_arcs({{"ρ", "a"}, {"ρ", "b"}}); }

inline PhyloNetwork fix_rc2() {
  return network_from_arcs({{"ρ", "p_a"}, {"ρ", "p_b"}, {"p_a", "p_b"}, {"p_a", "a"}, {"p_b", "b"}});
}

/// FIX-RC2 with the roles of a and b swapped: a is the reticulation leaf.
inline PhyloNetwork fix_rc2_mirror() {
  return network_from_arcs({{"ρ", "p_a"}, {"ρ", "p_b"}, {"p_b", "p_a"}, {"p_b", "b"}, {"p_a", "a"}});
}

/// a, AddLeaf(a, b), then m reticulations alternating (a, b), (b, a), ...;
/// path counts grow like Fibonacci numbers.
inline PhyloNetwork alternating_chain(std::size_t m) {
  BuildScript s{"a", {AddLeaf{"a", "b"}}};
  for (std::size_t i = 0; i < m; ++i)
    s.ops.push_back(i % 2 ? BuildOp(AddReticulation{"b", "a"}) : BuildOp(AddReticulation{"a", "b"}));
  return build(s);
}

/// Largest entry of a profile without placeholders.
inline Count max_entry(const AncestralProfile& p) {
  Count best = 0;
  for (const auto& r : p.rows)
    for (const auto& e : r)
      if (e && *e > best) best = *e;
  return best;
}

/// Same network with every internal vertex renamed `prefix + old name`.
inline PhyloNetwork renamed(const PhyloNetwork& net, const std::string& prefix) {
  auto raw = net.to_raw();
  auto rn = [&](const VertexId& v) {
    const auto i = net.index_of(v);
    return net.is_leaf(i) ? v : prefix + v;
  };
  for (auto& v : raw.vertices) v = rn(v);
  for (auto& [u, v] : raw.arcs) {
    u = rn(u);
    v = rn(v);
  }
  for (auto& v : raw.internal_order) v = rn(v);
  return validate(raw);
}

/// Number of directed paths from `from` to `to`, walking every path one by
/// one.
inline Count brute_path_count(const PhyloNetwork& net, PhyloNetwork::Index from, PhyloNetwork::Index to) {
  Count total = 0;
  std::vector<PhyloNetwork::Index> stack{from};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v == to) ++total;
    for (auto c : net.children(v)) stack.push_back(c);
  }
  return total;
}

/// Profile computed entry by entry with brute_path_count.
inline AncestralProfile brute_profile(const PhyloNetwork& net) {
  AncestralProfile p;
  for (auto x : net.leaves()) p.leaf_order.push_back(net.label(x));
  for (auto v : net.internal_order()) p.coord_names.push_back(net.name(v));
  for (auto x : net.leaves()) {
    std::vector<Entry> row;
    for (auto v : net.internal_order()) row.emplace_back(brute_path_count(net, v, x));
    p.rows.push_back(std::move(row));
  }
  return p;
}

/// Sorted columns of a profile with placeholder columns dropped.
inline std::vector<std::vector<Count>> live_columns(const AncestralProfile& p) {
  std::vector<std::vector<Count>> out;
  for (std::size_t j = 0; j < p.coord_count(); ++j) {
    if (!p.is_live_column(j)) continue;
    std::vector<Count> col;
    for (const auto& row : p.rows) col.push_back(row[j].value_or(Count{0}));
    out.push_back(std::move(col));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Isomorphism by trying every bijection of internal vertices.
inline bool brute_isomorphic(const PhyloNetwork& a, const PhyloNetwork& b) {
  if (a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count() ||
      a.leaf_labels() != b.leaf_labels())
    return false;
  const std::size_t n = b.vertex_count();
  std::vector<char> arc_b(n * n, 0);
  for (auto [u, v] : b.arcs()) arc_b[u * n + v] = 1;
  std::vector<std::size_t> image(n);
  for (auto x : a.leaves()) image[x] = b.leaf(a.label(x));
  const auto ia = a.internal_order();
  std::vector<std::size_t> ib(b.internal_order().begin(), b.internal_order().end());
  if (ia.size() != ib.size()) return false;
  std::sort(ib.begin(), ib.end());
  const auto arcs_a = a.arcs();
  do {
    for (std::size_t i = 0; i < ia.size(); ++i) image[ia[i]] = ib[i];
    bool ok = true;
    for (auto [u, v] : arcs_a)
      if (!arc_b[image[u] * n + image[v]]) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(ib.begin(), ib.end()));
  return false;
}

/// Every reduction applicable to `net`, found by scanning all ordered leaf
/// pairs: (Cherry, a, b) reduces b; (ReticulatedCherry, a, b) cuts.
inline std::vector<CherryFinding> naive_moves(const PhyloNetwork& net) {
  std::vector<CherryFinding> out;
  for (auto a : net.leaves())
    for (auto b : net.leaves()) {
      if (a == b || net.is_single_vertex()) continue;
      const auto pa = net.parents(a).front(), pb = net.parents(b).front();
      if (pa == pb) out.push_back({CherryKind::Cherry, net.label(a), net.label(b)});
      const auto pbp = net.parents(pb);
      if (pbp.size() == 2 && std::find(pbp.begin(), pbp.end(), pa) != pbp.end())
        out.push_back({CherryKind::ReticulatedCherry, net.label(a), net.label(b)});
    }
  return out;
}

inline PhyloNetwork naive_apply(const PhyloNetwork& net, const CherryFinding& m) {
  return m.kind == CherryKind::Cherry ? reduce_cherry_net(net, m.a, m.b) : cut_reticulated_cherry_net(net, m.a, m.b);
}

/// Orchard test that rescans every pair after each reduction.
inline bool naive_is_orchard(PhyloNetwork net) {
  for (;;) {
    auto moves = naive_moves(net);
    if (moves.empty()) return net.is_single_vertex();
    net = naive_apply(net, moves.front());
  }
}

/// Complete sequences counted by exhaustive branching, no memoisation.
inline Count naive_count_sequences(const PhyloNetwork& net) {
  auto moves = naive_moves(net);
  if (moves.empty()) return net.is_single_vertex() ? 1 : 0;
  Count total = 0;
  for (const auto& m : moves) total += naive_count_sequences(naive_apply(net, m));
  return total;
}

/// Tree-child by definition: every non-leaf vertex has a child of in-degree one.
inline bool naive_tree_child(const PhyloNetwork& net) {
  for (PhyloNetwork::Index v = 0; v < net.vertex_count(); ++v) {
    if (net.is_leaf(v)) continue;
    bool ok = false;
    for (auto c : net.children(v)) ok = ok || net.parents(c).size() == 1;
    if (!ok) return false;
  }
  return true;
}

/// Applies `move` at network level and at profile level (consuming the
/// coordinates of the suppressed vertices) and checks that the profile-level
/// result, with placeholder columns dropped, is the profile of the reduced
/// network under the same coordinate names.
inline bool commutes(const PhyloNetwork& net, const CherryFinding& move) {
  const auto p = ancestral_profile(net);
  auto coord = [&](PhyloNetwork::Index v) { return p.find_coord(net.name(v)); };
  const auto pb = net.parents(net.leaf(move.b)).front();
  const auto reduced = naive_apply(net, move);
  ProfileReduction r;
  if (move.kind == CherryKind::Cherry) {
    r = reduce_cherry_profile(p, move.a, move.b, coord(pb));
  } else {
    const auto pa = net.parents(net.leaf(move.a)).front();
    r = cut_reticulated_cherry_profile(p, move.a, move.b, coord(pa), coord(pb));
  }
  if (r.profile.leaf_order != reduced.leaf_labels()) return false;
  std::size_t live = 0;
  const auto counts = brute_profile(reduced);
  for (std::size_t j = 0; j < r.profile.coord_count(); ++j) {
    if (!r.profile.is_live_column(j)) continue;
    ++live;
    const auto c = counts.find_coord(r.profile.coord_names[j]);
    if (!c) return false;
    for (std::size_t i = 0; i < r.profile.leaf_count(); ++i)
      if (r.profile.rows[i][j] != counts.rows[i][*c]) return false;
  }
  return live == reduced.internal_count();
}

}  // namespace orchard::testing
