#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orchard/detail/work_graph.hpp"
#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

enum class CherryKind { Cherry, ReticulatedCherry };

constexpr std::string_view cherry_kind_name(CherryKind kind) {
  return kind == CherryKind::Cherry ? "cherry" : "reticulated-cherry";
}

/// A pair of leaves. For a ReticulatedCherry, `b` is the reticulation leaf.
/// When used as a reduction move, a Cherry means "reduce b" (b is deleted).
struct CherryFinding {
  CherryKind kind = CherryKind::Cherry;
  std::string a;
  std::string b;

  friend bool operator==(const CherryFinding&, const CherryFinding&) = default;
  friend auto operator<=>(const CherryFinding&, const CherryFinding&) = default;
};

enum class Provenance { NetworkLevel, ProfileLevel };

/// One reduce/cut event and the coordinates it consumed (one for a reduce,
/// (j, k) for a cut), as indices into the coordinate list.
struct CherryReductionStep {
  CherryFinding finding;
  std::vector<std::size_t> consumed;
  Provenance provenance = Provenance::NetworkLevel;

  friend bool operator==(const CherryReductionStep&, const CherryReductionStep&) = default;
};

// ---------------------------------------------------------------------------
// graph level

/// All cherries (each once, a < b) and reticulated cherries, sorted.
inline std::vector<CherryFinding> find_cherries_graph(const PhyloNetwork& net) {
  std::vector<CherryFinding> out;
  for (auto b : net.leaves()) {
    const auto pb = net.parent(b);
    if (pb == PhyloNetwork::npos) continue;
    for (auto a : net.children(pb))
      if (a != b && net.is_leaf(a) && net.label(a) < net.label(b))
        out.push_back({CherryKind::Cherry, net.label(a), net.label(b)});
    if (net.kind(pb) != VertexKind::Reticulation) continue;
    for (auto pa : net.parents(pb))
      for (auto a : net.children(pa))
        if (net.is_leaf(a)) out.push_back({CherryKind::ReticulatedCherry, net.label(a), net.label(b)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every cherry reduction applicable to `net`: both orientations of each
/// cherry and one cut per reticulated cherry.
inline std::vector<CherryFinding> available_reductions(const PhyloNetwork& net) {
  std::vector<CherryFinding> out;
  for (const auto& f : find_cherries_graph(net)) {
    out.push_back(f);
    if (f.kind == CherryKind::Cherry) out.push_back({CherryKind::Cherry, f.b, f.a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Deletes leaf b of the cherry {a, b} and suppresses its parent. If the
/// parent is the root, only the isolated vertex a remains.
inline PhyloNetwork reduce_cherry_net(const PhyloNetwork& net, std::string_view a, std::string_view b) {
  const auto ia = net.leaf(a), ib = net.leaf(b);
  detail::WorkGraph g(net);
  if (!g.is_cherry(ia, ib))
    throw Error(Errc::NotACherry, "{" + std::string(a) + ", " + std::string(b) + "} is not a cherry");
  g.reduce_cherry(ia, ib);
  return g.to_network();
}

/// Deletes the reticulation arc (p_a, p_b) and suppresses p_a and p_b.
inline PhyloNetwork cut_reticulated_cherry_net(const PhyloNetwork& net, std::string_view a,
                                               std::string_view b) {
  const auto ia = net.leaf(a), ib = net.leaf(b);
  detail::WorkGraph g(net);
  if (!g.is_reticulated_cherry(ia, ib))
    throw Error(Errc::NotAReticulatedCherry, "{" + std::string(a) + ", " + std::string(b) +
                                                 "} is not a reticulated cherry with reticulation leaf " +
                                                 std::string(b));
  g.cut(ia, ib);
  return g.to_network();
}

/// Applies a move from available_reductions().
inline PhyloNetwork apply_reduction(const PhyloNetwork& net, const CherryFinding& move) {
  return move.kind == CherryKind::Cherry ? reduce_cherry_net(net, move.a, move.b)
                                         : cut_reticulated_cherry_net(net, move.a, move.b);
}

// ---------------------------------------------------------------------------
// profile level

namespace detail {

inline bool is_count(const Entry& e, long long value) { return e && *e == value; }

}  // namespace detail

/// Coordinates j with sigma_j(a) = sigma_j(b) = 1 and sigma_j(x) = 0 for every
/// other leaf x. Placeholder cells never qualify.
inline std::vector<std::size_t> cherry_coordinates(const AncestralProfile& p, std::size_t ra,
                                                   std::size_t rb) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p.coord_count(); ++j) {
    bool ok = detail::is_count(p.rows[ra][j], 1) && detail::is_count(p.rows[rb][j], 1);
    for (std::size_t x = 0; ok && x < p.leaf_count(); ++x)
      if (x != ra && x != rb) ok = detail::is_count(p.rows[x][j], 0);
    if (ok) out.push_back(j);
  }
  return out;
}

/// Coordinates k with sigma_k(b) = 1 and sigma_k(x) = 0 for every other leaf x.
inline std::vector<std::size_t> reticulation_coordinates(const AncestralProfile& p, std::size_t rb) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < p.coord_count(); ++k) {
    bool ok = detail::is_count(p.rows[rb][k], 1);
    for (std::size_t x = 0; ok && x < p.leaf_count(); ++x)
      if (x != rb) ok = detail::is_count(p.rows[x][k], 0);
    if (ok) out.push_back(k);
  }
  return out;
}

/// Cherries and reticulated cherries recognised from ancestral sets alone.
///
/// Cherry(a, b) iff gamma(a) = gamma(b). ReticulatedCherry(a, b) iff
/// gamma(a) is a proper subset of gamma(b), no leaf x other than a and b has
/// gamma(a) contained in gamma(x), and exactly one coordinate of gamma(b)
/// lies in no other leaf's set.
inline std::vector<CherryFinding> find_cherries_profile(const AncestralProfile& p) {
  const auto sets = ancestral_sets(p);
  const std::size_t n = p.leaf_count();
  const std::size_t t = p.coord_count();
  std::vector<CherryFinding> out;

  // private_to[b] = gamma(b) minus the union over all other leaves.
  std::vector<boost::dynamic_bitset<>> private_to(n, boost::dynamic_bitset<>(t));
  {
    std::vector<boost::dynamic_bitset<>> prefix(n + 1, boost::dynamic_bitset<>(t));
    std::vector<boost::dynamic_bitset<>> suffix(n + 1, boost::dynamic_bitset<>(t));
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] | sets.sets[i];
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] | sets.sets[i];
    for (std::size_t b = 0; b < n; ++b) private_to[b] = sets.sets[b] - (prefix[b] | suffix[b + 1]);
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& ga = sets.sets[a];
      const auto& gb = sets.sets[b];
      if (ga == gb) {
        if (p.leaf_order[a] < p.leaf_order[b])
          out.push_back({CherryKind::Cherry, p.leaf_order[a], p.leaf_order[b]});
        continue;
      }
      if (!ga.is_proper_subset_of(gb)) continue;
      bool dominated = false;
      for (std::size_t x = 0; x < n && !dominated; ++x)
        if (x != a && x != b && ga.is_subset_of(sets.sets[x])) dominated = true;
      if (dominated || private_to[b].count() != 1) continue;
      out.push_back({CherryKind::ReticulatedCherry, p.leaf_order[a], p.leaf_order[b]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Pairs that reconstruction may reduce or cut. Cherries are as above. A
/// pair (a, b) is offered for a cut when gamma(a) is a proper subset of
/// gamma(b), no leaf x other than a and b has gamma(a) contained in
/// gamma(x), and both cut coordinates exist: some j sees exactly a and b
/// once, and some k sees only b, once.
///
/// The private-coordinate count used by find_cherries_profile rejects
/// reticulated cherries whose reticulation has another reticulation as
/// parent (every stacked chain), so it cannot drive reconstruction. This
/// test accepts them, and also accepts pairs joined through a chain of
/// reticulations that see only b; cutting such a pair removes the arc into
/// the top of that chain.
inline std::vector<CherryFinding> reduction_candidates(const AncestralProfile& p) {
  const auto sets = ancestral_sets(p);
  const std::size_t n = p.leaf_count();
  std::vector<CherryFinding> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& ga = sets.sets[a];
      const auto& gb = sets.sets[b];
      if (ga == gb) {
        if (p.leaf_order[a] < p.leaf_order[b])
          out.push_back({CherryKind::Cherry, p.leaf_order[a], p.leaf_order[b]});
        continue;
      }
      if (!ga.is_proper_subset_of(gb)) continue;
      bool dominated = false;
      for (std::size_t x = 0; x < n && !dominated; ++x)
        if (x != a && x != b && ga.is_subset_of(sets.sets[x])) dominated = true;
      if (dominated || cherry_coordinates(p, a, b).empty() || reticulation_coordinates(p, b).empty()) continue;
      out.push_back({CherryKind::ReticulatedCherry, p.leaf_order[a], p.leaf_order[b]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ProfileReduction {
  AncestralProfile profile;
  CherryReductionStep step;
};

/// Removes row b and turns coordinate j into a placeholder column.
/// `j == std::nullopt` picks the smallest qualifying coordinate.
///
/// Only the local precondition on j is checked; the profile is not required
/// to come from a network.
inline ProfileReduction reduce_cherry_profile(const AncestralProfile& p, std::string_view a,
                                              std::string_view b,
                                              std::optional<std::size_t> j = std::nullopt) {
  const auto ra = p.row_of(a), rb = p.row_of(b);
  if (ra == rb) throw Error(Errc::NotACherry, "a cherry needs two distinct leaves");
  const auto candidates = cherry_coordinates(p, ra, rb);
  if (candidates.empty() || (j && std::find(candidates.begin(), candidates.end(), *j) == candidates.end()))
    throw Error(Errc::NoCandidateCoordinate,
                "no coordinate sees exactly " + std::string(a) + " and " + std::string(b) + " once");
  const std::size_t col = j.value_or(candidates.front());

  ProfileReduction r;
  r.profile.coord_names = p.coord_names;
  for (std::size_t x = 0; x < p.leaf_count(); ++x) {
    if (x == rb) continue;
    r.profile.leaf_order.push_back(p.leaf_order[x]);
    r.profile.rows.push_back(p.rows[x]);
    r.profile.rows.back()[col] = std::nullopt;
  }
  r.step = {{CherryKind::Cherry, std::string(a), std::string(b)}, {col}, Provenance::ProfileLevel};
  return r;
}

/// Placeholders columns j and k; row b becomes sigma(b) - sigma(a) elsewhere.
/// Coordinates left as std::nullopt are picked as the smallest candidates.
inline ProfileReduction cut_reticulated_cherry_profile(const AncestralProfile& p, std::string_view a,
                                                       std::string_view b,
                                                       std::optional<std::size_t> j = std::nullopt,
                                                       std::optional<std::size_t> k = std::nullopt) {
  const auto ra = p.row_of(a), rb = p.row_of(b);
  if (ra == rb) throw Error(Errc::NotAReticulatedCherry, "a reticulated cherry needs two distinct leaves");
  const auto cand_j = cherry_coordinates(p, ra, rb);
  if (cand_j.empty() || (j && std::find(cand_j.begin(), cand_j.end(), *j) == cand_j.end()))
    throw Error(Errc::NoCandidateCoordinate,
                "no coordinate sees exactly " + std::string(a) + " and " + std::string(b) + " once");
  const auto cand_k = reticulation_coordinates(p, rb);
  if (cand_k.empty() || (k && std::find(cand_k.begin(), cand_k.end(), *k) == cand_k.end()))
    throw Error(Errc::NoCandidateCoordinate, "no coordinate sees only " + std::string(b));
  const std::size_t cj = j.value_or(cand_j.front());
  const std::size_t ck = k.value_or(cand_k.front());

  ProfileReduction r;
  r.profile = p;
  for (auto& row : r.profile.rows) {
    row[cj] = std::nullopt;
    row[ck] = std::nullopt;
  }
  auto& row_b = r.profile.rows[rb];
  const auto& row_a = p.rows[ra];
  for (std::size_t i = 0; i < p.coord_count(); ++i) {
    if (i == cj || i == ck) continue;
    if (!row_b[i] || !row_a[i]) {
      row_b[i] = std::nullopt;
      continue;
    }
    Count diff = *row_b[i] - *row_a[i];
    if (diff < 0)
      throw Error(Errc::NegativeEntryAfterCut,
                  "cutting {" + std::string(a) + ", " + std::string(b) + "} leaves a negative count at " +
                      p.coord_names[i],
                  p.coord_names[i]);
    row_b[i] = std::move(diff);
  }
  r.step = {{CherryKind::ReticulatedCherry, std::string(a), std::string(b)}, {cj, ck}, Provenance::ProfileLevel};
  return r;
}

}  // namespace orchard
