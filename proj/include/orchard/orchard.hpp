#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orchard/cherry.hpp"
#include "orchard/detail/work_graph.hpp"
#include "orchard/isomorphism.hpp"
#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

/// A cherry-reduction sequence. Consumed coordinates index the internal order
/// of the network the sequence started from.
struct ReductionSequence {
  std::vector<CherryReductionStep> steps;
  PhyloNetwork terminal;
  bool complete = false;
};

struct OrchardResult {
  bool orchard = false;
  ReductionSequence sequence;
};

namespace detail {

struct Move {
  CherryKind kind;
  PhyloNetwork::Index a;
  PhyloNetwork::Index b;

  auto key() const { return std::tuple(static_cast<int>(kind), a, b); }
  friend bool operator<(const Move& x, const Move& y) { return x.key() < y.key(); }
};

// Some reduction involving leaf x, if any. Of the two orientations of a
// cherry, the leaf with the larger label is the one deleted.
inline std::optional<Move> move_involving(const WorkGraph& g, PhyloNetwork::Index x) {
  if (!g.alive(x) || g.parents(x).empty()) return std::nullopt;
  const auto p = g.parent(x);
  if (!g.is_reticulation(p)) {
    for (auto y : g.children(p)) {
      if (y == x) continue;
      if (g.is_leaf(y)) {
        return g.label(x) < g.label(y) ? Move{CherryKind::Cherry, x, y} : Move{CherryKind::Cherry, y, x};
      }
      if (g.is_reticulation(y) && g.is_leaf(g.children(y).front()))
        return Move{CherryKind::ReticulatedCherry, x, g.children(y).front()};
    }
    return std::nullopt;
  }
  for (auto q : g.parents(p))
    for (auto w : g.children(q))
      if (w != p && g.is_leaf(w)) return Move{CherryKind::ReticulatedCherry, w, x};
  return std::nullopt;
}

// Every available move (both orientations of each cherry).
inline std::vector<Move> all_moves(const WorkGraph& g) {
  std::set<Move> moves;
  for (auto x : g.live_leaves()) {
    if (g.parents(x).empty()) continue;
    const auto p = g.parent(x);
    for (auto y : g.children(p))
      if (y != x && g.is_leaf(y)) moves.insert({CherryKind::Cherry, y, x});
    if (g.is_reticulation(p))
      for (auto q : g.parents(p))
        for (auto w : g.children(q))
          if (w != p && g.is_leaf(w)) moves.insert({CherryKind::ReticulatedCherry, w, x});
  }
  return {moves.begin(), moves.end()};
}

class SequenceRecorder {
 public:
  explicit SequenceRecorder(const PhyloNetwork& net) : pos_(net.vertex_count(), 0) {
    const auto order = net.internal_order();
    for (std::size_t i = 0; i < order.size(); ++i) pos_[order[i]] = i;
  }

  // Applies `m` to `g`, records the step and returns the leaves whose
  // neighbourhood changed.
  std::vector<PhyloNetwork::Index> apply(WorkGraph& g, const Move& m) {
    CherryReductionStep step;
    step.finding = {m.kind, g.label(m.a), g.label(m.b)};
    step.provenance = Provenance::NetworkLevel;
    if (m.kind == CherryKind::Cherry) {
      step.consumed = {pos_[g.reduce_cherry(m.a, m.b)]};
      steps_.push_back(std::move(step));
      return {m.a};
    }
    auto [pa, pb] = g.cut(m.a, m.b);
    step.consumed = {pos_[pa], pos_[pb]};
    steps_.push_back(std::move(step));
    return {m.a, m.b};
  }

  ReductionSequence finish(const WorkGraph& g) {
    auto terminal = g.to_network();
    const bool complete = terminal.is_single_vertex();
    return {std::move(steps_), std::move(terminal), complete};
  }

 private:
  std::vector<std::size_t> pos_;
  std::vector<CherryReductionStep> steps_;
};

}  // namespace detail

/// Greedy orchard test: applies reductions until none is available and
/// reports whether a single vertex remains. Candidate leaves are kept on a
/// worklist; after each reduction only the leaves next to the change are
/// re-examined.
inline OrchardResult is_orchard(const PhyloNetwork& net) {
  detail::WorkGraph g(net);
  detail::SequenceRecorder rec(net);
  auto leaves = g.live_leaves();
  std::vector<PhyloNetwork::Index> work(leaves.rbegin(), leaves.rend());
  while (!work.empty()) {
    const auto x = work.back();
    work.pop_back();
    auto m = detail::move_involving(g, x);
    if (!m) continue;
    for (auto y : rec.apply(g, *m)) work.push_back(y);
  }
  auto seq = rec.finish(g);
  const bool orchard = seq.complete;
  return {orchard, std::move(seq)};
}

/// Maximal sequence choosing uniformly among the available reductions at
/// every step.
inline ReductionSequence random_maximal_sequence(const PhyloNetwork& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  detail::WorkGraph g(net);
  detail::SequenceRecorder rec(net);
  for (;;) {
    auto moves = detail::all_moves(g);
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    rec.apply(g, moves[pick(rng)]);
  }
  return rec.finish(g);
}

// ---------------------------------------------------------------------------
// counting complete sequences

namespace detail {

// Invariant under leaf-label-preserving isomorphism; used to bucket states.
inline std::string state_key(const PhyloNetwork& net) {
  std::ostringstream os;
  os << net.vertex_count() << '/' << net.reticulation_count();
  for (const auto& l : net.leaf_labels()) os << ' ' << l;
  os << " |";
  for (const auto& t : path_tuples(net).tuples) {
    os << " (";
    for (const auto& c : t) os << c << ',';
    os << ')';
  }
  return os.str();
}

class SequenceCounter {
 public:
  explicit SequenceCounter(std::size_t budget) : budget_(budget) {}

  Count count(const PhyloNetwork& net) {
    const auto key = state_key(net);
    auto& bucket = memo_[key];
    for (const auto& [seen, value] : bucket)
      if (isomorphic(seen, net)) return value;

    Count total = 0;
    const auto moves = available_reductions(net);
    if (moves.empty()) {
      total = net.is_single_vertex() ? 1 : 0;
    } else {
      for (const auto& m : moves) total += count(apply_reduction(net, m));
    }
    if (++states_ > budget_)
      throw Error(Errc::BudgetExceeded, "explored more than " + std::to_string(budget_) + " states");
    memo_[key].emplace_back(net, total);
    return total;
  }

  std::size_t states() const { return states_; }

 private:
  std::size_t budget_;
  std::size_t states_ = 0;
  std::map<std::string, std::vector<std::pair<PhyloNetwork, Count>>> memo_;
};

}  // namespace detail

/// Exact number of complete cherry-reduction sequences, where a sequence is
/// the ordered list of (kind, a, b) moves. Memoised over isomorphism classes
/// of intermediate networks; `budget` caps the number of distinct states.
inline Count count_complete_sequences(const PhyloNetwork& net, std::size_t budget = 1'000'000) {
  detail::SequenceCounter counter(budget);
  return counter.count(net);
}

// ---------------------------------------------------------------------------
// classification

struct ClassReport {
  bool is_orchard = false;
  bool is_tree_child = false;
  bool is_tree_sibling = false;
  bool is_time_consistent = false;

  /// Maximal greedy sequence; complete iff orchard.
  ReductionSequence orchard_sequence;
  /// Non-leaf vertex all of whose children are reticulations.
  std::optional<VertexId> tree_child_violation;
  /// Reticulation none of whose parents has a tree-vertex or leaf child.
  std::optional<VertexId> tree_sibling_violation;
  /// Smallest temporal labelling, when one exists.
  std::map<VertexId, std::size_t> temporal_labelling;
  /// A tree arc that cannot be strictly increasing.
  std::optional<std::pair<VertexId, VertexId>> time_violation;
};

namespace detail {

inline bool tree_or_leaf(const PhyloNetwork& net, PhyloNetwork::Index v) {
  return net.kind(v) == VertexKind::TreeVertex || net.kind(v) == VertexKind::Leaf;
}

struct TimeResult {
  std::map<VertexId, std::size_t> labelling;
  std::optional<std::pair<VertexId, VertexId>> violation;
};

// Reticulation arcs force equal times: their endpoints are merged into
// classes. Tree arcs force strict increase between classes, so a temporal
// labelling exists iff the quotient graph on tree arcs is acyclic; the
// longest-path level is the smallest one.
inline TimeResult temporal_labelling(const PhyloNetwork& net) {
  using Index = PhyloNetwork::Index;
  const std::size_t n = net.vertex_count();
  std::vector<Index> comp(n);
  std::iota(comp.begin(), comp.end(), Index{0});
  auto find = [&](Index v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  std::vector<std::pair<Index, Index>> tree_arcs;
  for (Index u = 0; u < n; ++u)
    for (Index v : net.children(u)) {
      if (net.kind(v) == VertexKind::Reticulation) {
        comp[find(u)] = find(v);
      } else {
        tree_arcs.emplace_back(u, v);
      }
    }

  TimeResult r;
  std::vector<std::vector<Index>> succ(n);
  std::vector<std::vector<std::size_t>> pred_arcs(n);
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < tree_arcs.size(); ++i) {
    const auto [u, v] = tree_arcs[i];
    const Index cu = find(u), cv = find(v);
    if (cu == cv) {
      r.violation = {net.name(u), net.name(v)};
      return r;
    }
    succ[cu].push_back(cv);
    pred_arcs[cv].push_back(i);
    ++indeg[cv];
  }
  std::vector<std::size_t> level(n, 0);
  std::vector<Index> ready;
  std::size_t classes = 0, done = 0;
  for (Index v = 0; v < n; ++v)
    if (find(v) == v) {
      ++classes;
      if (indeg[v] == 0) ready.push_back(v);
    }
  while (!ready.empty()) {
    Index c = ready.back();
    ready.pop_back();
    ++done;
    for (Index d : succ[c]) {
      level[d] = std::max(level[d], level[c] + 1);
      if (--indeg[d] == 0) ready.push_back(d);
    }
  }
  if (done != classes) {
    // Every unsorted class has an unsorted predecessor; walking backwards
    // must revisit a class, and the arc that closes the loop lies on a cycle.
    Index c = 0;
    while (find(c) != c || indeg[c] == 0) ++c;
    std::vector<std::size_t> via(n, tree_arcs.size());
    std::vector<char> seen(n, 0);
    while (!seen[c]) {
      seen[c] = 1;
      for (auto i : pred_arcs[c]) {
        const Index pc = find(tree_arcs[i].first);
        if (indeg[pc] != 0) {
          via[c] = i;
          c = pc;
          break;
        }
      }
    }
    const auto [u, v] = tree_arcs[via[c]];
    r.violation = {net.name(u), net.name(v)};
    return r;
  }
  for (Index v = 0; v < n; ++v) r.labelling[net.name(v)] = level[find(v)];
  return r;
}

}  // namespace detail

inline ClassReport classify(const PhyloNetwork& net) {
  ClassReport report;
  auto orchard = is_orchard(net);
  report.is_orchard = orchard.orchard;
  report.orchard_sequence = std::move(orchard.sequence);

  report.is_tree_child = true;
  for (auto v : net.topological_order()) {
    if (net.is_leaf(v)) continue;
    const auto kids = net.children(v);
    if (std::none_of(kids.begin(), kids.end(), [&](auto c) { return detail::tree_or_leaf(net, c); })) {
      report.is_tree_child = false;
      report.tree_child_violation = net.name(v);
      break;
    }
  }

  report.is_tree_sibling = true;
  for (auto v : net.topological_order()) {
    if (net.kind(v) != VertexKind::Reticulation) continue;
    bool ok = false;
    for (auto q : net.parents(v))
      for (auto s : net.children(q))
        if (s != v && detail::tree_or_leaf(net, s)) ok = true;
    if (!ok) {
      report.is_tree_sibling = false;
      report.tree_sibling_violation = net.name(v);
      break;
    }
  }

  auto time = detail::temporal_labelling(net);
  report.is_time_consistent = !time.violation.has_value();
  report.temporal_labelling = std::move(time.labelling);
  report.time_violation = std::move(time.violation);
  return report;
}

}  // namespace orchard
