#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orchard/cherry.hpp"
#include "orchard/error.hpp"
#include "orchard/network.hpp"
#include "orchard/profile.hpp"

namespace orchard {

enum class TraceRule { CherryI, ReticulatedCherryII, Base };

constexpr std::string_view trace_rule_name(TraceRule r) {
  switch (r) {
    case TraceRule::CherryI: return "cherry-I";
    case TraceRule::ReticulatedCherryII: return "reticulated-cherry-II";
    case TraceRule::Base: return "base";
  }
  return "?";
}

struct TraceStep {
  TraceRule rule = TraceRule::Base;
  std::string a;
  std::string b;  // empty for Base
  std::vector<VertexId> consumed;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ReconstructionTrace {
  std::vector<TraceStep> steps;

  /// One line per step: rule, leaves, consumed coordinates.
  std::string to_text() const {
    std::string out;
    for (const auto& s : steps) {
      out += trace_rule_name(s.rule);
      out += ' ';
      out += s.a;
      if (!s.b.empty()) out += ' ' + s.b;
      for (const auto& c : s.consumed) out += ' ' + c;
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const ReconstructionTrace&, const ReconstructionTrace&) = default;
};

struct Reconstruction {
  PhyloNetwork network;
  ReconstructionTrace trace;
};

namespace detail {

[[noreturn]] inline void not_reconstructible(std::size_t step, const std::string& reason) {
  throw Error(Errc::NotReconstructible, "step " + std::to_string(step) + ": " + reason,
              std::to_string(step));
}

/// Equality of two profiles up to the order of their rows.
inline bool same_rows(const AncestralProfile& p, const AncestralProfile& q) {
  if (p.coord_names != q.coord_names || p.leaf_count() != q.leaf_count()) return false;
  for (std::size_t i = 0; i < p.leaf_count(); ++i) {
    auto r = q.find_row(p.leaf_order[i]);
    if (!r || q.rows[*r] != p.rows[i]) return false;
  }
  return true;
}

// Replays a trace backwards, growing the network from its base leaf.
class Replayer {
 public:
  explicit Replayer(const std::string& base) : single_(base) {}

  void undo_reduce(const std::string& a, const std::string& b, const VertexId& j) {
    if (!single_.empty()) {
      arcs_.emplace_back(j, a);
      arcs_.emplace_back(j, b);
      single_.clear();
      return;
    }
    subdivide(a, j);
    arcs_.emplace_back(j, b);
  }

  void undo_cut(const std::string& a, const std::string& b, const VertexId& j, const VertexId& k) {
    subdivide(a, j);
    subdivide(b, k);
    arcs_.emplace_back(j, k);
  }

  RawNetwork raw(const std::vector<VertexId>& internal_order, const std::vector<std::string>& leaves) const {
    RawNetwork r;
    for (const auto& x : leaves) r.vertices.push_back(x);
    if (single_.empty()) r.vertices.insert(r.vertices.end(), internal_order.begin(), internal_order.end());
    r.arcs = arcs_;
    r.internal_order = internal_order;
    return r;
  }

 private:
  void subdivide(const std::string& leaf, const VertexId& mid) {
    auto it = std::find_if(arcs_.begin(), arcs_.end(), [&](const auto& e) { return e.second == leaf; });
    if (it == arcs_.end()) throw Error(Errc::NotReconstructible, "leaf " + leaf + " has no incoming arc");
    it->second = mid;
    arcs_.emplace_back(mid, leaf);
  }

  std::string single_;
  std::vector<std::pair<VertexId, VertexId>> arcs_;
};

}  // namespace detail

/// Rebuilds the orchard network realising `p`.
///
/// Repeatedly picks the smallest pair with gamma(a) = gamma(b) and reduces
/// b, or failing that the smallest pair accepted for a cut by
/// reduction_candidates() and cuts it. The steps are then undone on a
/// graph, naming every created vertex by the coordinate it consumed, so the
/// profile of the result under internal order `p.coord_names` equals `p`.
inline Reconstruction orchard_tuple(const AncestralProfile& p) {
  if (p.leaf_count() == 0) detail::not_reconstructible(0, "profile has no leaves");
  for (const auto& row : p.rows)
    if (row.size() != p.coord_count()) detail::not_reconstructible(0, "ragged profile");

  Reconstruction out;
  AncestralProfile cur = p;
  std::size_t step = 0;
  while (cur.leaf_count() > 1) {
    const auto found = reduction_candidates(cur);
    if (found.empty()) detail::not_reconstructible(step, "no pair can be reduced or cut");
    const auto& f = found.front();
    try {
      if (f.kind == CherryKind::Cherry) {
        auto r = reduce_cherry_profile(cur, f.a, f.b);
        out.trace.steps.push_back({TraceRule::CherryI, f.a, f.b, {cur.coord_names[r.step.consumed[0]]}});
        cur = std::move(r.profile);
      } else {
        auto r = cut_reticulated_cherry_profile(cur, f.a, f.b);
        out.trace.steps.push_back({TraceRule::ReticulatedCherryII, f.a, f.b,
                                   {cur.coord_names[r.step.consumed[0]], cur.coord_names[r.step.consumed[1]]}});
        cur = std::move(r.profile);
      }
    } catch (const Error& e) {
      detail::not_reconstructible(step, std::string(errc_name(e.code())) + " on (" + f.a + ", " + f.b +
                                            "): " + e.what());
    }
    ++step;
  }
  for (std::size_t j = 0; j < cur.coord_count(); ++j)
    if (cur.rows[0][j]) detail::not_reconstructible(step, "coordinate " + cur.coord_names[j] + " never consumed");
  out.trace.steps.push_back({TraceRule::Base, cur.leaf_order[0], "", {}});

  detail::Replayer g(cur.leaf_order[0]);
  for (auto it = out.trace.steps.rbegin() + 1; it != out.trace.steps.rend(); ++it) {
    if (it->rule == TraceRule::CherryI)
      g.undo_reduce(it->a, it->b, it->consumed[0]);
    else
      g.undo_cut(it->a, it->b, it->consumed[0], it->consumed[1]);
  }
  try {
    out.network = validate(g.raw(p.coord_names, p.leaf_order));
  } catch (const Error& e) {
    detail::not_reconstructible(step, std::string("rebuilt graph is invalid: ") + e.what());
  }
  if (!detail::same_rows(ancestral_profile(out.network), p))
    detail::not_reconstructible(step, "rebuilt network does not realise the profile");
  return out;
}

/// True iff some ordering of the internal vertices of `net` gives profile
/// `p`, that is, iff the columns of `p` and the path tuples of `net` agree
/// as multisets. Profiles with placeholders are never realised.
inline bool verify_realisation(const AncestralProfile& p, const PhyloNetwork& net) {
  auto labels = p.leaf_order;
  std::sort(labels.begin(), labels.end());
  if (labels != net.leaf_labels()) throw Error(Errc::LeafSetMismatch, "profile and network have different leaf sets");
  if (p.has_placeholders() || p.coord_count() != net.internal_count()) return false;

  std::vector<std::size_t> row(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) row[i] = p.row_of(labels[i]);
  std::vector<std::vector<Count>> columns;
  for (std::size_t j = 0; j < p.coord_count(); ++j) {
    std::vector<Count> c;
    for (auto r : row) c.push_back(*p.rows[r][j]);
    columns.push_back(std::move(c));
  }
  std::sort(columns.begin(), columns.end());
  return columns == path_tuples(net).tuples;
}

}  // namespace orchard
