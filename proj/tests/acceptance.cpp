// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "support.hpp"

namespace {

using namespace orchard;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    failures += !ok;
  }
};

AncestralProfile recomputed(const PhyloNetwork& net, const AncestralProfile& p) {
  auto raw = net.to_raw();
  raw.internal_order = p.coord_names;
  return ancestral_profile(validate(raw));
}

void round_trip(Report& r) {
  std::mt19937_64 rng(20240601);
  std::size_t iso = 0, equal = 0, errors = 0;
  const std::size_t total = 500;
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t n = 2 + rng() % 11, k = rng() % 13;
    auto net = random_orchard(n, k, rng());
    auto p = ancestral_profile(net);
    try {
      auto rec = orchard_tuple(p);
      iso += isomorphic(rec.network, net);
      equal += recomputed(rec.network, p) == p;
    } catch (const Error&) {
      ++errors;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << iso << "/" << total << " isomorphic, " << equal << "/" << total << " profiles equal, " << errors
    << " errors, " << secs << " s";
  r.line(1, iso == total && equal == total && secs < 60, d.str());
}

void uniqueness(Report& r) {
  std::size_t orchards = 0, violations = 0, checked = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t k = 0; n + k <= 4; ++k) {
      std::map<std::vector<std::vector<Count>>, std::vector<PhyloNetwork>> groups;
      for_each_network(n, k, [&](const PhyloNetwork& net) {
        groups[path_tuples(net).tuples].push_back(net);
        return true;
      });
      for (const auto& [key, nets] : groups)
        for (const auto& a : nets) {
          if (!testing::naive_is_orchard(a)) continue;
          ++orchards;
          const auto p = ancestral_profile(a);
          for (const auto& b : nets) {
            ++checked;
            if (verify_realisation(p, b) && !testing::brute_isomorphic(a, b)) ++violations;
          }
        }
    }
  std::ostringstream d;
  d << violations << " violating pairs over " << orchards << " orchard networks (" << checked
    << " equal-profile pairs checked, at most 7 vertices)";
  r.line(2, violations == 0, d.str());
}

void order_irrelevance(Report& r) {
  std::mt19937_64 rng(7);
  std::size_t good = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 11, k = rng() % 13;
    auto net = random_orchard(n, k, rng());
    for (int s = 0; s < 20; ++s) {
      auto seq = random_maximal_sequence(net, rng());
      good += seq.complete && seq.steps.size() == n + k - 1;
      ++total;
    }
  }
  r.line(3, good == total, std::to_string(good) + "/" + std::to_string(total) + " maximal sequences complete with length n+k-1");
}

void commutation(Report& r) {
  std::mt19937_64 rng(11);
  std::size_t steps = 0, mismatches = 0;
  while (steps < 1000) {
    auto net = random_orchard(2 + rng() % 9, rng() % 8, rng());
    while (steps < 1000 && !net.is_single_vertex()) {
      auto moves = available_reductions(net);
      const auto& move = moves[rng() % moves.size()];
      mismatches += !testing::commutes(net, move);
      ++steps;
      net = apply_reduction(net, move);
    }
  }
  r.line(4, mismatches == 0, std::to_string(mismatches) + " mismatches over " + std::to_string(steps) + " reduction steps");
}

void path_count_oracle(Report& r) {
  std::size_t networks = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 0; 2 * (n + k) - 1 <= 12; ++k)
      for_each_network(n, k, [&](const PhyloNetwork& net) {
        mismatches += ancestral_profile(net) != testing::brute_profile(net);
        ++networks;
        return true;
      });
  std::mt19937_64 rng(5);
  std::size_t sampled = 0;
  for (int i = 0; i < 1000; ++i) {
    auto net = random_network(6 + rng() % 7, 3 + rng() % 8, rng());
    const auto counts = path_counts(net);
    for (int s = 0; s < 3; ++s) {
      const auto v = rng() % net.vertex_count();
      const auto pos = rng() % net.leaf_count();
      mismatches += counts[v][pos] != testing::brute_path_count(net, v, net.leaves()[pos]);
      ++sampled;
    }
  }
  const Count chain_max = testing::max_entry(ancestral_profile(chain_network(40)));
  const Count alternating_max = testing::max_entry(ancestral_profile(testing::alternating_chain(140)));
  const bool big = chain_max > (Count(1) << 40);
  std::ostringstream d;
  d << mismatches << " mismatches (" << networks << " networks exhaustively, " << sampled
    << " sampled entries); largest count on the 40-reticulation chain is " << chain_max
    << (big ? " > 2^40" : ", not > 2^40") << "; alternating 140-chain reaches " << alternating_max;
  r.line(5, mismatches == 0 && big, d.str());
}

void profile_collision(Report& r) {
  auto t0 = Clock::now();
  try {
    auto pair = find_profile_collision(6, 3);
    const double secs = seconds_since(t0);
    const bool ok = path_tuples(pair.first) == path_tuples(pair.second) &&
                    verify_realisation(ancestral_profile(pair.first), pair.second) &&
                    verify_realisation(ancestral_profile(pair.second), pair.first) &&
                    !isomorphic(pair.first, pair.second) && !testing::brute_isomorphic(pair.first, pair.second) &&
                    !is_orchard(pair.first).orchard && !is_orchard(pair.second).orchard;
    std::ostringstream d;
    d << "pair with " << pair.first.leaf_count() << " leaves and " << pair.first.internal_count()
      << " internal vertices found in " << secs << " s";
    r.line(6, ok && secs < 600, d.str());
  } catch (const Error& e) {
    r.line(6, false, e.what());
  }
}

void set_collision(Report& r) {
  auto t0 = Clock::now();
  try {
    auto pair = find_ancestral_set_collision(3, 8);
    const double secs = seconds_since(t0);
    auto supports = [](const PhyloNetwork& net) {
      std::vector<std::vector<bool>> out;
      for (const auto& t : path_tuples(net).tuples) {
        out.emplace_back();
        for (const auto& c : t) out.back().push_back(c > 0);
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    const bool ok = testing::naive_is_orchard(pair.first) && testing::naive_is_orchard(pair.second) &&
                    supports(pair.first) == supports(pair.second) &&
                    path_tuples(pair.first) != path_tuples(pair.second) && pair.first.internal_count() <= 8;
    std::ostringstream d;
    d << "orchard pair with " << pair.first.internal_count() << " internal vertices found in " << secs << " s";
    r.line(7, ok && secs < 600, d.str());
  } catch (const Error& e) {
    r.line(7, false, e.what());
  }
}

void class_properties(Report& r) {
  std::vector<PhyloNetwork> nets{testing::fix_n1(), testing::fix_c2(), testing::fix_rc2(), testing::fix_rc2_mirror()};
  for (std::size_t m = 0; m <= 6; ++m) nets.push_back(chain_network(m));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 2 + rng() % 7;
    switch (i % 3) {
      case 0: nets.push_back(random_network(n, rng() % 5, rng())); break;
      case 1: nets.push_back(random_orchard(n, rng() % 6, rng())); break;
      default: nets.push_back(random_tree_child(n, rng() % n, rng())); break;
    }
  }
  std::size_t violations = 0, tree_child = 0, ts_tc = 0;
  for (const auto& net : nets) {
    auto c = classify(net);
    const bool orchard = testing::naive_is_orchard(net);
    if (c.is_tree_child) {
      ++tree_child;
      violations += !orchard || net.reticulation_count() + 1 > net.leaf_count();
    }
    if (c.is_tree_sibling && c.is_time_consistent) {
      ++ts_tc;
      violations += !orchard;
    }
  }
  std::ostringstream d;
  d << violations << " violations over " << nets.size() << " networks (" << tree_child << " tree-child, " << ts_tc
    << " tree-sibling and time-consistent)";
  r.line(8, violations == 0, d.str());
}

void metric(Report& r) {
  std::mt19937_64 rng(13);
  std::size_t self = 0, mismatches = 0, zero = 0, iso = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 3, k = rng() % 3;
    auto a = random_orchard(n, k, rng());
    auto b = i % 4 == 0 ? testing::renamed(a, "q") : random_orchard(n, k, rng());
    self += profile_distance(a, a) != 0;
    const bool d0 = profile_distance(a, b) == 0;
    const bool same = isomorphic(a, b);
    zero += d0;
    iso += same;
    mismatches += d0 != same;
  }
  const auto c2_rc2 = profile_distance(testing::fix_c2(), testing::fix_rc2());
  std::ostringstream d;
  d << self << " nonzero self-distances, " << mismatches << " mismatches between distance 0 and isomorphism over 200 pairs ("
    << zero << " at distance 0, " << iso << " isomorphic), d(C2, RC2) = " << c2_rc2;
  r.line(9, self == 0 && mismatches == 0 && c2_rc2 == 2, d.str());
}

void sequence_counting(Report& r) {
  const auto c2 = count_complete_sequences(testing::fix_c2());
  const auto rc2 = count_complete_sequences(testing::fix_rc2());
  const auto n1 = count_complete_sequences(testing::fix_n1());
  std::mt19937_64 rng(17);
  std::size_t mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng() % 4;
    const std::size_t k = rng() % (8 - n);
    auto net = random_orchard(n, k, rng());
    mismatches += count_complete_sequences(net) != testing::naive_count_sequences(net);
  }
  std::ostringstream d;
  d << "C2=" << c2 << " RC2=" << rc2 << " N1=" << n1 << ", " << mismatches << "/50 mismatches against naive enumeration";
  r.line(10, c2 == 2 && rc2 == 2 && n1 == 1 && mismatches == 0, d.str());
}

double median_reconstruction_seconds(std::size_t m, int repeats) {
  const auto p = ancestral_profile(chain_network(m));
  std::vector<double> times;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = Clock::now();
    auto rec = orchard_tuple(p);
    times.push_back(seconds_since(t0));
    if (rec.network.reticulation_count() != m) return -1;
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void complexity(Report& r) {
  std::vector<double> xs, ys;
  double t60 = 0;
  for (std::size_t m = 10; m <= 60; m += 10) {
    const double t = median_reconstruction_seconds(m, 5);
    if (t < 0) return r.line(11, false, "wrong reconstruction of the chain with " + std::to_string(m) + " reticulations");
    xs.push_back(std::log(double(m)));
    ys.push_back(std::log(t));
    if (m == 60) t60 = t;
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  std::ostringstream d;
  d << "60-reticulation chain (" << chain_network(60).vertex_count() << " vertices) in " << t60
    << " s, log-log slope " << slope;
  r.line(11, t60 < 10 && slope <= 6, d.str());
}

}  // namespace

int main() {
  Report r;
  round_trip(r);
  uniqueness(r);
  order_irrelevance(r);
  commutation(r);
  path_count_oracle(r);
  profile_collision(r);
  set_collision(r);
  class_properties(r);
  metric(r);
  sequence_counting(r);
  complexity(r);
  std::cout << (11 - r.failures) << "/11 criteria passed" << std::endl;
  return r.failures == 0 ? 0 : 1;
}
