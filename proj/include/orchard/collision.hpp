#pragma once

#include <atomic>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "orchard/enumerate.hpp"
#include "orchard/error.hpp"
#include "orchard/isomorphism.hpp"
#include "orchard/orchard.hpp"
#include "orchard/profile.hpp"

namespace orchard {

struct NetworkPair {
  PhyloNetwork first;
  PhyloNetwork second;
};

namespace detail {

using Buckets = std::map<std::vector<std::vector<Count>>, std::vector<PhyloNetwork>>;

struct ShardResult {
  Buckets buckets;
  std::optional<NetworkPair> pair;
};

// Adds `net` to its bucket unless an isomorphic copy is there. Returns a
// representative that has the same key but is not isomorphic, if any.
inline std::optional<PhyloNetwork> insert_rep(std::vector<PhyloNetwork>& reps, const PhyloNetwork& net) {
  for (const auto& r : reps)
    if (isomorphic(r, net)) return std::nullopt;
  reps.push_back(net);
  if (reps.size() > 1) return reps.front();
  return std::nullopt;
}

}  // namespace detail

/// Searches all non-orchard networks with at most `max_leaves` leaves and at
/// most `max_internal` internal vertices, smallest first, for two
/// non-isomorphic ones with equal path-tuple multisets. Each (n, k) level is split over
/// `workers` share-nothing shards whose buckets are merged afterwards.
///
/// Throws NotFound when the space is exhausted or more than `budget`
/// networks were examined.
inline NetworkPair find_profile_collision(std::size_t max_internal, std::size_t max_leaves,
                                          std::size_t budget = 10'000'000, std::size_t workers = 1) {
  if (workers == 0) workers = 1;
  std::atomic<std::size_t> examined{0};
  std::atomic<bool> stop{false};

  for (std::size_t t = 1; t <= max_internal; ++t) {
    for (std::size_t n = 1; n <= max_leaves && n <= t + 1; ++n) {
      if ((t + 1 - n) % 2 != 0) continue;
      const std::size_t k = (t + 1 - n) / 2;

      auto shard_job = [&, n, k](std::size_t shard) {
        detail::ShardResult res;
        for_each_network(
            n, k,
            [&](const PhyloNetwork& net) {
              if (stop.load() || res.pair) return false;
              if (++examined > budget) {
                stop = true;
                return false;
              }
              if (is_orchard(net).orchard) return true;
              auto& reps = res.buckets[path_tuples(net).tuples];
              if (auto other = detail::insert_rep(reps, net)) {
                res.pair = NetworkPair{*other, net};
                stop = true;
                return false;
              }
              return true;
            },
            shard, workers);
        return res;
      };

      std::vector<std::future<detail::ShardResult>> jobs;
      for (std::size_t s = 0; s < workers; ++s)
        jobs.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async, shard_job, s));
      std::vector<detail::ShardResult> results;
      for (auto& j : jobs) results.push_back(j.get());

      std::optional<NetworkPair> found;
      for (auto& r : results)
        if (!found && r.pair) found = std::move(r.pair);
      if (!found && examined.load() <= budget) {
        detail::Buckets merged;
        for (auto& r : results) {
          for (auto& [key, reps] : r.buckets) {
            auto& into = merged[key];
            for (const auto& net : reps) {
              if (auto other = detail::insert_rep(into, net)) {
                found = NetworkPair{*other, net};
                break;
              }
            }
            if (found) break;
          }
          if (found) break;
        }
      }
      if (found) return *found;
      if (examined.load() > budget)
        throw Error(Errc::NotFound, "no profile collision within a budget of " + std::to_string(budget));
    }
  }
  throw Error(Errc::NotFound, "no profile collision with at most " + std::to_string(max_leaves) +
                                  " leaves and " + std::to_string(max_internal) + " internal vertices");
}

/// Searches orchard networks on n leaves with at most `max_internal`
/// internal vertices for two with the same ancestral sets (up to ordering the
/// internal vertices) but different path-tuple multisets.
inline NetworkPair find_ancestral_set_collision(std::size_t n, std::size_t max_internal,
                                                std::size_t budget = 10'000'000) {
  std::size_t examined = 0;
  for (std::size_t k = 0; n + 2 * k - 1 <= max_internal; ++k) {
    // key: sorted reachable leaf sets of the internal vertices
    std::map<std::vector<std::vector<char>>, std::vector<std::pair<PathTupleMultiset, PhyloNetwork>>> groups;
    std::optional<NetworkPair> found;
    for_each_orchard_script(n, k, [&](const BuildScript& script) {
      if (++examined > budget) return false;
      auto net = build(script);
      auto pi = path_tuples(net);
      std::vector<std::vector<char>> key;
      for (const auto& tuple : pi.tuples) {
        std::vector<char> support;
        for (const auto& c : tuple) support.push_back(c > 0 ? 1 : 0);
        key.push_back(std::move(support));
      }
      std::sort(key.begin(), key.end());
      auto& group = groups[key];
      for (const auto& [other_pi, other] : group) {
        if (other_pi != pi) {
          found = NetworkPair{other, net};
          return false;
        }
      }
      if (group.empty()) group.emplace_back(std::move(pi), std::move(net));
      return true;
    });
    if (found) return *found;
    if (examined > budget) break;
  }
  throw Error(Errc::NotFound, "no ancestral-set collision found");
}

}  // namespace orchard
