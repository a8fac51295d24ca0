#include <gtest/gtest.h>

#include "support.hpp"

namespace orchard {
namespace {

using testing::error_of;
using testing::fix_c2;
using testing::fix_n1;
using testing::fix_rc2;

// Profile of the reconstruction under the input's coordinate order.
AncestralProfile recomputed(const PhyloNetwork& net, const AncestralProfile& p) {
  auto raw = net.to_raw();
  raw.internal_order = p.coord_names;
  return ancestral_profile(validate(raw));
}

TEST(OrchardTuple, TwoLeafCherryExactly) {
  auto r = orchard_tuple(ancestral_profile(fix_c2()));
  EXPECT_EQ(serialize_arclist(r.network), serialize_arclist(fix_c2()));
  EXPECT_EQ(r.trace.to_text(), "cherry-I a b ρ\nbase a\n");
}

TEST(OrchardTuple, ReticulatedCherryExactly) {
  auto r = orchard_tuple(ancestral_profile(fix_rc2()));
  EXPECT_EQ(serialize_arclist(r.network), serialize_arclist(fix_rc2()));
  ASSERT_EQ(r.trace.steps.size(), 3u);
  EXPECT_EQ(r.trace.steps[0], (TraceStep{TraceRule::ReticulatedCherryII, "a", "b", {"p_a", "p_b"}}));
  EXPECT_EQ(r.trace.steps[1], (TraceStep{TraceRule::CherryI, "a", "b", {"ρ"}}));
  EXPECT_EQ(r.trace.steps[2].rule, TraceRule::Base);
}

TEST(OrchardTuple, SingleLeaf) {
  auto r = orchard_tuple(ancestral_profile(fix_n1()));
  EXPECT_TRUE(r.network.is_single_vertex());
  EXPECT_EQ(r.network.label(r.network.root()), "a");
}

TEST(OrchardTuple, ChainIsRecovered) {
  for (std::size_t m = 0; m <= 12; ++m) {
    auto net = chain_network(m);
    auto p = ancestral_profile(net);
    auto r = orchard_tuple(p);
    EXPECT_TRUE(isomorphic(r.network, net)) << m;
    EXPECT_EQ(recomputed(r.network, p), p);
  }
}

TEST(OrchardTuple, CollisionProfileHasAThirdOrchardRealisation) {
  auto pair = find_profile_collision(6, 3);
  auto p = ancestral_profile(pair.first);
  auto r = orchard_tuple(p);
  EXPECT_TRUE(verify_realisation(p, r.network));
  EXPECT_TRUE(is_orchard(r.network).orchard);
  EXPECT_FALSE(isomorphic(r.network, pair.first));
  EXPECT_FALSE(isomorphic(r.network, pair.second));
}

TEST(OrchardTuple, NonOrchardProfilesAreRejected) {
  auto twins = find_profile_collision(6, 1);
  EXPECT_EQ(error_of([&] { orchard_tuple(ancestral_profile(twins.first)); }), Errc::NotReconstructible);
  EXPECT_EQ(error_of([] { orchard_tuple(parse_profile("leaf,r\na,1\nb,0\n")); }), Errc::NotReconstructible);
  EXPECT_EQ(error_of([] { orchard_tuple(parse_profile("leaf,r,s\na,1,1\nb,2,1\n")); }), Errc::NotReconstructible);
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto net = random_network(2 + s % 3, 1 + s % 3, s);
    if (testing::naive_is_orchard(net)) continue;
    auto p = ancestral_profile(net);
    try {
      auto r = orchard_tuple(p);
      EXPECT_TRUE(verify_realisation(p, r.network));
      EXPECT_TRUE(is_orchard(r.network).orchard);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::NotReconstructible);
    }
  }
}

TEST(OrchardTuple, IsDeterministic) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto p = ancestral_profile(random_orchard(2 + s % 8, s % 7, s));
    auto a = orchard_tuple(p), b = orchard_tuple(p);
    EXPECT_EQ(serialize_arclist(a.network), serialize_arclist(b.network));
    EXPECT_EQ(a.trace, b.trace);
  }
}

TEST(OrchardTuple, RealisesItsInputOnGeneratedOrchards) {
  std::size_t isomorphic_count = 0, total = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto net = random_orchard(2 + s % 9, s % 9, s);
    auto p = ancestral_profile(net);
    auto r = orchard_tuple(p);
    EXPECT_EQ(recomputed(r.network, p), p) << serialize_arclist(net);
    EXPECT_TRUE(verify_realisation(p, r.network));
    EXPECT_EQ(r.network.leaf_labels(), net.leaf_labels());
    EXPECT_EQ(r.network.reticulation_count(), net.reticulation_count());
    isomorphic_count += isomorphic(r.network, net);
    ++total;
  }
  // Equal profiles do not force isomorphism; most cases still agree.
  EXPECT_GT(isomorphic_count, total / 2);
}

TEST(OrchardTuple, TraceConsumesEveryCoordinate) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto p = ancestral_profile(random_orchard(2 + s % 7, s % 6, s));
    auto r = orchard_tuple(p);
    std::vector<VertexId> consumed;
    for (const auto& step : r.trace.steps) consumed.insert(consumed.end(), step.consumed.begin(), step.consumed.end());
    std::sort(consumed.begin(), consumed.end());
    auto names = p.coord_names;
    std::sort(names.begin(), names.end());
    EXPECT_EQ(consumed, names);
    EXPECT_EQ(r.trace.steps.back().rule, TraceRule::Base);
  }
}

TEST(VerifyRealisation, Examples) {
  auto p = ancestral_profile(fix_rc2());
  EXPECT_TRUE(verify_realisation(p, testing::renamed(fix_rc2(), "q")));
  EXPECT_FALSE(verify_realisation(p, fix_c2()));
  EXPECT_FALSE(verify_realisation(p, testing::fix_rc2_mirror()));
  EXPECT_EQ(error_of([&] { verify_realisation(p, fix_n1()); }), Errc::LeafSetMismatch);
  auto pair = find_profile_collision(6, 3);
  EXPECT_TRUE(verify_realisation(ancestral_profile(pair.first), pair.second));
  EXPECT_TRUE(verify_realisation(ancestral_profile(pair.second), pair.first));
}

TEST(VerifyRealisation, MatchesProfileEquality) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto a = random_orchard(4, s % 3, s), b = random_orchard(4, s % 3, s + 500);
    EXPECT_EQ(verify_realisation(ancestral_profile(a), b), profile_distance(a, b) == 0);
  }
}

}  // namespace
}  // namespace orchard
