#include <gtest/gtest.h>

#include "support.hpp"

namespace orchard {
namespace {

using testing::error_of;
using testing::fix_c2;
using testing::fix_rc2;

template <class F>
Error error_from(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(Errc::NotFound, "");
}

TEST(Arclist, SerializeTwoLeafCherry) {
  EXPECT_EQ(serialize_arclist(fix_c2()),
            "{\n"
            "  \"format_version\": 1,\n"
            "  \"leaves\": [\"a\", \"b\"],\n"
            "  \"internal_order\": [\"ρ\"],\n"
            "  \"arcs\": [\n"
            "    [\"ρ\", \"a\"],\n"
            "    [\"ρ\", \"b\"]\n"
            "  ]\n"
            "}\n");
}

TEST(Arclist, SingleVertex) {
  auto text = serialize_arclist(testing::fix_n1());
  EXPECT_NE(text.find("\"arcs\": []"), std::string::npos);
  auto back = parse_arclist(text);
  EXPECT_TRUE(back.is_single_vertex());
  EXPECT_EQ(back.label(back.root()), "a");
}

TEST(Arclist, RoundTripKeepsNamesAndOrder) {
  auto net = fix_rc2();
  auto back = parse_arclist(serialize_arclist(net));
  EXPECT_TRUE(isomorphic(net, back));
  EXPECT_EQ(net.to_raw().arcs, back.to_raw().arcs);
  EXPECT_EQ(net.to_raw().internal_order, back.to_raw().internal_order);
}

TEST(Arclist, RoundTripOnGeneratedNetworks) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto net = s % 2 ? random_orchard(2 + s % 8, s % 6, s) : random_network(2 + s % 5, s % 4, s);
    auto text = serialize_arclist(net);
    auto back = parse_arclist(text);
    EXPECT_EQ(serialize_arclist(back), text);
    EXPECT_EQ(ancestral_profile(back), ancestral_profile(net));
  }
}

TEST(Arclist, ParsesCompactAndReorderedKeys) {
  auto net = parse_arclist(R"({"arcs":[["r","a"],["r","b"]],"internal_order":["r"],"leaves":["a","b"],"format_version":1})");
  EXPECT_TRUE(isomorphic(net, fix_c2()));
}

TEST(Arclist, SyntaxErrors) {
  auto e = error_from([] {
    parse_arclist("{\n  \"format_version\": 1,\n  \"leaves\": [\"a\"],\n  \"internal_order\": [],\n  \"arcs\": [[\"ρ\"]]\n}");
  });
  EXPECT_EQ(e.code(), Errc::SyntaxError);
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(e.column(), 16u);
  EXPECT_EQ(error_of([] { parse_arclist(""); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_arclist("{\"format_version\": 2, \"leaves\": [], \"internal_order\": [], \"arcs\": []}"); }),
            Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_arclist("{\"format_version\": 1, \"leaves\": [\"a\"], \"arcs\": []}"); }),
            Errc::SyntaxError);
  EXPECT_EQ(error_of([] {
              parse_arclist("{\"format_version\": 1, \"extra\": 0, \"leaves\": [], \"internal_order\": [], \"arcs\": []}");
            }),
            Errc::SyntaxError);
}

TEST(Arclist, ValidationErrorsPassThrough) {
  EXPECT_EQ(error_of([] {
              parse_arclist(R"({"format_version": 1, "leaves": ["a"], "internal_order": ["r"], "arcs": [["r","a"],["r","a"]]})");
            }),
            Errc::ParallelArcs);
}

TEST(Enewick, Parse) {
  EXPECT_TRUE(isomorphic(parse_enewick("(a,b);"), fix_c2()));
  EXPECT_TRUE(isomorphic(parse_enewick("((a,(b)#H1),#H1);"), fix_rc2()));
  EXPECT_TRUE(isomorphic(parse_enewick(" ( (a , (b)#H1) ,\n #H1 ) ; "), fix_rc2()));
  EXPECT_TRUE(isomorphic(parse_enewick("(#H1,(a,(b)#H1));"), fix_rc2()));
  EXPECT_TRUE(parse_enewick("a;").is_single_vertex());
}

TEST(Enewick, Errors) {
  EXPECT_EQ(error_of([] { parse_enewick("((a,(b)#H1),#H2);"); }), Errc::HybridTagMismatch);
  EXPECT_EQ(error_of([] { parse_enewick("((a,(b)#H1),(c)#H1);"); }), Errc::HybridTagMismatch);
  EXPECT_EQ(error_of([] { parse_enewick("(a,b)"); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_enewick("(a,,b);"); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_enewick("(a,a);"); }), Errc::DuplicateVertex);
  auto e = error_from([] { parse_enewick("(a,\n b c);"); });
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 4u);
}

TEST(Enewick, Serialize) {
  EXPECT_EQ(serialize_enewick(fix_c2()), "(a,b);\n");
  EXPECT_EQ(serialize_enewick(fix_rc2()), "((a,(b)#H1),#H1);\n");
  EXPECT_EQ(serialize_enewick(testing::fix_n1()), "a;\n");
}

TEST(Enewick, RoundTripUpToInternalNames) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto net = s % 2 ? random_orchard(1 + s % 9, s % 9 == 0 ? 0 : s % 7, s) : random_network(2 + s % 5, s % 4, s);
    auto text = serialize_enewick(net);
    auto back = parse_enewick(text);
    EXPECT_TRUE(isomorphic(net, back)) << text;
    EXPECT_TRUE(isomorphic(parse_enewick(serialize_enewick(back)), net));
  }
}

TEST(ProfileCsv, Examples) {
  EXPECT_EQ(serialize_profile(ancestral_profile(fix_c2())), "leaf,ρ\na,1\nb,1\n");
  EXPECT_EQ(serialize_profile(ancestral_profile(fix_rc2())), "leaf,ρ,p_a,p_b\na,1,1,0\nb,2,1,1\n");
  auto p = parse_profile("leaf,ρ,p_a\na,1,-\n");
  EXPECT_EQ(p.rows[0][0], Entry(Count(1)));
  EXPECT_FALSE(p.rows[0][1].has_value());
  EXPECT_EQ(p.coord_names, (std::vector<VertexId>{"ρ", "p_a"}));
}

TEST(ProfileCsv, ExactRoundTrip) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto p = ancestral_profile(random_orchard(2 + s % 8, s % 6, s));
    auto moves = reduction_candidates(p);
    if (s % 3 == 0 && moves.front().kind == CherryKind::Cherry)
      p = reduce_cherry_profile(p, moves.front().a, moves.front().b).profile;
    EXPECT_EQ(parse_profile(serialize_profile(p)), p);
    EXPECT_EQ(serialize_profile(parse_profile(serialize_profile(p))), serialize_profile(p));
  }
  auto chain = ancestral_profile(chain_network(70));
  EXPECT_EQ(parse_profile(serialize_profile(chain)), chain);
}

TEST(ProfileCsv, Errors) {
  auto ragged = error_from([] { parse_profile("leaf,r,s\na,1,1\nb,1\n"); });
  EXPECT_EQ(ragged.code(), Errc::RaggedRow);
  EXPECT_EQ(ragged.line(), 3u);
  auto negative = error_from([] { parse_profile("leaf,ρ,s\na,1,-3\n"); });
  EXPECT_EQ(negative.code(), Errc::NegativeEntry);
  EXPECT_EQ(negative.line(), 2u);
  EXPECT_EQ(negative.column(), 5u);
  EXPECT_EQ(error_of([] { parse_profile("leaf,r\na,x\n"); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_profile("node,r\na,1\n"); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_profile(""); }), Errc::SyntaxError);
  EXPECT_EQ(error_of([] { parse_profile("leaf,r\na,1\na,1\n"); }), Errc::DuplicateLeafLabel);
}

}  // namespace
}  // namespace orchard
