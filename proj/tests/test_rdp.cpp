#include <vector>

#include <gtest/gtest.h>

#include "effana/constructions.hpp"
#include "effana/rdp.hpp"

using namespace effana;

namespace {

ElementId id(const EffectAlgebra& L, const char* name) { return L.find(name).value(); }

}  // namespace

TEST(CheckRdp, ScaleAndPowersetHold) {
  for (unsigned k = 1; k <= 12; ++k) EXPECT_TRUE(check_rdp(scale_algebra(k)).holds) << "scale " << k;
  for (unsigned n = 1; n <= 5; ++n) EXPECT_TRUE(check_rdp(powerset_algebra(n)).holds) << "powerset " << n;
}

TEST(CheckRdp, QuadrantFailsWithWitness) {
  const auto Q = example_4_6();
  const auto r = check_rdp(Q);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(Q.name(r.witness->c), "Y⁺");
  EXPECT_EQ(Q.name(r.witness->a), "X⁺");
  EXPECT_EQ(Q.name(r.witness->b), "X⁻");
  EXPECT_TRUE(r.witness_verified);
  EXPECT_TRUE(witness_refutes_rdp(Q, *r.witness));
}

TEST(CheckRdp, WitnessCheckerRejectsNonWitnesses) {
  const auto Q = example_4_6();
  // X⁺ <= X⁺ (+) X⁻ splits as X⁺ (+) ∅.
  EXPECT_FALSE(witness_refutes_rdp(Q, {id(Q, "X⁺"), id(Q, "X⁺"), id(Q, "X⁻")}));
  // Y⁺ is not below X⁺ (+) Y⁺ (undefined).
  EXPECT_FALSE(witness_refutes_rdp(Q, {id(Q, "Y⁺"), id(Q, "X⁺"), id(Q, "Y⁺")}));
}

TEST(RieszSplit, Scale) {
  const auto S = scale_algebra(10);
  const auto split = riesz_split(S, id(S, "5/10"), id(S, "3/10"), id(S, "4/10"));
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(S.oplus(split->first, split->second), id(S, "5/10"));
  EXPECT_TRUE(S.leq(split->first, id(S, "3/10")));
  EXPECT_TRUE(S.leq(split->second, id(S, "4/10")));
}

TEST(RdpDecompose, Examples) {
  const auto P = powerset_algebra(3);
  const std::vector<ElementId> pp{id(P, "{1}"), id(P, "{2,3}")};
  const auto d = rdp_decompose(P, id(P, "{1,2}"), pp);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d, (std::vector<ElementId>{id(P, "{1}"), id(P, "{2}")}));

  const auto S = scale_algebra(10);
  const std::vector<ElementId> sp{id(S, "3/10"), id(S, "4/10")};
  const auto e = rdp_decompose(S, id(S, "5/10"), sp);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(*e, (std::vector<ElementId>{id(S, "3/10"), id(S, "2/10")}));

  const auto z = rdp_decompose(S, S.zero(), sp);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ(*z, (std::vector<ElementId>{S.zero(), S.zero()}));
}

TEST(RdpDecompose, PreconditionFailures) {
  const auto S = scale_algebra(10);
  // parts not orthogonal
  const std::vector<ElementId> big{id(S, "6/10"), id(S, "6/10")};
  EXPECT_FALSE(rdp_decompose(S, id(S, "1/10"), big).has_value());
  // c not below the sum
  const std::vector<ElementId> small{id(S, "1/10"), id(S, "2/10")};
  EXPECT_FALSE(rdp_decompose(S, id(S, "5/10"), small).has_value());
  // empty parts: only c = 0 decomposes
  EXPECT_TRUE(rdp_decompose(S, S.zero(), std::vector<ElementId>{}).has_value());
  EXPECT_FALSE(rdp_decompose(S, id(S, "1/10"), std::vector<ElementId>{}).has_value());
}

TEST(RdpDecompose, QuadrantFailureMatchesWitness) {
  const auto Q = example_4_6();
  const std::vector<ElementId> parts{id(Q, "X⁺"), id(Q, "X⁻")};
  EXPECT_FALSE(rdp_decompose(Q, id(Q, "Y⁺"), parts).has_value());
  EXPECT_TRUE(rdp_decompose(Q, id(Q, "ℝ²"), parts).has_value());
}

TEST(RdpDecompose, ExhaustiveOnPowerset4) {
  const auto P = powerset_algebra(4);
  for (auto a : P.elements())
    for (auto b : P.elements()) {
      const auto s = P.oplus(a, b);
      if (!s) continue;
      for (auto c : P.down_set(*s)) {
        const std::vector<ElementId> parts{a, b};
        const auto d = rdp_decompose(P, c, parts);
        ASSERT_TRUE(d.has_value());
        EXPECT_TRUE(P.leq((*d)[0], a));
        EXPECT_TRUE(P.leq((*d)[1], b));
        EXPECT_EQ(P.orthosum(*d), c);
      }
    }
}
