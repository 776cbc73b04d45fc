#include <gtest/gtest.h>

#include "resq/fep.hpp"
#include "resq/fixtures.hpp"
#include "oracles.hpp"

namespace resq {
namespace {

std::vector<std::vector<Index>> subsets(std::size_t n) {
  std::vector<std::vector<Index>> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) out.push_back(ElementSet::from_bits(n, bits).indices());
  return out;
}

void expect_embeds(const ResiduatedLattice& a, const FepCertificate& c) {
  std::vector<std::string> bad = oracle::embedding_failures(a, c);
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(Subreduct, GodelGenerated) {
  ResiduatedLattice g = fixtures::godel_chain(3);
  Subreduct s = generate_subreduct(g, {1});
  EXPECT_EQ(s.carrier, (std::vector<Index>{1, 2}));
  EXPECT_TRUE(s.has_meet);
  Subreduct t = generate_subreduct(fixtures::lukasiewicz_chain(4), {2});
  // 2/3 * 2/3 = 1/3, 1/3 * 2/3 = 0
  EXPECT_EQ(t.carrier, (std::vector<Index>{0, 1, 2, 3}));
}

TEST(Fep, GodelEverySubset) {
  for (std::size_t n : {3, 4}) {
    ResiduatedLattice g = fixtures::godel_chain(n);
    for (const auto& b : subsets(n)) {
      FepCertificate c = fep_extend_hrl(g, b);
      EXPECT_TRUE(c.report.holds()) << (c.report.failures.empty() ? "" : c.report.failures[0]);
      EXPECT_TRUE(check_rl_axioms(c.old).all_pass());
      EXPECT_TRUE(is_integral(c.old));
      EXPECT_TRUE(is_distributive(c.old.lattice));
      ASSERT_TRUE(c.old.arrow.has_value());
      EXPECT_TRUE(check_heyting(c.old).holds);
      EXPECT_TRUE(commutativity_audit(c));
      EXPECT_TRUE(chain_audit(c));
      expect_embeds(g, c);
    }
  }
}

TEST(Fep, BooleanSquare) {
  ResiduatedLattice b = fixtures::boolean_algebra(2);
  FepCertificate c = fep_extend_hrl(b, {1, 2});
  EXPECT_TRUE(c.report.holds());
  EXPECT_TRUE(commutativity_audit(c));
  expect_embeds(b, c);
}

TEST(Fep, TamperedCertificateFails) {
  ResiduatedLattice g = fixtures::godel_chain(4);
  FepCertificate c = fep_extend_hrl(g, {1, 2});
  ASSERT_TRUE(c.report.holds());
  ASSERT_GE(c.embedding.size(), 2u);
  std::swap(c.embedding[0], c.embedding[1]);
  EXPECT_FALSE(verify_embedding(g, c).holds());
}

TEST(Fep, WithoutArrow) {
  FepCertificate c = fep_extend_hrl(fixtures::godel_chain(3), {1}, false);
  EXPECT_TRUE(c.report.holds());
  EXPECT_FALSE(c.with_arrow);
}

TEST(Fep, RejectsNonIntegral) {
  for (const ResiduatedLattice& l : enumerate_residuated_lattices(3)) {
    if (is_integral(l)) continue;
    EXPECT_THROW(fep_extend_hrl(l, {0}), ValidationError);
  }
}

TEST(Involutive, LukasiewiczEverySubset) {
  for (std::size_t n : {3, 4}) {
    ResiduatedLattice l = fixtures::lukasiewicz_chain(n);
    for (const auto& b : subsets(n)) {
      FepCertificate c = fep_extend_involutive(l, 0, b);
      EXPECT_TRUE(c.report.holds()) << (c.report.failures.empty() ? "" : c.report.failures[0]);
      EXPECT_TRUE(check_rl_axioms(c.old).all_pass());
      EXPECT_TRUE(is_integral(c.old));
      EXPECT_TRUE(is_cyclic_dualizing(c.old.view(), c.dualizing));
      UnaryMap g = gamma_d(c.old.view(), c.dualizing);
      for (Index e : c.embedding) EXPECT_EQ(g[e], e);
      expect_embeds(l, c);
    }
  }
}

TEST(Involutive, PreClosureAddsNegations) {
  FepCertificate c = fep_extend_involutive(fixtures::lukasiewicz_chain(4), 0, {1});
  // 1/3 needs its negation 2/3, the bottom and the unit.
  EXPECT_EQ(c.b, (std::vector<Index>{0, 1, 2, 3}));
  EXPECT_EQ(c.added, (std::vector<Index>{0, 2, 3}));
}

TEST(DFamily, ContainsPrincipalIdeals) {
  ResiduatedLattice g = fixtures::godel_chain(3);
  Subreduct s = generate_subreduct(g, {1});
  SetRL low = low_rl(s.monoid);
  DResult d = build_D(s.monoid, low, {0, 1});
  for (Index x = 0; x < s.monoid.size(); ++x) {
    Index pi = low.sets.principal(x);
    EXPECT_TRUE(std::binary_search(d.members.begin(), d.members.end(), pi));
  }
}

TEST(Subset, Parse) {
  Poset o = fixtures::godel_chain(3).order();
  EXPECT_EQ(parse_subset(o, "1, a,a"), (std::vector<Index>{1, 2}));
  EXPECT_THROW(parse_subset(o, "b"), ParseError);
}

}  // namespace
}  // namespace resq
