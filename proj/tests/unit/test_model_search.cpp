#include <gtest/gtest.h>

#include <set>

#include "resq/logic.hpp"
#include "resq/model_search.hpp"
#include "resq/order.hpp"

namespace resq {
namespace {

QuasiEquation qe(const Signature& sig, const std::string& concl) { return QuasiEquation{{}, parse_equation(sig, concl)}; }

bool has_all_meets(const Poset& p) {
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b)
      if (!p.meet(ElementSet::from_indices(p.size(), {a, b}))) return false;
  return true;
}

void expect_models(const Theory& th, const std::vector<PartialAlgebra>& ms) {
  std::set<std::vector<Index>> codes;
  for (const PartialAlgebra& m : ms) {
    EXPECT_TRUE(m.is_total());
    for (const Equation& e : th.axioms) EXPECT_TRUE(holds(m, e)) << to_string(th.sig, e);
    codes.insert(canonical_code(m));
  }
  EXPECT_EQ(codes.size(), ms.size());
}

TEST(Enumerate, SemilatticesAreMeetPosets) {
  // A meet-semilattice is a poset with binary meets; count those among all posets.
  Theory th = theories::semilattice();
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t want = 0;
    for (const Poset& p : enumerate_posets(n)) want += has_all_meets(p);
    auto ms = enumerate_algebras(th, n);
    EXPECT_EQ(ms.size(), want) << n;
    expect_models(th, ms);
  }
}

TEST(Enumerate, LatticesAreLatticePosets) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t want = 0;
    for (const Poset& p : enumerate_posets(n)) want += is_lattice(p);
    auto ms = enumerate_algebras(theories::lattice(), n);
    EXPECT_EQ(ms.size(), want) << n;
    expect_models(theories::lattice(), ms);
    if (n >= 2) EXPECT_EQ(enumerate_algebras(theories::bounded_lattice(), n).size(), want) << n;
  }
}

TEST(Enumerate, HeytingResiduatedLattices) {
  const std::size_t want[] = {1, 1, 2, 9};
  for (std::size_t n = 1; n <= 4; ++n) {
    auto ms = enumerate_algebras(theories::hrl(), n);
    EXPECT_EQ(ms.size(), want[n - 1]) << n;
    expect_models(theories::hrl(), ms);
  }
}

TEST(Enumerate, JobsDoNotChangeOrder) {
  auto a = enumerate_algebras(theories::residuated_lattice(), 4, 1);
  auto b = enumerate_algebras(theories::residuated_lattice(), 4, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i] == b[i]) << i;
}

TEST(Enumerate, GuardCap) {
  Guards g;
  g.model_size_cap = 3;
  EXPECT_THROW(enumerate_algebras(theories::semilattice(), 4, 1, g), GuardError);
}

TEST(Countermodel, SemilatticeSeparatesVariables) {
  Theory th = theories::semilattice();
  SearchResult r = countermodel_search(th, qe(th.sig, "x = y"));
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.found->model.size(), 2u);
  EXPECT_NE(r.found->assignment.at("x"), r.found->assignment.at("y"));
  EXPECT_TRUE(holds(r.found->model, th.axioms[0]));
}

TEST(Countermodel, NoncommutativeIntegral) {
  Theory th = theories::integral_rl();
  QuasiEquation q = qe(th.sig, "(mul x y) = (mul y x)");
  SearchOptions opt;
  opt.max_size = 4;
  SearchResult one = countermodel_search(th, q, opt);
  ASSERT_TRUE(one.found);
  EXPECT_EQ(one.found->model.size(), 4u);
  EXPECT_FALSE(satisfies(one.found->model, one.found->assignment, q));
  for (const Equation& e : th.axioms) EXPECT_TRUE(holds(one.found->model, e));
  opt.jobs = 4;
  SearchResult four = countermodel_search(th, q, opt);
  ASSERT_TRUE(four.found);
  EXPECT_TRUE(four.found->model == one.found->model);
  EXPECT_EQ(four.found->assignment, one.found->assignment);
}

TEST(Countermodel, ExhaustsOnValidEquation) {
  Theory th = theories::lattice();
  SearchOptions opt;
  opt.max_size = 4;
  SearchResult r = countermodel_search(th, qe(th.sig, "(meet x (join x y)) = x"), opt);
  EXPECT_FALSE(r.found);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.size_reached, 4u);
}

TEST(Countermodel, QuasiEquationWithPremise) {
  // Cancellation fails in a lattice with three elements below a common join.
  Theory th = theories::lattice();
  QuasiEquation q{{parse_equation(th.sig, "(join x z) = (join y z)"), parse_equation(th.sig, "(meet x z) = (meet y z)")},
                  parse_equation(th.sig, "x = y")};
  SearchOptions opt;
  opt.max_size = 5;
  SearchResult r = countermodel_search(th, q, opt);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.found->model.size(), 5u);
  EXPECT_FALSE(satisfies(r.found->model, r.found->assignment, q));
}

TEST(Countermodel, DeadlineStopsIncomplete) {
  Theory th = theories::residuated_lattice();
  SearchOptions opt;
  opt.max_size = 6;
  opt.deadline = Clock::now();
  SearchResult r = countermodel_search(th, qe(th.sig, "(meet x (join x y)) = x"), opt);
  EXPECT_FALSE(r.found);
  EXPECT_FALSE(r.complete);
}

TEST(ModelSearch, ResumableStepsAgreeWithEnumeration) {
  Theory th = theories::lattice();
  ModelSearch s(th, std::nullopt, 5);
  std::set<std::vector<Index>> seen, want;
  for (;;) {
    auto st = s.step(7);
    if (st == ModelSearch::Status::Exhausted) break;
    if (st == ModelSearch::Status::Found) {
      PartialAlgebra m = s.current().model;
      for (const Equation& e : th.axioms) EXPECT_TRUE(holds(m, e));
      seen.insert(canonical_code(m));
    }
  }
  for (const PartialAlgebra& m : enumerate_algebras(th, 5)) want.insert(canonical_code(m));
  EXPECT_EQ(seen, want);
}

}  // namespace
}  // namespace resq
