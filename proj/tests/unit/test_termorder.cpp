#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "resq/fixtures.hpp"
#include "resq/termorder.hpp"
#include "oracles.hpp"

namespace resq {
namespace {

using namespace oracle;

FElement P(const std::string& s) { return FElement::parse(s); }

TEST(FElement, UnitAbsorption) {
  FElement x = FElement::var("x");
  EXPECT_EQ(FElement::dot(FElement::unit(), x), x);
  EXPECT_EQ(FElement::wedge(x, FElement::unit()), x);
  EXPECT_TRUE(FElement::dot(FElement::unit(), FElement::unit()).is_unit());
  EXPECT_EQ(P("(dot unit (wedge x unit))"), x);
  EXPECT_EQ(P("(dot x (wedge y z))").to_string(), "(dot x (wedge y z))");
  EXPECT_NE(P("(dot x y)"), P("(dot y x)"));
  EXPECT_NE(P("(dot x y)"), P("(wedge x y)"));
}

TEST(LeqC, Examples) {
  EXPECT_TRUE(leq_c(P("(dot x y)"), P("x")));
  EXPECT_TRUE(leq_c(P("x"), P("x")));
  EXPECT_FALSE(leq_c(P("x"), P("y")));
  EXPECT_FALSE(leq_c(P("x"), P("(dot x y)")));
  EXPECT_TRUE(leq_c(P("(dot x y)"), FElement::unit()));
  EXPECT_FALSE(leq_c(FElement::unit(), P("x")));
  EXPECT_TRUE(leq_c(P("(dot x (dot z y))"), P("(dot x y)")));
  EXPECT_FALSE(leq_c(P("(dot x y)"), P("(dot x (dot z y))")));
  EXPECT_FALSE(leq_c(P("(dot x y)"), P("(wedge x y)")));
}

TEST(LeqC, MatchesReductionSearch) {
  std::mt19937_64 rng(7);
  std::size_t positives = 0;
  for (int i = 0; i < 2000; ++i) {
    FElement s = random_term(rng, 4, 3);
    if (s.leaves() > 12) continue;
    FElement t = (i % 2 == 0) ? random_reduct(rng, s) : random_term(rng, 3, 3);
    bool want = brute_leq(s, t);
    positives += want;
    EXPECT_EQ(leq_c(s, t), want) << s.to_string() << " vs " << t.to_string();
  }
  EXPECT_GT(positives, 200u);
}

TEST(LeqC, OrderAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  DivisibilityOrder ord;
  for (int i = 0; i < 1500; ++i) {
    FElement a = random_term(rng, 6, 3);
    FElement b = random_reduct(rng, a);
    FElement c = (i % 3 == 0) ? random_term(rng, 6, 3) : random_reduct(rng, b);
    EXPECT_TRUE(ord.leq(a, a));
    EXPECT_TRUE(ord.leq(a, FElement::unit()));
    if (ord.leq(a, b) && ord.leq(b, a)) EXPECT_EQ(a, b);
    if (ord.leq(a, b) && ord.leq(b, c)) EXPECT_TRUE(ord.leq(a, c));
    EXPECT_EQ(ord.leq(a, c), leq_c(a, c));
  }
}

TEST(Riesz, Examples) {
  auto r = riesz_split(P("x"), P("y"), P("(dot x y)"), Op::Dot);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, P("x"));
  EXPECT_EQ(r->second, P("y"));
  r = riesz_split(P("x"), P("(dot y z)"), P("(dot x (dot y z))"), Op::Dot);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->second, P("(dot y z)"));
  EXPECT_FALSE(riesz_split(P("x"), P("y"), P("x"), Op::Dot));
}

TEST(Riesz, UniqueRootSplit) {
  std::mt19937_64 rng(13);
  std::size_t splits = 0;
  for (int i = 0; i < 1500; ++i) {
    Op op = i % 2 ? Op::Dot : Op::Wedge;
    FElement r = random_term(rng, 3, 3), s = random_term(rng, 3, 3);
    FElement t = random_reduct(rng, FElement::make(op, r, s));
    bool pre = leq_c(FElement::make(op, r, s), t) && !leq_c(r, t) && !leq_c(s, t);
    auto got = riesz_split(r, s, t, op);
    EXPECT_EQ(got.has_value(), pre);
    if (!got) continue;
    ++splits;
    EXPECT_TRUE(leq_c(r, got->first) && leq_c(s, got->second));
    EXPECT_EQ(FElement::make(op, got->first, got->second), t);
    std::vector<FElement> subs;
    subterms(t, subs);
    for (const FElement& a : subs)
      for (const FElement& b : subs)
        if (FElement::make(op, a, b) == t && leq_c(r, a) && leq_c(s, b)) {
          EXPECT_EQ(a, got->first);
          EXPECT_EQ(b, got->second);
        }
  }
  EXPECT_GT(splits, 100u);
}

TEST(Residual, Examples) {
  EXPECT_TRUE(residual_f(P("x"), P("x"), Op::Dot, Side::Left).is_unit());
  EXPECT_EQ(residual_f(P("x"), P("(dot x y)"), Op::Dot, Side::Left), P("y"));
  EXPECT_EQ(residual_f(P("y"), P("x"), Op::Dot, Side::Left), P("x"));
  EXPECT_EQ(residual_f(P("y"), P("(dot x y)"), Op::Dot, Side::Right), P("x"));
  EXPECT_EQ(residual_f(P("x"), P("(dot x y)"), Op::Wedge, Side::Left), P("(dot x y)"));
}

TEST(Residual, AdjunctionOnRandomTriples) {
  std::mt19937_64 rng(17);
  std::size_t related = 0;
  for (int i = 0; i < 2000; ++i) {
    Op op = i % 2 ? Op::Dot : Op::Wedge;
    Side side = (i / 2) % 2 ? Side::Left : Side::Right;
    FElement r = random_term(rng, 3, 3), s = random_term(rng, 3, 3);
    FElement prod = side == Side::Left ? FElement::make(op, r, s) : FElement::make(op, s, r);
    FElement t = i % 3 == 0 ? random_term(rng, 6, 3) : random_reduct(rng, prod);
    bool lhs = leq_c(prod, t);
    related += lhs;
    EXPECT_EQ(lhs, leq_c(s, residual_f(r, t, op, side)));
  }
  EXPECT_GT(related, 300u);
}

TEST(Residual, MatchesBoundedBruteForce) {
  std::mt19937_64 rng(19);
  int checked = 0;
  for (int i = 0; checked < 200; ++i) {
    Op op = i % 2 ? Op::Dot : Op::Wedge;
    Side side = (i / 2) % 2 ? Side::Left : Side::Right;
    FElement r = random_term(rng, 2, 3);
    FElement t = random_term(rng, 3, 3);
    if (i % 2 == 0) t = FElement::make(op, side == Side::Left ? r : t, side == Side::Left ? t : r);
    if (t.leaves() > 8) continue;
    std::optional<FElement> best = brute_residual(r, t, op, side);
    ASSERT_TRUE(best) << "no maximum for " << r.to_string() << ", " << t.to_string();
    EXPECT_EQ(residual_f(r, t, op, side), *best) << r.to_string() << ", " << t.to_string();
    ++checked;
  }
}

TEST(Residual, AscendingChainsTerminate) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    FElement t = random_term(rng, 6, 3);
    std::size_t bound = t.leaves(), steps = 0;
    while (!t.is_unit()) {
      FElement next = random_reduct(rng, t);
      if (next == t) continue;
      ASSERT_TRUE(leq_c(t, next));
      ASSERT_LT(next.leaves(), t.leaves());
      t = next;
      ++steps;
    }
    EXPECT_LE(steps, bound);
  }
}

TEST(Scheme, AdjointExamples) {
  EXPECT_EQ(to_string(adjoint_of(parse_scheme("left-res"))), "mul-left");
  EXPECT_EQ(adjoint_of(parse_scheme("left-res,wedge-res")).steps,
            (std::vector<Step>{Step::WedgeWith, Step::MultiplyLeft}));
  EXPECT_THROW(make_scheme({}), ValidationError);
  EXPECT_THROW(make_scheme({Step::LeftResidual, Step::MultiplyLeft}), ValidationError);
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    std::vector<Step> st;
    for (std::size_t k = 0; k <= rng() % 5; ++k) st.push_back(static_cast<Step>(rng() % 3));
    Scheme s = make_scheme(st);
    EXPECT_EQ(adjoint_of(adjoint_of(s)), s);
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
}

TEST(Scheme, AdjunctionInAlgebras) {
  std::mt19937_64 rng(31);
  for (const ResiduatedLattice& a : {fixtures::godel_chain(4), fixtures::lukasiewicz_chain(4), fixtures::boolean_algebra(2)}) {
    for (int i = 0; i < 40; ++i) {
      std::vector<Step> st;
      for (std::size_t k = 0; k <= rng() % 3; ++k) st.push_back(static_cast<Step>(rng() % 3));
      Scheme rho = make_scheme(st), lambda = adjoint_of(rho);
      std::vector<Index> args;
      for (std::size_t k = 0; k < rho.depth(); ++k) args.push_back(static_cast<Index>(rng() % a.size()));
      for (Index b = 0; b < a.size(); ++b)
        for (Index c = 0; c < a.size(); ++c)
          EXPECT_EQ(a.leq(eval_scheme(a, lambda, args, b), c), a.leq(b, eval_scheme(a, rho, args, c)));
    }
  }
}

TEST(Scheme, DepthOneOnGodel) {
  ResiduatedLattice g = fixtures::godel_chain(3);
  EXPECT_EQ(eval_scheme(g, parse_scheme("left-res"), {1}, 0), Index{0});
}

TEST(Divisibility, IntegralAndNot) {
  EXPECT_TRUE(is_divisibility_order(divisibility_algebra(fixtures::godel_chain(4))).holds);
  EXPECT_TRUE(is_divisibility_order(divisibility_algebra(fixtures::trivial())).holds);
  for (const ResiduatedLattice& l : enumerate_residuated_lattices(3)) {
    EXPECT_EQ(is_divisibility_order(divisibility_algebra(l)).holds, is_integral(l));
  }
}

}  // namespace
}  // namespace resq
