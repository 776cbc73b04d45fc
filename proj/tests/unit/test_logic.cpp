#include <gtest/gtest.h>

#include <set>

#include "resq/fixtures.hpp"
#include "resq/logic.hpp"

namespace resq {
namespace {

Signature rl_sig() {
  return Signature{{"meet", 2}, {"join", 2}, {"mul", 2}, {"ldiv", 2}, {"rdiv", 2}, {"one", 0}};
}

// Restricted growth strings: every partition of 0..n-1 exactly once.
void partitions(std::size_t n, std::vector<Index>& cur, Index next, std::vector<std::vector<Index>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (Index b = 0; b <= next; ++b) {
    cur.push_back(b);
    partitions(n, cur, std::max<Index>(next, b + 1), out);
    cur.pop_back();
  }
}

bool compatible(const PartialAlgebra& a, const std::vector<Index>& blk) {
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    if (a.signature()[s].arity != 2) continue;
    for (Index x1 = 0; x1 < a.size(); ++x1)
      for (Index x2 = 0; x2 < a.size(); ++x2)
        for (Index y1 = 0; y1 < a.size(); ++y1)
          for (Index y2 = 0; y2 < a.size(); ++y2)
            if (blk[x1] == blk[x2] && blk[y1] == blk[y2] &&
                blk[*a.get(s, {x1, y1})] != blk[*a.get(s, {x2, y2})])
              return false;
  }
  return true;
}

std::set<std::vector<Index>> brute_congruences(const PartialAlgebra& a) {
  std::vector<std::vector<Index>> all;
  std::vector<Index> cur;
  partitions(a.size(), cur, 0, all);
  std::set<std::vector<Index>> out;
  for (const auto& p : all)
    if (compatible(a, p)) out.insert(p);
  return out;
}

TEST(Terms, ParseAndPrint) {
  Signature sig = rl_sig();
  Term t = parse_term(sig, "(mul x (join y one))");
  EXPECT_EQ(to_string(sig, t), "(mul x (join y one))");
  EXPECT_EQ(t.depth(), 2u);
  std::vector<std::string> vars;
  collect_vars(t, vars);
  EXPECT_EQ(vars, (std::vector<std::string>{"x", "y"}));
  EXPECT_THROW(parse_term(sig, "(mul x)"), ParseError);
  EXPECT_THROW(parse_term(sig, "(frob x y)"), ParseError);
  Term u = substitute(t, {{"x", parse_term(sig, "one")}});
  EXPECT_EQ(to_string(sig, u), "(mul one (join y one))");
}

TEST(Evaluate, MatchesTables) {
  ResiduatedLattice l = fixtures::lukasiewicz_chain(4);
  Signature sig = rl_sig();
  PartialAlgebra a = to_partial_algebra(l, sig);
  Term t = parse_term(sig, "(ldiv (mul x y) (meet x z))");
  for (Index x = 0; x < 4; ++x)
    for (Index y = 0; y < 4; ++y)
      for (Index z = 0; z < 4; ++z)
        EXPECT_EQ(evaluate(a, {{"x", x}, {"y", y}, {"z", z}}, t), l.ldiv(l.mul(x, y), l.meet(x, z)));
  EXPECT_EQ(evaluate(a, {}, parse_term(sig, "one")), l.unit);
  EXPECT_THROW(evaluate(a, {}, parse_term(sig, "(mul x x)")), Error);
}

TEST(Evaluate, PartialUndefined) {
  Signature sig{{"mul", 2}};
  PartialAlgebra b(sig, {"a", "b"});
  b.set(0, {0, 0}, 0);
  EXPECT_EQ(evaluate(b, {{"x", 0}}, parse_term(sig, "(mul x x)")), Index{0});
  EXPECT_FALSE(evaluate(b, {{"x", 1}}, parse_term(sig, "(mul x x)")).has_value());
  EXPECT_EQ(b.defined_entries(), 1u);
  EXPECT_FALSE(b.is_total());
}

TEST(Holds, AxiomsInFixtures) {
  Theory th = theories::hrl();
  PartialAlgebra g = to_partial_algebra(fixtures::godel_chain(3), th.sig);
  for (const Equation& e : th.axioms) EXPECT_TRUE(holds(g, e)) << to_string(th.sig, e);
  PartialAlgebra luk = to_partial_algebra(fixtures::lukasiewicz_chain(3), theories::residuated_lattice().sig);
  Equation idem = parse_equation(luk.signature(), "(mul x x) = x");
  EXPECT_FALSE(holds(luk, idem));
}

TEST(Diagram, FragmentHasThreeEquations) {
  Signature sig{{"mul", 2}};
  PartialAlgebra b(sig, {"a", "1"});
  b.set(0, {0, 0}, 0);
  b.set(0, {0, 1}, 0);
  b.set(0, {1, 1}, 1);
  Hat hat = default_hat(b);
  EXPECT_EQ(hat, (Hat{"^a", "^1"}));
  std::vector<Equation> d = diagram(b, hat);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(to_string(sig, d[0]), "(mul ^a ^a) = ^a");
  Presentation p = free_over_partial(b, hat);
  EXPECT_TRUE(is_flat(sig, p));
  EXPECT_THROW(diagram(b, Hat{"x", "x"}), ValidationError);
}

TEST(Diagram, QbbFailsUnderCanonicalAssignment) {
  // For each subset B of the Goedel 4-chain, the full restriction's q_bb fails.
  Theory th = theories::hrl();
  ResiduatedLattice g = fixtures::godel_chain(4);
  PartialAlgebra a = to_partial_algebra(g, th.sig);
  std::size_t checked = 0;
  for (std::uint64_t bits = 1; bits < 16; ++bits) {
    std::vector<Index> s = ElementSet::from_bits(4, bits).indices();
    PartialAlgebra b = full_restriction(a, s);
    Hat hat = default_hat(b);
    Assignment v = canonical_assignment(hat, s);
    for (Index x = 0; x < b.size(); ++x)
      for (Index y = 0; y < b.size(); ++y) {
        if (x == y) continue;
        QuasiEquation q = q_bb(b, hat, x, y);
        for (const Equation& e : q.premises) EXPECT_TRUE(satisfies(a, v, e));
        EXPECT_FALSE(satisfies(a, v, q));
        ++checked;
      }
  }
  EXPECT_GT(checked, 20u);
}

TEST(Product, CoordinatewiseAndInjective) {
  Signature sig = rl_sig();
  PartialAlgebra a = to_partial_algebra(fixtures::godel_chain(3), sig);
  PartialAlgebra b = to_partial_algebra(fixtures::lukasiewicz_chain(3), sig);
  PartialAlgebra p = product({a, b});
  ASSERT_EQ(p.size(), 9u);
  std::set<std::string> names(p.elements().begin(), p.elements().end());
  EXPECT_EQ(names.size(), 9u);
  for (Index x1 = 0; x1 < 3; ++x1)
    for (Index x2 = 0; x2 < 3; ++x2)
      for (Index y1 = 0; y1 < 3; ++y1)
        for (Index y2 = 0; y2 < 3; ++y2) {
          Index x = product_index({a, b}, {x1, x2}), y = product_index({a, b}, {y1, y2});
          EXPECT_EQ(*p.get(2, {x, y}), product_index({a, b}, {*a.get(2, {x1, y1}), *b.get(2, {x2, y2})}));
        }
  for (const Equation& e : theories::residuated_lattice().axioms) EXPECT_TRUE(holds(p, e));
}

TEST(Homomorphism, Embeddings) {
  Signature sig = rl_sig();
  PartialAlgebra g = to_partial_algebra(fixtures::godel_chain(3), sig);
  PartialAlgebra r = full_restriction(g, {0, 2});
  EXPECT_TRUE(is_full_embedding({0, 2}, r, g));
  EXPECT_TRUE(is_homomorphism({0, 2}, r, g));
  EXPECT_FALSE(is_homomorphism({0, 1}, r, g));
}

TEST(Flatten, NestedRelation) {
  Signature sig{{"mul", 2}};
  Presentation p{{"x", "y"}, {parse_equation(sig, "(mul x (mul y y)) = x")}};
  Presentation f = flatten(sig, p);
  EXPECT_TRUE(is_flat(sig, f));
  EXPECT_FALSE(is_flat(sig, p));
  ASSERT_EQ(f.relations.size(), 2u);
  EXPECT_EQ(f.vars.size(), 3u);
  // The added variables are functions of the old ones, so solutions correspond.
  for (const ResiduatedLattice& l : {fixtures::godel_chain(3), fixtures::lukasiewicz_chain(4)}) {
    PartialAlgebra a = to_partial_algebra(l, sig);
    EXPECT_EQ(count_solutions(a, p), count_solutions(a, f));
  }
}

TEST(Flatten, ConstantsGetVariables) {
  Signature sig{{"mul", 2}, {"one", 0}};
  Presentation p{{"x"}, {parse_equation(sig, "(mul x one) = x")}};
  Presentation f = flatten(sig, p);
  EXPECT_TRUE(is_flat(sig, f));
  for (const Equation& e : f.relations) {
    EXPECT_FALSE(e.lhs.is_var());
    EXPECT_TRUE(e.rhs.is_var());
    for (const Term& a : e.lhs.args()) EXPECT_TRUE(a.is_var());
  }
  PartialAlgebra a = to_partial_algebra(fixtures::godel_chain(3), sig);
  EXPECT_EQ(count_solutions(a, p), count_solutions(a, f));
}

TEST(Congruence, AllMatchBruteForce) {
  Signature sig{{"meet", 2}, {"join", 2}, {"mul", 2}};
  for (const ResiduatedLattice& l : {fixtures::godel_chain(4), fixtures::lukasiewicz_chain(4), fixtures::boolean_algebra(2)}) {
    PartialAlgebra a = to_partial_algebra(l, sig);
    std::set<std::vector<Index>> want = brute_congruences(a), got;
    for (const CongruenceTable& t : all_congruences(a)) {
      EXPECT_TRUE(is_congruence(a, t));
      got.insert(t.block);
    }
    EXPECT_EQ(got, want);
  }
}

TEST(Congruence, GeneratedIsFinestContainingPairs) {
  Signature sig{{"meet", 2}, {"join", 2}, {"mul", 2}};
  PartialAlgebra a = to_partial_algebra(fixtures::lukasiewicz_chain(5), sig);
  std::set<std::vector<Index>> all = brute_congruences(a);
  for (Index x = 0; x < 5; ++x)
    for (Index y = x + 1; y < 5; ++y) {
      CongruenceTable t = congruence_generated(a, {{x, y}});
      EXPECT_TRUE(t.related(x, y));
      EXPECT_TRUE(all.count(t.block));
      for (const auto& c : all) {
        if (c[x] != c[y]) continue;
        for (Index u = 0; u < 5; ++u)
          for (Index v = 0; v < 5; ++v)
            if (t.related(u, v)) EXPECT_EQ(c[u], c[v]);
      }
    }
}

TEST(Congruence, SeparatingQuotient) {
  Signature sig = rl_sig();
  PartialAlgebra a = to_partial_algebra(fixtures::godel_chain(4), sig);
  auto t = separating_quotient(a, 1, 2);
  ASSERT_TRUE(t.has_value());
  EXPECT_FALSE(t->related(1, 2));
  PartialAlgebra q = quotient(a, *t);
  EXPECT_EQ(q.size(), t->blocks);
  for (const Equation& e : theories::residuated_lattice().axioms) EXPECT_TRUE(holds(q, e));
}

TEST(Theories, BuiltinsAreSatisfiedByTrivialAlgebra) {
  for (const Theory& th : {theories::semilattice(), theories::lattice(), theories::bounded_lattice(),
                           theories::residuated_lattice(), theories::integral_rl(), theories::hrl()}) {
    PartialAlgebra one(th.sig, {"e"});
    for (std::size_t s = 0; s < th.sig.size(); ++s)
      for (std::size_t c = 0; c < one.cells(s); ++c) one.set_raw(s, c, 0);
    for (const Equation& e : th.axioms) EXPECT_TRUE(holds(one, e));
  }
  Theory t = theories::parse({{"f", 2}}, {"(f x y) = (f y x)"});
  EXPECT_EQ(t.axioms.size(), 1u);
  EXPECT_THROW(theories::parse({{"f", 2}}, {"(g x) = x"}), ParseError);
}

TEST(Conversion, RoundTripsResiduatedLattice) {
  ResiduatedLattice l = fixtures::lukasiewicz_chain(4);
  ResiduatedLattice back = to_residuated_lattice(to_partial_algebra(l, rl_sig()));
  EXPECT_EQ(back.mult, l.mult);
  EXPECT_EQ(back.lres, l.lres);
  EXPECT_EQ(back.rres, l.rres);
  EXPECT_EQ(back.order(), l.order());
}

}  // namespace
}  // namespace resq
