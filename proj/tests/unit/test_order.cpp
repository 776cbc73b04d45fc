#include <gtest/gtest.h>

#include <set>

#include "resq/fixtures.hpp"
#include "resq/order.hpp"

namespace resq {
namespace {

// Every subset of the carrier that is closed downward.
std::set<std::uint64_t> brute_ideals(const Poset& p) {
  std::set<std::uint64_t> out;
  const std::size_t n = p.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool ok = true;
    for (Index y = 0; y < n && ok; ++y) {
      if (!((bits >> y) & 1)) continue;
      for (Index x = 0; x < n; ++x)
        if (p.leq(x, y) && !((bits >> x) & 1)) ok = false;
    }
    if (ok) out.insert(bits);
  }
  return out;
}

std::uint64_t bits_of(const ElementSet& s) {
  std::uint64_t b = 0;
  for (Index i : s.indices()) b |= std::uint64_t{1} << i;
  return b;
}

// Labelled partial orders on n points by brute force over relation matrices.
std::size_t labelled_posets(std::size_t n) {
  std::vector<std::pair<Index, Index>> off;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  std::size_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (Index i = 0; i < n; ++i) m[i][i] = true;
    for (std::size_t k = 0; k < off.size(); ++k)
      if ((bits >> k) & 1) m[off[k].first][off[k].second] = true;
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i)
      for (Index j = 0; j < n && ok; ++j) {
        if (i != j && m[i][j] && m[j][i]) ok = false;
        for (Index k = 0; k < n && ok; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) ok = false;
      }
    count += ok;
  }
  return count;
}

std::size_t automorphisms(const Poset& p) {
  std::size_t count = 0;
  for_each_permutation(p.size(), [&](const std::vector<Index>& pi) {
    bool ok = true;
    for (Index i = 0; i < p.size() && ok; ++i)
      for (Index j = 0; j < p.size() && ok; ++j)
        if (p.leq(i, j) != p.leq(pi[i], pi[j])) ok = false;
    count += ok;
    return true;
  });
  return count;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Cuts X = lower(upper(X)), computed from the matrix alone.
std::set<std::uint64_t> brute_cuts(const Poset& p) {
  std::set<std::uint64_t> out;
  const std::size_t n = p.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::uint64_t up = 0;
    for (Index u = 0; u < n; ++u) {
      bool all = true;
      for (Index x = 0; x < n; ++x)
        if (((bits >> x) & 1) && !p.leq(x, u)) all = false;
      if (all) up |= std::uint64_t{1} << u;
    }
    std::uint64_t low = 0;
    for (Index l = 0; l < n; ++l) {
      bool all = true;
      for (Index u = 0; u < n; ++u)
        if (((up >> u) & 1) && !p.leq(l, u)) all = false;
      if (all) low |= std::uint64_t{1} << l;
    }
    if (low == bits) out.insert(bits);
  }
  return out;
}

TEST(Poset, RejectsCycle) {
  std::vector<std::vector<bool>> m{{true, true}, {true, true}};
  try {
    Poset::from_matrix({"a", "b"}, m);
    FAIL() << "antisymmetry should fail";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.axiom(), "antisymmetry");
  }
}

TEST(Poset, RejectsNonReflexive) {
  std::vector<std::vector<bool>> m{{false}};
  EXPECT_THROW(Poset::from_matrix({"a"}, m), ValidationError);
}

TEST(Poset, CoversRoundTrip) {
  Poset p = fixtures::pentagon();
  Poset q = Poset::from_covers(p.names(), p.covers());
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.covers().size(), 5u);
}

TEST(Poset, BoundsOnDiamond) {
  Poset d = fixtures::diamond();
  EXPECT_EQ(d.top(), Index{4});
  EXPECT_EQ(d.bottom(), Index{0});
  EXPECT_EQ(d.join(ElementSet::from_indices(5, {1, 2})), Index{4});
  EXPECT_EQ(d.meet(ElementSet::from_indices(5, {1, 2})), Index{0});
  EXPECT_TRUE(is_lattice(d));
  EXPECT_FALSE(is_lattice(Poset::antichain(2)));
}

TEST(Lattice, TablesMatchOrder) {
  Lattice l = Lattice::from_poset(fixtures::pentagon());
  for (Index a = 0; a < l.size(); ++a)
    for (Index b = 0; b < l.size(); ++b) {
      Index m = l.meet(a, b), j = l.join(a, b);
      EXPECT_TRUE(l.order.leq(m, a) && l.order.leq(m, b));
      EXPECT_TRUE(l.order.leq(a, j) && l.order.leq(b, j));
      for (Index c = 0; c < l.size(); ++c) {
        if (l.order.leq(c, a) && l.order.leq(c, b)) EXPECT_TRUE(l.order.leq(c, m));
        if (l.order.leq(a, c) && l.order.leq(b, c)) EXPECT_TRUE(l.order.leq(j, c));
      }
    }
}

TEST(Ideals, MatchBruteForce) {
  for (std::size_t n = 0; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      std::set<std::uint64_t> got;
      for (const ElementSet& s : enumerate_order_ideals(p)) {
        EXPECT_TRUE(is_down_set(p, s));
        got.insert(bits_of(s));
      }
      EXPECT_EQ(got, brute_ideals(p));
    }
}

TEST(Ideals, Vee) {
  Poset v = Poset::from_covers({"a", "b", "c"}, {{0, 2}, {1, 2}});
  EXPECT_EQ(enumerate_order_ideals(v).size(), 5u);
  EXPECT_EQ(enumerate_order_ideals(Poset::chain(4)).size(), 5u);
  EXPECT_EQ(enumerate_order_ideals(Poset::antichain(4)).size(), 16u);
}

TEST(Ideals, GuardTrips) {
  Guards g;
  g.max_ideals = 8;
  EXPECT_THROW(enumerate_order_ideals(Poset::antichain(4), g), GuardError);
}

TEST(Posets, ClassCountsAndOrbitSums) {
  const std::size_t classes[] = {1, 1, 2, 5, 16};
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<Poset> ps = enumerate_posets(n);
    EXPECT_EQ(ps.size(), classes[n]) << "n=" << n;
    std::size_t labelled = 0;
    for (const Poset& p : ps) labelled += factorial(n) / automorphisms(p);
    EXPECT_EQ(labelled, labelled_posets(n)) << "n=" << n;
  }
  EXPECT_EQ(labelled_posets(3), 19u);
  EXPECT_EQ(labelled_posets(4), 219u);
}

TEST(Completion, DedekindMacNeilleMatchesCuts) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      SetLattice dm = dm_completion(p);
      std::set<std::uint64_t> got;
      for (const ElementSet& s : dm.members()) got.insert(bits_of(s));
      EXPECT_EQ(got, brute_cuts(p));
      DensityReport r = density_check(p, dm.lattice().order, dm.principal_map());
      EXPECT_TRUE(r.order_embedding.holds);
      EXPECT_TRUE(r.join_dense.holds);
      EXPECT_TRUE(r.meet_dense.holds);
    }
}

TEST(Completion, Tower) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      SetLattice dm = dm_completion(p), cr = crawley_completion(p), low = all_order_ideals(p);
      EXPECT_LE(dm.size(), cr.size());
      EXPECT_LE(cr.size(), low.size());
      for (const ElementSet& s : dm.members()) EXPECT_TRUE(cr.find(s).has_value());
      for (const ElementSet& s : cr.members()) EXPECT_TRUE(low.find(s).has_value());
    }
}

TEST(Completion, LatticeIsItsOwnCompletion) {
  Poset p = fixtures::pentagon();
  EXPECT_EQ(dm_completion(p).size(), 5u);
  EXPECT_EQ(dm_completion(Poset::antichain(2)).size(), 4u);
}

TEST(Completion, IntersectionClosure) {
  Poset c = Poset::chain(3);
  SetLattice s = intersection_closure(c, {});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.member(0), ElementSet::full(3));
  SetLattice t = intersection_closure(Poset::antichain(2), {ElementSet::from_indices(2, {0}), ElementSet::from_indices(2, {1})});
  EXPECT_EQ(t.size(), 4u);
}

TEST(Closure, ChainSubsets) {
  Poset k = Poset::chain(4);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    ElementSet c = ElementSet::from_bits(4, bits);
    // On a finite chain a subset is a closure system exactly when it holds the top.
    EXPECT_EQ(is_closure_system(k, c).holds, c.test(3)) << bits;
    if (!c.test(3)) continue;
    UnaryMap g = closure_operator_of(k, c);
    EXPECT_TRUE(is_closure_operator(k, g).holds);
    EXPECT_EQ(image_of(4, g), c);
  }
}

TEST(Faithfulness, DedekindMacNeillePreservesMeets) {
  Poset p = fixtures::pentagon();
  SetLattice dm = dm_completion(p);
  FaithfulnessReport r = meet_faithfulness_check(p, dm.lattice().order, dm.principal_map());
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(r.holds());
}

TEST(Dot, CoversOnly) {
  std::string dot = hasse_dot(Poset::chain(3));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  std::size_t edges = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2)) ++edges;
  EXPECT_EQ(edges, 2u);
}

}  // namespace
}  // namespace resq
