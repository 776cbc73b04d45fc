#include "resq/pomonoid.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace resq {

namespace {

std::string nm(const Poset& p, Index i) { return i < p.size() ? p.name(i) : "#" + std::to_string(i); }

}  // namespace

Verdict validate_pomonoid(const Poset& order, const Table& mult, Index unit) {
  const std::size_t n = order.size();
  if (mult.size() != n) return Verdict::fail("multiplication table has wrong size");
  if (unit >= n) return Verdict::fail("unit out of range");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (mult(a, b) >= n) return Verdict::fail("product out of range", {a, b});
  for (Index a = 0; a < n; ++a)
    if (mult(unit, a) != a || mult(a, unit) != a) return Verdict::fail("unit law fails at " + order.name(a), {a});
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          return Verdict::fail("associativity fails at (" + order.name(a) + ", " + order.name(b) + ", " + order.name(c) + ")",
                               {a, b, c});
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (!order.leq(a, b)) continue;
      for (Index c = 0; c < n; ++c)
        if (!order.leq(mult(a, c), mult(b, c)) || !order.leq(mult(c, a), mult(c, b)))
          return Verdict::fail("monotonicity fails at " + order.name(a) + " <= " + order.name(b) + " with " + order.name(c),
                               {a, b, c});
    }
  return Verdict::pass();
}

Pomonoid make_pomonoid(Poset order, Table mult, Index unit) {
  Verdict v = validate_pomonoid(order, mult, unit);
  if (!v) {
    std::string axiom = v.detail.substr(0, v.detail.find(' '));
    throw ValidationError(axiom, v.witness, v.detail);
  }
  return Pomonoid{std::move(order), std::move(mult), unit};
}

std::optional<Index> residual(const Pomonoid& p, Index a, Index b, Side side) {
  const std::size_t n = p.size();
  ElementSet sol(n);
  for (Index x = 0; x < n; ++x) {
    Index prod = side == Side::Left ? p.mul(a, x) : p.mul(x, a);
    if (p.order.leq(prod, b)) sol.set(x);
  }
  return p.order.greatest(sol);
}

bool PartialResidualTable::total() const {
  auto has = [](const std::optional<Index>& e) { return e.has_value(); };
  return std::all_of(left.begin(), left.end(), has) && std::all_of(right.begin(), right.end(), has);
}

PartialResidualTable partial_residuals(const Pomonoid& p) {
  PartialResidualTable t;
  t.n = p.size();
  t.left.resize(t.n * t.n);
  t.right.resize(t.n * t.n);
  for (Index a = 0; a < t.n; ++a)
    for (Index b = 0; b < t.n; ++b) {
      t.left[std::size_t{a} * t.n + b] = residual(p, a, b, Side::Left);
      t.right[std::size_t{b} * t.n + a] = residual(p, a, b, Side::Right);
    }
  return t;
}

bool is_residuated(const Pomonoid& p) {
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b)
      if (!residual(p, a, b, Side::Left) || !residual(p, a, b, Side::Right)) return false;
  return true;
}

std::optional<Residuals> residuals_of(const Pomonoid& p) {
  const std::size_t n = p.size();
  Residuals r{Table(n), Table(n)};
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      auto l = residual(p, a, b, Side::Left);
      auto rr = residual(p, a, b, Side::Right);
      if (!l || !rr) return std::nullopt;
      r.lres.at(a, b) = *l;
      r.rres.at(b, a) = *rr;
    }
  return r;
}

ResiduatedPomonoid make_residuated_pomonoid(const Pomonoid& p) {
  auto r = residuals_of(p);
  if (!r) {
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = 0; b < p.size(); ++b)
        if (!residual(p, a, b, Side::Left) || !residual(p, a, b, Side::Right))
          throw ValidationError("residuated", {a, b}, "a residual of " + p.order.name(b) + " by " + p.order.name(a) + " does not exist");
  }
  return ResiduatedPomonoid{p, std::move(*r)};
}

ResiduatedLattice make_residuated_lattice(const Pomonoid& p, bool with_arrow) {
  ResiduatedLattice l;
  l.lattice = Lattice::from_poset(p.order);
  auto r = residuals_of(p);
  if (!r) {
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = 0; b < p.size(); ++b) {
        if (!residual(p, a, b, Side::Left))
          throw ValidationError("residuated", {a, b}, p.order.name(a) + "\\" + p.order.name(b) + " does not exist");
        if (!residual(p, a, b, Side::Right))
          throw ValidationError("residuated", {b, a}, p.order.name(b) + "/" + p.order.name(a) + " does not exist");
      }
  }
  l.mult = p.mult;
  l.unit = p.unit;
  l.lres = std::move(r->lres);
  l.rres = std::move(r->rres);
  if (with_arrow) l.arrow = heyting_arrow_table(l.lattice);
  return l;
}

bool RlReport::equations_pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.verdict.holds; });
}

Verdict check_adjunction(const ResiduatedView& v) {
  const std::size_t n = v.size();
  const Poset& o = v.order;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        bool a = o.leq(v.mult(x, y), z);
        bool b = o.leq(y, v.lres(x, z));
        bool c = o.leq(x, v.rres(z, y));
        if (a != b || a != c)
          return Verdict::fail("adjunction fails at (" + o.name(x) + ", " + o.name(y) + ", " + o.name(z) + ")", {x, y, z});
      }
  return Verdict::pass();
}

RlReport check_rl_axioms(const ResiduatedLattice& l) {
  RlReport rep;
  const std::size_t n = l.size();
  const Poset& o = l.order();
  auto in_range = [&](const Table& t) {
    if (t.size() != n) return false;
    return std::all_of(t.cells().begin(), t.cells().end(), [&](Index v) { return v < n; });
  };
  if (!in_range(l.lattice.meet) || !in_range(l.lattice.join) || !in_range(l.mult) || !in_range(l.lres) ||
      !in_range(l.rres) || l.unit >= n) {
    rep.axioms.push_back({"tables", Verdict::fail("table shape or entry out of range")});
    rep.adjunction = Verdict::fail("tables malformed");
    return rep;
  }
  auto leq = [&](Index a, Index b) { return o.leq(a, b); };
  auto M = [&](Index a, Index b) { return l.mult(a, b); };
  auto J = [&](Index a, Index b) { return l.lattice.join(a, b); };
  auto L = [&](Index a, Index b) { return l.lres(a, b); };
  auto R = [&](Index a, Index b) { return l.rres(a, b); };
  auto triple = [&](Index x, Index y, Index z) {
    return "(" + nm(o, x) + ", " + nm(o, y) + ", " + nm(o, z) + ")";
  };

  Verdict lat;
  for (Index x = 0; x < n && lat; ++x)
    for (Index y = 0; y < n; ++y) {
      ElementSet pair = ElementSet::from_indices(n, {x, y});
      if (o.meet(pair) != std::optional<Index>(l.lattice.meet(x, y)) ||
          o.join(pair) != std::optional<Index>(l.lattice.join(x, y))) {
        lat = Verdict::fail("meet/join table disagrees with the order at (" + nm(o, x) + ", " + nm(o, y) + ")", {x, y});
        break;
      }
    }
  rep.axioms.push_back({"lattice", lat});

  Verdict mon;
  for (Index x = 0; x < n && mon; ++x) {
    if (M(l.unit, x) != x || M(x, l.unit) != x) {
      mon = Verdict::fail("unit law fails at " + nm(o, x), {x});
      break;
    }
    for (Index y = 0; y < n && mon; ++y)
      for (Index z = 0; z < n; ++z)
        if (M(M(x, y), z) != M(x, M(y, z))) {
          mon = Verdict::fail("associativity fails at " + triple(x, y, z), {x, y, z});
          break;
        }
  }
  rep.axioms.push_back({"monoid", mon});

  Verdict rl[6];
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        std::vector<Index> w{x, y, z};
        if (rl[0] && M(x, J(y, z)) != J(M(x, y), M(x, z))) rl[0] = Verdict::fail("x(y v z) != xy v xz at " + triple(x, y, z), w);
        if (rl[1] && M(J(y, z), x) != J(M(y, x), M(z, x))) rl[1] = Verdict::fail("(y v z)x != yx v zx at " + triple(x, y, z), w);
        if (rl[2] && !leq(L(x, y), L(x, J(y, z)))) rl[2] = Verdict::fail("x\\y not <= x\\(y v z) at " + triple(x, y, z), w);
        if (rl[3] && !leq(R(y, x), R(J(y, z), x))) rl[3] = Verdict::fail("y/x not <= (y v z)/x at " + triple(x, y, z), w);
      }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      std::vector<Index> w{x, y};
      std::string pr = "(" + nm(o, x) + ", " + nm(o, y) + ")";
      if (rl[4] && (!leq(M(x, L(x, y)), y) || !leq(y, L(x, M(x, y)))))
        rl[4] = Verdict::fail("x(x\\y) <= y <= x\\xy fails at " + pr, w);
      if (rl[5] && (!leq(M(R(y, x), x), y) || !leq(y, R(M(y, x), x))))
        rl[5] = Verdict::fail("(y/x)x <= y <= yx/x fails at " + pr, w);
    }
  for (int i = 0; i < 6; ++i) rep.axioms.push_back({"RL" + std::to_string(i + 1), rl[i]});
  rep.adjunction = check_adjunction(l.view());
  return rep;
}

Verdict check_heyting(const ResiduatedLattice& l) {
  if (!l.arrow) return Verdict::fail("no arrow table");
  const std::size_t n = l.size();
  const Table& ar = *l.arrow;
  if (ar.size() != n) return Verdict::fail("arrow table has wrong size");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (ar(a, b) >= n) return Verdict::fail("arrow entry out of range", {a, b});
      for (Index c = 0; c < n; ++c)
        if (l.leq(l.meet(a, c), b) != l.leq(c, ar(a, b)))
          return Verdict::fail("a ^ c <= b iff c <= a -> b fails at (" + l.name(a) + ", " + l.name(b) + ", " + l.name(c) + ")",
                               {a, b, c});
    }
  return Verdict::pass();
}

HeytingRL make_heyting_rl(ResiduatedLattice l) {
  if (!is_integral(l)) throw ValidationError("integral", {l.unit}, "unit is not the top element");
  RlReport rep = check_rl_axioms(l);
  for (const auto& a : rep.axioms)
    if (!a.verdict) throw ValidationError(a.axiom, a.verdict.witness, a.verdict.detail);
  if (!rep.adjunction) throw ValidationError("adjunction", rep.adjunction.witness, rep.adjunction.detail);
  if (!l.arrow) {
    l.arrow = heyting_arrow_table(l.lattice);
    if (!l.arrow) throw ValidationError("heyting", {}, "the lattice reduct is not a Heyting algebra");
  }
  Verdict h = check_heyting(l);
  if (!h) throw ValidationError("heyting", h.witness, h.detail);
  return HeytingRL{std::move(l)};
}

std::optional<Index> heyting_arrow(const Lattice& l, Index a, Index b) {
  ElementSet sol(l.size());
  for (Index c = 0; c < l.size(); ++c)
    if (l.order.leq(l.meet(a, c), b)) sol.set(c);
  return l.order.greatest(sol);
}

std::optional<Table> heyting_arrow_table(const Lattice& l) {
  Table t(l.size());
  for (Index a = 0; a < l.size(); ++a)
    for (Index b = 0; b < l.size(); ++b) {
      auto c = heyting_arrow(l, a, b);
      if (!c) return std::nullopt;
      t.at(a, b) = *c;
    }
  return t;
}

bool is_integral(const Pomonoid& p) {
  auto t = p.order.top();
  return t && *t == p.unit;
}

bool is_integral(const ResiduatedLattice& l) { return l.top() == l.unit; }

bool is_commutative(const Table& mult) {
  for (Index a = 0; a < mult.size(); ++a)
    for (Index b = a + 1; b < mult.size(); ++b)
      if (mult(a, b) != mult(b, a)) return false;
  return true;
}

bool is_distributive(const Lattice& l) {
  for (Index x = 0; x < l.size(); ++x)
    for (Index y = 0; y < l.size(); ++y)
      for (Index z = 0; z < l.size(); ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
  return true;
}

bool is_chain(const Poset& p) { return p.is_chain(); }

namespace {

ResiduatedLattice assemble(const SetLattice& sets, const std::function<ElementSet(const ElementSet&, const ElementSet&)>& prod,
                           const std::function<ElementSet(const ElementSet&, const ElementSet&)>& ldiv,
                           const std::function<ElementSet(const ElementSet&, const ElementSet&)>& rdiv,
                           const std::function<ElementSet(const ElementSet&, const ElementSet&)>& arrow, const ElementSet& unit) {
  const std::size_t m = sets.size();
  ResiduatedLattice l;
  l.lattice = sets.lattice();
  l.mult = Table(m);
  l.lres = Table(m);
  l.rres = Table(m);
  Table ar(m);
  auto lookup = [&](const ElementSet& s) {
    auto i = sets.find(s);
    if (!i) throw Error("internal: operation left the set family: " + set_name(sets.base(), s));
    return *i;
  };
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const auto& x = sets.member(i);
      const auto& y = sets.member(j);
      l.mult.at(i, j) = lookup(prod(x, y));
      l.lres.at(i, j) = lookup(ldiv(x, y));
      l.rres.at(i, j) = lookup(rdiv(x, y));
      ar.at(i, j) = lookup(arrow(x, y));
    }
  l.unit = lookup(unit);
  l.arrow = std::move(ar);
  return l;
}

}  // namespace

SetRL powerset_rl(const Pomonoid& p, const Guards& guards) {
  const std::size_t n = p.size();
  if (n > guards.powerset_base)
    throw GuardError("powerset of " + std::to_string(n) + " elements exceeds guard powerset_base=" +
                     std::to_string(guards.powerset_base));
  std::vector<ElementSet> all;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) all.push_back(ElementSet::from_bits(n, bits));
  Guards g = guards;
  g.max_lattice = std::max(g.max_lattice, all.size());
  SetLattice sets(p.order, std::move(all), g);
  auto prod = [&](const ElementSet& x, const ElementSet& y) {
    ElementSet r(n);
    for (Index a : x.indices())
      for (Index b : y.indices()) r.set(p.mul(a, b));
    return r;
  };
  // x\y = {z | az in y for all a in x}, and y/x = {z | za in y for all a in x}.
  auto ldiv = [&](const ElementSet& x, const ElementSet& y) {
    ElementSet r(n);
    for (Index z = 0; z < n; ++z) {
      bool ok = true;
      for (Index a : x.indices())
        if (!y.test(p.mul(a, z))) ok = false;
      if (ok) r.set(z);
    }
    return r;
  };
  auto rdiv = [&](const ElementSet& y, const ElementSet& x) {
    ElementSet r(n);
    for (Index z = 0; z < n; ++z) {
      bool ok = true;
      for (Index a : x.indices())
        if (!y.test(p.mul(z, a))) ok = false;
      if (ok) r.set(z);
    }
    return r;
  };
  auto arrow = [&](const ElementSet& x, const ElementSet& y) { return x.complement() | y; };
  ElementSet unit(n);
  unit.set(p.unit);
  ResiduatedLattice alg = assemble(sets, prod, ldiv, rdiv, arrow, unit);
  return SetRL{std::move(sets), std::move(alg)};
}

SetRL low_rl(const Pomonoid& p, const Guards& guards) {
  const std::size_t n = p.size();
  SetLattice sets = all_order_ideals(p.order, guards);
  auto prod = [&](const ElementSet& x, const ElementSet& y) {
    ElementSet r(n);
    for (Index a : x.indices())
      for (Index b : y.indices()) r |= p.order.down(p.mul(a, b));
    return r;
  };
  auto ldiv = [&](const ElementSet& x, const ElementSet& y) {
    ElementSet r(n);
    for (Index z = 0; z < n; ++z) {
      bool ok = true;
      for (Index a : x.indices())
        if (!y.test(p.mul(a, z))) ok = false;
      if (ok) r.set(z);
    }
    return r;
  };
  auto rdiv = [&](const ElementSet& y, const ElementSet& x) {
    ElementSet r(n);
    for (Index z = 0; z < n; ++z) {
      bool ok = true;
      for (Index a : x.indices())
        if (!y.test(p.mul(z, a))) ok = false;
      if (ok) r.set(z);
    }
    return r;
  };
  auto arrow = [&](const ElementSet& x, const ElementSet& y) {
    ElementSet r(n);
    for (Index z = 0; z < n; ++z)
      if ((p.order.down(z) & x).is_subset_of(y)) r.set(z);
    return r;
  };
  ResiduatedLattice alg = assemble(sets, prod, ldiv, rdiv, arrow, p.order.down(p.unit));
  return SetRL{std::move(sets), std::move(alg)};
}

void enumerate_pomonoids(const Poset& order, const std::function<void(const Pomonoid&)>& visit) {
  const std::size_t n = order.size();
  if (n == 0) return;
  for (Index u = 0; u < n; ++u) {
    Table t(n, 0);
    std::vector<std::vector<bool>> known(n, std::vector<bool>(n, false));
    for (Index a = 0; a < n; ++a) {
      t.at(u, a) = a;
      t.at(a, u) = a;
      known[u][a] = known[a][u] = true;
    }
    std::vector<std::pair<Index, Index>> cells;
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (a != u && b != u) cells.emplace_back(a, b);
    auto consistent = [&](Index a, Index b, Index v) {
      for (Index c = 0; c < n; ++c) {
        if (known[c][b]) {
          if (order.leq(c, a) && !order.leq(t(c, b), v)) return false;
          if (order.leq(a, c) && !order.leq(v, t(c, b))) return false;
        }
        if (known[a][c]) {
          if (order.leq(c, b) && !order.leq(t(a, c), v)) return false;
          if (order.leq(b, c) && !order.leq(v, t(a, c))) return false;
        }
      }
      return true;
    };
    auto assoc_ok = [&](Index a, Index b) {
      // Check every triple whose evaluation only touches known cells and
      // involves the cell just assigned.
      for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
          for (Index z = 0; z < n; ++z) {
            if (!known[x][y] || !known[y][z]) continue;
            Index xy = t(x, y), yz = t(y, z);
            if (!known[xy][z] || !known[x][yz]) continue;
            bool involved = (x == a && y == b) || (y == a && z == b) || (xy == a && z == b) || (x == a && yz == b);
            if (!involved) continue;
            if (t(xy, z) != t(x, yz)) return false;
          }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == cells.size()) {
        if (validate_pomonoid(order, t, u)) visit(Pomonoid{order, t, u});
        return;
      }
      auto [a, b] = cells[k];
      for (Index v = 0; v < n; ++v) {
        if (!consistent(a, b, v)) continue;
        t.at(a, b) = v;
        known[a][b] = true;
        if (assoc_ok(a, b)) self(self, k + 1);
        known[a][b] = false;
      }
    };
    rec(rec, 0);
  }
}

std::vector<Index> canonical_code(const Poset& order, const std::vector<const Table*>& tables,
                                  const std::vector<Index>& constants) {
  const std::size_t n = order.size();
  std::vector<Index> best;
  std::vector<Index> code;
  std::vector<Index> inv(n);
  for_each_permutation(n, [&](const std::vector<Index>& perm) {
    for (Index i = 0; i < n; ++i) inv[perm[i]] = i;
    code.clear();
    for (Index c : constants) code.push_back(perm[c]);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) code.push_back(order.leq(inv[i], inv[j]) ? 1 : 0);
    for (const Table* t : tables)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) code.push_back(perm[(*t)(inv[i], inv[j])]);
    if (best.empty() || code < best) best = code;
    return true;
  });
  return best;
}

std::vector<ResiduatedLattice> enumerate_residuated_lattices(std::size_t n, bool integral_only) {
  std::map<std::vector<Index>, Pomonoid> classes;
  for (const Poset& order : enumerate_posets(n)) {
    if (!is_lattice(order)) continue;
    enumerate_pomonoids(order, [&](const Pomonoid& p) {
      if (integral_only && !is_integral(p)) return;
      if (!is_residuated(p)) return;
      auto code = canonical_code(p.order, {&p.mult}, {p.unit});
      classes.emplace(std::move(code), p);
    });
  }
  std::vector<ResiduatedLattice> out;
  for (const auto& [code, p] : classes) out.push_back(make_residuated_lattice(p));
  return out;
}

}  // namespace resq
