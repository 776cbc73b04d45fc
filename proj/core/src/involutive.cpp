#include "resq/involutive.hpp"

#include <stdexcept>

namespace resq {

Verdict is_cyclic(const ResiduatedView& a, Index d) {
  for (Index x = 0; x < a.size(); ++x)
    if (a.rres(d, x) != a.lres(x, d))
      return Verdict::fail(a.order.name(d) + "/" + a.order.name(x) + " != " + a.order.name(x) + "\\" + a.order.name(d), {x});
  return Verdict::pass();
}

UnaryMap wiggle(const ResiduatedView& a, Index d) {
  UnaryMap w(a.size());
  for (Index x = 0; x < a.size(); ++x) w[x] = a.lres(x, d);
  return w;
}

UnaryMap gamma_d(const ResiduatedView& a, Index d) {
  Verdict c = is_cyclic(a, d);
  if (!c) throw ValidationError("cyclic", c.witness, c.detail);
  UnaryMap w = wiggle(a, d);
  UnaryMap g(a.size());
  for (Index x = 0; x < a.size(); ++x) g[x] = w[w[x]];
  Verdict nu = is_nucleus(a, g);
  if (!nu) throw std::logic_error("gamma_d is not a nucleus: " + nu.detail);
  return g;
}

bool is_cyclic_dualizing(const ResiduatedView& a, Index d) {
  if (!is_cyclic(a, d)) return false;
  UnaryMap w = wiggle(a, d);
  for (Index x = 0; x < a.size(); ++x)
    if (w[w[x]] != x) return false;
  return true;
}

std::optional<Index> find_dualizing_element(const ResiduatedView& a) {
  for (Index d = 0; d < a.size(); ++d)
    if (is_cyclic_dualizing(a, d)) return d;
  return std::nullopt;
}

std::optional<Index> find_cyclic_presentation(const ResiduatedView& a, const UnaryMap& g) {
  for (Index d = 0; d < a.size(); ++d) {
    if (!is_cyclic(a, d)) continue;
    if (gamma_d(a, d) == g) return d;
  }
  return std::nullopt;
}

InvolutiveRL make_involutive_rl(ResiduatedLattice base, Index d) {
  if (d >= base.size()) throw ValidationError("dualizing", {d}, "element out of range");
  if (!is_cyclic_dualizing(base.view(), d))
    throw ValidationError("dualizing", {d}, base.name(d) + " is not a cyclic dualizing element");
  return InvolutiveRL{std::move(base), d};
}

Verdict check_involutive_invariants(const InvolutiveRL& a) {
  const ResiduatedLattice& l = a.base;
  const std::size_t n = l.size();
  for (Index x = 0; x < n; ++x) {
    if (a.neg(a.neg(x)) != x) return Verdict::fail("x'' != x at " + l.name(x), {x});
    if (l.rdiv(a.d, x) != a.neg(x)) return Verdict::fail("d not cyclic at " + l.name(x), {x});
    for (Index y = 0; y < n; ++y)
      if (l.leq(x, y) && !l.leq(a.neg(y), a.neg(x))) return Verdict::fail("negation not order reversing", {x, y});
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        bool p = l.leq(l.mul(x, y), z);
        bool q = l.leq(y, a.neg(l.mul(a.neg(z), x)));
        bool r = l.leq(x, a.neg(l.mul(y, a.neg(z))));
        if (p != q || p != r) return Verdict::fail("xy <= z iff y <= (z'x)' iff x <= (yz')' fails", {x, y, z});
      }
  bool s1 = a.d == a.neg(a.d);
  bool s2 = l.unit == a.neg(l.unit);
  bool s3 = a.d == l.unit;
  if (s1 != s2 || s1 != s3) return Verdict::fail("d = d' iff 1 = 1' iff d = 1 fails", {a.d});
  return Verdict::pass();
}

bool Theorem44Report::holds() const {
  return d_cyclic_in_completion.holds && images_fixed.holds && join_dense.holds && meet_dense.holds && product_preserved.holds &&
         residuals_preserved.holds && completion_size == dm_size;
}

Theorem44Report theorem44_check(const Pomonoid& p, Index d) {
  ResiduatedPomonoid rp = make_residuated_pomonoid(p);
  if (d >= p.size() || !is_cyclic_dualizing(rp.view(), d))
    throw ValidationError("dualizing", {d}, "not a cyclic dualizing element of the pomonoid");
  Theorem44Report r;
  SetRL low = low_rl(p);
  const ResiduatedLattice& L = low.algebra;
  std::vector<Index> principal = low.sets.principal_map();
  Index dd = principal[d];
  r.d_cyclic_in_completion = is_cyclic(L.view(), dd);
  if (!r.d_cyclic_in_completion) return r;

  UnaryMap gl = gamma_d(L.view(), dd);
  ElementSet c = image_of(L.size(), gl);
  ImageAlgebra img = nucleus_image_algebra(L, c);
  r.completion_size = img.to_ambient.size();

  UnaryMap gp = gamma_d(rp.view(), d);
  std::vector<Index> s = image_of(p.size(), gp).indices();
  std::vector<Index> local(p.size(), 0);
  for (Index i = 0; i < s.size(); ++i) local[s[i]] = i;
  Poset ps = p.order.induced(s);
  r.dm_size = dm_completion(ps).size();

  std::vector<Index> emb(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    Index lp = principal[s[i]];
    if (!c.test(lp)) {
      r.images_fixed = Verdict::fail("principal ideal of " + p.order.name(s[i]) + " is not fixed", {s[i]});
      return r;
    }
    emb[i] = img.gamma[lp];
  }
  DensityReport dens = density_check(ps, img.algebra.order(), emb);
  r.join_dense = dens.join_dense;
  r.meet_dense = dens.meet_dense;
  for (Index i = 0; i < s.size(); ++i)
    for (Index j = 0; j < s.size(); ++j) {
      Index x = s[i], y = s[j];
      Index prod = gp[p.mul(x, y)];
      if (r.product_preserved && img.algebra.mul(emb[i], emb[j]) != emb[local[prod]])
        r.product_preserved = Verdict::fail("product of " + p.order.name(x) + " and " + p.order.name(y) + " not preserved", {x, y});
      Index lq = rp.res.lres(x, y), rq = rp.res.rres(x, y);
      if (r.residuals_preserved &&
          (img.algebra.ldiv(emb[i], emb[j]) != emb[local[lq]] || img.algebra.rdiv(emb[i], emb[j]) != emb[local[rq]]))
        r.residuals_preserved = Verdict::fail("residuals of " + p.order.name(x) + ", " + p.order.name(y) + " not preserved", {x, y});
    }
  return r;
}

}  // namespace resq
