#include "resq/completion.hpp"

#include <algorithm>

namespace resq {

Verdict is_nucleus(const ResiduatedView& k, const UnaryMap& g) {
  Verdict c = is_closure_operator(k.order, g);
  if (!c) return c;
  for (Index a = 0; a < k.size(); ++a)
    for (Index b = 0; b < k.size(); ++b)
      if (!k.order.leq(k.mult(g[a], g[b]), g[k.mult(a, b)]))
        return Verdict::fail("g(a)g(b) not <= g(ab) at (" + k.order.name(a) + ", " + k.order.name(b) + ")", {a, b});
  return Verdict::pass();
}

Verdict is_nucleus_system(const ResiduatedView& k, const ElementSet& c) {
  Verdict cs = is_closure_system(k.order, c);
  if (!cs) return cs;
  for (Index x = 0; x < k.size(); ++x)
    for (Index a : c.indices()) {
      if (!c.test(k.lres(x, a)))
        return Verdict::fail(k.order.name(x) + "\\" + k.order.name(a) + " leaves the system", {x, a});
      if (!c.test(k.rres(a, x)))
        return Verdict::fail(k.order.name(a) + "/" + k.order.name(x) + " leaves the system", {a, x});
    }
  return Verdict::pass();
}

ImageAlgebra nucleus_image_algebra(const ResiduatedLattice& k, const ElementSet& c) {
  Verdict v = is_nucleus_system(k.view(), c);
  if (!v) throw ValidationError("nucleus-system", v.witness, v.detail);
  ImageAlgebra img;
  img.to_ambient = c.indices();
  const std::size_t m = img.to_ambient.size();
  std::vector<Index> local(k.size(), 0);
  for (Index i = 0; i < m; ++i) local[img.to_ambient[i]] = i;
  UnaryMap g = closure_operator_of(k.order(), c);
  img.gamma.resize(k.size());
  for (Index x = 0; x < k.size(); ++x) img.gamma[x] = local[g[x]];

  ResiduatedLattice& a = img.algebra;
  a.lattice = Lattice::from_poset(k.order().induced(img.to_ambient));
  a.mult = Table(m);
  a.lres = Table(m);
  a.rres = Table(m);
  bool arrow_closed = k.arrow.has_value();
  Table ar(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      Index x = img.to_ambient[i], y = img.to_ambient[j];
      a.mult.at(i, j) = img.gamma[k.mul(x, y)];
      a.lres.at(i, j) = local[k.ldiv(x, y)];
      a.rres.at(i, j) = local[k.rdiv(x, y)];
      if (arrow_closed) {
        Index z = (*k.arrow)(x, y);
        if (c.test(z)) ar.at(i, j) = local[z];
        else arrow_closed = false;
      }
    }
  a.unit = img.gamma[k.unit];
  if (arrow_closed) a.arrow = std::move(ar);
  else a.arrow = heyting_arrow_table(a.lattice);
  return img;
}

SetRL nucleus_image_set_rl(const SetRL& k, const ElementSet& c) {
  ImageAlgebra img = nucleus_image_algebra(k.algebra, c);
  std::vector<ElementSet> members;
  for (Index i : img.to_ambient) members.push_back(k.sets.member(i));
  Guards g = Guards::current();
  g.max_lattice = std::max(g.max_lattice, members.size());
  SetLattice sets(k.sets.base(), std::move(members), g);
  // Both orders are binary counting over the same members, so indices agree.
  img.algebra.lattice = sets.lattice();
  return SetRL{std::move(sets), std::move(img.algebra)};
}

JoinExtensionWitness make_join_extension(const Pomonoid& p, const SetRL& low, ElementSet selected) {
  if (selected.universe() != low.sets.size()) throw Error("selection has wrong universe");
  for (Index x = 0; x < p.size(); ++x) {
    auto i = low.sets.find(p.order.down(x));
    if (!i || !selected.test(*i))
      throw ValidationError("contains-principal-ideals", {x}, "principal ideal of " + p.order.name(x) + " is not selected");
  }
  Verdict cs = is_closure_system(low.algebra.order(), selected);
  if (!cs) throw ValidationError("closure-system", cs.witness, cs.detail);
  return JoinExtensionWitness{p, low, std::move(selected)};
}

JoinExtensionWitness make_join_extension(const Pomonoid& p, const std::vector<ElementSet>& downsets) {
  SetRL low = low_rl(p);
  ElementSet sel(low.sets.size());
  for (const auto& d : downsets) {
    auto i = low.sets.find(d);
    if (!i) throw ValidationError("down-set", {}, set_name(p.order, d) + " is not an order ideal");
    sel.set(*i);
  }
  return make_join_extension(p, low, std::move(sel));
}

bool NucleusReport::agree() const {
  return std::all_of(conditions.begin(), conditions.end(), [&](const Verdict& v) { return v.holds == conditions[0].holds; });
}

bool NucleusReport::all_true() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Verdict& v) { return v.holds; });
}

namespace {

struct Frame {
  const SetRL& low;
  std::vector<Index> members;  // selected indices in Low(P)
  std::vector<Index> local;    // Low index -> L index (valid for members)
  UnaryMap gamma;              // Low index -> Low index
  std::vector<Index> principal;
};

Frame frame_of(const JoinExtensionWitness& w) {
  Frame f{w.ambient, w.selected.indices(), std::vector<Index>(w.ambient.sets.size(), 0),
          closure_operator_of(w.ambient.algebra.order(), w.selected), w.ambient.sets.principal_map()};
  for (Index i = 0; i < f.members.size(); ++i) f.local[f.members[i]] = i;
  return f;
}

Verdict condition_i(const JoinExtensionWitness& w, const Frame& f) {
  // The only candidate is x * y = gamma_L(x . y) computed in Low(P).
  const ResiduatedLattice& low = w.ambient.algebra;
  const std::size_t m = f.members.size();
  Poset order = low.order().induced(f.members);
  Table t(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) t.at(i, j) = f.local[f.gamma[low.mul(f.members[i], f.members[j])]];
  Index unit = f.local[f.principal[w.base.unit]];
  Verdict pm = validate_pomonoid(order, t, unit);
  if (!pm) return Verdict::fail("candidate multiplication is not a pomonoid: " + pm.detail, pm.witness);
  Pomonoid cand{order, t, unit};
  for (Index a = 0; a < w.base.size(); ++a)
    for (Index b = 0; b < w.base.size(); ++b)
      if (t(f.local[f.principal[a]], f.local[f.principal[b]]) != f.local[f.principal[w.base.mul(a, b)]])
        return Verdict::fail("candidate does not extend the product of " + w.base.order.name(a) + " and " + w.base.order.name(b),
                             {a, b});
  for (Index x = 0; x < m; ++x)
    for (Index y = 0; y < m; ++y) {
      if (!residual(cand, x, y, Side::Left))
        return Verdict::fail("candidate has no left residual " + order.name(x) + "\\" + order.name(y), {f.members[x], f.members[y]});
      if (!residual(cand, x, y, Side::Right))
        return Verdict::fail("candidate has no right residual " + order.name(y) + "/" + order.name(x), {f.members[y], f.members[x]});
    }
  return Verdict::pass();
}

Verdict condition_ii(const JoinExtensionWitness& w, const Frame& f) {
  const ResiduatedLattice& low = w.ambient.algebra;
  for (Index a = 0; a < w.base.size(); ++a)
    for (Index b : f.members) {
      Index pa = f.principal[a];
      if (!w.selected.test(low.ldiv(pa, b)))
        return Verdict::fail(w.base.order.name(a) + "\\" + low.name(b) + " is not in L", {pa, b});
      if (!w.selected.test(low.rdiv(b, pa)))
        return Verdict::fail(low.name(b) + "/" + w.base.order.name(a) + " is not in L", {b, pa});
    }
  return Verdict::pass();
}

Verdict extension_check(const JoinExtensionWitness& w, const Frame& f) {
  ImageAlgebra img = nucleus_image_algebra(w.ambient.algebra, w.selected);
  const Pomonoid& p = w.base;
  auto L = [&](Index a) { return f.local[f.principal[a]]; };
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b) {
      if (img.algebra.mul(L(a), L(b)) != L(p.mul(a, b)))
        return Verdict::fail("product of " + p.order.name(a) + " and " + p.order.name(b) + " not preserved", {a, b});
      if (auto c = residual(p, a, b, Side::Left); c && img.algebra.ldiv(L(a), L(b)) != L(*c))
        return Verdict::fail(p.order.name(a) + "\\" + p.order.name(b) + " not preserved", {a, b});
      if (auto c = residual(p, a, b, Side::Right); c && img.algebra.rdiv(L(b), L(a)) != L(*c))
        return Verdict::fail(p.order.name(b) + "/" + p.order.name(a) + " not preserved", {b, a});
    }
  return Verdict::pass();
}

}  // namespace

NucleusReport theorem35_check(const JoinExtensionWitness& w) {
  Frame f = frame_of(w);
  NucleusReport r;
  r.conditions[0] = condition_i(w, f);
  r.conditions[1] = condition_ii(w, f);
  r.conditions[2] = is_nucleus_system(w.ambient.algebra.view(), w.selected);
  UnaryMap g = closure_operator_of(w.ambient.algebra.order(), w.selected);
  r.conditions[3] = is_nucleus(w.ambient.algebra.view(), g);
  if (r.conditions[2]) r.extension = extension_check(w, f);
  else r.extension = Verdict::fail("not applicable: L is not a nucleus-system");
  return r;
}

bool HeytingCompletionReport::heyting_agree() const {
  return std::all_of(heyting.begin(), heyting.end(), [&](const Verdict& v) { return v.holds == heyting[0].holds; });
}

std::array<bool, 4> HeytingCompletionReport::combined() const {
  std::array<bool, 4> c{};
  for (std::size_t i = 0; i < 4; ++i) c[i] = rl.conditions[i].holds && heyting[i].holds;
  return c;
}

bool HeytingCompletionReport::combined_agree() const {
  auto c = combined();
  return std::all_of(c.begin(), c.end(), [&](bool b) { return b == c[0]; });
}

HeytingCompletionReport heyting_completion_check(const JoinExtensionWitness& w) {
  if (!is_integral(w.base)) throw ValidationError("integral", {w.base.unit}, "base pomonoid is not integral");
  for (Index a = 0; a < w.base.size(); ++a)
    for (Index b = a + 1; b < w.base.size(); ++b)
      if (!w.base.order.meet(ElementSet::from_indices(w.base.size(), {a, b})))
        throw ValidationError("meet-semilattice", {a, b}, "base order lacks a meet");
  HeytingCompletionReport r;
  r.rl = theorem35_check(w);
  Frame f = frame_of(w);
  const ResiduatedLattice& low = w.ambient.algebra;
  const Table& ar = *low.arrow;

  Poset order = low.order().induced(f.members);
  Lattice lat = Lattice::from_poset(order);
  r.heyting[0] = Verdict::pass();
  for (Index a = 0; a < lat.size() && r.heyting[0]; ++a)
    for (Index b = 0; b < lat.size(); ++b)
      if (!heyting_arrow(lat, a, b)) {
        r.heyting[0] = Verdict::fail("L has no arrow " + order.name(a) + " -> " + order.name(b), {f.members[a], f.members[b]});
        break;
      }
  for (Index a = 0; a < w.base.size() && r.heyting[1]; ++a)
    for (Index b : f.members)
      if (!w.selected.test(ar(f.principal[a], b))) {
        r.heyting[1] = Verdict::fail(w.base.order.name(a) + " -> " + low.name(b) + " is not in L", {f.principal[a], b});
        break;
      }
  for (Index x = 0; x < low.size() && r.heyting[2]; ++x)
    for (Index b : f.members)
      if (!w.selected.test(ar(x, b))) {
        r.heyting[2] = Verdict::fail(low.name(x) + " -> " + low.name(b) + " is not in L", {x, b});
        break;
      }
  for (Index x = 0; x < low.size() && r.heyting[3]; ++x)
    for (Index y = 0; y < low.size(); ++y)
      if (!low.leq(low.meet(f.gamma[x], f.gamma[y]), f.gamma[low.meet(x, y)])) {
        r.heyting[3] = Verdict::fail("g(x) ^ g(y) not <= g(x ^ y) at (" + low.name(x) + ", " + low.name(y) + ")", {x, y});
        break;
      }
  return r;
}

SetRL dm_rl(const Pomonoid& p) {
  SetRL low = low_rl(p);
  SetLattice dm = dm_completion(p.order);
  ElementSet sel(low.sets.size());
  for (const auto& m : dm.members()) sel.set(*low.sets.find(m));
  return nucleus_image_set_rl(low, sel);
}

ElementSet generated_closure_system(const Lattice& ambient, const std::vector<Index>& d) {
  const std::size_t n = ambient.size();
  ElementSet s(n);
  s.set(ambient.top());
  for (Index g : d) {
    if (g >= n) throw Error("generator index out of range");
    std::vector<Index> cur = s.indices();
    for (Index x : cur) s.set(ambient.meet(x, g));
  }
  return s;
}

Index generated_gamma(const Lattice& ambient, const std::vector<Index>& d, Index a) {
  Index acc = ambient.top();
  for (Index g : d)
    if (ambient.order.leq(a, g)) acc = ambient.meet(acc, g);
  return acc;
}

KeyLemmaReport keylemma_check(const Pomonoid& p, const SetRL& low, const std::vector<Index>& d, bool with_arrow) {
  if (!is_integral(p)) throw ValidationError("integral", {p.unit}, "pomonoid is not integral");
  const ResiduatedLattice& l = low.algebra;
  ElementSet dset(l.size());
  for (Index i : d) dset.set(i);
  KeyLemmaReport r;
  std::vector<Index> principal = low.sets.principal_map();
  for (Index a = 0; a < p.size() && r.hypothesis; ++a)
    for (Index b : d) {
      Index pa = principal[a];
      if (!dset.test(l.ldiv(pa, b))) {
        r.hypothesis = Verdict::fail(p.order.name(a) + "\\" + l.name(b) + " is not in D", {pa, b});
        break;
      }
      if (!dset.test(l.rdiv(b, pa))) {
        r.hypothesis = Verdict::fail(l.name(b) + "/" + p.order.name(a) + " is not in D", {b, pa});
        break;
      }
      if (with_arrow && !dset.test((*l.arrow)(pa, b))) {
        r.hypothesis = Verdict::fail(p.order.name(a) + " -> " + l.name(b) + " is not in D", {pa, b});
        break;
      }
    }
  ElementSet c = generated_closure_system(l.lattice, d);
  r.conclusion = is_nucleus_system(l.view(), c);
  if (r.conclusion && with_arrow)
    for (Index x = 0; x < l.size() && r.conclusion; ++x)
      for (Index b : c.indices())
        if (!c.test((*l.arrow)(x, b))) {
          r.conclusion = Verdict::fail(l.name(x) + " -> " + l.name(b) + " leaves the generated system", {x, b});
          break;
        }
  return r;
}

}  // namespace resq
