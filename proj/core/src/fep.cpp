#include "resq/fep.hpp"

#include <algorithm>
#include <random>

namespace resq {

Subreduct generate_subreduct(const ResiduatedLattice& a, const std::vector<Index>& b, bool use_meet, const Guards& guards) {
  const std::size_t n = a.size();
  ElementSet s(n);
  s.set(a.unit);
  for (Index x : b) {
    if (x >= n) throw ValidationError("subset", {x}, "element out of range");
    s.set(x);
  }
  std::vector<Index> frontier = s.indices();
  while (!frontier.empty()) {
    std::vector<Index> current = s.indices();
    std::vector<Index> next;
    auto add = [&](Index z) {
      if (!s.test(z)) {
        s.set(z);
        next.push_back(z);
      }
    };
    for (Index x : frontier)
      for (Index y : current) {
        add(a.mul(x, y));
        add(a.mul(y, x));
        if (use_meet) add(a.meet(x, y));
      }
    if (s.count() > guards.max_subreduct)
      throw GuardError("subreduct exceeds " + std::to_string(guards.max_subreduct) + " elements");
    frontier = std::move(next);
  }

  Subreduct r;
  r.carrier = s.indices();
  const std::size_t m = r.carrier.size();
  std::vector<Index> local(n, 0);
  for (Index i = 0; i < m; ++i) local[r.carrier[i]] = i;
  Table mult(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) mult.at(i, j) = local[a.mul(r.carrier[i], r.carrier[j])];
  r.monoid = Pomonoid{a.order().induced(r.carrier), std::move(mult), local[a.unit]};
  if (use_meet) {
    r.meet = Table(m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) r.meet.at(i, j) = local[a.meet(r.carrier[i], r.carrier[j])];
    r.has_meet = true;
  }
  return r;
}

DResult build_D(const Pomonoid& p, const SetRL& low, const std::vector<Index>& b, bool with_arrow) {
  const ResiduatedLattice& l = low.algebra;
  if (with_arrow && !l.arrow) throw Error("down-set lattice has no arrow");
  std::vector<Index> principal = low.sets.principal_map();
  ElementSet in(l.size());
  std::vector<Index> frontier;
  for (Index x : b) {
    if (x >= p.size()) throw ValidationError("subset", {x}, "element out of range");
    if (!in.test(principal[x])) {
      in.set(principal[x]);
      frontier.push_back(principal[x]);
    }
  }
  DResult r;
  while (!frontier.empty()) {
    ++r.iterations;
    std::vector<Index> next;
    auto add = [&](Index z) {
      if (!in.test(z)) {
        in.set(z);
        next.push_back(z);
      }
    };
    for (Index m : frontier)
      for (Index a = 0; a < p.size(); ++a) {
        Index pa = principal[a];
        add(l.ldiv(pa, m));
        add(l.rdiv(m, pa));
        if (with_arrow) add((*l.arrow)(pa, m));
      }
    frontier = std::move(next);
  }
  r.members = in.indices();
  return r;
}

namespace {

std::vector<Index> normalized(const ResiduatedLattice& a, std::vector<Index> b) {
  if (b.empty()) throw ValidationError("subset", {}, "subset must be nonempty");
  for (Index x : b)
    if (x >= a.size()) throw ValidationError("subset", {x}, "element out of range");
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

void require_integral(const ResiduatedLattice& a) {
  if (!is_integral(a)) throw ValidationError("integral", {a.unit}, "ambient algebra is not integral");
}

// Everything up to the finite extension; the embedding sends b to the
// closure of its principal ideal in P.
FepCertificate pipeline(const ResiduatedLattice& a, std::vector<Index> b, bool use_meet, bool with_arrow,
                        const Guards& guards) {
  FepCertificate cert;
  cert.with_arrow = with_arrow;
  cert.b = std::move(b);
  cert.p = generate_subreduct(a, cert.b, use_meet, guards);
  cert.low = low_rl(cert.p.monoid, guards);
  std::vector<Index> local(a.size(), 0);
  for (Index i = 0; i < cert.p.carrier.size(); ++i) local[cert.p.carrier[i]] = i;
  std::vector<Index> lb;
  for (Index x : cert.b) lb.push_back(local[x]);
  cert.d = build_D(cert.p.monoid, cert.low, lb, with_arrow);
  ElementSet c = generated_closure_system(cert.low.algebra.lattice, cert.d.members);
  ImageAlgebra img = nucleus_image_algebra(cert.low.algebra, c);
  cert.old = std::move(img.algebra);
  for (Index i : img.to_ambient) cert.old_sets.push_back(cert.low.sets.member(i));
  std::vector<Index> principal = cert.low.sets.principal_map();
  for (Index x : lb) cert.embedding.push_back(img.gamma[principal[x]]);
  return cert;
}

}  // namespace

FepCertificate fep_extend_hrl(const ResiduatedLattice& a, const std::vector<Index>& b, bool with_arrow, const Guards& guards) {
  require_integral(a);
  ResiduatedLattice amb = a;
  if (!amb.arrow) {
    amb.arrow = heyting_arrow_table(amb.lattice);
    if (!amb.arrow) throw ValidationError("heyting", {}, "lattice reduct is not a Heyting algebra");
  }
  Verdict h = check_heyting(amb);
  if (!h) throw ValidationError("heyting", h.witness, h.detail);
  FepCertificate cert = pipeline(amb, normalized(amb, b), true, with_arrow, guards);
  cert.report = verify_embedding(amb, cert, guards);
  return cert;
}

FepCertificate fep_extend_involutive(const ResiduatedLattice& a, Index d, const std::vector<Index>& b,
                                     const Guards& guards) {
  require_integral(a);
  if (d >= a.size() || !is_cyclic_dualizing(a.view(), d))
    throw ValidationError("dualizing", {d}, "not a cyclic dualizing element");
  std::vector<Index> base = normalized(a, b);
  ElementSet s = ElementSet::from_indices(a.size(), base);
  s.set(d);
  s.set(a.unit);
  for (Index x : s.indices()) s.set(a.ldiv(x, d));
  std::vector<Index> closed = s.indices();
  std::vector<Index> added;
  std::set_difference(closed.begin(), closed.end(), base.begin(), base.end(), std::back_inserter(added));

  FepCertificate cert = pipeline(a, closed, false, false, guards);
  cert.involutive = true;
  cert.added = std::move(added);

  std::vector<Index> local(a.size(), 0);
  for (Index i = 0; i < cert.p.carrier.size(); ++i) local[cert.p.carrier[i]] = i;
  Index low_d = cert.low.sets.principal(local[d]);
  Verdict cyc = is_cyclic(cert.low.algebra.view(), low_d);
  if (!cyc) throw ValidationError("cyclic", cyc.witness, "d is not cyclic in the down-set completion: " + cyc.detail);

  Index old_d = cert.embedding[std::lower_bound(cert.b.begin(), cert.b.end(), d) - cert.b.begin()];
  UnaryMap g = gamma_d(cert.old.view(), old_d);
  std::vector<std::string> unfixed;
  for (Index e : cert.embedding)
    if (g[e] != e) unfixed.push_back("embedded element " + cert.old.name(e) + " is not fixed by gamma_d");
  ImageAlgebra img = nucleus_image_algebra(cert.old, image_of(cert.old.size(), g));
  std::vector<ElementSet> sets;
  for (Index i : img.to_ambient) sets.push_back(cert.old_sets[i]);
  for (Index& e : cert.embedding) e = img.gamma[e];
  cert.dualizing = img.gamma[old_d];
  cert.old = std::move(img.algebra);
  cert.old_sets = std::move(sets);

  cert.report = verify_embedding(a, cert, guards);
  for (std::string& u : unfixed) cert.report.failures.push_back(std::move(u));
  if (!is_cyclic_dualizing(cert.old.view(), cert.dualizing)) {
    cert.report.failures.push_back("image of d is not cyclic dualizing in the extension");
  } else {
    Verdict inv = check_involutive_invariants(InvolutiveRL{cert.old, cert.dualizing});
    if (!inv) cert.report.failures.push_back("involutive invariants: " + inv.detail);
  }
  return cert;
}

EmbeddingReport verify_embedding(const ResiduatedLattice& a, const FepCertificate& cert, const Guards& guards) {
  EmbeddingReport r;
  const std::vector<Index>& b = cert.b;
  const std::vector<Index>& e = cert.embedding;
  const ResiduatedLattice& o = cert.old;
  if (b.size() != e.size()) {
    r.failures.push_back("embedding and subset differ in length");
    return r;
  }
  const std::size_t k = b.size();
  std::vector<int> pos(a.size(), -1);
  for (std::size_t i = 0; i < k; ++i) pos[b[i]] = static_cast<int>(i);
  auto name = [&](Index i) { return a.name(b[i]); };

  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      ++r.checks;
      if (a.leq(b[i], b[j]) != o.leq(e[i], e[j])) r.failures.push_back("order between " + name(i) + " and " + name(j));
      if (i < j && e[i] == e[j]) r.failures.push_back("not injective on " + name(i) + ", " + name(j));
    }
  if (pos[a.unit] >= 0) {
    ++r.checks;
    if (e[pos[a.unit]] != o.unit) r.failures.push_back("unit not preserved");
  }

  struct BinOp {
    const char* label;
    Index (*amb)(const ResiduatedLattice&, Index, Index);
  };
  std::vector<BinOp> ops = {
      {"mul", [](const ResiduatedLattice& l, Index x, Index y) { return l.mul(x, y); }},
      {"ldiv", [](const ResiduatedLattice& l, Index x, Index y) { return l.ldiv(x, y); }},
      {"rdiv", [](const ResiduatedLattice& l, Index x, Index y) { return l.rdiv(x, y); }},
      {"meet", [](const ResiduatedLattice& l, Index x, Index y) { return l.meet(x, y); }},
      {"join", [](const ResiduatedLattice& l, Index x, Index y) { return l.join(x, y); }},
  };
  if (!cert.involutive && cert.with_arrow && a.arrow) {
    if (o.arrow)
      ops.push_back({"arrow", [](const ResiduatedLattice& l, Index x, Index y) { return (*l.arrow)(x, y); }});
    else
      r.failures.push_back("extension has no arrow");
  }
  for (const BinOp& op : ops)
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j) {
        Index z = op.amb(a, b[i], b[j]);
        if (pos[z] < 0) continue;
        ++r.checks;
        if (op.amb(o, e[i], e[j]) != e[pos[z]])
          r.failures.push_back(std::string(op.label) + " of " + name(i) + " and " + name(j) + " not preserved");
      }

  auto check_subset = [&](const std::vector<Index>& xs) {
    Index ja = a.bottom(), ma = a.top(), jo = o.bottom(), mo = o.top();
    for (Index i : xs) {
      ja = a.join(ja, b[i]);
      ma = a.meet(ma, b[i]);
      jo = o.join(jo, e[i]);
      mo = o.meet(mo, e[i]);
    }
    std::string label = "{";
    for (std::size_t t = 0; t < xs.size(); ++t) label += (t ? "," : "") + name(xs[t]);
    label += "}";
    if (pos[ja] >= 0) {
      ++r.checks;
      if (jo != e[pos[ja]]) r.failures.push_back("join of " + label + " not preserved");
    }
    if (pos[ma] >= 0) {
      ++r.checks;
      if (mo != e[pos[ma]]) r.failures.push_back("meet of " + label + " not preserved");
    }
  };
  if (k <= guards.exhaustive_subsets) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<Index> xs;
      for (Index i = 0; i < k; ++i)
        if ((mask >> i) & 1) xs.push_back(i);
      check_subset(xs);
    }
  } else {
    std::mt19937_64 rng(0);
    for (int t = 0; t < 4096; ++t) {
      std::vector<Index> xs;
      for (Index i = 0; i < k; ++i)
        if (rng() & 1) xs.push_back(i);
      check_subset(xs);
    }
  }
  return r;
}

bool commutativity_audit(const FepCertificate& cert) { return is_commutative(cert.old.mult); }

bool chain_audit(const FepCertificate& cert) {
  return cert.p.monoid.order.is_chain() && cert.low.algebra.order().is_chain() && cert.old.order().is_chain();
}

std::vector<Index> parse_subset(const Poset& order, const std::string& csv) {
  std::vector<Index> out;
  std::size_t b = 0;
  while (b <= csv.size()) {
    std::size_t e = csv.find(',', b);
    if (e == std::string::npos) e = csv.size();
    std::string tok = csv.substr(b, e - b);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) {
      auto i = order.find(tok);
      if (!i) throw ParseError("unknown element '" + tok + "'");
      out.push_back(*i);
    }
    b = e + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace resq
