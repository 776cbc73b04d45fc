#include "cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "resq/completion.hpp"
#include "resq/fep.hpp"
#include "resq/involutive.hpp"
#include "resq/logic.hpp"
#include "resq/model_search.hpp"
#include "resq/termorder.hpp"
#include "resq/word_problem.hpp"

#ifndef RESQ_VERSION
#define RESQ_VERSION "0.0.0"
#endif

namespace resq::cli {

const char* version() { return RESQ_VERSION; }

std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad duration '" + text + "'");
  }
  std::string unit = text.substr(pos);
  double ms;
  if (unit.empty() || unit == "s") ms = v * 1000;
  else if (unit == "ms") ms = v;
  else if (unit == "m" || unit == "min") ms = v * 60'000;
  else if (unit == "h") ms = v * 3'600'000;
  else throw ParseError("bad duration unit in '" + text + "'");
  if (ms < 0) throw ParseError("negative duration '" + text + "'");
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

namespace {

using io::Json;

struct Options {
  std::string alg, axioms, pres, quasi, sets, subset, out, budget, d, op = "dot", side = "left";
  std::string completion = "dm";
  std::vector<std::string> query, terms;
  std::string r_term, t_term;
  bool dot = false, involutive = false, no_arrow = false, check_completion = false;
  std::size_t jobs = 1, max_size = 4, size = 0, random = 0;
  std::uint64_t seed = 0;
};

struct Outcome {
  int code = kOk;
  std::string status = "ok";
  Json result = Json::object();
  std::optional<std::string> dot;  // emitted instead of the report with --dot
};

class Inputs {
 public:
  std::string read(const std::string& path) {
    std::string text = io::read_file(path);
    bytes_ += text;
    bytes_ += '\0';
    return text;
  }
  void literal(const std::string& s) {
    bytes_ += s;
    bytes_ += '\0';
  }
  std::string digest() const { return io::hex64(io::fnv1a(bytes_)); }

 private:
  std::string bytes_;
};

Json verdict_json(const Verdict& v) {
  Json j = Json::object();
  j["holds"] = v.holds;
  if (!v.holds) {
    j["detail"] = v.detail;
    j["witness"] = v.witness;
  }
  return j;
}

Json rl_json(const ResiduatedLattice& l) {
  Json j = Json::object();
  j["elements"] = l.order().names();
  Json covers = Json::array();
  for (auto [lo, hi] : l.order().covers()) covers.push_back(Json::array({l.name(lo), l.name(hi)}));
  j["covers"] = std::move(covers);
  j["mul"] = io::table_json(l.order(), l.mult);
  j["unit"] = l.name(l.unit);
  j["ldiv"] = io::table_json(l.order(), l.lres);
  j["rdiv"] = io::table_json(l.order(), l.rres);
  if (l.arrow) j["arrow"] = io::table_json(l.order(), *l.arrow);
  return j;
}

Json members_json(const SetLattice& s) {
  Json j = Json::array();
  for (const ElementSet& m : s.members()) j.push_back(io::set_json(s.base(), m));
  return j;
}

Json names(const Poset& p, const std::vector<Index>& idx) {
  Json j = Json::array();
  for (Index i : idx) j.push_back(p.name(i));
  return j;
}

io::AlgebraFile load(Inputs& in, const std::string& path) {
  if (path.empty()) throw ParseError("--alg is required");
  std::string text = in.read(path);
  try {
    return io::parse_algebra(io::parse_json(text, path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const ResiduatedLattice& need_rl(const io::AlgebraFile& a, const std::string& cmd) {
  if (!a.rl) throw ParseError(cmd + " needs a residuated lattice, got a " + io::to_string(a.kind));
  return *a.rl;
}

const Pomonoid& need_monoid(const io::AlgebraFile& a, const std::string& cmd) {
  if (!a.monoid) throw ParseError(cmd + " needs a pomonoid, got a " + io::to_string(a.kind));
  return *a.monoid;
}

Theory load_theory(Inputs& in, const std::string& path) {
  if (path.empty()) throw ParseError("--axioms is required");
  return io::parse_theory(io::parse_json(in.read(path), path));
}

io::PresentationFile load_pres(Inputs& in, const std::string& path) {
  if (path.empty()) throw ParseError("--pres is required");
  return io::parse_presentation(io::parse_json(in.read(path), path));
}

Index element_named(const Poset& p, const std::string& name) {
  auto i = p.find(name);
  if (!i) throw ParseError("unknown element '" + name + "'");
  return *i;
}

Outcome cmd_validate(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  Outcome r;
  r.result["kind"] = io::to_string(a.kind);
  if (a.kind == io::Kind::PartialAlgebra) {
    r.result["size"] = a.partial.size();
    r.result["defined_entries"] = a.partial.defined_entries();
    r.result["total"] = a.partial.is_total();
    return r;
  }
  r.result["size"] = a.order.size();
  r.result["lattice"] = is_lattice(a.order);
  r.result["chain"] = a.order.is_chain();
  if (a.monoid) {
    r.result["residuated"] = is_residuated(*a.monoid);
    r.result["integral"] = is_integral(*a.monoid);
    r.result["commutative"] = is_commutative(a.monoid->mult);
  }
  if (a.rl) {
    const ResiduatedLattice& l = *a.rl;
    Json ax = Json::object();
    for (const AxiomResult& x : check_rl_axioms(l).axioms) ax[x.axiom] = x.verdict.holds;
    r.result["axioms"] = std::move(ax);
    r.result["distributive"] = is_distributive(l.lattice);
    r.result["heyting"] = heyting_arrow_table(l.lattice).has_value();
    std::vector<Index> cyc, dual;
    for (Index x = 0; x < l.size(); ++x) {
      if (is_cyclic(l.view(), x)) cyc.push_back(x);
      if (is_cyclic_dualizing(l.view(), x)) dual.push_back(x);
    }
    r.result["cyclic"] = names(l.order(), cyc);
    r.result["cyclic_dualizing"] = names(l.order(), dual);
  }
  if (o.dot) r.dot = hasse_dot(a.order);
  return r;
}

Outcome cmd_ideals(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  if (a.kind == io::Kind::PartialAlgebra) throw ParseError("ideals needs an ordered structure");
  Outcome r;
  std::vector<ElementSet> ideals = enumerate_order_ideals(a.order);
  r.result["count"] = ideals.size();
  Json list = Json::array();
  for (const ElementSet& s : ideals) list.push_back(io::set_json(a.order, s));
  r.result["ideals"] = std::move(list);
  if (o.dot) r.dot = hasse_dot(all_order_ideals(a.order).lattice().order, "Low");
  return r;
}

Outcome completion_report(const Options& o, Inputs& in, bool dm) {
  io::AlgebraFile a = load(in, o.alg);
  if (a.kind == io::Kind::PartialAlgebra) throw ParseError("completions need an ordered structure");
  SetLattice s = dm ? dm_completion(a.order) : crawley_completion(a.order);
  Outcome r;
  r.result["size"] = s.size();
  r.result["members"] = members_json(s);
  std::vector<Index> map = s.principal_map();
  Json emb = Json::object();
  for (Index x = 0; x < a.order.size(); ++x) emb[a.order.name(x)] = s.lattice().order.name(map[x]);
  r.result["embedding"] = std::move(emb);
  DensityReport dr = density_check(a.order, s.lattice().order, map);
  r.result["order_embedding"] = verdict_json(dr.order_embedding);
  r.result["join_dense"] = verdict_json(dr.join_dense);
  r.result["meet_dense"] = verdict_json(dr.meet_dense);
  if (!dm) {
    FaithfulnessReport f = meet_faithfulness_check(a.order, s.lattice().order, map, o.seed);
    r.result["meet_faithful"] = f.holds();
    r.result["faithfulness_exhaustive"] = f.exhaustive;
  }
  if (dm && a.monoid && residuals_of(*a.monoid)) {
    SetRL rl = dm_rl(*a.monoid);
    r.result["algebra"] = rl_json(rl.algebra);
    r.result["rl_axioms"] = check_rl_axioms(rl.algebra).all_pass();
  }
  if (o.dot) r.dot = hasse_dot(s.lattice().order, dm ? "DM" : "Crawley");
  return r;
}

Outcome cmd_thm35(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  const Pomonoid& p = need_monoid(a, "thm35");
  SetRL low = low_rl(p);
  std::vector<ElementSet> gens;
  for (Index x = 0; x < p.size(); ++x) gens.push_back(p.order.down(x));
  if (!o.sets.empty()) {
    for (const auto& names_ : io::parse_sets(io::parse_json(in.read(o.sets), o.sets))) {
      ElementSet s(p.size());
      for (const std::string& n : names_) s.set(element_named(p.order, n));
      if (!is_down_set(p.order, s)) throw ValidationError("down-set", s.indices(), set_name(p.order, s) + " is not an order ideal");
      gens.push_back(s);
    }
  } else {
    SetLattice c = o.completion == "crawley" ? crawley_completion(p.order)
                   : o.completion == "low"   ? all_order_ideals(p.order)
                                             : dm_completion(p.order);
    if (o.completion != "dm" && o.completion != "crawley" && o.completion != "low")
      throw ParseError("--completion is one of dm, crawley, low");
    gens = c.members();
  }
  SetLattice family = intersection_closure(p.order, gens);
  JoinExtensionWitness w = make_join_extension(p, family.members());
  NucleusReport rep = theorem35_check(w);
  Outcome r;
  r.result["family"] = members_json(family);
  Json cond = Json::array();
  for (const Verdict& v : rep.conditions) cond.push_back(verdict_json(v));
  r.result["conditions"] = std::move(cond);
  r.result["extension"] = verdict_json(rep.extension);
  r.result["agree"] = rep.agree();
  if (!rep.agree()) {
    r.code = kNegative;
    r.status = "disagree";
  }
  return r;
}

Outcome cmd_involutive(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  const ResiduatedLattice& l = need_rl(a, "involutive");
  std::optional<Index> d;
  if (!o.d.empty()) d = element_named(l.order(), o.d);
  else if (a.d) d = a.d;
  else d = find_dualizing_element(l.view());
  Outcome r;
  std::vector<Index> cyc;
  for (Index x = 0; x < l.size(); ++x)
    if (is_cyclic(l.view(), x)) cyc.push_back(x);
  r.result["cyclic"] = names(l.order(), cyc);
  if (!d) {
    r.result["dualizing"] = nullptr;
    r.code = kNegative;
    r.status = "no-dualizing-element";
    return r;
  }
  r.result["dualizing"] = l.name(*d);
  Verdict cyclic = is_cyclic(l.view(), *d);
  r.result["d_cyclic"] = verdict_json(cyclic);
  if (!cyclic) {
    r.code = kNegative;
    r.status = "not-cyclic";
    return r;
  }
  UnaryMap g = gamma_d(l.view(), *d);
  Json gj = Json::object();
  for (Index x = 0; x < l.size(); ++x) gj[l.name(x)] = l.name(g[x]);
  r.result["gamma"] = std::move(gj);
  Verdict nuc = is_nucleus(l.view(), g);
  r.result["nucleus"] = verdict_json(nuc);
  r.result["image"] = io::set_json(l.order(), image_of(l.size(), g));
  bool dual = is_cyclic_dualizing(l.view(), *d);
  r.result["d_dualizing"] = dual;
  bool ok = nuc.holds;
  if (dual) {
    Theorem44Report t = theorem44_check(l.pomonoid(), *d);
    Json tj = Json::object();
    tj["d_cyclic_in_completion"] = verdict_json(t.d_cyclic_in_completion);
    tj["images_fixed"] = verdict_json(t.images_fixed);
    tj["join_dense"] = verdict_json(t.join_dense);
    tj["meet_dense"] = verdict_json(t.meet_dense);
    tj["product_preserved"] = verdict_json(t.product_preserved);
    tj["residuals_preserved"] = verdict_json(t.residuals_preserved);
    tj["completion_size"] = t.completion_size;
    tj["dm_size"] = t.dm_size;
    r.result["completion"] = std::move(tj);
    ok = ok && t.holds();
  } else if (o.check_completion) {
    r.code = kNegative;
    r.status = "not-dualizing";
    return r;
  }
  if (!ok) {
    r.code = kNegative;
    r.status = "check-failed";
  }
  return r;
}

Outcome cmd_fep(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  const ResiduatedLattice& l = need_rl(a, "fep");
  if (o.subset.empty()) throw ParseError("--subset is required");
  in.literal(o.subset);
  std::vector<Index> b = parse_subset(l.order(), o.subset);
  FepCertificate cert;
  if (o.involutive) {
    std::optional<Index> d;
    if (!o.d.empty()) d = element_named(l.order(), o.d);
    else if (a.d) d = a.d;
    else d = find_dualizing_element(l.view());
    if (!d) throw ValidationError("dualizing", {}, "no cyclic dualizing element");
    cert = fep_extend_involutive(l, *d, b);
  } else {
    cert = fep_extend_hrl(l, b, !o.no_arrow);
  }
  Outcome r;
  r.result["mode"] = o.involutive ? "involutive" : "heyting";
  r.result["b"] = names(l.order(), cert.b);
  r.result["added"] = names(l.order(), cert.added);
  r.result["p"] = names(l.order(), cert.p.carrier);
  r.result["d_size"] = cert.d.members.size();
  r.result["d_iterations"] = cert.d.iterations;
  r.result["extension"] = rl_json(cert.old);
  Json emb = Json::object();
  for (std::size_t i = 0; i < cert.b.size(); ++i) emb[l.name(cert.b[i])] = cert.old.name(cert.embedding[i]);
  r.result["embedding"] = std::move(emb);
  if (o.involutive) r.result["dualizing"] = cert.old.name(cert.dualizing);
  r.result["checks"] = cert.report.checks;
  r.result["failures"] = cert.report.failures;
  r.result["distributive"] = is_distributive(cert.old.lattice);
  if (is_commutative(l.mult)) r.result["commutativity_audit"] = commutativity_audit(cert);
  if (l.order().is_chain()) r.result["chain_audit"] = chain_audit(cert);
  bool ok = cert.report.holds();
  if (is_commutative(l.mult)) ok = ok && commutativity_audit(cert);
  if (l.order().is_chain()) ok = ok && chain_audit(cert);
  if (!ok) {
    r.code = kNegative;
    r.status = "check-failed";
  }
  if (o.dot) r.dot = hasse_dot(cert.old.order(), "FEP");
  return r;
}

Json model_json(const PartialAlgebra& m) { return io::to_json(m); }

Outcome cmd_models(const Options& o, Inputs& in) {
  Theory th = load_theory(in, o.axioms);
  Outcome r;
  if (!o.quasi.empty()) {
    QuasiEquation q = io::parse_quasi(th.sig, io::parse_json(in.read(o.quasi), o.quasi));
    SearchOptions so;
    so.min_size = o.size ? o.size : 1;
    so.max_size = o.size ? o.size : o.max_size;
    so.jobs = o.jobs;
    if (!o.budget.empty()) so.deadline = Clock::now() + parse_duration(o.budget);
    SearchResult res = countermodel_search(th, q, so);
    r.result["complete"] = res.complete;
    if (res.found) {
      r.result["size"] = res.found->model.size();
      r.result["model"] = model_json(res.found->model);
      Json as = Json::object();
      for (const auto& [k, v] : res.found->assignment) as[k] = res.found->model.name(v);
      r.result["assignment"] = std::move(as);
      r.status = "countermodel";
    } else {
      r.result["size"] = nullptr;
      r.code = kUnknown;
      r.status = res.complete ? "exhausted" : "budget";
    }
    return r;
  }
  std::size_t lo = o.size ? o.size : 1, hi = o.size ? o.size : o.max_size;
  Json counts = Json::object();
  Json models = Json::array();
  for (std::size_t n = lo; n <= hi; ++n) {
    std::vector<PartialAlgebra> ms = enumerate_algebras(th, n, o.jobs);
    counts[std::to_string(n)] = ms.size();
    for (const PartialAlgebra& m : ms) models.push_back(model_json(m));
  }
  r.result["counts"] = std::move(counts);
  r.result["models"] = std::move(models);
  return r;
}

Outcome cmd_wp(const Options& o, Inputs& in) {
  Theory th = load_theory(in, o.axioms);
  io::PresentationFile p = load_pres(in, o.pres);
  if (!(p.sig == th.sig)) throw ParseError("presentation and axioms use different signatures");
  if (o.query.size() != 2) throw ParseError("--query takes two terms");
  for (const std::string& q : o.query) in.literal(q);
  Term s = parse_term(th.sig, o.query[0]), t = parse_term(th.sig, o.query[1]);
  WordProblemOptions wo;
  wo.deadline = Clock::now() + parse_duration(o.budget.empty() ? "10s" : o.budget);
  wo.max_size = o.max_size;
  WordProblemResult res = word_problem(th, p.pres, s, t, wo);
  Outcome r;
  r.status = to_string(res.verdict);
  r.result["verdict"] = to_string(res.verdict);
  if (res.verdict == WordProblemResult::Verdict::Equal) {
    r.result["depth"] = res.depth;
    r.result["trace"] = res.trace;
  } else if (res.verdict == WordProblemResult::Verdict::Distinct) {
    r.result["size"] = res.model->model.size();
    r.result["model"] = model_json(res.model->model);
    Json as = Json::object();
    for (const std::string& g : p.pres.vars) as[g] = res.model->model.name(res.model->assignment.at(g));
    r.result["tuple"] = std::move(as);
    r.code = kNegative;
  } else {
    r.code = kUnknown;
  }
  return r;
}

Outcome cmd_flatten(const Options& o, Inputs& in) {
  io::PresentationFile p = load_pres(in, o.pres);
  io::PresentationFile f{p.sig, flatten(p.sig, p.pres)};
  Outcome r;
  r.result["flat"] = is_flat(f.sig, f.pres);
  r.result["presentation"] = io::to_json(f);
  return r;
}

Outcome cmd_diagram(const Options& o, Inputs& in) {
  io::AlgebraFile a = load(in, o.alg);
  PartialAlgebra b;
  if (a.kind == io::Kind::PartialAlgebra) {
    b = a.partial;
  } else if (a.rl) {
    Signature sig{{"meet", 2}, {"join", 2}, {"mul", 2}, {"ldiv", 2}, {"rdiv", 2}, {"one", 0}};
    if (a.rl->arrow) sig.add("arrow", 2);
    b = to_partial_algebra(*a.rl, sig);
  } else {
    throw ParseError("diagram needs a partial algebra or a residuated lattice");
  }
  Hat hat = default_hat(b);
  Presentation pres = free_over_partial(b, hat);
  Outcome r;
  Json eqs = Json::array();
  for (const Equation& e : pres.relations) eqs.push_back(to_string(b.signature(), e));
  r.result["hat"] = hat;
  r.result["diagram"] = std::move(eqs);
  r.result["presentation"] = io::to_json(io::PresentationFile{b.signature(), pres});
  return r;
}

Op parse_op(const std::string& s) {
  if (s == "dot" || s == "mul") return Op::Dot;
  if (s == "wedge" || s == "meet") return Op::Wedge;
  throw ParseError("--op is dot or wedge");
}

Outcome cmd_f_order(const Options& o, Inputs& in) {
  Outcome r;
  if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    std::size_t refl = 0, anti = 0, trans = 0;
    for (std::size_t i = 0; i < o.random; ++i) {
      FElement s = random_term(rng, 6, 3), t = random_term(rng, 6, 3), u = random_term(rng, 6, 3);
      DivisibilityOrder ord;
      if (!ord.leq(s, s)) ++refl;
      bool st = ord.leq(s, t), ts = ord.leq(t, s), tu = ord.leq(t, u);
      if (st && ts && s != t) ++anti;
      if (st && tu && !ord.leq(s, u)) ++trans;
    }
    r.result["triples"] = o.random;
    r.result["seed"] = o.seed;
    r.result["reflexivity_failures"] = refl;
    r.result["antisymmetry_failures"] = anti;
    r.result["transitivity_failures"] = trans;
    if (refl + anti + trans > 0) {
      r.code = kNegative;
      r.status = "counterexample";
    }
    return r;
  }
  if (o.terms.size() != 2) throw ParseError("f-order takes two terms");
  for (const std::string& t : o.terms) in.literal(t);
  FElement s = FElement::parse(o.terms[0]), t = FElement::parse(o.terms[1]);
  bool leq = leq_c(s, t);
  r.result["s"] = s.to_string();
  r.result["t"] = t.to_string();
  r.result["leq"] = leq;
  if (!leq) {
    r.code = kNegative;
    r.status = "not-below";
  }
  return r;
}

Outcome cmd_f_res(const Options& opts, Inputs& in) {
  Options o = opts;
  if (o.terms.empty() && !o.r_term.empty() && !o.t_term.empty()) o.terms = {o.r_term, o.t_term};
  if (o.terms.size() != 2) throw ParseError("f-res takes two terms");
  for (const std::string& t : o.terms) in.literal(t);
  in.literal(o.op + "/" + o.side);
  FElement rr = FElement::parse(o.terms[0]), t = FElement::parse(o.terms[1]);
  Op op = parse_op(o.op);
  if (o.side != "left" && o.side != "right") throw ParseError("--side is left or right");
  Side side = o.side == "left" ? Side::Left : Side::Right;
  FElement res = residual_f(rr, t, op, side);
  FElement back = side == Side::Left ? FElement::make(op, rr, res) : FElement::make(op, res, rr);
  Outcome r;
  r.result["r"] = rr.to_string();
  r.result["t"] = t.to_string();
  r.result["op"] = op == Op::Dot ? "dot" : "wedge";
  r.result["side"] = o.side;
  r.result["residual"] = res.to_string();
  r.result["below_t"] = leq_c(back, t);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residuated structures: completions, finite embeddings and finite models", "resq"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Write the report to this file");
    c->add_flag("--dot", o.dot, "Emit a covers-only DOT graph instead of the report");
    c->add_option("--jobs", o.jobs, "Worker threads for model enumeration")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "Seed for randomized checks");
  };
  std::map<std::string, Outcome (*)(const Options&, Inputs&)> handlers;
  auto sub = [&](const char* name, const char* desc, Outcome (*h)(const Options&, Inputs&)) {
    CLI::App* c = app.add_subcommand(name, desc);
    add_common(c);
    handlers[name] = h;
    return c;
  };

  sub("validate", "Parse an algebra file and run its invariants", cmd_validate)->add_option("alg,--alg", o.alg)->required();
  sub("ideals", "List the order ideals of a poset", cmd_ideals)->add_option("alg,--alg", o.alg)->required();
  sub("dm", "Dedekind-MacNeille completion", [](const Options& x, Inputs& in) { return completion_report(x, in, true); })
      ->add_option("alg,--alg", o.alg)
      ->required();
  sub("crawley", "Crawley completion", [](const Options& x, Inputs& in) { return completion_report(x, in, false); })
      ->add_option("alg,--alg", o.alg)
      ->required();
  {
    CLI::App* c = sub("thm35", "Compare the four nucleus conditions on a join-extension", cmd_thm35);
    c->add_option("alg,--alg,--poset", o.alg)->required();
    c->add_option("--sets,--system", o.sets, "Down-sets generating the closure system");
    c->add_option("--completion", o.completion, "dm, crawley or low when --sets is absent");
  }
  {
    CLI::App* c = sub("involutive", "Cyclic dualizing elements and the double-negation nucleus", cmd_involutive);
    c->add_option("alg,--alg", o.alg)->required();
    c->add_option("--d", o.d, "Dualizing element");
    c->add_flag("--check-thm44", o.check_completion, "Fail unless d is cyclic dualizing");
  }
  {
    CLI::App* c = sub("fep", "Finite extension of a finite partial subalgebra", cmd_fep);
    c->add_option("alg,--alg", o.alg)->required();
    c->add_option("--subset", o.subset, "Comma separated elements of B")->required();
    c->add_flag("--involutive", o.involutive, "Involutive construction");
    c->add_option("--d", o.d, "Dualizing element for --involutive");
    c->add_flag("--no-arrow", o.no_arrow, "Ignore the Heyting arrow");
  }
  {
    CLI::App* c = sub("models", "Enumerate models or search for a countermodel", cmd_models);
    c->add_option("--axioms", o.axioms)->required();
    c->add_option("--quasi", o.quasi, "Quasi-equation to refute");
    c->add_option("--max-size,--max", o.max_size, "Largest carrier")->check(CLI::PositiveNumber);
    c->add_option("--size", o.size, "Exactly this carrier size")->check(CLI::PositiveNumber);
    c->add_option("--budget", o.budget, "Time limit for countermodel search");
  }
  {
    CLI::App* c = sub("wp", "Word problem for a finite presentation", cmd_wp);
    c->add_option("--axioms", o.axioms)->required();
    c->add_option("--pres", o.pres)->required();
    c->add_option("--query", o.query, "Two terms")->expected(2)->required();
    c->add_option("--budget", o.budget, "Time limit, e.g. 10s or 500ms");
    c->add_option("--max-size,--max", o.max_size, "Largest countermodel")->check(CLI::PositiveNumber);
  }
  sub("flatten", "Flat presentation of the same algebra", cmd_flatten)->add_option("pres,--pres", o.pres)->required();
  sub("diagram", "Diagram of a finite partial algebra", cmd_diagram)->add_option("alg,--alg", o.alg)->required();
  {
    CLI::App* c = sub("f-order", "Divisibility order on free terms", cmd_f_order);
    c->add_option("terms,--leq", o.terms, "s t")->expected(2);
    c->add_option("--random", o.random, "Check the order axioms on this many random triples");
  }
  {
    CLI::App* c = sub("f-res", "Residual of free terms", cmd_f_res);
    c->add_option("terms", o.terms, "r t")->expected(2);
    c->add_option("--r", o.r_term, "The term r");
    c->add_option("--t", o.t_term, "The term t");
    c->add_option("--op", o.op, "dot or wedge");
    c->add_option("--side", o.side, "left or right");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "resq: " << e.what() << "\n";
    return kUsage;
  }
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();

  Inputs in;
  in.literal(name);
  try {
    Outcome r = handlers.at(name)(o, in);
    std::string text;
    if (o.dot && r.dot) {
      text = *r.dot;
    } else {
      io::Report rep{name, r.status, in.digest(), r.result};
      text = io::render(rep, version());
    }
    if (!o.out.empty()) {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw ParseError("cannot write '" + o.out + "'");
      f << text;
    } else {
      out << text;
    }
    return r.code;
  } catch (const ValidationError& e) {
    err << "resq: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const GuardError& e) {
    err << "resq: size guard: " << e.what() << "\n";
    return kGuard;
  } catch (const ParseError& e) {
    err << "resq: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "resq: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace resq::cli
