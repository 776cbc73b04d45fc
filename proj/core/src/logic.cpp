#include "resq/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace resq {

Signature::Signature(std::initializer_list<Symbol> symbols) {
  for (const Symbol& s : symbols) add(s.name, s.arity);
}

std::size_t Signature::add(const std::string& name, std::size_t arity) {
  if (name.empty()) throw ValidationError("signature", {}, "empty symbol name");
  if (find(name)) throw ValidationError("signature", {}, "duplicate symbol '" + name + "'");
  symbols_.push_back(Symbol{name, arity});
  return symbols_.size() - 1;
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::operator==(const Signature& o) const {
  if (symbols_.size() != o.symbols_.size()) return false;
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name != o.symbols_[i].name || symbols_[i].arity != o.symbols_[i].arity) return false;
  return true;
}

struct Term::Node {
  bool var = false;
  std::string name;
  std::size_t sym = 0;
  std::vector<Term> args;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

Term Term::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->var = true;
  n->name = name;
  n->hash = std::hash<std::string>()(name) ^ 0x5bd1e995;
  return Term(std::move(n));
}

Term Term::app(std::size_t symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->sym = symbol;
  std::size_t h = 0xcbf29ce484222325ULL ^ symbol;
  for (const Term& a : args) {
    if (!a.valid()) throw std::invalid_argument("null term argument");
    n->depth = std::max(n->depth, a.depth() + 1);
    h = (h ^ a.hash()) * 0x100000001b3ULL;
  }
  n->hash = h;
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->var; }
const std::string& Term::name() const { return node_->name; }
std::size_t Term::symbol() const { return node_->sym; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash || node_->var != o.node_->var) return false;
  if (node_->var) return node_->name == o.node_->name;
  return node_->sym == o.node_->sym && node_->args == o.node_->args;
}

bool Term::operator<(const Term& o) const {
  if (node_ == o.node_) return false;
  if (is_var() != o.is_var()) return is_var();
  if (is_var()) return name() < o.name();
  if (symbol() != o.symbol()) return symbol() < o.symbol();
  return std::lexicographical_compare(args().begin(), args().end(), o.args().begin(), o.args().end());
}

namespace {

struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> items;
};

class SExprParser {
 public:
  explicit SExprParser(const std::string& s) : s_(s) {}
  SExpr parse_all() {
    SExpr e = parse();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("term '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  SExpr parse() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == ')') fail("unexpected ')'");
    SExpr e;
    if (s_[pos_] == '(') {
      ++pos_;
      e.atom = false;
      skip();
      while (pos_ < s_.size() && s_[pos_] != ')') {
        e.items.push_back(parse());
        skip();
      }
      if (pos_ >= s_.size()) fail("expected ')'");
      ++pos_;
      if (e.items.empty()) fail("empty list");
      return e;
    }
    std::size_t b = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    e.text = s_.substr(b, pos_ - b);
    return e;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Term build(const Signature& sig, const SExpr& e, const std::string& src) {
  if (e.atom) {
    auto s = sig.find(e.text);
    if (s) {
      if (sig[*s].arity != 0)
        throw ParseError("term '" + src + "': symbol '" + e.text + "' used without its " + std::to_string(sig[*s].arity) +
                         " arguments");
      return Term::app(*s, {});
    }
    return Term::var(e.text);
  }
  if (!e.items[0].atom) throw ParseError("term '" + src + "': operator position holds a list");
  auto s = sig.find(e.items[0].text);
  if (!s) throw ParseError("term '" + src + "': unknown operation '" + e.items[0].text + "'");
  if (sig[*s].arity != e.items.size() - 1)
    throw ParseError("term '" + src + "': '" + e.items[0].text + "' expects " + std::to_string(sig[*s].arity) + " arguments");
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(build(sig, e.items[i], src));
  return Term::app(*s, std::move(args));
}

}  // namespace

Term parse_term(const Signature& sig, const std::string& text) { return build(sig, SExprParser(text).parse_all(), text); }

std::string to_string(const Signature& sig, const Term& t) {
  if (t.is_var()) return t.name();
  if (t.args().empty()) return sig[t.symbol()].name;
  std::string s = "(" + sig[t.symbol()].name;
  for (const Term& a : t.args()) s += " " + to_string(sig, a);
  return s + ")";
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

Term substitute(const Term& t, const std::map<std::string, Term>& s) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(substitute(a, s));
  return Term::app(t.symbol(), std::move(args));
}

Equation parse_equation(const Signature& sig, const std::string& text) {
  int depth = 0;
  std::size_t at = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '=' && depth == 0) {
      if (at != std::string::npos) throw ParseError("equation '" + text + "' has more than one '='");
      at = i;
    }
  }
  if (at == std::string::npos) throw ParseError("equation '" + text + "' has no '='");
  return Equation{parse_term(sig, text.substr(0, at)), parse_term(sig, text.substr(at + 1))};
}

std::string to_string(const Signature& sig, const Equation& e) {
  return to_string(sig, e.lhs) + " = " + to_string(sig, e.rhs);
}

std::vector<std::string> vars_of(const Equation& e) {
  std::vector<std::string> v;
  collect_vars(e.lhs, v);
  collect_vars(e.rhs, v);
  return v;
}

std::vector<std::string> vars_of(const QuasiEquation& q) {
  std::vector<std::string> v;
  for (const Equation& e : q.premises) {
    collect_vars(e.lhs, v);
    collect_vars(e.rhs, v);
  }
  collect_vars(q.conclusion.lhs, v);
  collect_vars(q.conclusion.rhs, v);
  return v;
}

PartialAlgebra::PartialAlgebra(Signature sig, std::vector<std::string> elements)
    : sig_(std::move(sig)), elements_(std::move(elements)) {
  std::set<std::string> seen;
  for (const std::string& e : elements_)
    if (!seen.insert(e).second) throw ValidationError("elements", {}, "duplicate element '" + e + "'");
  for (const Symbol& s : sig_.symbols()) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < s.arity; ++k) cells *= elements_.size();
    tables_.emplace_back(cells, kAbsent);
  }
}

std::optional<Index> PartialAlgebra::find(const std::string& name) const {
  for (Index i = 0; i < elements_.size(); ++i)
    if (elements_[i] == name) return i;
  return std::nullopt;
}

std::size_t PartialAlgebra::cell_of(const std::vector<Index>& args) const {
  std::size_t c = 0;
  for (Index a : args) c = c * elements_.size() + a;
  return c;
}

std::vector<Index> PartialAlgebra::args_of(std::size_t symbol, std::size_t cell) const {
  std::vector<Index> args(sig_[symbol].arity);
  for (std::size_t k = args.size(); k-- > 0;) {
    args[k] = static_cast<Index>(cell % elements_.size());
    cell /= elements_.size();
  }
  return args;
}

std::optional<Index> PartialAlgebra::get(std::size_t symbol, const std::vector<Index>& args) const {
  Index v = tables_.at(symbol).at(cell_of(args));
  if (v == kAbsent) return std::nullopt;
  return v;
}

void PartialAlgebra::set(std::size_t symbol, const std::vector<Index>& args, std::optional<Index> value) {
  if (args.size() != sig_[symbol].arity) throw std::invalid_argument("arity mismatch");
  for (Index a : args)
    if (a >= size()) throw std::out_of_range("argument out of range");
  set_raw(symbol, cell_of(args), value ? *value : kAbsent);
}

void PartialAlgebra::set_raw(std::size_t symbol, std::size_t cell, Index value) {
  if (value != kAbsent && value >= size()) throw std::out_of_range("value out of range");
  tables_.at(symbol).at(cell) = value;
}

bool PartialAlgebra::is_total() const {
  for (const auto& t : tables_)
    if (std::find(t.begin(), t.end(), kAbsent) != t.end()) return false;
  return true;
}

std::size_t PartialAlgebra::defined_entries() const {
  std::size_t c = 0;
  for (const auto& t : tables_) c += t.size() - std::count(t.begin(), t.end(), kAbsent);
  return c;
}

bool PartialAlgebra::operator==(const PartialAlgebra& o) const {
  return sig_ == o.sig_ && elements_ == o.elements_ && tables_ == o.tables_;
}

std::optional<Index> evaluate(const PartialAlgebra& a, const Assignment& v, const Term& t) {
  if (t.is_var()) {
    auto it = v.find(t.name());
    if (it == v.end()) throw Error("unbound variable '" + t.name() + "'");
    if (it->second >= a.size()) throw std::out_of_range("assignment out of range");
    return it->second;
  }
  std::size_t cell = 0;
  for (const Term& arg : t.args()) {
    auto x = evaluate(a, v, arg);
    if (!x) return std::nullopt;
    cell = cell * a.size() + *x;
  }
  Index r = a.raw(t.symbol(), cell);
  if (r == kAbsent) return std::nullopt;
  return r;
}

bool satisfies(const PartialAlgebra& a, const Assignment& v, const Equation& e) {
  auto l = evaluate(a, v, e.lhs);
  if (!l) return false;
  auto r = evaluate(a, v, e.rhs);
  return r && *l == *r;
}

bool satisfies(const PartialAlgebra& a, const Assignment& v, const QuasiEquation& q) {
  for (const Equation& p : q.premises)
    if (!satisfies(a, v, p)) return true;
  return satisfies(a, v, q.conclusion);
}

namespace {

// Calls f on each assignment of vars into 0..n-1; stops when f returns false.
bool for_each_assignment(const std::vector<std::string>& vars, std::size_t n, const std::function<bool(const Assignment&)>& f) {
  Assignment v;
  for (const std::string& x : vars) v[x] = 0;
  if (n == 0) return vars.empty() ? f(v) : true;
  while (true) {
    if (!f(v)) return false;
    std::size_t k = vars.size();
    while (k > 0) {
      Index& slot = v[vars[k - 1]];
      if (++slot < n) break;
      slot = 0;
      --k;
    }
    if (k == 0) return true;
  }
}

}  // namespace

bool holds(const PartialAlgebra& a, const Equation& e) {
  return for_each_assignment(vars_of(e), a.size(), [&](const Assignment& v) { return satisfies(a, v, e); });
}

bool holds(const PartialAlgebra& a, const QuasiEquation& q) { return !failing_assignment(a, q); }

std::optional<Assignment> failing_assignment(const PartialAlgebra& a, const QuasiEquation& q) {
  std::optional<Assignment> out;
  for_each_assignment(vars_of(q), a.size(), [&](const Assignment& v) {
    if (satisfies(a, v, q)) return true;
    out = v;
    return false;
  });
  return out;
}

Hat default_hat(const PartialAlgebra& b) {
  Hat h;
  for (Index i = 0; i < b.size(); ++i) {
    const std::string& n = b.name(i);
    bool plain = !n.empty() && std::all_of(n.begin(), n.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '.';
    });
    h.push_back(plain ? "^" + n : "^" + std::to_string(i));
  }
  return h;
}

std::vector<Equation> diagram(const PartialAlgebra& b, const Hat& hat) {
  if (hat.size() != b.size()) throw std::invalid_argument("naming has the wrong length");
  std::set<std::string> names(hat.begin(), hat.end());
  if (names.size() != hat.size()) throw ValidationError("hat", {}, "naming is not injective");
  std::vector<Equation> d;
  for (std::size_t s = 0; s < b.signature().size(); ++s)
    for (std::size_t c = 0; c < b.cells(s); ++c) {
      Index v = b.raw(s, c);
      if (v == kAbsent) continue;
      std::vector<Term> args;
      for (Index x : b.args_of(s, c)) args.push_back(Term::var(hat[x]));
      d.push_back(Equation{Term::app(s, std::move(args)), Term::var(hat[v])});
    }
  return d;
}

QuasiEquation q_bb(const PartialAlgebra& b, const Hat& hat, Index x, Index y) {
  if (x == y) throw ValidationError("distinct", {x, y}, "q_bb needs two different elements");
  if (x >= b.size() || y >= b.size()) throw std::out_of_range("element out of range");
  return QuasiEquation{diagram(b, hat), Equation{Term::var(hat[x]), Term::var(hat[y])}};
}

Assignment canonical_assignment(const Hat& hat, const std::vector<Index>& into) {
  if (hat.size() != into.size()) throw std::invalid_argument("naming and map differ in length");
  Assignment v;
  for (std::size_t i = 0; i < hat.size(); ++i) v[hat[i]] = into[i];
  return v;
}

Index product_index(const std::vector<PartialAlgebra>& factors, const std::vector<Index>& tuple) {
  Index r = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) r = static_cast<Index>(r * factors[i].size() + tuple[i]);
  return r;
}

PartialAlgebra product(const std::vector<PartialAlgebra>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  for (const PartialAlgebra& f : factors)
    if (f.signature() != factors[0].signature()) throw Error("product factors have different signatures");
  if (factors.size() == 1) return factors[0];
  std::size_t n = 1;
  for (const PartialAlgebra& f : factors) n *= f.size();
  std::vector<std::vector<Index>> tuples(n, std::vector<Index>(factors.size()));
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (std::size_t k = factors.size(); k-- > 0;) {
      tuples[i][k] = static_cast<Index>(rest % factors[k].size());
      rest /= factors[k].size();
    }
    std::string s = "(";
    for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? "," : "") + factors[k].name(tuples[i][k]);
    names[i] = s + ")";
  }
  const Signature& sig = factors[0].signature();
  PartialAlgebra p(sig, std::move(names));
  for (std::size_t s = 0; s < sig.size(); ++s)
    for (std::size_t c = 0; c < p.cells(s); ++c) {
      std::vector<Index> args = p.args_of(s, c);
      std::vector<Index> value(factors.size());
      bool defined = true;
      for (std::size_t k = 0; k < factors.size() && defined; ++k) {
        std::vector<Index> comp;
        for (Index a : args) comp.push_back(tuples[a][k]);
        auto v = factors[k].get(s, comp);
        if (!v) defined = false;
        else value[k] = *v;
      }
      if (defined) p.set_raw(s, c, product_index(factors, value));
    }
  return p;
}

PartialAlgebra full_restriction(const PartialAlgebra& a, const std::vector<Index>& s) {
  std::vector<int> pos(a.size(), -1);
  std::vector<std::string> names;
  for (Index x : s) {
    if (x >= a.size()) throw std::out_of_range("element out of range");
    if (pos[x] >= 0) throw ValidationError("subset", {x}, "repeated element");
    pos[x] = static_cast<int>(names.size());
    names.push_back(a.name(x));
  }
  PartialAlgebra r(a.signature(), std::move(names));
  for (std::size_t sym = 0; sym < a.signature().size(); ++sym)
    for (std::size_t c = 0; c < r.cells(sym); ++c) {
      std::vector<Index> args;
      for (Index x : r.args_of(sym, c)) args.push_back(s[x]);
      auto v = a.get(sym, args);
      if (v && pos[*v] >= 0) r.set_raw(sym, c, static_cast<Index>(pos[*v]));
    }
  return r;
}

bool is_homomorphism(const std::vector<Index>& phi, const PartialAlgebra& p, const PartialAlgebra& q) {
  if (phi.size() != p.size() || p.signature() != q.signature()) return false;
  for (Index x : phi)
    if (x >= q.size()) return false;
  for (std::size_t s = 0; s < p.signature().size(); ++s)
    for (std::size_t c = 0; c < p.cells(s); ++c) {
      Index v = p.raw(s, c);
      if (v == kAbsent) continue;
      std::vector<Index> args;
      for (Index x : p.args_of(s, c)) args.push_back(phi[x]);
      auto w = q.get(s, args);
      if (!w || *w != phi[v]) return false;
    }
  return true;
}

bool is_full_embedding(const std::vector<Index>& phi, const PartialAlgebra& p, const PartialAlgebra& q) {
  if (!is_homomorphism(phi, p, q)) return false;
  std::vector<int> pre(q.size(), -1);
  for (Index i = 0; i < phi.size(); ++i) {
    if (pre[phi[i]] >= 0) return false;
    pre[phi[i]] = static_cast<int>(i);
  }
  for (std::size_t s = 0; s < q.signature().size(); ++s)
    for (std::size_t c = 0; c < q.cells(s); ++c) {
      Index v = q.raw(s, c);
      if (v == kAbsent || pre[v] < 0) continue;
      std::vector<Index> args = q.args_of(s, c);
      std::vector<Index> back;
      bool inside = true;
      for (Index x : args) {
        if (pre[x] < 0) inside = false;
        else back.push_back(static_cast<Index>(pre[x]));
      }
      if (inside && p.get(s, back) != std::optional<Index>(static_cast<Index>(pre[v]))) return false;
    }
  return true;
}

namespace {

bool flat_side(const Term& app, const Term& var) {
  if (!var.is_var() || app.is_var()) return false;
  return std::all_of(app.args().begin(), app.args().end(), [](const Term& t) { return t.is_var(); });
}

}  // namespace

bool is_flat(const Signature&, const Presentation& p) {
  for (const Equation& e : p.relations)
    if (!flat_side(e.lhs, e.rhs) && !flat_side(e.rhs, e.lhs)) return false;
  return true;
}

Presentation flatten(const Signature& sig, const Presentation& p) {
  std::set<std::string> used(p.vars.begin(), p.vars.end());
  for (const Equation& e : p.relations)
    for (const std::string& v : vars_of(e))
      if (!used.count(v)) throw ValidationError("presentation", {}, "relation variable '" + v + "' is not a generator");
  for (const std::string& v : p.vars)
    if (sig.find(v)) throw ValidationError("presentation", {}, "generator '" + v + "' clashes with a symbol");

  std::size_t counter = 0;
  std::set<std::string> fresh_names;
  auto fresh = [&] {
    std::string n;
    do n = "#" + std::to_string(++counter);
    while (used.count(n));
    used.insert(n);
    fresh_names.insert(n);
    return n;
  };

  struct Def {
    std::size_t sym;
    std::vector<std::string> args;
    std::string value;
  };
  std::vector<Def> defs;
  std::vector<std::pair<std::string, std::string>> same;
  std::map<std::pair<std::size_t, std::vector<std::string>>, std::string> memo;

  auto define = [&](std::size_t sym, std::vector<std::string> args, const std::optional<std::string>& target) {
    auto key = std::make_pair(sym, args);
    auto it = memo.find(key);
    if (it != memo.end()) {
      if (target && *target != it->second) same.emplace_back(it->second, *target);
      return it->second;
    }
    std::string v = target ? *target : fresh();
    memo.emplace(key, v);
    defs.push_back(Def{sym, std::move(args), v});
    return v;
  };
  std::function<std::string(const Term&)> name = [&](const Term& t) -> std::string {
    if (t.is_var()) return t.name();
    std::vector<std::string> args;
    for (const Term& a : t.args()) args.push_back(name(a));
    return define(t.symbol(), std::move(args), std::nullopt);
  };
  auto name_into = [&](const Term& app, const std::string& target) {
    std::vector<std::string> args;
    for (const Term& a : app.args()) args.push_back(name(a));
    define(app.symbol(), std::move(args), target);
  };

  for (const Equation& e : p.relations) {
    if (e.lhs.is_var() && e.rhs.is_var())
      same.emplace_back(e.lhs.name(), e.rhs.name());
    else if (e.rhs.is_var())
      name_into(e.lhs, e.rhs.name());
    else if (e.lhs.is_var())
      name_into(e.rhs, e.lhs.name());
    else
      same.emplace_back(name(e.lhs), name(e.rhs));
  }

  // Elimination keeps generators over fresh names, earlier over later.
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < p.vars.size(); ++i) rank.emplace(p.vars[i], i);
  auto rank_of = [&](const std::string& v) {
    auto it = rank.find(v);
    if (it != rank.end()) return it->second;
    return p.vars.size() + std::stoul(v.substr(1));
  };
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& v) -> std::string {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    std::string r = find(it->second);
    parent[v] = r;
    return r;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (rank_of(rb) < rank_of(ra)) std::swap(ra, rb);
    parent[rb] = ra;
    return true;
  };
  for (const auto& [a, b] : same) unite(a, b);

  std::vector<Def> out;
  bool changed = true;
  while (changed) {
    changed = false;
    out.clear();
    std::map<std::pair<std::size_t, std::vector<std::string>>, std::string> seen;
    for (const Def& d : defs) {
      Def r{d.sym, {}, find(d.value)};
      for (const std::string& a : d.args) r.args.push_back(find(a));
      auto key = std::make_pair(r.sym, r.args);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, r.value);
        out.push_back(std::move(r));
      } else if (it->second != r.value) {
        unite(it->second, r.value);
        changed = true;
      }
    }
  }

  // Surviving fresh names become w1, w2, ... in order of appearance.
  std::map<std::string, std::string> rename;
  std::size_t next = 0;
  auto final_name = [&](const std::string& v) {
    if (!fresh_names.count(v)) return v;
    auto it = rename.find(v);
    if (it != rename.end()) return it->second;
    std::string n;
    do n = "w" + std::to_string(++next);
    while (rank.count(n) || sig.find(n));
    rename.emplace(v, n);
    return n;
  };
  Presentation r;
  r.flat = true;
  for (const std::string& v : p.vars)
    if (find(v) == v) r.vars.push_back(v);
  std::vector<std::string> extra;
  for (const Def& d : out) {
    std::vector<Term> args;
    for (const std::string& a : d.args) {
      std::string n = final_name(a);
      if (fresh_names.count(a) && std::find(extra.begin(), extra.end(), n) == extra.end()) extra.push_back(n);
      args.push_back(Term::var(n));
    }
    std::string v = final_name(d.value);
    if (fresh_names.count(d.value) && std::find(extra.begin(), extra.end(), v) == extra.end()) extra.push_back(v);
    r.relations.push_back(Equation{Term::app(d.sym, std::move(args)), Term::var(v)});
  }
  std::sort(extra.begin(), extra.end(), [](const std::string& a, const std::string& b) {
    return std::stoul(a.substr(1)) < std::stoul(b.substr(1));
  });
  r.vars.insert(r.vars.end(), extra.begin(), extra.end());
  return r;
}

Presentation free_over_partial(const PartialAlgebra& b, const Hat& hat) {
  Presentation p;
  p.vars = hat;
  p.relations = diagram(b, hat);
  p.flat = true;
  return p;
}

std::size_t count_solutions(const PartialAlgebra& a, const Presentation& p) {
  std::size_t count = 0;
  for_each_assignment(p.vars, a.size(), [&](const Assignment& v) {
    for (const Equation& e : p.relations)
      if (!satisfies(a, v, e)) return true;
    ++count;
    return true;
  });
  return count;
}

namespace {

void require_total(const PartialAlgebra& a) {
  if (!a.is_total()) throw ValidationError("total", {}, "operation tables must be total");
}

CongruenceTable normalize(const std::vector<Index>& rep) {
  CongruenceTable t;
  t.block.assign(rep.size(), 0);
  std::vector<Index> number(rep.size(), kAbsent);
  for (Index x = 0; x < rep.size(); ++x) {
    Index r = rep[x];
    if (number[r] == kAbsent) number[r] = static_cast<Index>(t.blocks++);
    t.block[x] = number[r];
  }
  return t;
}

}  // namespace

CongruenceTable congruence_generated(const PartialAlgebra& a, const std::vector<std::pair<Index, Index>>& pairs) {
  require_total(a);
  const std::size_t n = a.size();
  std::vector<Index> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<Index(Index)> find = [&](Index x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::pair<Index, Index>> queue;
  auto unite = [&](Index x, Index y) {
    Index rx = find(x), ry = find(y);
    if (rx == ry) return;
    if (ry < rx) std::swap(rx, ry);
    uf[ry] = rx;
    queue.emplace_back(x, y);
  };
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw std::out_of_range("pair out of range");
    unite(x, y);
  }
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (std::size_t s = 0; s < a.signature().size(); ++s) {
      const std::size_t k = a.signature()[s].arity;
      if (k == 0) continue;
      std::size_t others = 1;
      for (std::size_t i = 1; i < k; ++i) others *= n;
      std::vector<Index> args(k);
      for (std::size_t pos = 0; pos < k; ++pos)
        for (std::size_t o = 0; o < others; ++o) {
          std::size_t rest = o;
          for (std::size_t i = k; i-- > 0;) {
            if (i == pos) continue;
            args[i] = static_cast<Index>(rest % n);
            rest /= n;
          }
          args[pos] = x;
          Index u = a.raw(s, a.cell_of(args));
          args[pos] = y;
          Index v = a.raw(s, a.cell_of(args));
          unite(u, v);
        }
    }
  }
  std::vector<Index> rep(n);
  for (Index x = 0; x < n; ++x) rep[x] = find(x);
  return normalize(rep);
}

bool is_congruence(const PartialAlgebra& a, const CongruenceTable& t) {
  require_total(a);
  for (std::size_t s = 0; s < a.signature().size(); ++s)
    for (std::size_t c1 = 0; c1 < a.cells(s); ++c1)
      for (std::size_t c2 = 0; c2 < a.cells(s); ++c2) {
        std::vector<Index> x = a.args_of(s, c1), y = a.args_of(s, c2);
        bool rel = true;
        for (std::size_t i = 0; i < x.size(); ++i) rel = rel && t.related(x[i], y[i]);
        if (rel && !t.related(a.raw(s, c1), a.raw(s, c2))) return false;
      }
  return true;
}

std::vector<CongruenceTable> all_congruences(const PartialAlgebra& a, const Guards& guards) {
  require_total(a);
  const std::size_t n = a.size();
  // Every congruence is a join of principal ones.
  std::vector<CongruenceTable> all{congruence_generated(a, {})};
  std::set<std::vector<Index>> seen{all[0].block};
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<std::pair<Index, Index>> base;
    std::vector<Index> first(all[i].blocks, kAbsent);
    for (Index x = 0; x < n; ++x) {
      Index& f = first[all[i].block[x]];
      if (f == kAbsent) f = x;
      else base.emplace_back(f, x);
    }
    for (Index x = 0; x < n; ++x)
      for (Index y = x + 1; y < n; ++y) {
        if (all[i].related(x, y)) continue;
        std::vector<std::pair<Index, Index>> gens = base;
        gens.emplace_back(x, y);
        CongruenceTable j = congruence_generated(a, gens);
        if (seen.insert(j.block).second) {
          all.push_back(j);
          if (all.size() > guards.max_lattice)
            throw GuardError("congruence lattice exceeds " + std::to_string(guards.max_lattice) + " elements");
        }
      }
  }
  std::sort(all.begin(), all.end(), [](const CongruenceTable& x, const CongruenceTable& y) {
    if (x.blocks != y.blocks) return x.blocks > y.blocks;
    return x.block < y.block;
  });
  return all;
}

std::optional<CongruenceTable> separating_quotient(const PartialAlgebra& a, Index x, Index y) {
  if (x == y) throw ValidationError("distinct", {x, y}, "elements to separate must differ");
  if (x >= a.size() || y >= a.size()) throw std::out_of_range("element out of range");
  std::optional<CongruenceTable> best;
  for (const CongruenceTable& t : all_congruences(a)) {
    if (t.related(x, y)) continue;
    if (!best || t.blocks < best->blocks || (t.blocks == best->blocks && t.block < best->block)) best = t;
  }
  return best;
}

PartialAlgebra quotient(const PartialAlgebra& a, const CongruenceTable& t) {
  require_total(a);
  std::vector<Index> rep(t.blocks, kAbsent);
  for (Index x = 0; x < a.size(); ++x)
    if (rep[t.block[x]] == kAbsent) rep[t.block[x]] = x;
  std::vector<std::string> names;
  for (Index r : rep) names.push_back("[" + a.name(r) + "]");
  PartialAlgebra q(a.signature(), std::move(names));
  for (std::size_t s = 0; s < a.signature().size(); ++s)
    for (std::size_t c = 0; c < q.cells(s); ++c) {
      std::vector<Index> args;
      for (Index b : q.args_of(s, c)) args.push_back(rep[b]);
      q.set_raw(s, c, t.block[*a.get(s, args)]);
    }
  return q;
}

namespace theories {

Theory parse(const std::map<std::string, std::size_t>& signature, const std::vector<std::string>& axioms) {
  Theory t;
  for (const auto& [name, arity] : signature) t.sig.add(name, arity);
  for (const std::string& a : axioms) t.axioms.push_back(parse_equation(t.sig, a));
  return t;
}

namespace {

Theory make(Signature sig, const std::vector<std::string>& axioms) {
  Theory t{std::move(sig), {}};
  for (const std::string& a : axioms) t.axioms.push_back(parse_equation(t.sig, a));
  return t;
}

const std::vector<std::string> kMeetSemilattice = {
    "(meet x (meet y z)) = (meet (meet x y) z)",
    "(meet x y) = (meet y x)",
    "(meet x x) = x",
};

std::vector<std::string> lattice_axioms() {
  std::vector<std::string> a = kMeetSemilattice;
  a.insert(a.end(), {"(join x (join y z)) = (join (join x y) z)", "(join x y) = (join y x)", "(join x x) = x",
                     "(meet x (join x y)) = x", "(join x (meet x y)) = x"});
  return a;
}

std::vector<std::string> rl_axioms() {
  std::vector<std::string> a = lattice_axioms();
  a.insert(a.end(), {
                        "(mul x (mul y z)) = (mul (mul x y) z)",
                        "(mul one x) = x",
                        "(mul x one) = x",
                        "(mul x (join y z)) = (join (mul x y) (mul x z))",
                        "(mul (join y z) x) = (join (mul y x) (mul z x))",
                        "(join (mul x (meet (ldiv x z) y)) z) = z",
                        "(join (mul (meet y (rdiv z x)) x) z) = z",
                        "(meet y (ldiv x (join (mul x y) z))) = y",
                        "(meet y (rdiv (join (mul y x) z) x)) = y",
                    });
  return a;
}

Signature rl_signature() {
  return Signature{{"meet", 2}, {"join", 2}, {"mul", 2}, {"ldiv", 2}, {"rdiv", 2}, {"one", 0}};
}

}  // namespace

Theory semilattice() { return make(Signature{{"meet", 2}}, kMeetSemilattice); }
Theory lattice() { return make(Signature{{"meet", 2}, {"join", 2}}, lattice_axioms()); }

Theory bounded_lattice() {
  std::vector<std::string> a = lattice_axioms();
  a.insert(a.end(), {"(meet x bot) = bot", "(join x top) = top"});
  return make(Signature{{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}}, a);
}

Theory residuated_lattice() { return make(rl_signature(), rl_axioms()); }

Theory integral_rl() {
  std::vector<std::string> a = rl_axioms();
  a.push_back("(meet x one) = x");
  return make(rl_signature(), a);
}

Theory hrl() {
  std::vector<std::string> a = rl_axioms();
  a.insert(a.end(), {"(meet x one) = x", "(arrow x x) = one", "(meet x (arrow x y)) = (meet x y)",
                     "(meet y (arrow x y)) = y", "(arrow x (meet y z)) = (meet (arrow x y) (arrow x z))"});
  Signature sig = rl_signature();
  sig.add("arrow", 2);
  return make(sig, a);
}

}  // namespace theories

PartialAlgebra to_partial_algebra(const ResiduatedLattice& l, const Signature& sig) {
  PartialAlgebra a(sig, l.order().names());
  const Index n = static_cast<Index>(l.size());
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const std::string& name = sig[s].name;
    if (sig[s].arity == 0) {
      Index v;
      if (name == "one") v = l.unit;
      else if (name == "top") v = l.top();
      else if (name == "bot") v = l.bottom();
      else throw Error("no interpretation for constant '" + name + "'");
      a.set(s, {}, v);
      continue;
    }
    if (sig[s].arity != 2) throw Error("no interpretation for '" + name + "'");
    if (name == "arrow" && !l.arrow) throw Error("algebra has no arrow");
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) {
        Index v;
        if (name == "meet") v = l.meet(x, y);
        else if (name == "join") v = l.join(x, y);
        else if (name == "mul") v = l.mul(x, y);
        else if (name == "ldiv") v = l.ldiv(x, y);
        else if (name == "rdiv") v = l.rdiv(x, y);
        else if (name == "arrow") v = (*l.arrow)(x, y);
        else throw Error("no interpretation for '" + name + "'");
        a.set(s, {x, y}, v);
      }
  }
  return a;
}

ResiduatedLattice to_residuated_lattice(const PartialAlgebra& a) {
  require_total(a);
  const Signature& sig = a.signature();
  auto need = [&](const std::string& name, std::size_t arity) {
    auto s = sig.find(name);
    if (!s || sig[*s].arity != arity) throw ValidationError("signature", {}, "missing symbol '" + name + "'");
    return *s;
  };
  std::size_t meet = need("meet", 2), join = need("join", 2), mul = need("mul", 2), ld = need("ldiv", 2),
              rd = need("rdiv", 2), one = need("one", 0);
  const Index n = static_cast<Index>(a.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) leq[x][y] = *a.get(meet, {x, y}) == x;
  ResiduatedLattice l;
  l.lattice = Lattice::from_poset(Poset::from_matrix(a.elements(), leq));
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (l.lattice.meet(x, y) != *a.get(meet, {x, y}) || l.lattice.join(x, y) != *a.get(join, {x, y}))
        throw ValidationError("lattice", {x, y}, "meet and join tables disagree with the order");
  l.mult = Table(n);
  l.lres = Table(n);
  l.rres = Table(n);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      l.mult.at(x, y) = *a.get(mul, {x, y});
      l.lres.at(x, y) = *a.get(ld, {x, y});
      l.rres.at(x, y) = *a.get(rd, {x, y});
    }
  l.unit = *a.get(one, {});
  if (auto ar = sig.find("arrow"); ar && sig[*ar].arity == 2) {
    Table t(n);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) t.at(x, y) = *a.get(*ar, {x, y});
    l.arrow = std::move(t);
  }
  return l;
}

}  // namespace resq
