#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "resq/involutive.hpp"

namespace resq::io {

namespace {

constexpr std::size_t kInlineWidth = 96;

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void emit(const Json& j, std::string& out, std::size_t indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += inner + Json(it.key()).dump() + ": ";
      emit(it.value(), out, indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    if (std::all_of(j.begin(), j.end(), scalar)) {
      std::string line = "[";
      for (std::size_t k = 0; k < j.size(); ++k) line += (k ? ", " : "") + j[k].dump();
      line += "]";
      if (indent + line.size() <= kInlineWidth) {
        out += line;
        return;
      }
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      emit(j[k], out, indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += j.dump();
  }
}

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array");
  std::vector<std::string> out;
  for (const Json& e : j) out.push_back(str(e, where));
  return out;
}

Index element(const Poset& p, const Json& j, const std::string& where) {
  std::string name = str(j, where);
  auto i = p.find(name);
  if (!i) bad(where + ": unknown element '" + name + "'");
  return *i;
}

Table table(const Poset& p, const Json& j, const std::string& where) {
  const std::size_t n = p.size();
  if (!j.is_array() || j.size() != n) bad(where + ": expected " + std::to_string(n) + " rows");
  Table t(n);
  for (Index a = 0; a < n; ++a) {
    if (!j[a].is_array() || j[a].size() != n)
      bad(where + ": row " + std::to_string(a + 1) + " must have " + std::to_string(n) + " entries");
    for (Index b = 0; b < n; ++b) t.at(a, b) = element(p, j[a][b], where);
  }
  return t;
}

void expect_table(const Poset& p, const Table& given, const Table& actual, const std::string& op) {
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < p.size(); ++b)
      if (given(a, b) != actual(a, b))
        throw ValidationError(op, {a, b},
                              op + "(" + p.name(a) + "," + p.name(b) + ") is " + p.name(given(a, b)) +
                                  " but should be " + p.name(actual(a, b)));
}

Poset parse_order(const Json& j) {
  std::vector<std::string> names = strings(field(j, "elements"), "elements");
  if (names.empty()) bad("elements: at least one element is required");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t k = i + 1; k < names.size(); ++k)
      if (names[i] == names[k]) bad("elements: duplicate name '" + names[i] + "'");
  if (j.contains("order")) {
    const Json& m = j.at("order");
    if (!m.is_array() || m.size() != names.size()) bad("order: expected a square 0/1 matrix");
    std::vector<std::vector<bool>> leq(names.size(), std::vector<bool>(names.size()));
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (!m[a].is_array() || m[a].size() != names.size()) bad("order: expected a square 0/1 matrix");
      for (std::size_t b = 0; b < names.size(); ++b) {
        if (!m[a][b].is_number_integer()) bad("order: entries must be 0 or 1");
        leq[a][b] = m[a][b].get<int>() != 0;
      }
    }
    return Poset::from_matrix(names, leq);
  }
  std::vector<std::pair<Index, Index>> covers;
  Poset flat = Poset::from_covers(names, {});
  if (j.contains("covers")) {
    const Json& c = j.at("covers");
    if (!c.is_array()) bad("covers: expected an array of pairs");
    for (const Json& pr : c) {
      if (!pr.is_array() || pr.size() != 2) bad("covers: each entry is a [lower, upper] pair");
      covers.emplace_back(element(flat, pr[0], "covers"), element(flat, pr[1], "covers"));
    }
  }
  return Poset::from_covers(names, covers);
}

Json covers_json(const Poset& p) {
  Json c = Json::array();
  for (auto [lo, hi] : p.covers()) c.push_back(Json::array({p.name(lo), p.name(hi)}));
  return c;
}

std::string equation_text(const Signature& sig, const Equation& e) { return to_string(sig, e); }

// Signature inferred from a bare s-expression: head atoms are symbols.
void infer(const std::string& text, std::map<std::string, std::size_t>& sig) {
  std::vector<std::size_t> counts;
  std::vector<std::string> heads;
  bool expect_head = false;
  std::size_t i = 0;
  auto atom_done = [&](const std::string& a) {
    if (expect_head) {
      heads.back() = a;
      expect_head = false;
    } else if (!counts.empty()) {
      ++counts.back();
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') {
      if (!counts.empty() && !expect_head) ++counts.back();
      counts.push_back(0);
      heads.emplace_back();
      expect_head = true;
      ++i;
    } else if (c == ')') {
      if (counts.empty()) bad("unbalanced ')' in '" + text + "'");
      sig[heads.back()] = counts.back();
      counts.pop_back();
      heads.pop_back();
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == '=') {
      ++i;
    } else {
      std::size_t k = i;
      while (k < text.size() && !std::isspace(static_cast<unsigned char>(text[k])) && text[k] != '(' &&
             text[k] != ')')
        ++k;
      atom_done(text.substr(i, k - i));
      i = k;
    }
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
    throw ParseError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path), path); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
  return s;
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Poset: return "poset";
    case Kind::Pomonoid: return "pomonoid";
    case Kind::ResiduatedLattice: return "residuated-lattice";
    case Kind::HeytingRL: return "heyting-rl";
    case Kind::PartialAlgebra: return "partial-algebra";
  }
  return "?";
}

AlgebraFile parse_algebra(const Json& j) {
  if (!j.is_object()) bad("an algebra file is a JSON object");
  AlgebraFile a;
  if (j.contains("signature")) {
    a.kind = Kind::PartialAlgebra;
    a.partial = parse_partial(j);
    return a;
  }
  a.order = parse_order(j);
  if (!j.contains("mul")) {
    for (const char* k : {"unit", "ldiv", "rdiv", "arrow", "d"})
      if (j.contains(k)) bad(std::string("field '") + k + "' needs a 'mul' table");
    return a;
  }
  Table mult = table(a.order, j.at("mul"), "mul");
  Index unit = element(a.order, field(j, "unit"), "unit");
  a.monoid = make_pomonoid(a.order, mult, unit);
  a.kind = Kind::Pomonoid;
  a.explicit_residuals = j.contains("ldiv") || j.contains("rdiv");
  a.explicit_arrow = j.contains("arrow");
  if (a.explicit_residuals && !(j.contains("ldiv") && j.contains("rdiv"))) bad("give both 'ldiv' and 'rdiv' or neither");
  bool lattice = is_lattice(a.order);
  auto res = lattice ? residuals_of(*a.monoid) : std::nullopt;
  if (!res) {
    if (a.explicit_residuals || a.explicit_arrow || j.contains("d")) {
      make_residuated_lattice(*a.monoid);  // names the missing bound or residual
      bad("residual tables given for a structure without residuals");
    }
    return a;
  }
  ResiduatedLattice l = make_residuated_lattice(*a.monoid, true);
  if (a.explicit_residuals) {
    expect_table(a.order, table(a.order, j.at("ldiv"), "ldiv"), l.lres, "ldiv");
    expect_table(a.order, table(a.order, j.at("rdiv"), "rdiv"), l.rres, "rdiv");
  }
  RlReport rep = check_rl_axioms(l);
  for (const AxiomResult& r : rep.axioms)
    if (!r.verdict.holds) throw ValidationError(r.axiom, r.verdict.witness, r.verdict.detail);
  if (!rep.adjunction.holds) throw ValidationError("adjunction", rep.adjunction.witness, rep.adjunction.detail);
  a.kind = Kind::ResiduatedLattice;
  if (a.explicit_arrow) {
    if (!l.arrow) throw ValidationError("heyting", {}, "the lattice reduct has no relative pseudocomplement");
    expect_table(a.order, table(a.order, j.at("arrow"), "arrow"), *l.arrow, "arrow");
  }
  if (l.arrow && is_integral(l)) {
    make_heyting_rl(l);
    a.kind = Kind::HeytingRL;
  } else if (!a.explicit_arrow) {
    l.arrow.reset();
  }
  if (j.contains("d")) {
    Index d = element(a.order, j.at("d"), "d");
    if (!is_cyclic_dualizing(l.view(), d))
      throw ValidationError("dualizing", {d}, a.order.name(d) + " is not a cyclic dualizing element");
    a.d = d;
  }
  a.rl = std::move(l);
  return a;
}

AlgebraFile load_algebra(const std::string& path) {
  Json j = read_json(path);
  try {
    return parse_algebra(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

AlgebraFile algebra_file(const ResiduatedLattice& l) {
  Json j = Json::object();
  j["elements"] = l.order().names();
  j["covers"] = covers_json(l.order());
  j["mul"] = table_json(l.order(), l.mult);
  j["unit"] = l.name(l.unit);
  return parse_algebra(j);
}

Json to_json(const AlgebraFile& a) {
  if (a.kind == Kind::PartialAlgebra) return to_json(a.partial);
  Json j = Json::object();
  j["elements"] = a.order.names();
  j["covers"] = covers_json(a.order);
  if (!a.monoid) return j;
  j["mul"] = table_json(a.order, a.monoid->mult);
  j["unit"] = a.order.name(a.monoid->unit);
  if (a.explicit_residuals) {
    j["ldiv"] = table_json(a.order, a.rl->lres);
    j["rdiv"] = table_json(a.order, a.rl->rres);
  }
  if (a.explicit_arrow) j["arrow"] = table_json(a.order, *a.rl->arrow);
  if (a.d) j["d"] = a.order.name(*a.d);
  return j;
}

Signature parse_signature(const Json& j) {
  if (!j.is_object()) bad("signature: expected an object of symbol arities");
  Signature sig;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number_unsigned()) bad("signature: arity of '" + it.key() + "' must be a natural number");
    sig.add(it.key(), it.value().get<std::size_t>());
  }
  return sig;
}

Json to_json(const Signature& sig) {
  Json j = Json::object();
  for (const Symbol& s : sig.symbols()) j[s.name] = s.arity;
  return j;
}

PartialAlgebra parse_partial(const Json& j) {
  Signature sig = parse_signature(field(j, "signature"));
  std::vector<std::string> names = strings(field(j, "elements"), "elements");
  PartialAlgebra a(sig, names);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (a.find(names[i]) != static_cast<Index>(i)) bad("elements: duplicate name '" + names[i] + "'");
  const Json& tables = j.contains("tables") ? j.at("tables") : Json::object();
  if (!tables.is_object()) bad("tables: expected an object");
  auto value = [&](const Json& e, const std::string& where) -> Index {
    if (e.is_null()) return kAbsent;
    std::string name = str(e, where);
    auto i = a.find(name);
    if (!i) bad(where + ": unknown element '" + name + "'");
    return *i;
  };
  for (auto it = tables.begin(); it != tables.end(); ++it) {
    auto s = sig.find(it.key());
    if (!s) bad("tables: '" + it.key() + "' is not in the signature");
    const std::size_t arity = sig[*s].arity;
    const Json& t = it.value();
    const std::size_t cells = a.cells(*s);
    std::vector<Index> flat;
    if (arity == 0) {
      flat.push_back(value(t, it.key()));
    } else if (arity == 2) {
      if (!t.is_array() || t.size() != names.size()) bad(it.key() + ": expected one row per element");
      for (const Json& row : t) {
        if (!row.is_array() || row.size() != names.size()) bad(it.key() + ": expected one entry per element");
        for (const Json& e : row) flat.push_back(value(e, it.key()));
      }
    } else {
      if (!t.is_array() || t.size() != cells) bad(it.key() + ": expected " + std::to_string(cells) + " entries");
      for (const Json& e : t) flat.push_back(value(e, it.key()));
    }
    for (std::size_t c = 0; c < cells; ++c) a.set_raw(*s, c, flat[c]);
  }
  return a;
}

Json to_json(const PartialAlgebra& a) {
  Json j = Json::object();
  j["signature"] = to_json(a.signature());
  j["elements"] = a.elements();
  Json tables = Json::object();
  auto value = [&](Index v) { return v == kAbsent ? Json(nullptr) : Json(a.name(v)); };
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const std::size_t arity = a.signature()[s].arity;
    const std::vector<Index>& t = a.table(s);
    if (arity == 0) {
      tables[a.signature()[s].name] = value(t[0]);
    } else if (arity == 2) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < n; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(value(t[r * n + c]));
        rows.push_back(std::move(row));
      }
      tables[a.signature()[s].name] = std::move(rows);
    } else {
      Json flat = Json::array();
      for (Index v : t) flat.push_back(value(v));
      tables[a.signature()[s].name] = std::move(flat);
    }
  }
  j["tables"] = std::move(tables);
  return j;
}

Theory parse_theory(const Json& j) {
  Theory th;
  th.sig = parse_signature(field(j, "signature"));
  for (const std::string& a : strings(field(j, "axioms"), "axioms")) th.axioms.push_back(parse_equation(th.sig, a));
  return th;
}

Json to_json(const Theory& th) {
  Json j = Json::object();
  j["signature"] = to_json(th.sig);
  Json ax = Json::array();
  for (const Equation& e : th.axioms) ax.push_back(equation_text(th.sig, e));
  j["axioms"] = std::move(ax);
  return j;
}

PresentationFile parse_presentation(const Json& j) {
  PresentationFile p;
  p.sig = parse_signature(field(j, "signature"));
  p.pres.vars = strings(field(j, "vars"), "vars");
  for (const std::string& v : p.pres.vars)
    if (p.sig.find(v)) bad("vars: '" + v + "' is an operation symbol");
  for (const std::string& r : strings(field(j, "relations"), "relations")) {
    Equation e = parse_equation(p.sig, r);
    for (const std::string& v : vars_of(e))
      if (std::find(p.pres.vars.begin(), p.pres.vars.end(), v) == p.pres.vars.end())
        bad("relations: '" + v + "' is not a listed variable");
    p.pres.relations.push_back(std::move(e));
  }
  p.pres.flat = is_flat(p.sig, p.pres);
  return p;
}

Json to_json(const PresentationFile& p) {
  Json j = Json::object();
  j["signature"] = to_json(p.sig);
  j["vars"] = p.pres.vars;
  Json rel = Json::array();
  for (const Equation& e : p.pres.relations) rel.push_back(equation_text(p.sig, e));
  j["relations"] = std::move(rel);
  return j;
}

QuasiEquation parse_quasi(const Signature& sig, const Json& j) {
  QuasiEquation q;
  if (j.contains("premises"))
    for (const std::string& p : strings(j.at("premises"), "premises")) q.premises.push_back(parse_equation(sig, p));
  q.conclusion = parse_equation(sig, str(field(j, "conclusion"), "conclusion"));
  return q;
}

Json to_json(const Signature& sig, const QuasiEquation& q) {
  Json j = Json::object();
  Json prem = Json::array();
  for (const Equation& e : q.premises) prem.push_back(equation_text(sig, e));
  j["premises"] = std::move(prem);
  j["conclusion"] = equation_text(sig, q.conclusion);
  return j;
}

std::vector<std::vector<std::string>> parse_sets(const Json& j) {
  const Json& s = field(j, "sets");
  if (!s.is_array()) bad("sets: expected an array of element lists");
  std::vector<std::vector<std::string>> out;
  for (const Json& e : s) out.push_back(strings(e, "sets"));
  return out;
}

Json sets_to_json(const std::vector<std::vector<std::string>>& sets) {
  Json j = Json::object();
  Json arr = Json::array();
  for (const auto& s : sets) arr.push_back(s);
  j["sets"] = std::move(arr);
  return j;
}

Json table_json(const Poset& names, const Table& t) {
  Json rows = Json::array();
  for (Index a = 0; a < t.size(); ++a) {
    Json row = Json::array();
    for (Index b = 0; b < t.size(); ++b) row.push_back(names.name(t(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json set_json(const Poset& base, const ElementSet& s) {
  Json j = Json::array();
  for (Index i : s.indices()) j.push_back(base.name(i));
  return j;
}

std::string normalize(const std::string& text, const std::string& origin) {
  Json j = parse_json(text, origin);
  if (!j.is_object()) bad(origin + ": expected a JSON object");
  if (j.contains("axioms")) return dump(to_json(parse_theory(j)));
  if (j.contains("vars")) return dump(to_json(parse_presentation(j)));
  if (j.contains("sets")) return dump(sets_to_json(parse_sets(j)));
  if (j.contains("conclusion")) {
    std::map<std::string, std::size_t> arities;
    if (j.contains("premises"))
      for (const std::string& p : strings(j.at("premises"), "premises")) infer(p, arities);
    infer(str(j.at("conclusion"), "conclusion"), arities);
    Signature sig;
    for (const auto& [name, arity] : arities) sig.add(name, arity);
    return dump(to_json(sig, parse_quasi(sig, j)));
  }
  return dump(to_json(parse_algebra(j)));
}

std::string render(const Report& r, const std::string& version) {
  Json body = Json::object();
  body["tool"] = "resq";
  body["version"] = version;
  body["command"] = r.command;
  body["status"] = r.status;
  body["input_digest"] = r.input_digest;
  body["result"] = r.result;
  std::string text = dump(body);
  body["digest"] = hex64(fnv1a(text));
  return dump(body);
}

}  // namespace resq::io
