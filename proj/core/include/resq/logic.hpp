#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resq/common.hpp"
#include "resq/pomonoid.hpp"

namespace resq {

struct Symbol {
  std::string name;
  std::size_t arity = 0;
};

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);

  std::size_t add(const std::string& name, std::size_t arity);  // throws on duplicates
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(const std::string& name) const;
  bool operator==(const Signature& o) const;
  bool operator!=(const Signature& o) const { return !(*this == o); }

 private:
  std::vector<Symbol> symbols_;
};

class Term {
 public:
  Term() = default;
  static Term var(const std::string& name);
  static Term app(std::size_t symbol, std::vector<Term> args);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  const std::string& name() const;  // variables only
  std::size_t symbol() const;       // applications only
  const std::vector<Term>& args() const;
  std::size_t depth() const;
  std::size_t hash() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;  // structural total order

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Atoms naming a nullary symbol are constants; any other atom is a variable.
Term parse_term(const Signature& sig, const std::string& text);
std::string to_string(const Signature& sig, const Term& t);
void collect_vars(const Term& t, std::vector<std::string>& out);  // first occurrence order, no repeats
Term substitute(const Term& t, const std::map<std::string, Term>& s);

struct Equation {
  Term lhs;
  Term rhs;
  bool operator==(const Equation& o) const { return lhs == o.lhs && rhs == o.rhs; }
};

struct QuasiEquation {
  std::vector<Equation> premises;
  Equation conclusion;
};

Equation parse_equation(const Signature& sig, const std::string& text);  // "lhs = rhs"
std::string to_string(const Signature& sig, const Equation& e);
std::vector<std::string> vars_of(const Equation& e);
std::vector<std::string> vars_of(const QuasiEquation& q);

inline constexpr Index kAbsent = 0xffffffffu;

class PartialAlgebra {
 public:
  PartialAlgebra() = default;
  PartialAlgebra(Signature sig, std::vector<std::string> elements);  // every entry absent

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& name(Index i) const { return elements_.at(i); }
  std::optional<Index> find(const std::string& name) const;

  std::size_t cells(std::size_t symbol) const { return tables_.at(symbol).size(); }
  std::size_t cell_of(const std::vector<Index>& args) const;
  std::vector<Index> args_of(std::size_t symbol, std::size_t cell) const;
  std::optional<Index> get(std::size_t symbol, const std::vector<Index>& args) const;
  Index raw(std::size_t symbol, std::size_t cell) const { return tables_[symbol][cell]; }
  void set(std::size_t symbol, const std::vector<Index>& args, std::optional<Index> value);
  void set_raw(std::size_t symbol, std::size_t cell, Index value);
  const std::vector<Index>& table(std::size_t symbol) const { return tables_[symbol]; }
  bool is_total() const;
  std::size_t defined_entries() const;

  bool operator==(const PartialAlgebra& o) const;

 private:
  Signature sig_;
  std::vector<std::string> elements_;
  std::vector<std::vector<Index>> tables_;
};

using Assignment = std::map<std::string, Index>;

std::optional<Index> evaluate(const PartialAlgebra& a, const Assignment& v, const Term& t);
bool satisfies(const PartialAlgebra& a, const Assignment& v, const Equation& e);
bool satisfies(const PartialAlgebra& a, const Assignment& v, const QuasiEquation& q);
// Every assignment of the variables into the carrier.
bool holds(const PartialAlgebra& a, const Equation& e);
bool holds(const PartialAlgebra& a, const QuasiEquation& q);
std::optional<Assignment> failing_assignment(const PartialAlgebra& a, const QuasiEquation& q);

// hat[i] names element i as a variable.
using Hat = std::vector<std::string>;
Hat default_hat(const PartialAlgebra& b);
std::vector<Equation> diagram(const PartialAlgebra& b, const Hat& hat);
QuasiEquation q_bb(const PartialAlgebra& b, const Hat& hat, Index x, Index y);
// hat[i] -> into[i].
Assignment canonical_assignment(const Hat& hat, const std::vector<Index>& into);

PartialAlgebra product(const std::vector<PartialAlgebra>& factors);
// Index of a tuple in the product, first factor most significant.
Index product_index(const std::vector<PartialAlgebra>& factors, const std::vector<Index>& tuple);
PartialAlgebra full_restriction(const PartialAlgebra& a, const std::vector<Index>& s);
bool is_homomorphism(const std::vector<Index>& phi, const PartialAlgebra& p, const PartialAlgebra& q);
bool is_full_embedding(const std::vector<Index>& phi, const PartialAlgebra& p, const PartialAlgebra& q);

struct Presentation {
  std::vector<std::string> vars;
  std::vector<Equation> relations;
  bool flat = false;
};

bool is_flat(const Signature& sig, const Presentation& p);
// Flattening; nullary symbols get variables too so that every relation in
// the result is f(x1..xn) = x over variables.
Presentation flatten(const Signature& sig, const Presentation& p);
Presentation free_over_partial(const PartialAlgebra& b, const Hat& hat);
// Number of assignments of p.vars into a satisfying every relation.
std::size_t count_solutions(const PartialAlgebra& a, const Presentation& p);

struct CongruenceTable {
  std::vector<Index> block;  // block number of each element, numbered by first occurrence
  std::size_t blocks = 0;
  bool related(Index x, Index y) const { return block[x] == block[y]; }
  bool operator==(const CongruenceTable& o) const { return block == o.block; }
};

CongruenceTable congruence_generated(const PartialAlgebra& a, const std::vector<std::pair<Index, Index>>& pairs);
bool is_congruence(const PartialAlgebra& a, const CongruenceTable& t);
std::vector<CongruenceTable> all_congruences(const PartialAlgebra& a, const Guards& guards = Guards::current());
std::optional<CongruenceTable> separating_quotient(const PartialAlgebra& a, Index x, Index y);
PartialAlgebra quotient(const PartialAlgebra& a, const CongruenceTable& t);

struct Theory {
  Signature sig;
  std::vector<Equation> axioms;
};

namespace theories {
Theory semilattice();       // meet
Theory lattice();           // meet, join
Theory bounded_lattice();   // meet, join, bot, top
Theory residuated_lattice();  // meet, join, mul, ldiv, rdiv, one
Theory integral_rl();
Theory hrl();               // integral_rl plus arrow
Theory parse(const std::map<std::string, std::size_t>& signature, const std::vector<std::string>& axioms);
}  // namespace theories

// Symbols are matched by name: meet, join, mul, ldiv, rdiv, one, arrow.
PartialAlgebra to_partial_algebra(const ResiduatedLattice& l, const Signature& sig);
// Order from meet; requires meet, join, mul, ldiv, rdiv and one.
ResiduatedLattice to_residuated_lattice(const PartialAlgebra& a);

}  // namespace resq
