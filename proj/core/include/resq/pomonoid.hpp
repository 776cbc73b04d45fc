#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resq/common.hpp"
#include "resq/order.hpp"

namespace resq {

struct Pomonoid {
  Poset order;
  Table mult;
  Index unit = 0;

  std::size_t size() const { return order.size(); }
  Index mul(Index a, Index b) const { return mult(a, b); }
};

// Throws ValidationError for broken associativity, unit or monotonicity.
Pomonoid make_pomonoid(Poset order, Table mult, Index unit);
Verdict validate_pomonoid(const Poset& order, const Table& mult, Index unit);

enum class Side { Left, Right };

// Left: max{x | a x <= b}   (a\b).   Right: max{x | x a <= b}   (b/a).
std::optional<Index> residual(const Pomonoid& p, Index a, Index b, Side side);

struct PartialResidualTable {
  // left[a*n+b] = a\b, right[b*n+a] = b/a.
  std::size_t n = 0;
  std::vector<std::optional<Index>> left;
  std::vector<std::optional<Index>> right;

  std::optional<Index> ldiv(Index a, Index b) const { return left[std::size_t{a} * n + b]; }
  std::optional<Index> rdiv(Index b, Index a) const { return right[std::size_t{b} * n + a]; }
  bool total() const;
};

PartialResidualTable partial_residuals(const Pomonoid& p);
bool is_residuated(const Pomonoid& p);

// lres(x, z) = x\z and rres(z, y) = z/y.
struct Residuals {
  Table lres;
  Table rres;
};

std::optional<Residuals> residuals_of(const Pomonoid& p);

// Borrowed view of a residuated pomonoid.
struct ResiduatedView {
  const Poset& order;
  const Table& mult;
  const Table& lres;
  const Table& rres;
  Index unit;

  std::size_t size() const { return order.size(); }
};

struct ResiduatedLattice {
  Lattice lattice;
  Table mult;
  Table lres;
  Table rres;
  Index unit = 0;
  std::optional<Table> arrow;

  std::size_t size() const { return lattice.size(); }
  const Poset& order() const { return lattice.order; }
  bool leq(Index a, Index b) const { return lattice.order.leq(a, b); }
  Index mul(Index a, Index b) const { return mult(a, b); }
  Index ldiv(Index x, Index z) const { return lres(x, z); }
  Index rdiv(Index z, Index y) const { return rres(z, y); }
  Index meet(Index a, Index b) const { return lattice.meet(a, b); }
  Index join(Index a, Index b) const { return lattice.join(a, b); }
  Index top() const { return lattice.top(); }
  Index bottom() const { return lattice.bottom(); }
  const std::string& name(Index i) const { return lattice.order.name(i); }
  Pomonoid pomonoid() const { return Pomonoid{lattice.order, mult, unit}; }
  ResiduatedView view() const { return ResiduatedView{lattice.order, mult, lres, rres, unit}; }
};

struct ResiduatedPomonoid {
  Pomonoid monoid;
  Residuals res;

  std::size_t size() const { return monoid.size(); }
  ResiduatedView view() const { return ResiduatedView{monoid.order, monoid.mult, res.lres, res.rres, monoid.unit}; }
};

ResiduatedPomonoid make_residuated_pomonoid(const Pomonoid& p);  // throws when a residual is missing

// Requires a lattice order and total residuals; fills in the arrow when the
// lattice is Heyting and `with_arrow` is set.
ResiduatedLattice make_residuated_lattice(const Pomonoid& p, bool with_arrow = true);

struct AxiomResult {
  std::string axiom;
  Verdict verdict;
};

struct RlReport {
  std::vector<AxiomResult> axioms;  // lattice, monoid, RL1..RL6
  Verdict adjunction;
  bool equations_pass() const;
  bool all_pass() const { return equations_pass() && adjunction.holds; }
};

RlReport check_rl_axioms(const ResiduatedLattice& l);
Verdict check_adjunction(const ResiduatedView& v);
Verdict check_heyting(const ResiduatedLattice& l);  // arrow adjunction over the lattice reduct

struct HeytingRL {
  ResiduatedLattice base;
  Index arrow(Index a, Index b) const { return (*base.arrow)(a, b); }
  std::size_t size() const { return base.size(); }
};

// Validates integrality, RL axioms and the arrow; computes the arrow when absent.
HeytingRL make_heyting_rl(ResiduatedLattice l);

std::optional<Index> heyting_arrow(const Lattice& l, Index a, Index b);
std::optional<Table> heyting_arrow_table(const Lattice& l);

bool is_integral(const Pomonoid& p);
bool is_integral(const ResiduatedLattice& l);
bool is_commutative(const Table& mult);
bool is_distributive(const Lattice& l);
bool is_chain(const Poset& p);

// A residuated lattice whose carrier is a Moore family of subsets of P.
struct SetRL {
  SetLattice sets;
  ResiduatedLattice algebra;
};

SetRL powerset_rl(const Pomonoid& p, const Guards& guards = Guards::current());
SetRL low_rl(const Pomonoid& p, const Guards& guards = Guards::current());

// Every pomonoid structure (unit and table) compatible with the given order.
void enumerate_pomonoids(const Poset& order, const std::function<void(const Pomonoid&)>& visit);
// Residuated lattices of exactly n elements, one per isomorphism class.
std::vector<ResiduatedLattice> enumerate_residuated_lattices(std::size_t n, bool integral_only = false);

// Canonical relabelling under all permutations; equal codes mean isomorphic.
std::vector<Index> canonical_code(const Poset& order, const std::vector<const Table*>& tables,
                                  const std::vector<Index>& constants);

}  // namespace resq
