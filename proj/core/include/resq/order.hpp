#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resq/common.hpp"

namespace resq {

class Poset {
 public:
  Poset() = default;

  // Throws ValidationError naming the first violated order axiom; the matrix
  // is scanned reflexivity first, then antisymmetry, then transitivity.
  static Poset from_matrix(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq);
  // Reflexive-transitive closure of the cover pairs (lower, upper).
  static Poset from_covers(std::vector<std::string> names, const std::vector<std::pair<Index, Index>>& covers);
  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Index i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Index> find(const std::string& name) const;
  Index index_of(const std::string& name) const;  // throws on unknown names

  bool leq(Index i, Index j) const { return down_[j].test(i); }
  bool lt(Index i, Index j) const { return i != j && leq(i, j); }
  const ElementSet& down(Index i) const { return down_[i]; }
  const ElementSet& up(Index i) const { return up_[i]; }
  std::vector<std::vector<bool>> matrix() const;
  std::vector<std::pair<Index, Index>> covers() const;

  ElementSet upper_bounds(const ElementSet& s) const;
  ElementSet lower_bounds(const ElementSet& s) const;
  std::optional<Index> least(const ElementSet& s) const;
  std::optional<Index> greatest(const ElementSet& s) const;
  std::optional<Index> join(const ElementSet& s) const { return least(upper_bounds(s)); }
  std::optional<Index> meet(const ElementSet& s) const { return greatest(lower_bounds(s)); }
  std::optional<Index> top() const { return greatest(ElementSet::full(size())); }
  std::optional<Index> bottom() const { return least(ElementSet::full(size())); }
  bool is_chain() const;

  Poset induced(const std::vector<Index>& subset) const;
  bool operator==(const Poset& o) const { return names_ == o.names_ && down_ == o.down_; }

 private:
  std::vector<std::string> names_;
  std::vector<ElementSet> down_;
  std::vector<ElementSet> up_;
};

Poset validate_poset(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq);

struct Lattice {
  Poset order;
  Table meet;
  Table join;

  static Lattice from_poset(Poset p);  // throws ValidationError if a pair lacks a bound
  std::size_t size() const { return order.size(); }
  Index top() const;
  Index bottom() const;
};

bool is_lattice(const Poset& p);

bool is_down_set(const Poset& p, const ElementSet& s);
ElementSet down_closure(const Poset& p, const ElementSet& s);
ElementSet down_closure(const Poset& p, const std::vector<std::string>& names);
ElementSet up_closure(const Poset& p, const ElementSet& s);

// Serialized subset: "{a,b}" with members in index order.
std::string set_name(const Poset& base, const ElementSet& s);

// A family of subsets of `base` closed under arbitrary intersection (the empty
// intersection being the whole base), ordered by inclusion. Members are kept
// in binary-counting order.
class SetLattice {
 public:
  SetLattice() = default;
  SetLattice(Poset base, std::vector<ElementSet> members, const Guards& guards = Guards::current());

  const Poset& base() const { return base_; }
  const Lattice& lattice() const { return lattice_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<ElementSet>& members() const { return members_; }
  const ElementSet& member(Index i) const { return members_.at(i); }
  std::optional<Index> find(const ElementSet& s) const;
  // Least member containing s.
  Index closure(const ElementSet& s) const;
  // Index of the least member containing the principal ideal of x.
  Index principal(Index x) const { return closure(base_.down(x)); }
  std::vector<Index> principal_map() const;

 private:
  Poset base_;
  std::vector<ElementSet> members_;
  std::unordered_map<ElementSet, Index, ElementSetHash> index_;
  Lattice lattice_;
};

std::vector<ElementSet> enumerate_order_ideals(const Poset& p, const Guards& guards = Guards::current());
SetLattice all_order_ideals(const Poset& p, const Guards& guards = Guards::current());
SetLattice dm_completion(const Poset& p);
SetLattice crawley_completion(const Poset& p);
// Moore family of `base` generated by the given sets.
SetLattice intersection_closure(const Poset& base, const std::vector<ElementSet>& generators);

// Closure systems of a poset K are subsets C of its carrier.
Verdict is_closure_system(const Poset& k, const ElementSet& c);
UnaryMap closure_operator_of(const Poset& k, const ElementSet& c);
Verdict is_closure_operator(const Poset& k, const UnaryMap& g);
ElementSet image_of(std::size_t n, const UnaryMap& g);
Poset induced_on(const Poset& k, const ElementSet& c);

struct DensityReport {
  Verdict order_embedding;
  Verdict join_dense;
  Verdict meet_dense;
};

// `map` sends each element of `p` to an element of `l`.
DensityReport density_check(const Poset& p, const Poset& l, const std::vector<Index>& map);

struct FaithfulnessReport {
  bool exhaustive = true;
  std::size_t subsets_checked = 0;
  std::vector<std::vector<Index>> violations;
  bool holds() const { return violations.empty(); }
};

FaithfulnessReport meet_faithfulness_check(const Poset& p, const Poset& l, const std::vector<Index>& map,
                                           std::uint64_t seed = 0, const Guards& guards = Guards::current());

// One representative per isomorphism class, in a fixed order.
std::vector<Poset> enumerate_posets(std::size_t n);

std::string hasse_dot(const Poset& p, const std::string& graph_name = "P");

}  // namespace resq
