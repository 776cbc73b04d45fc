#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resq/pomonoid.hpp"

namespace resq {

enum class Op { Dot, Wedge };

// Element of the free {dot, wedge}-structure with unit. Unit absorption is
// applied on construction, so pure terms never contain the unit.
class FElement {
 public:
  FElement();  // the unit
  static FElement unit() { return FElement(); }
  static FElement var(const std::string& name);
  static FElement make(Op op, const FElement& a, const FElement& b);
  static FElement dot(const FElement& a, const FElement& b) { return make(Op::Dot, a, b); }
  static FElement wedge(const FElement& a, const FElement& b) { return make(Op::Wedge, a, b); }
  static FElement parse(const std::string& text);  // (dot x (wedge y z)), unit

  bool is_unit() const { return node_ == nullptr; }
  bool is_var() const;
  bool is_compound() const;
  Op op() const;
  const FElement& left() const;
  const FElement& right() const;
  const std::string& var_name() const;
  std::size_t leaves() const;
  std::size_t depth() const;
  std::size_t hash() const;
  const void* identity() const { return node_.get(); }

  bool operator==(const FElement& o) const;
  bool operator!=(const FElement& o) const { return !(*this == o); }
  std::string to_string() const;

  struct Node;

 private:
  explicit FElement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool leq_c(const FElement& s, const FElement& t);

// Shares a memo across many queries on the same terms.
class DivisibilityOrder {
 public:
  bool leq(const FElement& s, const FElement& t);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  bool rec(const FElement& s, const FElement& t);
  struct Key {
    const void* a;
    const void* b;
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>()(k.a) * 31 + std::hash<const void*>()(k.b);
    }
  };
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::vector<FElement> keep_;
};

std::optional<std::pair<FElement, FElement>> riesz_split(const FElement& r, const FElement& s, const FElement& t, Op op);

// Left: max{s | r*s <=c t}.  Right: max{s | s*r <=c t}.
FElement residual_f(const FElement& r, const FElement& t, Op op, Side side);

enum class Step { LeftResidual, RightResidual, WedgeResidual, MultiplyLeft, MultiplyRight, WedgeWith };

// Steps apply innermost first; step i consumes argument args[i].
struct Scheme {
  std::vector<Step> steps;
  std::vector<std::size_t> args;

  std::size_t depth() const { return steps.size(); }
  bool residual() const;
  bool operator==(const Scheme& o) const { return steps == o.steps && args == o.args; }
};

Scheme make_scheme(std::vector<Step> steps);  // throws on depth 0 or mixed families
Scheme parse_scheme(const std::string& text);  // "left-res,wedge-res"
std::string to_string(const Scheme& s);
std::string to_string(Step s);
Step dual(Step s);
Scheme adjoint_of(const Scheme& s);
Index eval_scheme(const ResiduatedLattice& a, const Scheme& s, const std::vector<Index>& args, Index center);

struct Operation {
  std::string name;
  std::size_t arity = 0;
  std::vector<Index> table;  // mixed radix, first argument most significant
};

struct OrderedAlgebra {
  Poset order;
  std::vector<Operation> ops;
};

Verdict is_divisibility_order(const OrderedAlgebra& a);
OrderedAlgebra divisibility_algebra(const ResiduatedLattice& l);  // dot and wedge

FElement random_term(std::mt19937_64& rng, std::size_t max_depth, std::size_t num_vars);

}  // namespace resq
