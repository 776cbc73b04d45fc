#pragma once

#include <optional>

#include "resq/completion.hpp"
#include "resq/pomonoid.hpp"

namespace resq {

// d/x = x\d for every x.
Verdict is_cyclic(const ResiduatedView& a, Index d);
// x -> x\d; callers are expected to have checked cyclicity.
UnaryMap wiggle(const ResiduatedView& a, Index d);
// x -> (x~>d)~>d. Throws ValidationError when d is not cyclic.
UnaryMap gamma_d(const ResiduatedView& a, Index d);
bool is_cyclic_dualizing(const ResiduatedView& a, Index d);
std::optional<Index> find_dualizing_element(const ResiduatedView& a);
// Least cyclic d with gamma_d = g.
std::optional<Index> find_cyclic_presentation(const ResiduatedView& a, const UnaryMap& g);

struct InvolutiveRL {
  ResiduatedLattice base;
  Index d = 0;
  Index neg(Index x) const { return base.ldiv(x, d); }
};

InvolutiveRL make_involutive_rl(ResiduatedLattice base, Index d);
// Double negation, order reversal, the product/negation equivalence and
// d = d' iff 1 = 1' iff d = 1.
Verdict check_involutive_invariants(const InvolutiveRL& a);

struct Theorem44Report {
  Verdict d_cyclic_in_completion;
  Verdict images_fixed;
  Verdict join_dense;
  Verdict meet_dense;
  Verdict product_preserved;
  Verdict residuals_preserved;
  std::size_t completion_size = 0;
  std::size_t dm_size = 0;
  bool holds() const;
};

// p must be residuated and d cyclic dualizing in p. The completion is Low(p).
Theorem44Report theorem44_check(const Pomonoid& p, Index d);

}  // namespace resq
