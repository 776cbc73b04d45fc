#pragma once

#include <string>
#include <vector>

#include "resq/completion.hpp"
#include "resq/involutive.hpp"
#include "resq/pomonoid.hpp"

namespace resq {

struct Subreduct {
  std::vector<Index> carrier;  // ambient indices, ascending
  Pomonoid monoid;             // induced order and product, ambient names
  Table meet;                  // local indices; filled when closed under meet
  bool has_meet = false;
};

// Least subset containing B and 1 closed under the product and, with
// `use_meet`, the meet of A.
Subreduct generate_subreduct(const ResiduatedLattice& a, const std::vector<Index>& b, bool use_meet = true,
                             const Guards& guards = Guards::current());

struct DResult {
  std::vector<Index> members;  // indices into low.sets, ascending
  std::size_t iterations = 0;
};

// Least family containing the principal ideals of `b` (local indices of P)
// closed under a\(-), (-)/a and, with `with_arrow`, a->(-) for a in P.
DResult build_D(const Pomonoid& p, const SetRL& low, const std::vector<Index>& b, bool with_arrow = true);

struct EmbeddingReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool holds() const { return failures.empty(); }
};

struct FepCertificate {
  bool involutive = false;
  bool with_arrow = true;
  std::vector<Index> b;      // ambient indices after any pre-closure
  std::vector<Index> added;  // elements the involutive pre-closure added
  Subreduct p;
  SetRL low;
  DResult d;
  ResiduatedLattice old;             // the finite extension
  std::vector<ElementSet> old_sets;  // each element as a down-set of P
  std::vector<Index> embedding;      // parallel to b
  Index dualizing = 0;               // involutive runs only
  EmbeddingReport report;
};

FepCertificate fep_extend_hrl(const ResiduatedLattice& a, const std::vector<Index>& b, bool with_arrow = true,
                              const Guards& guards = Guards::current());
FepCertificate fep_extend_involutive(const ResiduatedLattice& a, Index d, const std::vector<Index>& b,
                                     const Guards& guards = Guards::current());

// Rechecks order, injectivity, unit, the product, residuals, the arrow when
// present, binary and arbitrary joins and meets whenever A's value lies in B.
EmbeddingReport verify_embedding(const ResiduatedLattice& a, const FepCertificate& cert,
                                 const Guards& guards = Guards::current());

bool commutativity_audit(const FepCertificate& cert);
bool chain_audit(const FepCertificate& cert);

std::vector<Index> parse_subset(const Poset& order, const std::string& csv);

}  // namespace resq
