#pragma once

#include <array>
#include <vector>

#include "resq/order.hpp"
#include "resq/pomonoid.hpp"

namespace resq {

Verdict is_nucleus(const ResiduatedView& k, const UnaryMap& g);
Verdict is_nucleus_system(const ResiduatedView& k, const ElementSet& c);

struct ImageAlgebra {
  ResiduatedLattice algebra;
  std::vector<Index> to_ambient;  // image index -> ambient index
  UnaryMap gamma;                 // ambient index -> image index
};

// Carrier C with product and join composed with the closure operator, meet
// and residuals inherited. The arrow is inherited when C is closed under it,
// otherwise taken from the image lattice when that lattice is Heyting.
ImageAlgebra nucleus_image_algebra(const ResiduatedLattice& k, const ElementSet& c);
SetRL nucleus_image_set_rl(const SetRL& k, const ElementSet& c);

// An intermediate completion P <= L <= Low(P), L given by member indices of Low(P).
struct JoinExtensionWitness {
  Pomonoid base;
  SetRL ambient;
  ElementSet selected;
};

JoinExtensionWitness make_join_extension(const Pomonoid& p, const SetRL& low, ElementSet selected);
JoinExtensionWitness make_join_extension(const Pomonoid& p, const std::vector<ElementSet>& downsets);

struct NucleusReport {
  // (i) residuated extension exists, (ii) a\b and b/a land in L for a in P and
  // b in L, (iii) L is a nucleus-system of Low(P), (iv) gamma_L is a nucleus.
  std::array<Verdict, 4> conditions;
  Verdict extension;  // multiplication and existing residuals of P preserved
  bool agree() const;
  bool all_true() const;
};

NucleusReport theorem35_check(const JoinExtensionWitness& w);

struct HeytingCompletionReport {
  NucleusReport rl;
  std::array<Verdict, 4> heyting;
  bool heyting_agree() const;
  std::array<bool, 4> combined() const;
  bool combined_agree() const;
};

HeytingCompletionReport heyting_completion_check(const JoinExtensionWitness& w);

// DM(P) as a residuated lattice, built as a nucleus image of Low(P).
SetRL dm_rl(const Pomonoid& p);

// All meets of subsets of d (indices into ambient), including the empty meet.
ElementSet generated_closure_system(const Lattice& ambient, const std::vector<Index>& d);
Index generated_gamma(const Lattice& ambient, const std::vector<Index>& d, Index a);

struct KeyLemmaReport {
  Verdict hypothesis;
  Verdict conclusion;
  bool holds() const { return hypothesis.holds && conclusion.holds; }
};

// d holds member indices of low.sets. With `with_arrow` the hypothesis and
// conclusion also cover a -> (-).
KeyLemmaReport keylemma_check(const Pomonoid& p, const SetRL& low, const std::vector<Index>& d, bool with_arrow = false);

}  // namespace resq
