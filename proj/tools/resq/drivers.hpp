#pragma once

#include <cstddef>
#include <vector>

#include "resq/pomonoid.hpp"

namespace resq::drivers {

// Heyting RLs with exactly n elements, one per isomorphism class, found by
// the generic model search over the HRL axioms. Elements are named 0..n-1.
std::vector<ResiduatedLattice> enumerate_hrls(std::size_t n, std::size_t jobs = 1);
std::vector<ResiduatedLattice> enumerate_irls(std::size_t n, std::size_t jobs = 1);
std::vector<ResiduatedLattice> enumerate_rls(std::size_t n, std::size_t jobs = 1);

// Every nonempty subset of 0..n-1, as ascending index lists, in binary counting order.
std::vector<std::vector<Index>> nonempty_subsets(std::size_t n);

}  // namespace resq::drivers
