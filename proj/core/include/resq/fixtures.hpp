#pragma once

#include <cstddef>

#include "resq/order.hpp"
#include "resq/pomonoid.hpp"

namespace resq::fixtures {

// Chains with multiplication = meet. Elements 0 < a1 < ... < 1 (3-chain: 0 < a < 1).
ResiduatedLattice godel_chain(std::size_t n);
// Chains {0, 1/(n-1), ..., 1} with x*y = max(0, x + y - 1).
ResiduatedLattice lukasiewicz_chain(std::size_t n);
// Boolean algebra on k atoms with multiplication = meet.
ResiduatedLattice boolean_algebra(std::size_t atoms);
ResiduatedLattice trivial();

Poset diamond();     // M3: 0 < a, b, c < 1
Poset pentagon();    // N5: 0 < a < c < 1, 0 < b < 1
Poset chain_named(const std::vector<std::string>& names);

}  // namespace resq::fixtures
