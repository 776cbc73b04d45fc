#include "drivers.hpp"

#include "resq/logic.hpp"
#include "resq/model_search.hpp"

namespace resq::drivers {

namespace {

std::vector<ResiduatedLattice> convert(const Theory& th, std::size_t n, std::size_t jobs) {
  std::vector<ResiduatedLattice> out;
  for (const PartialAlgebra& m : enumerate_algebras(th, n, jobs)) out.push_back(to_residuated_lattice(m));
  return out;
}

}  // namespace

std::vector<ResiduatedLattice> enumerate_hrls(std::size_t n, std::size_t jobs) { return convert(theories::hrl(), n, jobs); }

std::vector<ResiduatedLattice> enumerate_irls(std::size_t n, std::size_t jobs) {
  return convert(theories::integral_rl(), n, jobs);
}

std::vector<ResiduatedLattice> enumerate_rls(std::size_t n, std::size_t jobs) {
  return convert(theories::residuated_lattice(), n, jobs);
}

std::vector<std::vector<Index>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<Index>> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<Index> s;
    for (Index i = 0; i < n; ++i)
      if ((bits >> i) & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace resq::drivers
