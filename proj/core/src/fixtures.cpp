#include "resq/fixtures.hpp"

#include <numeric>
#include <string>

namespace resq::fixtures {

Poset chain_named(const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = true;
  return Poset::from_matrix(names, m);
}

namespace {

std::vector<std::string> godel_names(std::size_t n) {
  if (n == 1) return {"1"};
  std::vector<std::string> names{"0"};
  if (n == 3) {
    names.push_back("a");
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) names.push_back("a" + std::to_string(i));
  }
  names.push_back("1");
  return names;
}

std::string fraction(std::size_t num, std::size_t den) {
  if (num == 0) return "0";
  if (num == den) return "1";
  std::size_t g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

}  // namespace

ResiduatedLattice godel_chain(std::size_t n) {
  Poset order = chain_named(godel_names(n));
  Table mult(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) mult.at(i, j) = std::min(i, j);
  return make_residuated_lattice(make_pomonoid(order, mult, static_cast<Index>(n - 1)));
}

ResiduatedLattice lukasiewicz_chain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(n == 1 ? "1" : fraction(i, n - 1));
  Poset order = chain_named(names);
  Table mult(n);
  const long top = static_cast<long>(n) - 1;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) mult.at(i, j) = static_cast<Index>(std::max(0L, long(i) + long(j) - top));
  return make_residuated_lattice(make_pomonoid(order, mult, static_cast<Index>(n - 1)));
}

ResiduatedLattice boolean_algebra(std::size_t atoms) {
  const std::size_t n = std::size_t{1} << atoms;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == 0) names.push_back("0");
    else if (s == n - 1) names.push_back("1");
    else {
      std::string nm;
      for (std::size_t a = 0; a < atoms; ++a)
        if (s >> a & 1) nm += static_cast<char>('a' + a);
      names.push_back(nm);
    }
  }
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i & j) == i;
  Table mult(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) mult.at(i, j) = i & j;
  return make_residuated_lattice(make_pomonoid(Poset::from_matrix(names, m), mult, static_cast<Index>(n - 1)));
}

ResiduatedLattice trivial() { return godel_chain(1); }

Poset diamond() {
  return Poset::from_covers({"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

Poset pentagon() {
  return Poset::from_covers({"0", "a", "b", "c", "1"}, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}});
}

}  // namespace resq::fixtures
