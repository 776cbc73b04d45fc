#include "resq/common.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace resq {

ValidationError::ValidationError(std::string axiom, std::vector<Index> witness, const std::string& detail)
    : Error(axiom + ": " + detail), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

Guards Guards::parse(const std::string& text) {
  Guards g;
  if (text.empty()) return g;
  auto to_size = [&](const std::string& v) -> std::size_t {
    try {
      std::size_t pos = 0;
      unsigned long long x = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
      throw ParseError("RESQ_GUARD: not a number: '" + v + "'");
    }
  };
  if (text.find('=') == std::string::npos) {
    g.max_ideals = to_size(text);
    return g;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("RESQ_GUARD: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::size_t value = to_size(item.substr(eq + 1));
    if (key == "max_ideals" || key == "ideals") g.max_ideals = value;
    else if (key == "max_lattice" || key == "lattice") g.max_lattice = value;
    else if (key == "powerset_base" || key == "powerset") g.powerset_base = value;
    else if (key == "max_subreduct" || key == "subreduct") g.max_subreduct = value;
    else if (key == "model_size_cap" || key == "models") g.model_size_cap = value;
    else if (key == "exhaustive_subsets" || key == "subsets") g.exhaustive_subsets = value;
    else throw ParseError("RESQ_GUARD: unknown key '" + key + "'");
  }
  return g;
}

const Guards& Guards::current() {
  static const Guards g = [] {
    const char* env = std::getenv("RESQ_GUARD");
    return env ? Guards::parse(env) : Guards{};
  }();
  return g;
}

ElementSet::ElementSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

ElementSet ElementSet::full(std::size_t universe) {
  ElementSet s(universe);
  for (Index i = 0; i < universe; ++i) s.set(i);
  return s;
}

ElementSet ElementSet::from_indices(std::size_t universe, const std::vector<Index>& members) {
  ElementSet s(universe);
  for (Index i : members) {
    if (i >= universe) throw Error("element index " + std::to_string(i) + " out of range");
    s.set(i);
  }
  return s;
}

ElementSet ElementSet::from_bits(std::size_t universe, std::uint64_t bits) {
  ElementSet s(universe);
  if (!s.words_.empty()) s.words_[0] = bits;
  return s;
}

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<Index> ElementSet::indices() const {
  std::vector<Index> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<Index>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

ElementSet& ElementSet::operator&=(const ElementSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  ElementSet r = *this;
  r &= o;
  return r;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
  ElementSet r = *this;
  r |= o;
  return r;
}

ElementSet ElementSet::operator-(const ElementSet& o) const {
  ElementSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
  return r;
}

ElementSet ElementSet::complement() const { return full(n_) - *this; }

bool ElementSet::operator<(const ElementSet& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  for (std::size_t i = words_.size(); i-- > 0;)
    if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
  return false;
}

std::size_t ElementSet::hash() const {
  std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
  for (auto w : words_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

void for_each_permutation(std::size_t n, const std::function<bool(const std::vector<Index>&)>& f) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  do {
    if (!f(perm)) return;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace resq
