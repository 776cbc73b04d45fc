#include "resq/order.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace resq {

namespace {

std::string idx(Index i) { return std::to_string(i); }

}  // namespace

Poset Poset::from_matrix(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = names.size();
  if (leq.size() != n) throw ValidationError("shape", {}, "matrix has " + std::to_string(leq.size()) + " rows, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (leq[i].size() != n) throw ValidationError("shape", {static_cast<Index>(i)}, "row " + std::to_string(i) + " has wrong length");
  {
    std::set<std::string> seen;
    for (Index i = 0; i < n; ++i)
      if (!seen.insert(names[i]).second) throw ValidationError("distinct-names", {i}, "duplicate element name '" + names[i] + "'");
  }
  for (Index i = 0; i < n; ++i)
    if (!leq[i][i]) throw ValidationError("reflexivity", {i}, "not " + names[i] + " <= " + names[i]);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i])
        throw ValidationError("antisymmetry", {i, j}, names[i] + " <= " + names[j] + " and " + names[j] + " <= " + names[i]);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (!leq[i][j]) continue;
      for (Index k = 0; k < n; ++k)
        if (leq[j][k] && !leq[i][k])
          throw ValidationError("transitivity", {i, j, k},
                                names[i] + " <= " + names[j] + " <= " + names[k] + " but not " + names[i] + " <= " + names[k]);
    }
  Poset p;
  p.names_ = std::move(names);
  p.down_.assign(n, ElementSet(n));
  p.up_.assign(n, ElementSet(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (leq[i][j]) {
        p.down_[j].set(i);
        p.up_[i].set(j);
      }
  return p;
}

Poset Poset::from_covers(std::vector<std::string> names, const std::vector<std::pair<Index, Index>>& covers) {
  const std::size_t n = names.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw ValidationError("covers", {lo, hi}, "cover pair out of range");
    m[lo][hi] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return from_matrix(std::move(names), m);
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) m[i][j] = true;
  }
  return from_matrix(std::move(names), m);
}

Poset Poset::antichain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    m[i][i] = true;
  }
  return from_matrix(std::move(names), m);
}

std::optional<Index> Poset::find(const std::string& name) const {
  for (Index i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Index Poset::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw Error("unknown element '" + name + "'");
}

std::vector<std::vector<bool>> Poset::matrix() const {
  std::vector<std::vector<bool>> m(size(), std::vector<bool>(size(), false));
  for (Index i = 0; i < size(); ++i)
    for (Index j = 0; j < size(); ++j) m[i][j] = leq(i, j);
  return m;
}

std::vector<std::pair<Index, Index>> Poset::covers() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < size(); ++i)
    for (Index j = 0; j < size(); ++j) {
      if (!lt(i, j)) continue;
      bool cover = true;
      for (Index k = 0; k < size() && cover; ++k)
        if (lt(i, k) && lt(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

ElementSet Poset::upper_bounds(const ElementSet& s) const {
  ElementSet r = ElementSet::full(size());
  for (Index i : s.indices()) r &= up_[i];
  return r;
}

ElementSet Poset::lower_bounds(const ElementSet& s) const {
  ElementSet r = ElementSet::full(size());
  for (Index i : s.indices()) r &= down_[i];
  return r;
}

std::optional<Index> Poset::least(const ElementSet& s) const {
  for (Index i : s.indices())
    if (s.is_subset_of(up_[i])) return i;
  return std::nullopt;
}

std::optional<Index> Poset::greatest(const ElementSet& s) const {
  for (Index i : s.indices())
    if (s.is_subset_of(down_[i])) return i;
  return std::nullopt;
}

bool Poset::is_chain() const {
  for (Index i = 0; i < size(); ++i)
    for (Index j = 0; j < size(); ++j)
      if (!leq(i, j) && !leq(j, i)) return false;
  return true;
}

Poset Poset::induced(const std::vector<Index>& subset) const {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> m(subset.size(), std::vector<bool>(subset.size(), false));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    names.push_back(name(subset[i]));
    for (std::size_t j = 0; j < subset.size(); ++j) m[i][j] = leq(subset[i], subset[j]);
  }
  return from_matrix(std::move(names), m);
}

Poset validate_poset(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq) {
  return Poset::from_matrix(std::move(names), leq);
}

Lattice Lattice::from_poset(Poset p) {
  const std::size_t n = p.size();
  if (n == 0) throw ValidationError("lattice", {}, "a lattice needs at least one element");
  Lattice l;
  l.meet = Table(n);
  l.join = Table(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      ElementSet pair = ElementSet::from_indices(n, {i, j});
      auto m = p.meet(pair);
      if (!m) throw ValidationError("lattice", {i, j}, p.name(i) + " and " + p.name(j) + " have no meet");
      auto s = p.join(pair);
      if (!s) throw ValidationError("lattice", {i, j}, p.name(i) + " and " + p.name(j) + " have no join");
      l.meet.at(i, j) = l.meet.at(j, i) = *m;
      l.join.at(i, j) = l.join.at(j, i) = *s;
    }
  l.order = std::move(p);
  return l;
}

Index Lattice::top() const { return *order.top(); }
Index Lattice::bottom() const { return *order.bottom(); }

bool is_lattice(const Poset& p) {
  if (p.size() == 0) return false;
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j) {
      ElementSet pair = ElementSet::from_indices(p.size(), {i, j});
      if (!p.meet(pair) || !p.join(pair)) return false;
    }
  return true;
}

bool is_down_set(const Poset& p, const ElementSet& s) {
  for (Index i : s.indices())
    if (!p.down(i).is_subset_of(s)) return false;
  return true;
}

ElementSet down_closure(const Poset& p, const ElementSet& s) {
  if (s.universe() != p.size()) throw Error("subset universe does not match poset size");
  ElementSet r(p.size());
  for (Index i : s.indices()) r |= p.down(i);
  return r;
}

ElementSet down_closure(const Poset& p, const std::vector<std::string>& names) {
  ElementSet s(p.size());
  for (const auto& n : names) s.set(p.index_of(n));
  return down_closure(p, s);
}

ElementSet up_closure(const Poset& p, const ElementSet& s) {
  ElementSet r(p.size());
  for (Index i : s.indices()) r |= p.up(i);
  return r;
}

std::string set_name(const Poset& base, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (Index i : s.indices()) {
    if (!first) out += ",";
    out += base.name(i);
    first = false;
  }
  return out + "}";
}

SetLattice::SetLattice(Poset base, std::vector<ElementSet> members, const Guards& guards) : base_(std::move(base)) {
  const std::size_t n = base_.size();
  for (const auto& m : members)
    if (m.universe() != n) throw Error("set family member has wrong universe");
  members.push_back(ElementSet::full(n));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.size() > guards.max_lattice)
    throw GuardError("set lattice with " + std::to_string(members.size()) + " members exceeds guard max_lattice=" +
                     std::to_string(guards.max_lattice));
  members_ = std::move(members);
  for (Index i = 0; i < members_.size(); ++i) index_.emplace(members_[i], i);
  for (Index i = 0; i < members_.size(); ++i)
    for (Index j = i + 1; j < members_.size(); ++j)
      if (!index_.count(members_[i] & members_[j]))
        throw ValidationError("intersection-closed", {i, j},
                              set_name(base_, members_[i]) + " and " + set_name(base_, members_[j]) + " meet outside the family");
  const std::size_t m = members_.size();
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
  for (Index i = 0; i < m; ++i) {
    names.push_back(set_name(base_, members_[i]));
    for (Index j = 0; j < m; ++j) leq[i][j] = members_[i].is_subset_of(members_[j]);
  }
  lattice_.order = Poset::from_matrix(std::move(names), leq);
  lattice_.meet = Table(m);
  lattice_.join = Table(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = i; j < m; ++j) {
      Index mt = index_.at(members_[i] & members_[j]);
      Index jn = closure(members_[i] | members_[j]);
      lattice_.meet.at(i, j) = lattice_.meet.at(j, i) = mt;
      lattice_.join.at(i, j) = lattice_.join.at(j, i) = jn;
    }
}

std::optional<Index> SetLattice::find(const ElementSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index SetLattice::closure(const ElementSet& s) const {
  if (auto i = find(s)) return *i;
  ElementSet acc = ElementSet::full(base_.size());
  for (const auto& m : members_)
    if (s.is_subset_of(m)) acc &= m;
  return index_.at(acc);
}

std::vector<Index> SetLattice::principal_map() const {
  std::vector<Index> out;
  for (Index x = 0; x < base_.size(); ++x) out.push_back(principal(x));
  return out;
}

std::vector<ElementSet> enumerate_order_ideals(const Poset& p, const Guards& guards) {
  const std::size_t n = p.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return p.down(a).count() < p.down(b).count(); });
  std::vector<ElementSet> out;
  ElementSet cur(n);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      if (out.size() >= guards.max_ideals)
        throw GuardError("order-ideal count exceeds guard max_ideals=" + std::to_string(guards.max_ideals));
      out.push_back(cur);
      return;
    }
    Index e = order[k];
    self(self, k + 1);
    ElementSet below = p.down(e);
    below.reset(e);
    if (below.is_subset_of(cur)) {
      cur.set(e);
      self(self, k + 1);
      cur.reset(e);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

SetLattice all_order_ideals(const Poset& p, const Guards& guards) {
  return SetLattice(p, enumerate_order_ideals(p, guards), guards);
}

SetLattice intersection_closure(const Poset& base, const std::vector<ElementSet>& generators) {
  std::set<ElementSet> family{ElementSet::full(base.size())};
  for (const auto& g : generators) {
    std::vector<ElementSet> add;
    for (const auto& s : family) add.push_back(s & g);
    family.insert(add.begin(), add.end());
  }
  return SetLattice(base, std::vector<ElementSet>(family.begin(), family.end()));
}

SetLattice dm_completion(const Poset& p) {
  std::vector<ElementSet> principals;
  for (Index x = 0; x < p.size(); ++x) principals.push_back(p.down(x));
  return intersection_closure(p, principals);
}

SetLattice crawley_completion(const Poset& p) {
  std::vector<ElementSet> keep;
  for (const auto& ideal : enumerate_order_ideals(p)) {
    bool closed = true;
    for (Index j = 0; j < p.size() && closed; ++j) {
      if (ideal.test(j)) continue;
      ElementSet below = ideal & p.down(j);
      if (below.empty()) continue;
      auto s = p.join(below);
      if (s && *s == j) closed = false;
    }
    if (closed) keep.push_back(ideal);
  }
  return SetLattice(p, keep);
}

Verdict is_closure_system(const Poset& k, const ElementSet& c) {
  for (Index x = 0; x < k.size(); ++x)
    if (!k.least(c & k.up(x))) return Verdict::fail("no least member above " + k.name(x), {x});
  return Verdict::pass();
}

UnaryMap closure_operator_of(const Poset& k, const ElementSet& c) {
  UnaryMap g(k.size());
  for (Index x = 0; x < k.size(); ++x) {
    auto m = k.least(c & k.up(x));
    if (!m) throw ValidationError("closure-system", {x}, "no least member above " + k.name(x));
    g[x] = *m;
  }
  return g;
}

Verdict is_closure_operator(const Poset& k, const UnaryMap& g) {
  if (g.size() != k.size()) return Verdict::fail("map has wrong length");
  for (Index x = 0; x < k.size(); ++x)
    if (g[x] >= k.size()) return Verdict::fail("value out of range at " + idx(x), {x});
  for (Index x = 0; x < k.size(); ++x)
    for (Index y = 0; y < k.size(); ++y)
      if (k.leq(x, y) && !k.leq(g[x], g[y]))
        return Verdict::fail("not monotone at " + k.name(x) + " <= " + k.name(y), {x, y});
  for (Index x = 0; x < k.size(); ++x)
    if (!k.leq(x, g[x])) return Verdict::fail("not enlarging at " + k.name(x), {x});
  for (Index x = 0; x < k.size(); ++x)
    if (g[g[x]] != g[x]) return Verdict::fail("not idempotent at " + k.name(x), {x});
  return Verdict::pass();
}

ElementSet image_of(std::size_t n, const UnaryMap& g) {
  ElementSet s(n);
  for (Index v : g) s.set(v);
  return s;
}

Poset induced_on(const Poset& k, const ElementSet& c) { return k.induced(c.indices()); }

DensityReport density_check(const Poset& p, const Poset& l, const std::vector<Index>& map) {
  if (map.size() != p.size()) throw Error("embedding map has wrong length");
  DensityReport r;
  for (Index i = 0; i < p.size() && r.order_embedding; ++i)
    for (Index j = 0; j < p.size(); ++j)
      if (p.leq(i, j) != l.leq(map[i], map[j])) {
        r.order_embedding = Verdict::fail("order not reflected at " + p.name(i) + ", " + p.name(j), {i, j});
        break;
      }
  if (!r.order_embedding) throw ValidationError("order-embedding", r.order_embedding.witness, r.order_embedding.detail);
  ElementSet image(l.size());
  for (Index v : map) image.set(v);
  for (Index y = 0; y < l.size(); ++y) {
    auto j = l.join(image & l.down(y));
    if (r.join_dense && (!j || *j != y)) r.join_dense = Verdict::fail(l.name(y) + " is not a join of embedded elements", {y});
    auto m = l.meet(image & l.up(y));
    if (r.meet_dense && (!m || *m != y)) r.meet_dense = Verdict::fail(l.name(y) + " is not a meet of embedded elements", {y});
  }
  return r;
}

FaithfulnessReport meet_faithfulness_check(const Poset& p, const Poset& l, const std::vector<Index>& map,
                                           std::uint64_t seed, const Guards& guards) {
  FaithfulnessReport r;
  const std::size_t n = p.size();
  auto check = [&](const ElementSet& x) {
    ++r.subsets_checked;
    auto m = p.meet(x);
    if (!m) return;
    ElementSet img(l.size());
    for (Index i : x.indices()) img.set(map[i]);
    auto lm = l.meet(img);
    if (!lm || *lm != map[*m]) r.violations.push_back(x.indices());
  };
  if (n <= guards.exhaustive_subsets) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) check(ElementSet::from_bits(n, bits));
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 4096; ++t) {
      ElementSet x(n);
      for (Index i = 0; i < n; ++i)
        if (rng() & 1) x.set(i);
      check(x);
    }
  }
  return r;
}

namespace {

std::uint64_t poset_code(const std::vector<std::vector<bool>>& m, const std::vector<Index>& perm) {
  // perm maps old index to new index; the code lists the relabelled matrix row-major.
  const std::size_t n = m.size();
  std::vector<Index> inv(n);
  for (Index i = 0; i < n; ++i) inv[perm[i]] = i;
  std::uint64_t code = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) code = (code << 1) | (m[inv[i]][inv[j]] ? 1u : 0u);
  return code;
}

}  // namespace

std::vector<Poset> enumerate_posets(std::size_t n) {
  if (n > 7) throw GuardError("poset enumeration is limited to 7 elements");
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::uint64_t> codes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) m[pairs[b].first][pairs[b].second] = true;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        for (std::size_t k = 0; k < n && transitive; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) transitive = false;
    if (!transitive) continue;
    std::uint64_t best = UINT64_MAX;
    for_each_permutation(n, [&](const std::vector<Index>& perm) {
      best = std::min(best, poset_code(m, perm));
      return true;
    });
    codes.insert(best);
  }
  std::vector<Poset> out;
  for (auto it = codes.rbegin(); it != codes.rend(); ++it) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    std::uint64_t code = *it;
    for (std::size_t k = n * n; k-- > 0;) {
      m[k / n][k % n] = code & 1;
      code >>= 1;
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    out.push_back(Poset::from_matrix(std::move(names), m));
  }
  return out;
}

std::string hasse_dot(const Poset& p, const std::string& graph_name) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(graph_name) << " {\n  rankdir=BT;\n";
  for (Index i = 0; i < p.size(); ++i) os << "  " << quote(p.name(i)) << ";\n";
  for (auto [lo, hi] : p.covers()) os << "  " << quote(p.name(lo)) << " -> " << quote(p.name(hi)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace resq
