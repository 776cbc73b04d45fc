#include "resq/model_search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

namespace resq {

namespace {

struct CTerm {
  int var = -1;
  int sym = -1;
  std::vector<int> kids;
};

struct Constraint {
  int lhs = 0;
  int rhs = 0;
  bool negated = false;
};

struct Instance {
  int con = 0;
  std::size_t vals = 0;
};

// The search problem for one carrier size: table cells, compiled terms and
// every ground instance of every axiom.
struct Problem {
  std::size_t n = 0;
  std::size_t base_symbols = 0;
  Signature sig;  // theory symbols, then one constant per quasi-equation variable
  std::vector<std::string> frozen;
  std::vector<std::size_t> offset;
  std::size_t cells = 0;
  std::vector<int> maxarg;
  std::vector<std::size_t> symbol_of;
  std::vector<int> order;
  std::vector<CTerm> pool;
  std::vector<Constraint> cons;
  std::vector<Instance> inst;
  std::vector<Index> inst_vals;

  int compile(const Term& t, const std::vector<std::string>& slots, bool frozen_vars) {
    CTerm c;
    if (t.is_var()) {
      if (frozen_vars) {
        auto it = std::find(frozen.begin(), frozen.end(), t.name());
        c.sym = static_cast<int>(base_symbols + (it - frozen.begin()));
      } else {
        c.var = static_cast<int>(std::find(slots.begin(), slots.end(), t.name()) - slots.begin());
      }
    } else {
      c.sym = static_cast<int>(t.symbol());
      for (const Term& a : t.args()) c.kids.push_back(compile(a, slots, frozen_vars));
    }
    pool.push_back(std::move(c));
    return static_cast<int>(pool.size() - 1);
  }
};

std::shared_ptr<const Problem> make_problem(const Theory& th, const std::optional<QuasiEquation>& q, std::size_t n,
                                            const Guards& guards) {
  if (n == 0) throw std::invalid_argument("model size must be positive");
  if (n > guards.model_size_cap)
    throw GuardError("model size " + std::to_string(n) + " exceeds the cap of " + std::to_string(guards.model_size_cap));
  auto p = std::make_shared<Problem>();
  p->n = n;
  p->sig = th.sig;
  p->base_symbols = th.sig.size();
  if (q) {
    p->frozen = vars_of(*q);
    for (const std::string& v : p->frozen) p->sig.add(v, 0);
  }
  for (std::size_t s = 0; s < p->sig.size(); ++s) {
    p->offset.push_back(p->cells);
    std::size_t c = 1;
    for (std::size_t k = 0; k < p->sig[s].arity; ++k) c *= n;
    for (std::size_t i = 0; i < c; ++i) {
      int m = -1;
      std::size_t rest = i;
      for (std::size_t k = 0; k < p->sig[s].arity; ++k) {
        m = std::max(m, static_cast<int>(rest % n));
        rest /= n;
      }
      p->maxarg.push_back(m);
      p->symbol_of.push_back(p->sig[s].arity == 0 ? s : s + p->sig.size());
    }
    p->cells += c;
  }
  p->order.resize(p->cells);
  for (std::size_t i = 0; i < p->cells; ++i) p->order[i] = static_cast<int>(i);
  std::stable_sort(p->order.begin(), p->order.end(), [&](int a, int b) { return p->maxarg[a] < p->maxarg[b]; });

  std::size_t budget = 20'000'000;
  for (const Equation& e : th.axioms) {
    std::vector<std::string> slots = vars_of(e);
    Constraint c{p->compile(e.lhs, slots, false), p->compile(e.rhs, slots, false), false};
    p->cons.push_back(c);
    std::size_t count = 1;
    for (std::size_t k = 0; k < slots.size(); ++k) count *= n;
    if (count > budget) throw GuardError("too many axiom instances");
    budget -= count;
    std::vector<Index> vals(slots.size(), 0);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t rest = i;
      for (std::size_t k = slots.size(); k-- > 0;) {
        vals[k] = static_cast<Index>(rest % n);
        rest /= n;
      }
      p->inst.push_back(Instance{static_cast<int>(p->cons.size() - 1), p->inst_vals.size()});
      p->inst_vals.insert(p->inst_vals.end(), vals.begin(), vals.end());
    }
  }
  if (q) {
    for (const Equation& e : q->premises) {
      p->cons.push_back(Constraint{p->compile(e.lhs, {}, true), p->compile(e.rhs, {}, true), false});
      p->inst.push_back(Instance{static_cast<int>(p->cons.size() - 1), p->inst_vals.size()});
    }
    p->cons.push_back(Constraint{p->compile(q->conclusion.lhs, {}, true), p->compile(q->conclusion.rhs, {}, true), true});
    p->inst.push_back(Instance{static_cast<int>(p->cons.size() - 1), p->inst_vals.size()});
  }
  return p;
}

using Prefix = std::vector<std::pair<int, Index>>;

class Solver {
 public:
  enum class Status { Running, Found, Exhausted };

  explicit Solver(std::shared_ptr<const Problem> p)
      : p_(std::move(p)),
        val_(p_->cells, kAbsent),
        dom_(p_->cells, (std::uint32_t{1} << p_->n) - 1),
        watch_(p_->cells),
        version_(p_->inst.size(), 0) {}

  void set_prefix(Prefix prefix) { prefix_ = std::move(prefix); }

  Status run(std::size_t budget) {
    if (exhausted_) return Status::Exhausted;
    if (!started_ && !start()) return Status::Exhausted;
    while (budget-- > 0) {
      if (backtrack_) {
        backtrack_ = false;
        if (!next_branch()) {
          exhausted_ = true;
          return Status::Exhausted;
        }
      }
      if (!propagate()) {
        backtrack_ = true;
        continue;
      }
      int c = next_cell();
      if (c < 0) {
        backtrack_ = true;
        return Status::Found;
      }
      decide(c);
    }
    return Status::Running;
  }

  // Decision prefixes of length `depth` in search order (shorter ones lead
  // straight to a model).
  std::vector<Prefix> collect(std::size_t depth) {
    std::vector<Prefix> out;
    if (!start()) return out;
    while (true) {
      if (backtrack_) {
        backtrack_ = false;
        if (!next_branch()) break;
      }
      if (!propagate()) {
        backtrack_ = true;
        continue;
      }
      int c = next_cell();
      if (c < 0 || frames_.size() == depth) {
        Prefix pre;
        for (const Frame& f : frames_) pre.emplace_back(f.cell, f.next - 1);
        out.push_back(std::move(pre));
        backtrack_ = true;
        continue;
      }
      decide(c);
    }
    return out;
  }

  Index value(std::size_t cell) const { return val_[cell]; }
  std::size_t nodes() const { return nodes_; }

 private:
  struct Watch {
    int inst;
    std::uint32_t version;
  };
  struct Marks {
    std::size_t trail, dtrail, wtrail, vtrail;
  };
  struct Frame {
    int cell;
    Index next;
    Index max;
    Marks marks;
  };
  struct TrailEntry {
    int cell;
    int mdn;
  };

  bool start() {
    started_ = true;
    for (std::size_t i = 0; i < p_->inst.size(); ++i)
      if (!process(static_cast<int>(i))) return fail_start();
    if (!propagate()) return fail_start();
    for (auto [cell, v] : prefix_) {
      if (val_[cell] != kAbsent) {
        if (val_[cell] != v) return fail_start();
        continue;
      }
      if (!((dom_[cell] >> v) & 1)) return fail_start();
      frames_.push_back(Frame{cell, v + 1, v, marks()});
      assign(cell, v);
      if (!propagate()) return fail_start();
    }
    fixed_ = frames_.size();
    return true;
  }

  bool fail_start() {
    exhausted_ = true;
    return false;
  }

  void decide(int c) {
    ++nodes_;
    Index limit = static_cast<Index>(std::min<int>(static_cast<int>(p_->n) - 1, std::max(mdn_, p_->maxarg[c]) + 1));
    frames_.push_back(Frame{c, 0, limit, marks()});
    backtrack_ = true;
  }

  bool next_branch() {
    while (frames_.size() > fixed_) {
      Frame& f = frames_.back();
      undo_to(f.marks);
      while (f.next <= f.max && !((dom_[f.cell] >> f.next) & 1)) ++f.next;
      if (f.next <= f.max) {
        assign(f.cell, f.next++);
        return true;
      }
      frames_.pop_back();
    }
    return false;
  }

  // Constants first, then symbols in signature order; within a symbol the smallest domain among
  // cells whose arguments are in use (or the next fresh element).
  int next_cell() const {
    int best = -1, best_size = 64;
    std::size_t best_sym = std::numeric_limits<std::size_t>::max();
    for (int c : p_->order) {
      if (p_->maxarg[c] > mdn_ + 1) break;
      if (val_[c] != kAbsent) continue;
      std::size_t sym = p_->symbol_of[c];
      int size = __builtin_popcount(dom_[c]);
      if (sym < best_sym || (sym == best_sym && size < best_size)) {
        best = c;
        best_sym = sym;
        best_size = size;
      }
    }
    return best;
  }

  void assign(int c, Index v) {
    val_[c] = v;
    trail_.push_back(TrailEntry{c, mdn_});
    mdn_ = std::max({mdn_, static_cast<int>(v), p_->maxarg[c]});
    queue_.push_back(c);
  }

  Marks marks() const { return Marks{trail_.size(), dtrail_.size(), wtrail_.size(), vtrail_.size()}; }

  void undo_to(const Marks& m) {
    while (trail_.size() > m.trail) {
      val_[trail_.back().cell] = kAbsent;
      mdn_ = trail_.back().mdn;
      trail_.pop_back();
    }
    while (dtrail_.size() > m.dtrail) {
      dom_[dtrail_.back().first] = dtrail_.back().second;
      dtrail_.pop_back();
    }
    while (wtrail_.size() > m.wtrail) {
      watch_[wtrail_.back()].pop_back();
      wtrail_.pop_back();
    }
    while (vtrail_.size() > m.vtrail) {
      version_[vtrail_.back().first] = vtrail_.back().second;
      vtrail_.pop_back();
    }
    queue_.clear();
  }

  // Watch lists only grow along a branch and are cut back on backtracking,
  // so registrations replaced deeper in the tree come back into force.
  bool propagate() {
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      const int cell = queue_[h];
      for (std::size_t i = 0; i < watch_[cell].size(); ++i) {
        Watch w = watch_[cell][i];
        if (version_[w.inst] != w.version) continue;
        if (!process(w.inst)) {
          queue_.clear();
          return false;
        }
      }
    }
    queue_.clear();
    return true;
  }

  int eval(int node, const Index* vals, int& blocked, bool& top, int root) const {
    const CTerm& t = p_->pool[node];
    if (t.var >= 0) return static_cast<int>(vals[t.var]);
    std::size_t cell = 0;
    for (int k : t.kids) {
      int v = eval(k, vals, blocked, top, root);
      if (v < 0) return -1;
      cell = cell * p_->n + static_cast<std::size_t>(v);
    }
    cell += p_->offset[t.sym];
    Index r = val_[cell];
    if (r == kAbsent) {
      blocked = static_cast<int>(cell);
      top = node == root;
      return -1;
    }
    return static_cast<int>(r);
  }

  // Evaluates an instance. The first missing cell b has every value that
  // would falsify the instance removed from its domain, and a single
  // survivor is assigned at once. The instance is then re-registered on b
  // and on every cell that blocks evaluation under some value of b. A fully
  // evaluated instance keeps its registrations so that backtracking past
  // them revives it.
  bool process(int i) {
    const Instance& in = p_->inst[i];
    const Constraint& c = p_->cons[in.con];
    const Index* vals = p_->inst_vals.data() + in.vals;
    int b = -1;
    bool top = false;
    int l = eval(c.lhs, vals, b, top, c.lhs);
    int r = l < 0 ? 0 : eval(c.rhs, vals, b, top, c.rhs);
    if (l >= 0 && r >= 0) return (l == r) != c.negated;
    std::uint32_t keep = 0;
    std::uint32_t d = dom_[b];
    int more[32];
    int nmore = 0;
    for (Index v = 0; v < p_->n; ++v) {
      if (!((d >> v) & 1)) continue;
      val_[b] = v;
      int bb = -1;
      bool tt = false;
      int l2 = eval(c.lhs, vals, bb, tt, c.lhs);
      int r2 = l2 < 0 ? 0 : eval(c.rhs, vals, bb, tt, c.rhs);
      if (l2 < 0 || r2 < 0) {
        keep |= std::uint32_t{1} << v;
        if (std::find(more, more + nmore, bb) == more + nmore) more[nmore++] = bb;
      } else if ((l2 == r2) != c.negated) {
        keep |= std::uint32_t{1} << v;
      }
    }
    val_[b] = kAbsent;
    if (keep == 0) return false;
    if (keep != d) {
      dtrail_.emplace_back(b, d);
      dom_[b] = keep;
    }
    vtrail_.emplace_back(i, version_[i]);
    const std::uint32_t ver = ++stamp_;
    version_[i] = ver;
    watch(b, Watch{i, ver});
    for (int k = 0; k < nmore; ++k) watch(more[k], Watch{i, ver});
    if ((keep & (keep - 1)) == 0) assign(b, static_cast<Index>(__builtin_ctz(keep)));
    return true;
  }

  void watch(int cell, Watch w) {
    watch_[cell].push_back(w);
    wtrail_.push_back(cell);
  }

  std::shared_ptr<const Problem> p_;
  std::vector<Index> val_;
  std::vector<std::uint32_t> dom_;
  std::vector<std::pair<int, std::uint32_t>> dtrail_;
  std::vector<std::vector<Watch>> watch_;
  std::vector<std::uint32_t> version_;
  std::uint32_t stamp_ = 0;
  std::vector<int> wtrail_;
  std::vector<std::pair<int, std::uint32_t>> vtrail_;
  std::vector<TrailEntry> trail_;
  std::vector<int> queue_;
  std::vector<Frame> frames_;
  Prefix prefix_;
  std::size_t fixed_ = 0;
  int mdn_ = -1;
  bool started_ = false;
  bool exhausted_ = false;
  bool backtrack_ = false;
  std::size_t nodes_ = 0;
};

Countermodel extract(const Problem& p, const Solver& s) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.n; ++i) names.push_back(std::to_string(i));
  Signature base;
  for (std::size_t i = 0; i < p.base_symbols; ++i) base.add(p.sig[i].name, p.sig[i].arity);
  Countermodel m{PartialAlgebra(base, std::move(names)), {}};
  for (std::size_t sym = 0; sym < p.base_symbols; ++sym)
    for (std::size_t c = 0; c < m.model.cells(sym); ++c) m.model.set_raw(sym, c, s.value(p.offset[sym] + c));
  for (std::size_t k = 0; k < p.frozen.size(); ++k) m.assignment[p.frozen[k]] = s.value(p.offset[p.base_symbols + k]);
  return m;
}

bool past(const std::optional<Clock::time_point>& deadline) { return deadline && Clock::now() >= *deadline; }

constexpr std::size_t kQuantum = 2048;

std::vector<Prefix> shard(const std::shared_ptr<const Problem>& p, std::size_t jobs) {
  std::vector<Prefix> prefixes;
  for (std::size_t depth = 1; depth <= 6; ++depth) {
    Solver s(p);
    prefixes = s.collect(depth);
    if (prefixes.size() >= 4 * jobs) break;
  }
  return prefixes;
}

enum class ShardState { Pending, Exhausted, Found, Aborted };

// Searches one size. Returns the first model in search order, or nothing;
// `complete` is false when the deadline cut the search short.
std::optional<Countermodel> search_size(const std::shared_ptr<const Problem>& p, std::size_t jobs,
                                        const std::optional<Clock::time_point>& deadline, bool& complete,
                                        std::size_t& nodes) {
  complete = true;
  if (jobs <= 1) {
    Solver s(p);
    while (true) {
      Solver::Status st = s.run(kQuantum);
      if (st == Solver::Status::Found) {
        nodes += s.nodes();
        return extract(*p, s);
      }
      if (st == Solver::Status::Exhausted) {
        nodes += s.nodes();
        return std::nullopt;
      }
      if (past(deadline)) {
        nodes += s.nodes();
        complete = false;
        return std::nullopt;
      }
    }
  }
  std::vector<Prefix> prefixes = shard(p, jobs);
  const std::size_t k = prefixes.size();
  std::vector<ShardState> state(k, ShardState::Pending);
  std::vector<std::optional<Countermodel>> found(k);
  std::vector<std::size_t> shard_nodes(k, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= k) return;
      if (i > best.load()) {
        state[i] = ShardState::Aborted;
        continue;
      }
      Solver s(p);
      s.set_prefix(prefixes[i]);
      while (true) {
        Solver::Status st = s.run(kQuantum);
        if (st == Solver::Status::Found) {
          found[i] = extract(*p, s);
          state[i] = ShardState::Found;
          std::size_t b = best.load();
          while (i < b && !best.compare_exchange_weak(b, i)) {
          }
          break;
        }
        if (st == Solver::Status::Exhausted) {
          state[i] = ShardState::Exhausted;
          break;
        }
        if (past(deadline) || i > best.load()) {
          state[i] = ShardState::Aborted;
          break;
        }
      }
      shard_nodes[i] = s.nodes();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, k); ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (std::size_t n : shard_nodes) nodes += n;
  for (std::size_t i = 0; i < k; ++i) {
    if (state[i] == ShardState::Found) return found[i];
    if (state[i] != ShardState::Exhausted) {
      complete = false;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

SearchResult countermodel_search(const Theory& th, const QuasiEquation& q, const SearchOptions& opts, const Guards& guards) {
  if (opts.max_size > guards.model_size_cap)
    throw GuardError("model size " + std::to_string(opts.max_size) + " exceeds the cap of " +
                     std::to_string(guards.model_size_cap));
  SearchResult r;
  for (std::size_t n = std::max<std::size_t>(opts.min_size, 1); n <= opts.max_size; ++n) {
    auto p = make_problem(th, q, n, guards);
    bool complete = true;
    r.size_reached = n;
    r.found = search_size(p, opts.jobs, opts.deadline, complete, r.nodes);
    if (r.found) return r;
    if (!complete) return r;
  }
  r.complete = true;
  return r;
}

std::vector<Index> canonical_code(const PartialAlgebra& a) {
  const std::size_t n = a.size();
  const Signature& sig = a.signature();
  std::vector<Index> best;
  std::vector<Index> code;
  for_each_permutation(n, [&](const std::vector<Index>& pi) {
    std::vector<Index> inv(n);
    for (Index i = 0; i < n; ++i) inv[pi[i]] = i;
    code.clear();
    bool bigger = false, smaller = best.empty();
    for (std::size_t s = 0; s < sig.size() && !bigger; ++s)
      for (std::size_t c = 0; c < a.cells(s); ++c) {
        std::size_t src = 0;
        std::size_t rest = c, mul = 1;
        for (std::size_t k = 0; k < sig[s].arity; ++k) {
          src += inv[rest % n] * mul;
          rest /= n;
          mul *= n;
        }
        Index v = a.raw(s, src);
        Index x = v == kAbsent ? kAbsent : pi[v];
        if (!smaller) {
          Index b = best[code.size()];
          if (x > b) {
            bigger = true;
            break;
          }
          if (x < b) smaller = true;
        }
        code.push_back(x);
      }
    if (!bigger && smaller) best = code;
    return true;
  });
  return best;
}

std::vector<PartialAlgebra> enumerate_algebras(const Theory& th, std::size_t size, std::size_t jobs, const Guards& guards) {
  auto p = make_problem(th, std::nullopt, size, guards);
  std::vector<std::vector<Countermodel>> per_shard;
  auto drain = [&](Solver& s, std::vector<Countermodel>& out) {
    while (true) {
      Solver::Status st = s.run(kQuantum);
      if (st == Solver::Status::Found) out.push_back(extract(*p, s));
      if (st == Solver::Status::Exhausted) return;
    }
  };
  if (jobs <= 1) {
    per_shard.resize(1);
    Solver s(p);
    drain(s, per_shard[0]);
  } else {
    std::vector<Prefix> prefixes = shard(p, jobs);
    per_shard.resize(prefixes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < prefixes.size();) {
        Solver s(p);
        s.set_prefix(prefixes[i]);
        drain(s, per_shard[i]);
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(jobs, prefixes.size()); ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  std::vector<PartialAlgebra> out;
  std::set<std::vector<Index>> seen;
  for (auto& models : per_shard)
    for (Countermodel& m : models)
      if (seen.insert(canonical_code(m.model)).second) out.push_back(std::move(m.model));
  return out;
}

struct ModelSearch::Impl {
  std::shared_ptr<const Problem> problem;
  Solver solver;
};

ModelSearch::ModelSearch(const Theory& th, const std::optional<QuasiEquation>& q, std::size_t size, const Guards& guards) {
  auto p = make_problem(th, q, size, guards);
  impl_ = std::make_unique<Impl>(Impl{p, Solver(p)});
}

ModelSearch::~ModelSearch() = default;
ModelSearch::ModelSearch(ModelSearch&&) noexcept = default;
ModelSearch& ModelSearch::operator=(ModelSearch&&) noexcept = default;

ModelSearch::Status ModelSearch::step(std::size_t max_nodes) {
  switch (impl_->solver.run(max_nodes)) {
    case Solver::Status::Found: return Status::Found;
    case Solver::Status::Exhausted: return Status::Exhausted;
    default: return Status::Running;
  }
}

Countermodel ModelSearch::current() const { return extract(*impl_->problem, impl_->solver); }
std::size_t ModelSearch::nodes() const { return impl_->solver.nodes(); }

}  // namespace resq
