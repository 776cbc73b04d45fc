#include "resq/word_problem.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace resq {

const char* to_string(WordProblemResult::Verdict v) {
  switch (v) {
    case WordProblemResult::Verdict::Equal: return "equal";
    case WordProblemResult::Verdict::Distinct: return "distinct";
    case WordProblemResult::Verdict::Unknown: break;
  }
  return "unknown";
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

using Table = std::unordered_map<std::vector<int>, int, KeyHash>;

// Ground congruence closure over every term of depth at most d built from
// the constants and the generators, plus the subterms of the query and the
// relations. Axioms are instantiated with congruence classes; an instance
// counts when both of its sides name terms of the universe. When a level is
// saturated the universe grows by one level, until the term cap stops it.
class Derivation {
 public:
  enum class State { Running, Equal, Stuck };

  Derivation(const Theory& th, const std::vector<std::string>& gens, const std::vector<Equation>& relations,
             const Term& s, const Term& t, std::size_t cap)
      : th_(th), gens_(gens), cap_(cap) {
    for (std::size_t i = 0; i < th.sig.size(); ++i)
      if (th.sig[i].arity == 0) intern(static_cast<int>(i), {});
    for (std::size_t g = 0; g < gens.size(); ++g) intern(static_cast<int>(th.sig.size() + g), {});
    for (const Equation& e : relations) relations_.emplace_back(ground(e.lhs), ground(e.rhs));
    s_ = ground(s);
    t_ = ground(t);
    for (const Equation& e : th.axioms) {
      std::vector<std::string> slots = vars_of(e);
      axioms_.push_back(Axiom{compile(e.lhs, slots), compile(e.rhs, slots), slots.size()});
    }
  }

  State state() const { return state_; }
  std::size_t depth() const { return level_; }
  std::size_t terms() const { return nodes_.size(); }

  State step(std::size_t units) {
    while (state_ == State::Running && units > 0) {
      if (!in_pass_) {
        for (std::size_t i = 0; i < relations_.size(); ++i)
          merge(relations_[i].first, relations_[i].second, Source::Relation, i);
        rebuild();
        if (check()) return state_;
        begin_pass();
        continue;
      }
      if (axiom_ == axioms_.size()) {
        bool merged = rebuild();
        if (check()) return state_;
        if (!merged && !progress_) {
          if (!deepen()) {
            state_ = State::Stuck;
            return state_;
          }
          in_pass_ = false;
        } else {
          begin_pass();
        }
        continue;
      }
      const Axiom& ax = axioms_[axiom_];
      if (ax.vars > 0 && classes_.empty()) {
        next_axiom();
        continue;
      }
      --units;
      binding_.resize(ax.vars);
      for (std::size_t k = 0; k < ax.vars; ++k) binding_[k] = classes_[tuple_[k]];
      int l = lookup(ax.lhs);
      int r = l < 0 ? -1 : lookup(ax.rhs);
      if (l >= 0 && r >= 0 && merge(l, r, Source::Axiom, axiom_)) {
        progress_ = true;
        if (check()) return state_;
      }
      advance();
    }
    return state_;
  }

  std::vector<std::string> trace() const {
    std::vector<std::string> out;
    for (const Merge& m : merges_) {
      std::string why;
      switch (m.source) {
        case Source::Relation: why = "relation " + std::to_string(m.label + 1); break;
        case Source::Axiom: why = "axiom " + to_string(th_.sig, th_.axioms[m.label]); break;
        case Source::Congruence: why = "congruence"; break;
      }
      out.push_back(render(m.lhs) + " = " + render(m.rhs) + "  [" + why + "]");
    }
    return out;
  }

 private:
  struct Node {
    int sym;
    std::vector<int> kids;
    std::size_t depth;
  };
  struct Pat {
    int var = -1;
    int sym = -1;
    std::vector<int> kids;
  };
  struct Axiom {
    int lhs, rhs;
    std::size_t vars;
  };
  enum class Source { Relation, Axiom, Congruence };
  struct Merge {
    Source source;
    std::size_t label;
    int lhs, rhs;
  };

  int intern(int sym, std::vector<int> kids) {
    std::vector<int> key;
    key.reserve(kids.size() + 1);
    key.push_back(sym);
    key.insert(key.end(), kids.begin(), kids.end());
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    std::size_t d = 0;
    for (int k : kids) d = std::max(d, nodes_[k].depth + 1);
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{sym, std::move(kids), d});
    parent_.push_back(id);
    intern_.emplace(std::move(key), id);
    return id;
  }

  int ground(const Term& t) {
    if (t.is_var()) {
      auto it = std::find(gens_.begin(), gens_.end(), t.name());
      if (it == gens_.end()) throw Error("'" + t.name() + "' is not a generator");
      return intern(static_cast<int>(th_.sig.size() + (it - gens_.begin())), {});
    }
    std::vector<int> kids;
    for (const Term& a : t.args()) kids.push_back(ground(a));
    return intern(static_cast<int>(t.symbol()), std::move(kids));
  }

  int compile(const Term& t, const std::vector<std::string>& slots) {
    Pat p;
    if (t.is_var()) {
      p.var = static_cast<int>(std::find(slots.begin(), slots.end(), t.name()) - slots.begin());
    } else {
      p.sym = static_cast<int>(t.symbol());
      for (const Term& a : t.args()) p.kids.push_back(compile(a, slots));
    }
    pats_.push_back(std::move(p));
    return static_cast<int>(pats_.size() - 1);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool merge(int a, int b, Source src, std::size_t label) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (ra > rb) std::swap(ra, rb);
    parent_[rb] = ra;
    merges_.push_back(Merge{src, label, a, b});
    return true;
  }

  bool check() {
    if (find(s_) == find(t_)) state_ = State::Equal;
    return state_ == State::Equal;
  }

  // Recomputes the signature table and merges congruent terms to a fixpoint.
  bool rebuild() {
    bool any = false;
    bool changed = true;
    while (changed) {
      changed = false;
      table_.clear();
      for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        std::vector<int> key{nodes_[i].sym};
        for (int k : nodes_[i].kids) key.push_back(find(k));
        auto [it, fresh] = table_.emplace(std::move(key), i);
        if (!fresh && merge(it->second, i, Source::Congruence, 0)) changed = any = true;
      }
    }
    return any;
  }

  int lookup(int p) {
    const Pat& pat = pats_[p];
    if (pat.var >= 0) return find(binding_[pat.var]);
    std::vector<int> key{pat.sym};
    for (int k : pat.kids) {
      int v = lookup(k);
      if (v < 0) return -1;
      key.push_back(v);
    }
    auto it = table_.find(key);
    return it == table_.end() ? -1 : find(it->second);
  }

  void begin_pass() {
    in_pass_ = true;
    progress_ = false;
    classes_.clear();
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
      if (find(i) == i) classes_.push_back(i);
    axiom_ = 0;
    tuple_.assign(axioms_.empty() ? 0 : axioms_[0].vars, 0);
  }

  void next_axiom() {
    ++axiom_;
    tuple_.assign(axiom_ < axioms_.size() ? axioms_[axiom_].vars : 0, 0);
  }

  void advance() {
    for (std::size_t k = tuple_.size(); k-- > 0;) {
      if (++tuple_[k] < classes_.size()) return;
      tuple_[k] = 0;
    }
    next_axiom();
  }

  // Adds every term of depth level_+1; false when that would pass the cap.
  bool deepen() {
    std::vector<int> low, top;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      if (nodes_[i].depth <= level_) low.push_back(i);
      if (nodes_[i].depth == level_) top.push_back(i);
    }
    double fresh = 0;
    for (std::size_t f = 0; f < th_.sig.size(); ++f) {
      double k = static_cast<double>(th_.sig[f].arity);
      if (k == 0) continue;
      fresh += std::pow(static_cast<double>(low.size()), k) -
               std::pow(static_cast<double>(low.size() - top.size()), k);
    }
    if (fresh == 0 || static_cast<double>(nodes_.size()) + fresh > static_cast<double>(cap_)) return false;
    for (std::size_t f = 0; f < th_.sig.size(); ++f) {
      std::size_t k = th_.sig[f].arity;
      if (k == 0) continue;
      std::vector<std::size_t> odo(k, 0);
      while (true) {
        std::vector<int> kids(k);
        bool reaches = false;
        for (std::size_t j = 0; j < k; ++j) {
          kids[j] = low[odo[j]];
          reaches = reaches || nodes_[kids[j]].depth == level_;
        }
        if (reaches) intern(static_cast<int>(f), std::move(kids));
        std::size_t j = k;
        while (j-- > 0 && ++odo[j] == low.size()) odo[j] = 0;
        if (j == static_cast<std::size_t>(-1)) break;
      }
    }
    ++level_;
    return true;
  }

  std::string render(int i) const {
    const Node& n = nodes_[i];
    const std::string& name = static_cast<std::size_t>(n.sym) < th_.sig.size()
                                  ? th_.sig[n.sym].name
                                  : gens_[n.sym - th_.sig.size()];
    if (n.kids.empty()) return name;
    std::string out = "(" + name;
    for (int k : n.kids) out += " " + render(k);
    return out + ")";
  }

  const Theory& th_;
  std::vector<std::string> gens_;
  std::size_t cap_;
  std::vector<Node> nodes_;
  std::vector<int> parent_;
  Table intern_;
  Table table_;
  std::vector<Pat> pats_;
  std::vector<Axiom> axioms_;
  std::vector<std::pair<int, int>> relations_;
  std::vector<Merge> merges_;
  int s_ = 0, t_ = 0;
  std::size_t level_ = 0;
  State state_ = State::Running;
  bool in_pass_ = false;
  bool progress_ = false;
  std::vector<int> classes_;
  std::vector<int> binding_;
  std::size_t axiom_ = 0;
  std::vector<std::size_t> tuple_;
};

// Finite models of the relations in which s and t differ, smallest first.
class Refutation {
 public:
  enum class State { Running, Found, Stuck };

  Refutation(const Theory& th, QuasiEquation q, std::size_t max_size, const Guards& guards)
      : th_(th), q_(std::move(q)), max_(max_size), guards_(guards) {}

  State state() const { return state_; }
  std::size_t exhausted() const { return size_ - 1; }
  const Countermodel& model() const { return *model_; }

  State step(std::size_t units) {
    if (state_ != State::Running) return state_;
    if (size_ > max_) return state_ = State::Stuck;
    try {
      if (!search_) search_.emplace(th_, q_, size_, guards_);
    } catch (const GuardError&) {
      return state_ = State::Stuck;
    }
    switch (search_->step(units)) {
      case ModelSearch::Status::Found:
        model_ = search_->current();
        return state_ = State::Found;
      case ModelSearch::Status::Exhausted:
        search_.reset();
        ++size_;
        break;
      case ModelSearch::Status::Running:
        break;
    }
    return state_;
  }

 private:
  const Theory& th_;
  QuasiEquation q_;
  std::size_t max_;
  const Guards& guards_;
  std::size_t size_ = 1;
  std::optional<ModelSearch> search_;
  std::optional<Countermodel> model_;
  State state_ = State::Running;
};

}  // namespace

WordProblemResult word_problem(const Theory& th, const Presentation& pres, const Term& s, const Term& t,
                               const WordProblemOptions& opts, const Guards& guards) {
  std::vector<std::string> gens = pres.vars;
  QuasiEquation q{pres.relations, Equation{s, t}};
  for (const std::string& v : vars_of(q))
    if (std::find(gens.begin(), gens.end(), v) == gens.end()) gens.push_back(v);
  for (const std::string& g : gens)
    if (th.sig.find(g)) throw Error("generator '" + g + "' clashes with an operation symbol");

  WordProblemResult res;
  Derivation left(th, gens, pres.relations, s, t, opts.term_cap);
  std::size_t max_size = opts.max_size == 0 ? guards.model_size_cap : std::min(opts.max_size, guards.model_size_cap);
  Refutation right(th, q, max_size, guards);
  const std::size_t quantum = std::max<std::size_t>(opts.quantum, 1);

  auto finish = [&](WordProblemResult::Verdict v) {
    res.verdict = v;
    res.depth = left.depth();
    res.terms = left.terms();
    res.sizes_exhausted = right.exhausted();
    return res;
  };

  while (true) {
    if (opts.deadline && Clock::now() >= *opts.deadline) break;
    if (opts.max_rounds != 0 && res.rounds >= opts.max_rounds) break;
    if (left.state() == Derivation::State::Stuck && right.state() == Refutation::State::Stuck) break;
    ++res.rounds;
    if (left.step(quantum) == Derivation::State::Equal) {
      res.trace = left.trace();
      return finish(WordProblemResult::Verdict::Equal);
    }
    if (right.step(quantum) == Refutation::State::Found) {
      res.model = right.model();
      for (const std::string& g : gens) res.model->assignment.try_emplace(g, 0);
      return finish(WordProblemResult::Verdict::Distinct);
    }
  }
  return finish(WordProblemResult::Verdict::Unknown);
}

}  // namespace resq
