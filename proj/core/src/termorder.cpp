#include "resq/termorder.hpp"

#include <cctype>
#include <stdexcept>

namespace resq {

struct FElement::Node {
  bool is_var = false;
  Op op = Op::Dot;
  std::string name;
  FElement left;
  FElement right;
  std::size_t leaves = 1;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

namespace {

const FElement& unit_ref() {
  static const FElement u;
  return u;
}

const std::string& empty_string() {
  static const std::string s;
  return s;
}

}  // namespace

FElement::FElement() = default;

FElement FElement::var(const std::string& name) {
  if (name.empty()) throw ParseError("empty variable name");
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->name = name;
  n->hash = std::hash<std::string>()(name);
  return FElement(std::move(n));
}

FElement FElement::make(Op op, const FElement& a, const FElement& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  auto n = std::make_shared<Node>();
  n->op = op;
  n->left = a;
  n->right = b;
  n->leaves = a.leaves() + b.leaves();
  n->depth = 1 + std::max(a.depth(), b.depth());
  std::size_t h = op == Op::Dot ? 0x9e3779b97f4a7c15ULL : 0xc2b2ae3d27d4eb4fULL;
  h ^= a.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
  h ^= b.hash() * 0x100000001b3ULL + (h << 6) + (h >> 2);
  n->hash = h;
  return FElement(std::move(n));
}

bool FElement::is_var() const { return node_ && node_->is_var; }
bool FElement::is_compound() const { return node_ && !node_->is_var; }

Op FElement::op() const {
  if (!is_compound()) throw std::logic_error("op() on a non-compound term");
  return node_->op;
}

const FElement& FElement::left() const { return is_compound() ? node_->left : unit_ref(); }
const FElement& FElement::right() const { return is_compound() ? node_->right : unit_ref(); }
const std::string& FElement::var_name() const { return is_var() ? node_->name : empty_string(); }
std::size_t FElement::leaves() const { return node_ ? node_->leaves : 0; }
std::size_t FElement::depth() const { return node_ ? node_->depth : 0; }
std::size_t FElement::hash() const { return node_ ? node_->hash : 0x51ed27; }

bool FElement::operator==(const FElement& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash || node_->is_var != o.node_->is_var || node_->leaves != o.node_->leaves) return false;
  if (node_->is_var) return node_->name == o.node_->name;
  return node_->op == o.node_->op && node_->left == o.node_->left && node_->right == o.node_->right;
}

std::string FElement::to_string() const {
  if (is_unit()) return "unit";
  if (is_var()) return node_->name;
  return std::string("(") + (node_->op == Op::Dot ? "dot " : "wedge ") + node_->left.to_string() + " " +
         node_->right.to_string() + ")";
}

namespace {

class TermParser {
 public:
  explicit TermParser(const std::string& s) : s_(s) {}

  FElement parse_all() {
    FElement t = parse();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("term: " + what + " at offset " + std::to_string(pos_));
  }
  std::string atom() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' && s_[pos_] != ')')
      ++pos_;
    if (b == pos_) fail("expected atom");
    return s_.substr(b, pos_ - b);
  }
  FElement parse() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == ')') fail("unexpected ')'");
    if (s_[pos_] != '(') {
      std::string a = atom();
      if (a == "unit" || a == "1") return FElement::unit();
      return FElement::var(a);
    }
    ++pos_;
    std::string head = atom();
    Op op;
    if (head == "dot" || head == "*")
      op = Op::Dot;
    else if (head == "wedge" || head == "meet")
      op = Op::Wedge;
    else
      fail("unknown operation '" + head + "'");
    FElement a = parse();
    FElement b = parse();
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return FElement::make(op, a, b);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

FElement FElement::parse(const std::string& text) { return TermParser(text).parse_all(); }

bool DivisibilityOrder::leq(const FElement& s, const FElement& t) {
  // Memo keys are node addresses; holding the roots keeps every subterm alive.
  keep_.push_back(s);
  keep_.push_back(t);
  return rec(s, t);
}

bool DivisibilityOrder::rec(const FElement& s, const FElement& t) {
  if (t.is_unit()) return true;
  if (s.is_unit()) return false;
  if (s == t) return true;
  if (!s.is_compound()) return false;
  // Deleting subterms never adds leaves.
  if (t.leaves() > s.leaves()) return false;
  Key k{s.identity(), t.identity()};
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  bool r = rec(s.left(), t) || rec(s.right(), t) ||
           (t.is_compound() && t.op() == s.op() && rec(s.left(), t.left()) && rec(s.right(), t.right()));
  memo_.emplace(k, r);
  return r;
}

bool leq_c(const FElement& s, const FElement& t) {
  DivisibilityOrder d;
  return d.leq(s, t);
}

std::optional<std::pair<FElement, FElement>> riesz_split(const FElement& r, const FElement& s, const FElement& t, Op op) {
  if (r.is_unit() || s.is_unit() || t.is_unit()) return std::nullopt;
  DivisibilityOrder d;
  if (!d.leq(FElement::make(op, r, s), t) || d.leq(r, t) || d.leq(s, t)) return std::nullopt;
  if (!t.is_compound() || t.op() != op) return std::nullopt;
  if (!d.leq(r, t.left()) || !d.leq(s, t.right())) return std::nullopt;
  return std::make_pair(t.left(), t.right());
}

FElement residual_f(const FElement& r, const FElement& t, Op op, Side side) {
  DivisibilityOrder d;
  if (d.leq(r, t)) return FElement::unit();
  if (t.is_compound() && t.op() == op) {
    if (side == Side::Left && d.leq(r, t.left())) return t.right();
    if (side == Side::Right && d.leq(r, t.right())) return t.left();
  }
  return t;
}

bool Scheme::residual() const {
  return !steps.empty() &&
         (steps[0] == Step::LeftResidual || steps[0] == Step::RightResidual || steps[0] == Step::WedgeResidual);
}

namespace {

bool is_residual_step(Step s) {
  return s == Step::LeftResidual || s == Step::RightResidual || s == Step::WedgeResidual;
}

}  // namespace

Scheme make_scheme(std::vector<Step> steps) {
  if (steps.empty()) throw ValidationError("scheme", {}, "scheme depth must be at least 1");
  bool res = is_residual_step(steps[0]);
  for (Index i = 0; i < steps.size(); ++i)
    if (is_residual_step(steps[i]) != res)
      throw ValidationError("scheme", {i}, "scheme mixes residual and multiplicative steps");
  Scheme s;
  s.steps = std::move(steps);
  for (std::size_t i = 0; i < s.steps.size(); ++i) s.args.push_back(i);
  return s;
}

std::string to_string(Step s) {
  switch (s) {
    case Step::LeftResidual: return "left-res";
    case Step::RightResidual: return "right-res";
    case Step::WedgeResidual: return "wedge-res";
    case Step::MultiplyLeft: return "mul-left";
    case Step::MultiplyRight: return "mul-right";
    case Step::WedgeWith: return "wedge-with";
  }
  return "?";
}

Scheme parse_scheme(const std::string& text) {
  std::vector<Step> steps;
  std::size_t b = 0;
  while (b <= text.size()) {
    std::size_t e = text.find(',', b);
    if (e == std::string::npos) e = text.size();
    std::string tok = text.substr(b, e - b);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    bool found = false;
    for (Step s : {Step::LeftResidual, Step::RightResidual, Step::WedgeResidual, Step::MultiplyLeft, Step::MultiplyRight,
                   Step::WedgeWith})
      if (tok == to_string(s)) {
        steps.push_back(s);
        found = true;
      }
    if (!found) throw ParseError("unknown scheme step '" + tok + "'");
    b = e + 1;
  }
  return make_scheme(std::move(steps));
}

std::string to_string(const Scheme& s) {
  std::string out;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (i) out += ",";
    out += to_string(s.steps[i]);
  }
  return out;
}

Step dual(Step s) {
  switch (s) {
    case Step::LeftResidual: return Step::MultiplyLeft;
    case Step::RightResidual: return Step::MultiplyRight;
    case Step::WedgeResidual: return Step::WedgeWith;
    case Step::MultiplyLeft: return Step::LeftResidual;
    case Step::MultiplyRight: return Step::RightResidual;
    case Step::WedgeWith: return Step::WedgeResidual;
  }
  return s;
}

Scheme adjoint_of(const Scheme& s) {
  Scheme out;
  for (std::size_t i = s.steps.size(); i-- > 0;) {
    out.steps.push_back(dual(s.steps[i]));
    out.args.push_back(s.args[i]);
  }
  return out;
}

Index eval_scheme(const ResiduatedLattice& a, const Scheme& s, const std::vector<Index>& args, Index center) {
  Index v = center;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (s.args[i] >= args.size()) throw std::out_of_range("scheme argument missing");
    Index x = args[s.args[i]];
    switch (s.steps[i]) {
      case Step::LeftResidual: v = a.ldiv(x, v); break;
      case Step::RightResidual: v = a.rdiv(v, x); break;
      case Step::WedgeResidual:
        if (!a.arrow) throw ValidationError("arrow", {}, "algebra has no arrow");
        v = (*a.arrow)(x, v);
        break;
      case Step::MultiplyLeft: v = a.mul(x, v); break;
      case Step::MultiplyRight: v = a.mul(v, x); break;
      case Step::WedgeWith: v = a.meet(x, v); break;
    }
  }
  return v;
}

Verdict is_divisibility_order(const OrderedAlgebra& a) {
  const std::size_t n = a.order.size();
  for (const Operation& op : a.ops) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < op.arity; ++k) cells *= n;
    if (op.table.size() != cells) return Verdict::fail("table of " + op.name + " has the wrong size");
    std::vector<Index> args(op.arity, 0);
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rest = c;
      for (std::size_t k = op.arity; k-- > 0;) {
        args[k] = static_cast<Index>(rest % n);
        rest /= n;
      }
      for (std::size_t k = 0; k < op.arity; ++k)
        if (!a.order.leq(op.table[c], args[k])) {
          std::vector<Index> w = args;
          return Verdict::fail(op.name + " result exceeds argument " + std::to_string(k + 1), w);
        }
    }
  }
  return Verdict::pass();
}

OrderedAlgebra divisibility_algebra(const ResiduatedLattice& l) {
  OrderedAlgebra a;
  a.order = l.order();
  a.ops.push_back(Operation{"dot", 2, l.mult.cells()});
  a.ops.push_back(Operation{"wedge", 2, l.lattice.meet.cells()});
  return a;
}

FElement random_term(std::mt19937_64& rng, std::size_t max_depth, std::size_t num_vars) {
  std::uniform_int_distribution<std::size_t> pick(0, num_vars - 1);
  if (max_depth == 0 || num_vars == 0 || rng() % 3 == 0) {
    if (num_vars == 0) return FElement::unit();
    return FElement::var("x" + std::to_string(pick(rng) + 1));
  }
  Op op = rng() % 2 ? Op::Dot : Op::Wedge;
  FElement l = random_term(rng, max_depth - 1, num_vars);
  FElement r = random_term(rng, max_depth - 1, num_vars);
  return FElement::make(op, l, r);
}

}  // namespace resq
