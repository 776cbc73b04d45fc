#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resq {

using Index = std::uint32_t;
using UnaryMap = std::vector<Index>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violated a structural invariant. `axiom` names the law, `witness`
// lists the offending element indices in the order the law quantifies them.
class ValidationError : public Error {
 public:
  ValidationError(std::string axiom, std::vector<Index> witness, const std::string& detail);
  const std::string& axiom() const { return axiom_; }
  const std::vector<Index>& witness() const { return witness_; }

 private:
  std::string axiom_;
  std::vector<Index> witness_;
};

class GuardError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

struct Guards {
  std::size_t max_ideals = std::size_t{1} << 20;
  std::size_t max_lattice = 4096;
  std::size_t powerset_base = 10;
  std::size_t max_subreduct = 4096;
  std::size_t model_size_cap = 7;
  std::size_t exhaustive_subsets = 12;

  // RESQ_GUARD is either a bare integer (ideal limit) or a comma separated
  // list of key=value pairs using the field names above.
  static Guards parse(const std::string& text);
  static const Guards& current();
};

struct Verdict {
  bool holds = true;
  std::string detail;
  std::vector<Index> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string detail, std::vector<Index> witness = {}) {
    return Verdict{false, std::move(detail), std::move(witness)};
  }
  explicit operator bool() const { return holds; }
};

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);
  static ElementSet full(std::size_t universe);
  static ElementSet from_indices(std::size_t universe, const std::vector<Index>& members);
  static ElementSet from_bits(std::size_t universe, std::uint64_t bits);

  std::size_t universe() const { return n_; }
  bool test(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(Index i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(Index i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;
  bool empty() const;
  bool is_subset_of(const ElementSet& other) const;
  std::vector<Index> indices() const;

  ElementSet& operator&=(const ElementSet& o);
  ElementSet& operator|=(const ElementSet& o);
  ElementSet operator&(const ElementSet& o) const;
  ElementSet operator|(const ElementSet& o) const;
  ElementSet operator-(const ElementSet& o) const;
  ElementSet complement() const;

  bool operator==(const ElementSet& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }
  // Binary counting order: element i contributes 2^i.
  bool operator<(const ElementSet& o) const;
  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// Square table of element indices, row-major.
class Table {
 public:
  Table() = default;
  Table(std::size_t n, Index fill = 0) : n_(n), cells_(n * n, fill) {}
  std::size_t size() const { return n_; }
  Index operator()(Index i, Index j) const { return cells_[std::size_t{i} * n_ + j]; }
  Index& at(Index i, Index j) { return cells_[std::size_t{i} * n_ + j]; }
  const std::vector<Index>& cells() const { return cells_; }
  bool operator==(const Table& o) const { return n_ == o.n_ && cells_ == o.cells_; }
  bool operator!=(const Table& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  std::vector<Index> cells_;
};

// Calls f on every permutation of 0..n-1, stopping early when f returns false.
void for_each_permutation(std::size_t n, const std::function<bool(const std::vector<Index>&)>& f);

}  // namespace resq
