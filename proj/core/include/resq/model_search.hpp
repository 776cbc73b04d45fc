#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <vector>

#include "resq/logic.hpp"

namespace resq {

using Clock = std::chrono::steady_clock;

struct SearchOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 4;
  std::size_t jobs = 1;
  std::optional<Clock::time_point> deadline;
};

struct Countermodel {
  PartialAlgebra model;
  Assignment assignment;
};

struct SearchResult {
  std::optional<Countermodel> found;
  bool complete = false;  // every size up to max_size was searched to the end
  std::size_t nodes = 0;
  std::size_t size_reached = 0;
};

// Models of the theory violating q under some assignment, smallest size
// first, first in search order within a size. Independent of `jobs`.
SearchResult countermodel_search(const Theory& th, const QuasiEquation& q, const SearchOptions& opts = {},
                                 const Guards& guards = Guards::current());

// One model per isomorphism class, in order of discovery.
std::vector<PartialAlgebra> enumerate_algebras(const Theory& th, std::size_t size, std::size_t jobs = 1,
                                               const Guards& guards = Guards::current());

// Minimal code over all relabellings; equal codes mean isomorphic.
std::vector<Index> canonical_code(const PartialAlgebra& a);

// Resumable search over one size. q may have no premises and a trivial
// conclusion, in which case every model is reported in turn.
class ModelSearch {
 public:
  enum class Status { Running, Found, Exhausted };

  ModelSearch(const Theory& th, const std::optional<QuasiEquation>& q, std::size_t size,
              const Guards& guards = Guards::current());
  ~ModelSearch();
  ModelSearch(ModelSearch&&) noexcept;
  ModelSearch& operator=(ModelSearch&&) noexcept;

  Status step(std::size_t max_nodes);
  Countermodel current() const;  // valid after Found
  std::size_t nodes() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace resq
