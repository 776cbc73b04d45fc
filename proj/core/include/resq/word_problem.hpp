#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resq/logic.hpp"
#include "resq/model_search.hpp"

namespace resq {

struct WordProblemOptions {
  std::optional<Clock::time_point> deadline;
  std::size_t max_rounds = 0;  // 0 = unlimited
  std::size_t quantum = 512;   // steps given to each side per round
  std::size_t max_size = 0;    // largest countermodel size; 0 = guard cap
  std::size_t term_cap = 20000;
};

struct WordProblemResult {
  enum class Verdict { Equal, Distinct, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::vector<std::string> trace;      // Equal: ground equations merged, in order
  std::optional<Countermodel> model;   // Distinct: model and generator tuple
  std::size_t depth = 0;               // deepest term level closed by the derivation side
  std::size_t terms = 0;
  std::size_t sizes_exhausted = 0;
  std::size_t rounds = 0;
};

const char* to_string(WordProblemResult::Verdict v);

// Decides s = t in the algebra presented by pres in the variety of th, as
// far as the budget allows. A derivation side closes depth-bounded ground
// instances of the axioms under congruence; a model side searches finite
// models of the relations separating s from t. Both run in alternation and
// the first definite answer wins.
WordProblemResult word_problem(const Theory& th, const Presentation& pres, const Term& s, const Term& t,
                               const WordProblemOptions& opts = {}, const Guards& guards = Guards::current());

}  // namespace resq
