#pragma once

// Growth/stability conditions on a single weight sequence, plus the Carleman
// quasianalyticity sums. Pointwise conditions (log-convexity) are decided
// exactly; existential-constant conditions report the minimal window witness.

#include <optional>

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

enum class SeqCondition { Lc, Wlc, Mg, Dc, Ai, RootsAi };

inline const char* to_string(SeqCondition c) {
  switch (c) {
    case SeqCondition::Lc: return "lc";
    case SeqCondition::Wlc: return "wlc";
    case SeqCondition::Mg: return "mg";
    case SeqCondition::Dc: return "dc";
    case SeqCondition::Ai: return "ai";
    case SeqCondition::RootsAi: return "roots_ai";
  }
  return "?";
}

std::optional<SeqCondition> seq_condition_from_string(const std::string& s);

// Pre: kmax >= 3. convex_tol is the absolute slack on second differences.
ConditionVerdict check_condition(const WeightSeq& M, SeqCondition cond,
                                 double convex_tol = 1e-9);

struct CarlemanResult {
  ArrayXd partialSumRoots;           // partial sums of (k! M_k)^{-1/k}, k = 1..
  ConditionVerdict verdict;          // certified only for builtin closed forms
  std::optional<ArrayXd> ratioSums;  // partial sums of M_k/((k+1) M_{k+1}) when wlc
};

// Pre: kmax >= 16.
CarlemanResult carleman_sums(const WeightSeq& M);

}  // namespace uw
