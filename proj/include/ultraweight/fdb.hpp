#pragma once

// The chain-rule closure M° of a weight sequence: the maximum of
// M_j M_{a_1} ... M_{a_j} over all ways to split k into j positive parts.
// Computed by a max-plus dynamic program in the log domain, checked against a
// partition-enumeration oracle at small windows. A sequence is stable under
// composition exactly when M° stays within C^k M_k.

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

WeightSeq fdb_closure(const WeightSeq& M);

// Direct maximization over integer partitions (order is irrelevant for the
// max). Pre: kmax_small <= 30.
WeightSeq fdb_closure_oracle(const WeightSeq& M, Index kmax_small);

// The maximizing split of k recorded by the DP, ties broken toward fewer
// parts, then smaller leading part.
std::vector<Index> fdb_maximizer(const WeightSeq& M, Index k);

// Window witness C = max_k (M°_k/M_k)^{1/k} plus the tail-trend verdict on
// that root-gap series. Pre: kmax >= 4.
ConditionVerdict check_fdb_property(const WeightSeq& M);

// The three sufficient conditions for the closure to stay within C^k M_k:
// log-convexity; derivation-closedness with almost-increasing roots; and the
// shifted convolution bound M_j M_k <= M_1 M_{j+k-1}.
struct FdbSufficientReport {
  ConditionVerdict logConvex;
  ConditionVerdict derivClosedRootsAi;
  ConditionVerdict convolutionShift;
  ConditionVerdict fdb;      // check_fdb_property on the same window
  bool consistent = true;    // every sufficient condition that holds implies fdb holds
};

FdbSufficientReport fdb_sufficient_conditions(const WeightSeq& M);

}  // namespace uw
