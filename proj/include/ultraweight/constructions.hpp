#pragma once

// Explicit generator constructions: the staircase sequence M(r) whose contact
// set thins out geometrically, the characteristic exponential sum whose
// derivatives at 0 attain k!M_k from below, interpolation between two
// comparable sequences, and the log-Gevrey sequence L.

#include <utility>

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

struct Example36Result {
  double r = 4.0;
  double logbase = 2.718281828459045;
  std::vector<Index> kIndices;  // k_1 = 3, k_i = k_{i-1} ceil(log(i+1)), within window
  ArrayXd logmu;                // log mu_k for k = 1..kmax
  WeightSeq M;
};

// Pre: r >= 4; logbase > 1 (natural log by default).
Example36Result example36(double r, Index kmaxTarget, double logbase = 2.718281828459045);

struct CharFnResult {
  Index terms = 0;       // truncation N of the sum over k
  ArrayXd log_h;         // log h_j, j = 0..jmax; h_j = sum_k k!M_k (2 mu_k)^{j-k}
  ArrayXd tailBound;     // log bound on the dropped k > N part, per j
  double normRho = 4.0;  // normEstimate: sup_j h_j/(j! rho^j M_j) <= C
  double normC = 0.0;
  std::string phase = "g^(j)(0) = i^j h_j";  // magnitudes in h, phase metadata only
};

// Pre: M weakly log-convex (exact), mu_k nondecreasing, N + jmax <= kmax.
CharFnResult characteristic_fn(const WeightSeq& M, Index N, Index jmax);

enum class InterpolationVariant { Sqrt, SqrtOverFactorial };

// Pre: L strictly below M (triangleleft holds on the window) and M grows in
// the variant's sense. Returns (N1, N2) with L <= N1, N1 below N2 below M.
std::pair<WeightSeq, WeightSeq> interpolate(const WeightSeq& L, const WeightSeq& M,
                                            InterpolationVariant variant);

// k!L_k = k^k (log(k+e))^{2k}. Pre: kmax >= 8.
WeightSeq log_gevrey_L(Index kmax);

}  // namespace uw
