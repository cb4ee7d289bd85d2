#pragma once

// Regularizations of a weight sequence: the largest log-convex minorant via a
// lower convex hull (weak flavor works on k!M_k, strong on M_k itself), the
// associated functions T_M and S_M, the sup-based counterpart of the minorant,
// contact-set diagnostics, and the Cartan derivative bound.

#include <vector>

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

enum class HullFlavor { Weak, Strong };

struct HullResult {
  WeightSeq regularized;        // the minorant, back in M_k units
  std::vector<Index> vertices;  // contact set: k with M_k equal to the minorant
  Index provisionalFrom = 0;    // first index the hull could still change past
  bool degenerate = false;      // ultimately-decreasing input (weak flavor proxy)
  ArrayXd hullValues;           // hull of log k!M_k (weak) or log M_k (strong)
};

// Lower convex hull of (k, log k!M_k) for the weak flavor; values at contact
// points are snapped to the input so applying the operation twice is an exact
// no-op. Pre: window >= 3 points.
HullResult lc_minorant(const WeightSeq& M, HullFlavor flavor = HullFlavor::Weak,
                       double contact_tol = 1e-9);

struct AssocSample {
  ArrayXd tGrid;
  ArrayXd values;  // log T_M(t) or log S_M(t)
  std::vector<Index> argmax;
  std::vector<bool> truncated;  // argmax pinned at the window edge
  char which = 'T';
};

// log T_M(e^u) = max_k (k u - log k!M_k); argmax reported.
double log_T(const WeightSeq& M, double u, Index* argmax = nullptr);
// log S_M(e^u): the same max restricted to k <= e^u.
double log_S(const WeightSeq& M, double u, Index* argmax = nullptr);

// Pre: tGrid positive and sorted.
AssocSample assoc_function(const WeightSeq& M, char which, const ArrayXd& tGrid);

// M^k -> sup_{t >= k} t^k / S_M(t) / k!; log-spaced grid plus golden-section
// refinement. Pre: tMax >= kmax.
WeightSeq b_o_regularization(const WeightSeq& M, double tMax);

// Recover the minorant from T alone: (1/k!) sup_t t^k / T_M(t), maximized over
// a log-t grid with golden-section refinement (the objective is concave in
// log t). Returns log values for k = 0..kTo.
ArrayXd dual_from_T(const WeightSeq& M, const ArrayXd& uGrid, Index kTo);

struct ContactRatioDiag {
  std::vector<Index> verticesUsed;   // interior contact vertices k >= 1
  std::vector<double> ratios;        // a_i = k_{i+1}/k_i
  std::vector<double> lowerBounds;   // (1/2)(a_i/(a_i-1)) log a_i - log 2 - 1
  std::string bounded;               // yes-on-window | no-trend | inconclusive
};

// Pre: >= 3 interior vertices.
ContactRatioDiag contact_ratio_diagnostic(const HullResult& h);

// Checks |f^(k)(0)| <= 2 e^k k! M^{b(c)}_k given derivative bounds M and the
// values at 0 in log domain. Pre (rejected otherwise): M_0 <= lambda^k M_k.
ConditionVerdict cartan_check(const WeightSeq& derivBounds, const ArrayXd& logValuesAt0,
                              double lambda);

}  // namespace uw
