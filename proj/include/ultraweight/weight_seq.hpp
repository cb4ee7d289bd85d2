#pragma once

// Weight sequences M = (M_k) stored as log M_k. The carrier for the Gevrey
// family G^s, mu-generated sequences, associated sequences of a weight
// function, and everything derived from them.

#include <string>

#include "ultraweight/numeric.hpp"

namespace uw {

struct WeightSeq {
  ArrayXd logM;  // size kmax()+1, all finite
  std::string label;
  std::string provenance;  // generator id + parameters; non-empty for generated sequences

  Index kmax() const { return logM.size() - 1; }

  // log(k! M_k)
  double log_kfact_M(Index k) const { return logM[k] + log_factorial(k); }
  ArrayXd log_kfact_M_array() const { return logM + log_factorials(kmax()); }

  // log of the k-th roots M_k^{1/k}, k = 1..kmax (index 0 of the result is k = 1)
  ArrayXd log_roots() const {
    ArrayXd r(kmax());
    for (Index k = 1; k <= kmax(); ++k) r[k - 1] = logM[k] / double(k);
    return r;
  }
};

// G^s_k = (k!)^s
WeightSeq make_gevrey(double s, Index kmax);

// M_k = (1/k!) prod_{j<=k} mu_j from log mu_1..log mu_kmax; M_0 = 1.
WeightSeq from_mu(const ArrayXd& logmu, Index kmax);

// log mu_k with mu_k = (k+1) M_{k+1}/M_k, for 0 <= k < kmax.
ArrayXd mu_of(const WeightSeq& M);

WeightSeq scale(const WeightSeq& M, double rho);     // M_k -> rho^k M_k
WeightSeq shift_plus_one(const WeightSeq& M);        // M_k -> M_{k+1}
WeightSeq pointwise_max(const WeightSeq& M, const WeightSeq& N);
WeightSeq geo_mean(const WeightSeq& M, const WeightSeq& N);
WeightSeq sqrt_seq(const WeightSeq& M);

// Truncate to a smaller window (no-op when kmax already matches).
WeightSeq truncated(const WeightSeq& M, Index kmax);

// Slope of y over its last quartile; the window proxy for y_k -> infinity.
double last_quartile_slope(const ArrayXd& y);

// table-backed sequence with explicit values
WeightSeq from_table(const ArrayXd& logM, std::string label = "table");

}  // namespace uw
