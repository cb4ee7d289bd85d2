#pragma once

// Weight functions omega with phi(u) = omega(e^u) convex, their Young
// conjugates computed by a monotone discrete Legendre sweep, the associated
// sequences Omega^rho, the omega-condition battery, and the conjugate
// inequality suite. All evaluation happens in u = log t so the checks can
// reach t far beyond double range.

#include <optional>
#include <string>

#include "ultraweight/relations.hpp"
#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

struct WeightFunction {
  enum class Kind { GevreyRoot, PowerLog, LinearCutoff, Sampled };
  Kind kind = Kind::LinearCutoff;
  double s = 0.0;  // parameter for GevreyRoot / PowerLog
  ArrayXd sampleT, sampleOmega;  // Sampled: strictly increasing t-grid, values
  std::string label;

  double phi(double u) const;                       // omega(e^u), 0 for u <= 0
  double omega(double t) const;                     // phi(log t)
  double max_u() const;                             // largest u with finite phi
  std::optional<bool> quasianalytic() const;        // certificate for builtins
};

WeightFunction make_gevrey_root(double s);          // omega(t) = max(0, t^{1/(1+s)} - 1)
WeightFunction make_power_log(double s);            // omega(t) = max(0, (log t)^s), s > 1
WeightFunction make_linear_cutoff();                // omega(t) = max(0, t - 1)
WeightFunction make_sampled(const ArrayXd& tGrid, const ArrayXd& values,
                            std::string label = "sampled");

struct ConjugateTable {
  ArrayXd tGrid;
  ArrayXd phiStar;
  ArrayXd argmax;               // maximizing s per t, nondecreasing
  std::vector<bool> truncated;  // argmax pinned at sMax
};

// Discrete Legendre transform phi*(t) = sup_{s>=0} (st - phi(s)) over a dense
// uniform s-grid with one golden-section refinement per sample. The sweep is
// monotone: the argmax never moves left as t grows. Pre: tGrid sorted, >= 0.
ConjugateTable young_conjugate(const WeightFunction& w, const ArrayXd& tGrid,
                               double sMax, Index sGridSize = 4096);

// Doubling wrapper that grows sMax until no sample is truncated (or the
// kind's evaluation cap is reached).
ConjugateTable young_conjugate_auto(const WeightFunction& w, const ArrayXd& tGrid);
double conjugate_at(const WeightFunction& w, double t);

// Omega^rho_k = (1/k!) exp(phi*(rho k)/rho). Errors: truncated conjugate.
WeightSeq omega_sequence(const WeightFunction& w, double rho, Index kmax);

enum class OmegaCondition { W1, W2, W3, W4, W5, W6, W7, W8 };
std::optional<OmegaCondition> omega_condition_from_string(const std::string& s);
const char* to_string(OmegaCondition c);

// Pre: grid covers several decades; pass empty to use the kind's default grid.
ConditionVerdict check_omega_condition(const WeightFunction& w, OmegaCondition cond,
                                       const ArrayXd& uGrid = ArrayXd());

enum class OmegaInequality {
  ConjSuperadd,    // phi*(t)+phi*(s) <= phi*(t+s) <= phi*(2t)/2 + phi*(2s)/2
  OmegaSuperadd,   // j!O_j k!O_k <= (j+k)!O_{j+k} <= j!O^2rho_j k!O^2rho_k
  SigmaAbsorb,     // sigma^k O^rho_k <= C O^{H rho}_k, witness (H, C)
  RhoEquivalence,  // Omega^rho ~ Omega^tau, cross-checked against (w6)
  RhoTriangle,     // Omega^{rho/C} strictly below Omega^rho, cross-checked against (w8)
  ConjIterate,     // L^s phi*(t) + s L^s t <= phi*(L^s t) + sum L^i
};
std::optional<OmegaInequality> omega_inequality_from_string(const std::string& s);
const char* to_string(OmegaInequality w);

struct InequalityParams {
  double rho = 1.0;
  double tau = 2.0;
  double sigma = 2.0;
  std::vector<double> rhoGrid = {0.5, 1.0, 2.0};
  Index jkMax = 100;
  ArrayXd tGrid;  // for the conjugate scans; default built when empty
};

ConditionVerdict inequality_suite(const WeightFunction& w, OmegaInequality which,
                                  const InequalityParams& params = {});

// omega_rho = log T_{Omega^rho}; checks rho*omega_rho <= omega on the grid and
// omega <= 2 rho omega_rho + C on the tail. uGrid in log t.
ConditionVerdict omega_rho_check(const WeightFunction& w, double rho, const ArrayXd& uGrid);

struct WeightCompareResult {
  ConditionVerdict verdict;       // the O/o tail relation with witness H
  ConditionVerdict sequenceEcho;  // Omega^rho <= C Sigma^{H rho} pointwise
};

// w ≼ v means v(t) = O(w(t)); triangleleft means v(t) = o(w(t)).
WeightCompareResult compare_weights(const WeightFunction& w, const WeightFunction& v,
                                    Relation rel);

// Grid search for pairs (k, t) with omega(k t) >= n^2 k omega(t): evidence
// against the linear-growth condition (w7). Holds-on-window when none found.
ConditionVerdict w7_failure_witness(const WeightFunction& w, int nMax = 6);

}  // namespace uw
