#pragma once

// Truncated power series with exact rational coefficients, composition via
// Horner accumulation, a chain-rule-sum oracle, and verification of the
// composition bound |(f∘g)_k| <= C_f C_g rho_f (rho_g (1 + rho_f C_g))^k M°_k
// against caller-supplied coefficient certificates.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

using Rational = boost::multiprecision::cpp_rational;

struct TruncatedSeries {
  Index order = 0;                 // K
  std::vector<Rational> coeffs;    // a_k = f^(k)(x0)/k!, size K+1, exact
  std::string basepoint;           // where the expansion lives (caller's note)
};

TruncatedSeries make_series(std::vector<Rational> coeffs, std::string basepoint = "0");
TruncatedSeries series_identity(Index K);
TruncatedSeries series_exp(Index K);  // coefficients 1/k! at 0

Rational parse_rational(const std::string& text);  // "3", "-1/2", "0.25"
double log_abs(const Rational& r);                 // -inf for 0, exact for huge values

// Taylor coefficients of f∘g at g's basepoint; f must be expanded at g(x0)
// (recorded in the basepoint notes). Pre: equal orders.
TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g);

// Same coefficients via the explicit sum over ordered compositions of k.
// Pre: order <= 25.
TruncatedSeries series_compose_oracle(const TruncatedSeries& f, const TruncatedSeries& g);

struct BoundCertificate {
  double C = 1.0;
  double rho = 1.0;
  WeightSeq M;
};

// |a_k| <= C rho^k M_k on the series window, within log tolerance.
bool certificate_valid(const BoundCertificate& cert, const TruncatedSeries& f, double tol = 1e-9);

// rho from the per-k roots beyond k0, C solved on the window.
BoundCertificate minimal_certificate(const TruncatedSeries& f, const WeightSeq& M, Index k0 = 5);

struct CompositionBoundReport {
  ConditionVerdict verdict;   // margins >= 0 at every order 1..K
  double sigma = 0.0;         // rho_g (1 + rho_f C_g)
  ArrayXd margins;            // log bound - log |h_k|, k = 1..K
  TruncatedSeries composed;
};

// Errors: certificate fails re-verification; certificates reference different
// sequences; order mismatch.
CompositionBoundReport verify_composition_bound(const TruncatedSeries& f,
                                                const BoundCertificate& certF,
                                                const TruncatedSeries& g,
                                                const BoundCertificate& certG);

}  // namespace uw
