#pragma once

// The binary relations between weight sequences: domination up to C rho^k,
// two-sided equivalence, and root-ratio convergence to zero. Decided from the
// root-ratio series (M_k/N_k)^{1/k} on the shared window.

#include "ultraweight/trend.hpp"
#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

enum class Relation { Lesssim, Triangleleft, Approx };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Lesssim: return "lesssim";
    case Relation::Triangleleft: return "triangleleft";
    case Relation::Approx: return "approx";
  }
  return "?";
}

struct RelationOptions {
  double eps_tail = kEpsTail;  // decile-median movement that counts as a trend
  Index k0 = 5;                // roots below k0 are ignored when fixing rho
};

// Pre: overlapping window of length >= 16.
RelationVerdict check_relation(const WeightSeq& M, const WeightSeq& N, Relation rel,
                               const RelationOptions& opt = {});

// Witness (C, rho) with rho fixed from the per-k roots beyond k0 and C solved
// exactly on the window: M_k <= C rho^k N_k for all k <= window.
std::pair<double, double> lesssim_witness(const WeightSeq& M, const WeightSeq& N, Index k0 = 5);

}  // namespace uw
