#pragma once

// Structured results of condition/relation checks. A verdict on a finite
// window always carries either a re-checkable witness or a concrete
// counterexample; "certified" is reserved for builtin families with a
// hard-coded comparison-test argument.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultraweight/numeric.hpp"

namespace uw {

enum class Status { HoldsOnWindow, Fails, Certified, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::HoldsOnWindow: return "holds-on-window";
    case Status::Fails: return "fails";
    case Status::Certified: return "certified";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Window {
  Index kmin = 0;
  Index kmax = 0;
  std::string grid;  // used instead of [kmin, kmax] when non-empty
};

struct Counterexample {
  std::vector<double> indices;  // violating index tuple (k) or (j, k) or (t, ...)
  double lhs = 0.0;             // violated inequality, log domain unless noted
  double rhs = 0.0;
  std::string inequality;
};

struct Assignment {
  double lambda = 0.0;
  double mu = 0.0;
  double C = 0.0;
};

struct ConditionVerdict {
  std::string condition;
  Window window;
  Status status = Status::Inconclusive;
  std::map<std::string, double> witness;
  std::optional<Counterexample> counterexample;
  std::vector<std::pair<double, double>> diagnostics;  // (k or t, value)
  std::vector<Assignment> assignments;                 // matrix lambda -> mu maps
  std::vector<std::string> notes;

  bool holds() const { return status == Status::HoldsOnWindow || status == Status::Certified; }
};

struct RelationVerdict {
  std::string relation;
  ArrayXd rootRatio;  // log of (M_k/N_k)^{1/k}, k = 1..window
  double supEstimate = 0.0;
  double tailEstimate = 0.0;
  Status status = Status::Inconclusive;
  std::map<std::string, double> witness;
  std::vector<std::string> notes;

  bool holds() const { return status == Status::HoldsOnWindow; }
};

// Downsample a per-index series into (k, value) diagnostic pairs.
inline std::vector<std::pair<double, double>> diag_samples(const ArrayXd& v,
                                                           Index first_k = 1,
                                                           Index max_points = 64) {
  std::vector<std::pair<double, double>> out;
  const Index n = v.size();
  if (n == 0) return out;
  const Index stride = std::max<Index>(1, n / max_points);
  for (Index i = 0; i < n; i += stride)
    out.emplace_back(double(first_k + i), v[i]);
  if ((n - 1) % stride != 0) out.emplace_back(double(first_k + n - 1), v[n - 1]);
  return out;
}

}  // namespace uw
