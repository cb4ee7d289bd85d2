#pragma once

// Sampled weight matrices: ordered finite families of weakly log-convex
// sequences. The for-all/exists quantifier structure of the matrix conditions
// is resolved over the sampled parameter grid; an extremal parameter whose
// witness would lie beyond the sample is excluded with a note rather than
// counted as a failure.

#include <optional>

#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_fn.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

struct WeightMatrix {
  ArrayXd lambdas;  // strictly increasing
  std::vector<WeightSeq> seqs;
  std::string label;

  Index size() const { return lambdas.size(); }
  Index kmax() const { return seqs.empty() ? 0 : seqs.front().kmax(); }
};

// Validates: monotone in lambda, every member weakly log-convex with M_0 = 1,
// (k! M_k)^{1/k} increasing on the window tail.
WeightMatrix explicit_matrix(std::vector<WeightSeq> seqs, const ArrayXd& lambdas,
                             std::string label = "matrix");

WeightMatrix matrix_from_omega(const WeightFunction& w, const ArrayXd& rhoGrid, Index kmax);
WeightMatrix gevrey_matrix(const ArrayXd& sGrid, Index kmax);

enum class MatrixCondition { H, CwBeurling, CwRoumieu, Dc, Mg, Alg, FdB, L, BR };
enum class Flavor { Beurling, Roumieu };

std::optional<MatrixCondition> matrix_condition_from_string(const std::string& s);
const char* to_string(MatrixCondition c);
inline const char* to_string(Flavor f) { return f == Flavor::Beurling ? "beurling" : "roumieu"; }

ConditionVerdict check_matrix_condition(const WeightMatrix& X, MatrixCondition cond, Flavor flavor);

enum class MatrixRelation { LesssimBeurling, LesssimRoumieu, TriangleleftRoumieu, LesssimMixed };
std::optional<MatrixRelation> matrix_relation_from_string(const std::string& s);
const char* to_string(MatrixRelation r);

ConditionVerdict check_matrix_relation(const WeightMatrix& X, const WeightMatrix& Y,
                                       MatrixRelation rel);

// Almost-increasing roots across the matrix: for each lambda a sampled mu with
// (M^a_j)^{1/j} <= C (M^b_k)^{1/k} for j <= k, roles per flavor.
ConditionVerdict roots_almost_increasing_matrix(const WeightMatrix& X, Flavor flavor);

}  // namespace uw
