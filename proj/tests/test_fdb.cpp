#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraweight/constructions.hpp"
#include "ultraweight/fdb.hpp"
#include "ultraweight/relations.hpp"

using namespace uw;

namespace {

WeightSeq bump_seq(Index kmax) {
  // M = (1, 2, 1, 1, ...): closure doubles per order
  WeightSeq M;
  M.logM = ArrayXd::Zero(kmax + 1);
  M.logM[1] = std::log(2.0);
  M.label = "bump";
  M.provenance = "table()";
  return M;
}

WeightSeq parity_seq(Index kmax) {
  // M_k = k! for odd k, 1 for even k: the closure rebuilds the factorial at
  // every even index, so the root gap escapes upward densely.
  WeightSeq M;
  M.logM = ArrayXd::Zero(kmax + 1);
  for (Index k = 1; k <= kmax; k += 2) M.logM[k] = log_factorial(k);
  M.label = "parity";
  M.provenance = "table()";
  return M;
}

}  // namespace

TEST_CASE("closure of the bump sequence") {
  const WeightSeq M = bump_seq(10);
  const WeightSeq c = fdb_closure(M);
  CHECK(std::exp(c.logM[0]) == doctest::Approx(1.0));
  CHECK(std::exp(c.logM[1]) == doctest::Approx(4.0));
  CHECK(std::exp(c.logM[2]) == doctest::Approx(4.0));
  CHECK(std::exp(c.logM[3]) == doctest::Approx(8.0));
  CHECK(std::exp(c.logM[4]) == doctest::Approx(16.0));
  for (Index k = 2; k <= 10; ++k)
    CHECK(c.logM[k] == doctest::Approx(double(k) * std::log(2.0)));
}

TEST_CASE("closure fixes the Gevrey family") {
  for (double s : {0.0, 1.0, 2.0}) {
    const WeightSeq G = make_gevrey(s, 60);
    CHECK((fdb_closure(G).logM - G.logM).abs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("partition oracle agrees with the DP") {
  // hand enumeration at k = 3, G^1: partitions (3), (1,2), (1,1,1)
  const WeightSeq g1 = make_gevrey(1.0, 10);
  const WeightSeq o = fdb_closure_oracle(g1, 5);
  CHECK(std::exp(o.logM[3]) == doctest::Approx(6.0));
  CHECK(std::exp(o.logM[4]) == doctest::Approx(24.0));
  CHECK(std::exp(o.logM[1]) == doctest::Approx(1.0));  // M_1^2

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    WeightSeq M;
    M.logM.resize(26);
    for (Index k = 0; k <= 25; ++k) M.logM[k] = u(rng);
    M.provenance = "table()";
    const WeightSeq dp = fdb_closure(M);
    const WeightSeq oracle = fdb_closure_oracle(M, 25);
    CHECK((dp.logM.head(26) - oracle.logM).abs().maxCoeff() <= 1e-9);
  }
  CHECK_THROWS_AS(fdb_closure_oracle(g1, 31), std::invalid_argument);
}

TEST_CASE("maximizer reconstruction is deterministic and optimal") {
  const WeightSeq M = bump_seq(12);
  const std::vector<Index> parts = fdb_maximizer(M, 6);
  Index sum = 0;
  double value = 0.0;
  for (Index a : parts) {
    sum += a;
    value += M.logM[a];
  }
  CHECK(sum == 6);
  value += M.logM[Index(parts.size())];
  CHECK(value == doctest::Approx(fdb_closure(M).logM[6]));
  CHECK(parts == std::vector<Index>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("M below its closure") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    WeightSeq M;
    M.logM.resize(33);
    for (Index k = 0; k <= 32; ++k) M.logM[k] = u(rng);
    M.provenance = "table()";
    const WeightSeq c = fdb_closure(M);
    // via the single-part split: M°_k >= M_1 M_k
    for (Index k = 1; k <= 32; ++k) CHECK(c.logM[k] >= M.logM[1] + M.logM[k] - 1e-12);
    CHECK(check_relation(M, c, Relation::Lesssim).holds());
  }
}

TEST_CASE("closure property verdicts") {
  CHECK(check_fdb_property(make_gevrey(1.0, 100)).holds());
  CHECK(check_fdb_property(make_gevrey(1.0, 100)).witness.at("C") == doctest::Approx(1.0));

  // bounded root gap: property holds, witness from (M°_k/M_k)^{1/k} -> 2
  const ConditionVerdict bump = check_fdb_property(bump_seq(100));
  CHECK(bump.holds());
  CHECK(bump.witness.at("C") == doctest::Approx(2.0));

  // escaping root gap: property fails
  const ConditionVerdict par = check_fdb_property(parity_seq(160));
  CHECK(par.status == Status::Fails);
}

TEST_CASE("sufficient conditions and cross-consistency") {
  const FdbSufficientReport g1 = fdb_sufficient_conditions(make_gevrey(1.0, 80));
  CHECK(g1.logConvex.holds());
  CHECK(g1.convolutionShift.holds());  // j!k! <= (j+k-1)! for j,k >= 1
  CHECK(g1.derivClosedRootsAi.holds());
  CHECK(g1.fdb.holds());
  CHECK(g1.consistent);
  CHECK(g1.fdb.witness.at("C") <= 1.0 + 1e-9);  // log-convex route: C <= max(M_1, 1)

  const FdbSufficientReport m36 = fdb_sufficient_conditions(example36(4.0, 300).M);
  CHECK(m36.logConvex.status == Status::Fails);
  CHECK(m36.convolutionShift.holds());
  CHECK(m36.fdb.holds());
  CHECK(m36.consistent);

  // bump sequence: lc fails at k = 1, the other two sufficient routes hold,
  // and the closure property indeed holds (bounded gap)
  const FdbSufficientReport bump = fdb_sufficient_conditions(bump_seq(80));
  CHECK(bump.logConvex.status == Status::Fails);
  CHECK(Index(bump.logConvex.counterexample->indices[0]) == 1);
  CHECK(bump.convolutionShift.holds());
  CHECK(bump.derivClosedRootsAi.holds());
  CHECK(bump.fdb.holds());
  CHECK(bump.consistent);

  // parity sequence: every sufficient condition fails along with the property
  const FdbSufficientReport par = fdb_sufficient_conditions(parity_seq(160));
  CHECK(par.logConvex.status == Status::Fails);
  CHECK(par.convolutionShift.status == Status::Fails);
  CHECK(par.derivClosedRootsAi.status == Status::Fails);
  CHECK(par.fdb.status == Status::Fails);
  CHECK(par.consistent);
}

TEST_CASE("sufficient conditions imply the property on structured random input") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> us(0.0, 2.0), ua(-1.0, 1.0), ub(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    // log-convex by construction: logM = s lgamma + a k + b
    const double s = us(rng), a = ua(rng), b = ub(rng);
    WeightSeq M;
    M.logM = s * log_factorials(64) + b;
    for (Index k = 0; k <= 64; ++k) M.logM[k] += a * double(k);
    M.logM[0] = b;  // keep the affine form; M_0 free
    M.provenance = "table()";
    const FdbSufficientReport rep = fdb_sufficient_conditions(M);
    CHECK(rep.logConvex.holds());
    CHECK(rep.fdb.holds());
    CHECK(rep.consistent);
  }
}

TEST_CASE("closure dominates every sampled split") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  WeightSeq M;
  M.logM.resize(41);
  for (Index k = 0; k <= 40; ++k) M.logM[k] = u(rng);
  M.provenance = "table()";
  const WeightSeq c = fdb_closure(M);
  for (int trial = 0; trial < 500; ++trial) {
    const Index k = 2 + Index(rng() % 39);
    Index rem = k, j = 0;
    double prod = 0.0;
    while (rem > 0) {
      const Index a = 1 + Index(rng() % uint64_t(rem));
      prod += M.logM[a];
      rem -= a;
      ++j;
    }
    CHECK(c.logM[k] >= M.logM[j] + prod - 1e-12);
  }
}
