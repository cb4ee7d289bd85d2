#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraweight/conditions.hpp"
#include "ultraweight/constructions.hpp"
#include "ultraweight/relations.hpp"

using namespace uw;

TEST_CASE("relation verdicts on Gevrey pairs") {
  const WeightSeq g1 = make_gevrey(1.0, 120), g2 = make_gevrey(2.0, 120);

  const RelationVerdict tl = check_relation(g1, g2, Relation::Triangleleft);
  CHECK(tl.holds());
  CHECK(tl.rootRatio[0] == doctest::Approx(-log_factorial(1)));
  CHECK(tl.rootRatio[99] < tl.rootRatio[9]);  // root ratio sinks

  const RelationVerdict eq = check_relation(g1, g1, Relation::Approx);
  CHECK(eq.holds());
  CHECK(eq.witness.at("C") == doctest::Approx(1.0));
  CHECK(eq.witness.at("rho") == doctest::Approx(1.0));

  const RelationVerdict bad = check_relation(g2, g1, Relation::Lesssim);
  CHECK(bad.status == Status::Fails);
  CHECK(check_relation(g2, g1, Relation::Triangleleft).status == Status::Fails);
  CHECK(check_relation(g1, g1, Relation::Triangleleft).status == Status::Fails);

  CHECK_THROWS_AS(check_relation(make_gevrey(1.0, 8), make_gevrey(2.0, 8), Relation::Lesssim),
                  std::invalid_argument);
}

TEST_CASE("triangleleft implies lesssim; scaling invariance") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    WeightSeq N;
    N.logM = ArrayXd::Zero(65);
    for (Index k = 1; k <= 64; ++k) N.logM[k] = N.logM[k - 1] + u(rng) + 0.7;
    N.provenance = "table()";
    WeightSeq M = N;
    for (Index k = 0; k <= 64; ++k) M.logM[k] -= 0.02 * double(k) * std::log(double(k) + 1.0);
    M.provenance = "table()";

    const RelationVerdict tl = check_relation(M, N, Relation::Triangleleft);
    if (tl.holds()) CHECK(check_relation(M, N, Relation::Lesssim).holds());

    for (double rho : {0.5, 2.0}) {
      const RelationVerdict scaled = check_relation(scale(M, rho), N, Relation::Triangleleft);
      CHECK(scaled.status == tl.status);
    }
  }
}

TEST_CASE("gevrey ladder over a grid") {
  for (double s = 0.0; s < 2.9; s += 0.25) {
    const WeightSeq a = make_gevrey(s, 64), b = make_gevrey(s + 0.25, 64);
    CHECK(check_relation(a, b, Relation::Triangleleft).holds());
  }
}

TEST_CASE("condition battery on builtin families") {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    CHECK(check_condition(make_gevrey(s, 100), SeqCondition::Lc).holds());
    CHECK(check_condition(make_gevrey(s, 100), SeqCondition::Wlc).holds());
  }

  const ConditionVerdict mg = check_condition(make_gevrey(1.0, 100), SeqCondition::Mg);
  CHECK(mg.holds());
  CHECK(mg.witness.at("C") <= 2.0);
  CHECK(mg.witness.at("C") > 1.5);

  const ConditionVerdict dc = check_condition(make_gevrey(1.0, 100), SeqCondition::Dc);
  CHECK(dc.holds());
  CHECK(dc.witness.at("C") == doctest::Approx(2.0));  // max at k = 1: M_2/M_1 = 2

  // staircase sequence: weak log-convexity breaks right after the first jump
  const WeightSeq M36 = example36(4.0, 120).M;
  const ConditionVerdict wlc = check_condition(M36, SeqCondition::Wlc);
  CHECK(wlc.status == Status::Fails);
  REQUIRE(wlc.counterexample.has_value());
  CHECK(Index(wlc.counterexample->indices[0]) == 3);
  CHECK(wlc.counterexample->lhs > wlc.counterexample->rhs);

  // lc implies wlc on random log-convex inputs
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    WeightSeq M;
    M.logM = ArrayXd::Zero(33);
    double slope = -2.0;
    for (Index k = 1; k <= 32; ++k) {
      slope += u(rng);
      M.logM[k] = M.logM[k - 1] + slope;
    }
    M.provenance = "table()";
    CHECK(check_condition(M, SeqCondition::Lc).holds());
    CHECK(check_condition(M, SeqCondition::Wlc).holds());
  }
}

TEST_CASE("mg witness shrinks with the window") {
  const WeightSeq g = make_gevrey(1.0, 128);
  const double c128 = check_condition(g, SeqCondition::Mg).witness.at("C");
  const double c64 = check_condition(truncated(g, 64), SeqCondition::Mg).witness.at("C");
  const double c32 = check_condition(truncated(g, 32), SeqCondition::Mg).witness.at("C");
  CHECK(c32 <= c64 + 1e-12);
  CHECK(c64 <= c128 + 1e-12);
}

TEST_CASE("roots_ai witness") {
  const ConditionVerdict v = check_condition(make_gevrey(1.0, 60), SeqCondition::RootsAi);
  CHECK(v.holds());
  CHECK(v.witness.at("C") == doctest::Approx(1.0));  // (k!)^{1/k} increasing
}

TEST_CASE("carleman sums with certificates") {
  const CarlemanResult g0 = carleman_sums(make_gevrey(0.0, 200));
  CHECK(g0.verdict.status == Status::Certified);
  CHECK(g0.verdict.witness.at("divergent") == 1.0);
  // terms (k!)^{-1/k} ~ e/k: the partial sums keep growing
  CHECK(g0.partialSumRoots[199] > g0.partialSumRoots[99] + 1.0);

  const CarlemanResult g1 = carleman_sums(make_gevrey(1.0, 200));
  CHECK(g1.verdict.status == Status::Certified);
  CHECK(g1.verdict.witness.at("divergent") == 0.0);
  CHECK(g1.ratioSums.has_value());  // G^1 is weakly log-convex

  const CarlemanResult L = carleman_sums(log_gevrey_L(400));
  CHECK(L.verdict.status == Status::Certified);
  CHECK(L.verdict.witness.at("divergent") == 0.0);

  WeightSeq table;
  table.logM = ArrayXd::Zero(33);
  table.provenance = "table()";
  CHECK(carleman_sums(table).verdict.status == Status::Inconclusive);
}
