#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ultraweight/conditions.hpp"
#include "ultraweight/constructions.hpp"
#include "ultraweight/regularize.hpp"
#include "ultraweight/relations.hpp"

using namespace uw;

namespace {

WeightSeq seq_from_logkf(const ArrayXd& y) {
  WeightSeq M;
  M.logM = y - log_factorials(y.size() - 1);
  M.label = "table";
  M.provenance = "table()";
  return M;
}

}  // namespace

TEST_CASE("hull of a weakly log-convex sequence is the identity") {
  const WeightSeq g1 = make_gevrey(1.0, 80);
  const HullResult h = lc_minorant(g1, HullFlavor::Weak);
  CHECK((h.regularized.logM == g1.logM).all());
  CHECK(h.vertices.size() == 81);  // every index touches
  CHECK(h.provisionalFrom == 80);
  CHECK(!h.degenerate);
}

TEST_CASE("hand-worked hull") {
  ArrayXd y(5);
  y << 0.0, 0.0, 3.0, 3.0, 8.0;
  const WeightSeq M = seq_from_logkf(y);
  const HullResult h = lc_minorant(M, HullFlavor::Weak);
  CHECK(h.hullValues[0] == doctest::Approx(0.0));
  CHECK(h.hullValues[1] == doctest::Approx(0.0));
  CHECK(h.hullValues[2] == doctest::Approx(1.5));
  CHECK(h.hullValues[3] == doctest::Approx(3.0));
  CHECK(h.hullValues[4] == doctest::Approx(8.0));
  CHECK(h.vertices == std::vector<Index>{0, 1, 3, 4});
}

TEST_CASE("hull invariants on random windows") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    WeightSeq M;
    M.logM = ArrayXd::Zero(49);
    for (Index k = 0; k <= 48; ++k) M.logM[k] = u(rng);
    M.provenance = "table()";
    const HullResult h = lc_minorant(M, HullFlavor::Weak);
    const ArrayXd y = M.log_kfact_M_array();

    // minorant, contact exactly on vertices, hull convex
    std::vector<bool> isv(49, false);
    for (Index k : h.vertices) isv[k] = true;
    CHECK(isv[0]);
    for (Index k = 0; k <= 48; ++k) {
      CHECK(h.hullValues[k] <= y[k] + 1e-12);
      if (isv[k])
        CHECK(h.hullValues[k] == y[k]);
      else
        CHECK(h.hullValues[k] < y[k] - 1e-9);
    }
    for (Index k = 1; k < 48; ++k)
      CHECK(h.hullValues[k - 1] + h.hullValues[k + 1] - 2.0 * h.hullValues[k] >= -1e-8);

    // exact idempotence
    const HullResult h2 = lc_minorant(h.regularized, HullFlavor::Weak);
    CHECK((h2.regularized.logM == h.regularized.logM).all());

    // monotonicity: lifting the input can only lift the minorant
    WeightSeq N = M;
    for (Index k = 0; k <= 48; ++k) N.logM[k] += std::abs(u(rng));
    const HullResult hN = lc_minorant(N, HullFlavor::Weak);
    for (Index k = 0; k <= 48; ++k)
      CHECK(h.regularized.logM[k] <= hN.regularized.logM[k] + 1e-12);
  }
}

TEST_CASE("degenerate input is flagged, hull still produced") {
  WeightSeq M;
  M.logM.resize(33);
  for (Index k = 0; k <= 32; ++k)
    M.logM[k] = -3.0 * double(k) * std::log(double(k) + 1.0) - log_factorial(k);
  M.provenance = "table()";
  const HullResult h = lc_minorant(M, HullFlavor::Weak);
  CHECK(h.degenerate);
  CHECK(h.provisionalFrom == 0);
  CHECK_THROWS_AS(lc_minorant(from_table(ArrayXd::Zero(2).eval(), "x"), HullFlavor::Weak),
                  std::invalid_argument);
}

TEST_CASE("associated function T") {
  const WeightSeq g0 = make_gevrey(0.0, 40);
  ArrayXd tg(2);
  tg << 1.0, 2.0;
  const AssocSample a = assoc_function(g0, 'T', tg);
  CHECK(std::exp(a.values[0]) == doctest::Approx(1.0));  // argmax k = 0
  CHECK(a.argmax[0] == 0);
  CHECK(std::exp(a.values[1]) == doctest::Approx(2.0));  // 2^1/1! = 2^2/2! = 2
  CHECK((a.argmax[1] == 1 || a.argmax[1] == 2));
  CHECK(!a.truncated[0]);

  // T is invariant under the regularization
  const WeightSeq m36 = example36(4.0, 120).M;
  const WeightSeq bc = lc_minorant(m36, HullFlavor::Weak).regularized;
  for (double u : {0.5, 1.0, 3.0, 10.0, 40.0})
    CHECK(log_T(m36, u) == doctest::Approx(log_T(bc, u)).epsilon(1e-9));
}

TEST_CASE("T-duality recovers the minorant") {
  const WeightSeq g1 = make_gevrey(1.0, 120);
  const HullResult h = lc_minorant(g1, HullFlavor::Weak);
  ArrayXd uGrid(512);
  for (Index i = 0; i < 512; ++i) uGrid[i] = -1.0 + 12.0 * double(i) / 511.0;
  const ArrayXd dual = dual_from_T(g1, uGrid, 96);
  for (Index k = 1; k <= 96; ++k)
    CHECK(std::abs(dual[k] - h.regularized.logM[k]) <= std::log(1.02));
}

TEST_CASE("b(o) regularization") {
  const WeightSeq g0 = make_gevrey(0.0, 100);
  const WeightSeq bo = b_o_regularization(g0, 220.0);
  for (Index k = 1; k <= 80; ++k)
    CHECK(std::abs(std::exp(bo.logM[k]) - 1.0) <= 0.05);

  const WeightSeq g1 = make_gevrey(1.0, 100);
  const WeightSeq bo1 = b_o_regularization(g1, 220.0);
  for (Index k = 1; k <= 80; ++k) CHECK(bo1.logM[k] <= g1.logM[k] + 1e-9);

  // S is invariant under its own regularization
  for (double u : {0.7, 1.5, 3.0, 4.5})
    CHECK(log_S(g1, u) == doctest::Approx(log_S(bo1, u)).epsilon(1e-6));

  CHECK_THROWS_AS(b_o_regularization(g0, 50.0), std::invalid_argument);
}

TEST_CASE("the two regularizations agree on the staircase interior") {
  const WeightSeq M = example36(4.0, 100).M;
  const WeightSeq bc = lc_minorant(M, HullFlavor::Weak).regularized;
  const ArrayXd y = M.log_kfact_M_array();
  double smax = 0.0;
  for (Index k = 1; k <= 100; ++k) smax = std::max(smax, y[k] - y[k - 1]);
  const WeightSeq bo = b_o_regularization(M, std::exp(smax + 1.0));
  for (Index k = 1; k <= 80; ++k)
    CHECK(std::abs((bo.logM[k] - bc.logM[k]) / double(k)) <= 0.05);
}

TEST_CASE("contact ratio diagnostic") {
  // synthetic hull with vertices at powers of two: all ratios 2, bounded
  ArrayXd y(17);
  for (Index k = 0; k <= 16; ++k) y[k] = 0.0;
  // convex staircase with corners at 1,2,4,8,16
  y[0] = 0.0;
  std::vector<Index> corners = {1, 2, 4, 8, 16};
  double slope = 0.5, val = 0.0;
  Index prev = 0;
  for (Index c : corners) {
    val += slope * double(c - prev);
    y[c] = val;
    prev = c;
    slope *= 3.0;
  }
  // fill non-corner points well above the chords
  for (Index k = 1; k <= 16; ++k) {
    bool corner = k == 1 || k == 2 || k == 4 || k == 8 || k == 16;
    if (!corner) y[k] = 1000.0;
  }
  const WeightSeq M = seq_from_logkf(y);
  HullResult h = lc_minorant(M, HullFlavor::Weak);
  h.provisionalFrom = 17;  // treat the whole window as certified for the diagnostic
  const ContactRatioDiag d = contact_ratio_diagnostic(h);
  CHECK(d.bounded == "yes-on-window");
  for (double r : d.ratios) CHECK(r == doctest::Approx(2.0));

  // Gevrey hull: every k is a vertex, ratios (k+1)/k -> 1
  const HullResult hg = lc_minorant(make_gevrey(1.0, 64), HullFlavor::Weak);
  const ContactRatioDiag dg = contact_ratio_diagnostic(hg);
  CHECK(dg.bounded == "yes-on-window");
  CHECK(dg.ratios.back() == doctest::Approx(double(dg.verticesUsed.back()) /
                                            double(dg.verticesUsed[dg.verticesUsed.size() - 2])));

  // staircase: ratios spike upward
  const HullResult h36 = lc_minorant(example36(4.0, 400).M, HullFlavor::Weak);
  const ContactRatioDiag d36 = contact_ratio_diagnostic(h36);
  CHECK(d36.bounded == "no-trend");
  // the separation bound grows with the spike
  CHECK(d36.lowerBounds.back() > d36.lowerBounds[d36.lowerBounds.size() - 2]);
}

TEST_CASE("cartan bound") {
  // f(t) = e^{beta t} on [-lambda, lambda]: bounds M_k = beta^k e^{beta lambda}/k!
  const double beta = 1.0, lambda = 16.0;
  const Index K = 40;
  WeightSeq M;
  M.logM.resize(K + 1);
  for (Index k = 0; k <= K; ++k)
    M.logM[k] = double(k) * std::log(beta) + beta * lambda - log_factorial(k);
  M.provenance = "table()";
  ArrayXd vals(K + 1);
  for (Index k = 0; k <= K; ++k) vals[k] = double(k) * std::log(beta);
  const ConditionVerdict v = cartan_check(M, vals, lambda);
  CHECK(v.holds());

  // zero function
  ArrayXd zeros = ArrayXd::Constant(K + 1, kNegInf);
  CHECK(cartan_check(M, zeros, lambda).holds());

  // hypothesis violation is rejected with the offending index
  WeightSeq bad = M;
  bad.logM[3] = -100.0;
  CHECK_THROWS_AS(cartan_check(bad, vals, lambda), std::invalid_argument);

  // a genuine violation of the bound is located
  ArrayXd big = vals;
  big[5] += 40.0;
  const ConditionVerdict f = cartan_check(M, big, lambda);
  CHECK(f.status == Status::Fails);
  REQUIRE(f.counterexample.has_value());
  CHECK(Index(f.counterexample->indices[0]) == 5);
}

TEST_CASE("relation transport through the minorant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> step(-1.0, 1.5), noise(-2.0, 2.0);
  int kept = 0;
  for (int trial = 0; trial < 200 && kept < 25; ++trial) {
    WeightSeq N;
    N.logM = ArrayXd::Zero(65);
    for (Index k = 1; k <= 64; ++k) N.logM[k] = N.logM[k - 1] + step(rng);
    N.provenance = "table()";
    WeightSeq M = N;
    for (Index k = 0; k <= 64; ++k) M.logM[k] += 0.4 * double(k) + noise(rng);
    const RelationVerdict rel = check_relation(M, N, Relation::Lesssim);
    if (!rel.holds()) continue;
    ++kept;
    const double logrho = std::log(rel.witness.at("rho"));
    const double logC = std::log(rel.witness.at("C"));
    const HullResult hM = lc_minorant(M), hN = lc_minorant(N);
    for (Index k = 0; k <= 64; ++k)
      CHECK(hM.hullValues[k] - hN.hullValues[k] - double(k) * logrho <= logC + 1e-9);
  }
  CHECK(kept == 25);
}
