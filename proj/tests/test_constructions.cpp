#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ultraweight/conditions.hpp"
#include "ultraweight/constructions.hpp"
#include "ultraweight/fdb.hpp"
#include "ultraweight/regularize.hpp"
#include "ultraweight/relations.hpp"

using namespace uw;

TEST_CASE("staircase recursion") {
  const Example36Result ex = example36(4.0, 400);
  CHECK(ex.kIndices == std::vector<Index>{3, 6, 12, 24, 48, 96, 288});
  CHECK(std::exp(ex.M.logM[3]) == doctest::Approx(64.0 / 6.0));
  CHECK(std::exp(ex.logmu[2]) == doctest::Approx(64.0));  // mu_3 = r^3
  CHECK(std::exp(ex.logmu[3]) == doctest::Approx(16.0));  // mu_4 = r^{k_1 - 1}
  CHECK_THROWS_AS(example36(3.5, 100), std::invalid_argument);

  // mu_k / k <= r^k throughout
  for (Index k = 1; k <= 400; ++k)
    CHECK(ex.logmu[k - 1] - std::log(double(k)) <= double(k) * std::log(4.0) + 1e-12);

  // base-2 variant thins out faster but follows the same recursion start
  const Example36Result ex2 = example36(4.0, 400, 2.0);
  CHECK(ex2.kIndices[0] == 3);
  CHECK(ex2.kIndices[1] == 6);  // ceil(log2 3) = 2
}

TEST_CASE("staircase segment slopes") {
  const Example36Result ex = example36(4.0, 300);
  const ArrayXd y = ex.M.log_kfact_M_array();
  const double logr = std::log(4.0);
  // strictly between jump indices the increments sit on (k_i - 1) log r
  for (size_t i = 0; i + 1 < ex.kIndices.size(); ++i) {
    const Index a = ex.kIndices[i], b = ex.kIndices[i + 1];
    for (Index k = a + 1; k < b; ++k)
      CHECK(y[k] - y[k - 1] == doctest::Approx(double(a - 1) * logr).epsilon(1e-12));
  }
}

TEST_CASE("staircase hull contact set") {
  const Example36Result ex = example36(4.0, 400);
  const HullResult h = lc_minorant(ex.M, HullFlavor::Weak);
  std::vector<Index> contact;
  for (Index k : h.vertices)
    if (k >= 3 && k < h.provisionalFrom) contact.push_back(k);
  CHECK(contact == std::vector<Index>{5, 11, 23, 47, 95, 287});

  const ContactRatioDiag d = contact_ratio_diagnostic(h);
  CHECK(d.bounded == "no-trend");
}

TEST_CASE("staircase battery: dc, no wlc, convolution bound, closure") {
  const Example36Result ex = example36(4.0, 300);
  CHECK(check_condition(ex.M, SeqCondition::Dc).holds());
  CHECK(check_condition(ex.M, SeqCondition::Wlc).status == Status::Fails);
  const FdbSufficientReport rep = fdb_sufficient_conditions(ex.M);
  CHECK(rep.convolutionShift.holds());
  CHECK(rep.fdb.holds());
}

TEST_CASE("characteristic sum") {
  const WeightSeq g1 = make_gevrey(1.0, 64);
  const CharFnResult cf = characteristic_fn(g1, 10, 0);
  CHECK(std::exp(cf.log_h[0]) == doctest::Approx(1.1385445480).epsilon(1e-8));

  const CharFnResult full = characteristic_fn(g1, 44, 20);
  const ArrayXd y = g1.log_kfact_M_array();
  for (Index j = 0; j <= 20; ++j) {
    CHECK(full.log_h[j] >= y[j]);  // exact lower bound
    // upper bound including the reported tail
    ArrayXd two(2);
    two[0] = double(j + 1) * std::log(2.0) + y[j];
    two[1] = full.tailBound[j];
    CHECK(full.log_h[j] <= log_sum_exp(two) + 1e-9);
  }
  CHECK(std::isfinite(full.normC));
  CHECK(full.normRho == 4.0);
  CHECK(full.phase.find("i^j") != std::string::npos);

  // rejects a sequence that is not weakly log-convex
  const WeightSeq m36 = example36(4.0, 120).M;
  CHECK_THROWS_AS(characteristic_fn(m36, 20, 10), std::invalid_argument);
  CHECK_THROWS_AS(characteristic_fn(g1, 60, 20), std::invalid_argument);  // N + jmax > kmax
}

TEST_CASE("characteristic sum derivatives pass the cartan bound") {
  // |g^{(j)}(t)| <= h_j everywhere, so h is a valid derivative envelope and
  // the values at 0 are exactly h_j
  const WeightSeq g1 = make_gevrey(1.0, 64);
  const CharFnResult cf = characteristic_fn(g1, 40, 24);
  WeightSeq env;
  env.logM.resize(25);
  for (Index j = 0; j <= 24; ++j) env.logM[j] = cf.log_h[j] - log_factorial(j);
  env.provenance = "table()";
  const ConditionVerdict v = cartan_check(env, cf.log_h.head(25), 1.0);
  CHECK(v.holds());
}

TEST_CASE("interpolation between G^0 and G^2") {
  const WeightSeq L = make_gevrey(0.0, 96), M = make_gevrey(2.0, 96);
  const auto [N1, N2] = interpolate(L, M, InterpolationVariant::Sqrt);
  for (Index k = 0; k <= 96; ++k) {
    CHECK(N1.logM[k] == doctest::Approx(log_factorial(k)));          // max((k!)^1, 1)
    CHECK(N2.logM[k] == doctest::Approx(1.5 * log_factorial(k)));    // (k!)^{3/2}
    CHECK(L.logM[k] <= N1.logM[k] + 1e-12);
  }
  CHECK(check_relation(N1, N2, Relation::Triangleleft).holds());
  CHECK(check_relation(N2, M, Relation::Triangleleft).holds());
  CHECK(check_relation(N1, M, Relation::Triangleleft).holds());
  // (N1)^{1/k} escapes: last-quartile slope positive
  CHECK(last_quartile_slope(N1.logM) > 0.0);

  // precondition: L strictly below M
  CHECK_THROWS_AS(interpolate(M, M, InterpolationVariant::Sqrt), std::invalid_argument);
}

TEST_CASE("interpolation from the log-Gevrey sequence") {
  const WeightSeq L = log_gevrey_L(2000);
  const WeightSeq M = make_gevrey(1.0, 2000);
  const auto [N1, N2] = interpolate(L, M, InterpolationVariant::SqrtOverFactorial);
  CHECK(check_relation(N1, N2, Relation::Triangleleft).holds());
  CHECK(check_relation(N2, M, Relation::Triangleleft).holds());
  for (Index k = 0; k <= 2000; ++k) CHECK(L.logM[k] <= N1.logM[k] + 1e-12);
}

TEST_CASE("log-Gevrey sequence") {
  const WeightSeq L = log_gevrey_L(400);
  const double e = std::exp(1.0);
  // terms of the quasianalyticity sum are 1/(k log^2(k+e)) exactly
  for (Index k : {Index(1), Index(5), Index(50), Index(400)}) {
    const double term = std::exp(-L.log_kfact_M(k) / double(k));
    CHECK(term == doctest::Approx(1.0 / (double(k) * std::pow(std::log(double(k) + e), 2.0)))
                      .epsilon(1e-12));
  }
  CHECK(std::exp(-L.log_kfact_M(1)) == doctest::Approx(0.5798256865).epsilon(1e-9));

  // (k! L_k)^{1/k} strictly increasing
  const ArrayXd y = L.log_kfact_M_array();
  for (Index k = 1; k < 400; ++k) CHECK(y[k + 1] / double(k + 1) > y[k] / double(k));

  const CarlemanResult cr = carleman_sums(L);
  CHECK(cr.verdict.status == Status::Certified);
  CHECK(cr.verdict.witness.at("divergent") == 0.0);

  // strictly below every Gevrey class on a long window
  const WeightSeq L20k = log_gevrey_L(20000);
  for (double s : {0.25, 0.5, 1.0})
    CHECK(check_relation(L20k, make_gevrey(s, 20000), Relation::Triangleleft).holds());
}
