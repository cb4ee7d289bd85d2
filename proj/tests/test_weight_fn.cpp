#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ultraweight/conditions.hpp"
#include "ultraweight/weight_fn.hpp"

using namespace uw;

namespace {

double phistar_linear(double t) { return t >= 1.0 ? t * std::log(t) - t + 1.0 : 0.0; }

double phistar_gevrey(double s, double t) {
  const double a = (1.0 + s) * t;
  return a >= 1.0 ? a * std::log(a) - a + 1.0 : 0.0;
}

}  // namespace

TEST_CASE("young conjugate against closed forms") {
  const WeightFunction lin = make_linear_cutoff();
  CHECK(conjugate_at(lin, 2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-9));
  CHECK(conjugate_at(lin, 1.0) == 0.0);
  CHECK(conjugate_at(lin, 0.3) == 0.0);

  for (double t : {0.7, 1.0, 2.0, 5.0, 25.0, 400.0})
    CHECK(conjugate_at(lin, t) == doctest::Approx(phistar_linear(t)).epsilon(1e-8));

  for (double s : {0.5, 1.0, 2.0})
    for (double t : {0.5, 1.0, 3.0, 10.0, 64.0})
      CHECK(conjugate_at(make_gevrey_root(s), t) ==
            doctest::Approx(phistar_gevrey(s, t)).epsilon(1e-7));

  // power_log(2): phi(u) = u^2, phi*(t) = t^2/4
  for (double t : {1.0, 4.0, 20.0})
    CHECK(conjugate_at(make_power_log(2.0), t) == doctest::Approx(t * t / 4.0).epsilon(1e-7));
}

TEST_CASE("conjugate table invariants") {
  const WeightFunction lin = make_linear_cutoff();
  ArrayXd tg(40);
  for (Index i = 0; i < 40; ++i) tg[i] = 0.25 * double(i);
  const ConjugateTable table = young_conjugate_auto(lin, tg);
  CHECK(table.phiStar[0] == 0.0);
  for (Index i = 1; i < 40; ++i) {
    CHECK(table.phiStar[i] >= table.phiStar[i - 1] - 1e-12);  // nondecreasing
    CHECK(table.argmax[i] >= table.argmax[i - 1] - 1e-9);     // monotone maximizer
    CHECK(!table.truncated[i]);
  }
  for (Index i = 1; i + 1 < 40; ++i)  // convex
    CHECK(table.phiStar[i - 1] + table.phiStar[i + 1] - 2.0 * table.phiStar[i] >= -1e-8);
  // phi*(t)/t nondecreasing
  for (Index i = 5; i + 1 < 40; ++i)
    CHECK(table.phiStar[i + 1] / tg[i + 1] >= table.phiStar[i] / tg[i] - 1e-9);
}

TEST_CASE("conjugate involution on the grid") {
  const WeightFunction lin = make_linear_cutoff();
  // phi(s) = sup_t (st - phi*(t)) recovered at interior points
  for (double s : {0.5, 1.0, 2.0, 3.0}) {
    double best = 0.0;
    for (double t = 0.0; t <= 60.0; t += 0.01)
      best = std::max(best, s * t - conjugate_at(lin, t));
    CHECK(best == doctest::Approx(lin.phi(s)).epsilon(1e-4));
  }
}

TEST_CASE("associated sequences") {
  const WeightSeq om1 = omega_sequence(make_linear_cutoff(), 1.0, 40);
  CHECK(std::exp(om1.logM[1]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::exp(om1.logM[2]) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-9));
  CHECK(check_condition(om1, SeqCondition::Wlc).holds());

  // Omega^rho <= Omega^sigma pointwise for rho <= sigma
  const WeightSeq om2 = omega_sequence(make_linear_cutoff(), 2.0, 40);
  for (Index k = 0; k <= 40; ++k) CHECK(om1.logM[k] <= om2.logM[k] + 1e-9);

  // gevrey_root(1): roots of k! Omega_k stay within a fixed band of G^1
  const WeightSeq g = omega_sequence(make_gevrey_root(1.0), 1.0, 60);
  for (Index k = 4; k <= 60; ++k) {
    const double band = (g.logM[k] - log_factorial(k)) / double(k);  // log (Omega_k/k!)^{1/k}
    CHECK(band > 0.0);
    CHECK(band < std::log(16.0));
  }
}

TEST_CASE("omega condition battery") {
  const WeightFunction lin = make_linear_cutoff();
  CHECK(check_omega_condition(lin, OmegaCondition::W1).holds());
  CHECK(check_omega_condition(lin, OmegaCondition::W2).holds());
  CHECK(check_omega_condition(lin, OmegaCondition::W3).holds());
  const ConditionVerdict w4 = check_omega_condition(lin, OmegaCondition::W4);
  CHECK(w4.holds());
  CHECK(w4.witness.at("C") == doctest::Approx(1.0).epsilon(0.05));
  CHECK(check_omega_condition(lin, OmegaCondition::W5).status == Status::Fails);
  CHECK(check_omega_condition(lin, OmegaCondition::W6).holds());
  CHECK(check_omega_condition(lin, OmegaCondition::W8).status == Status::Fails);

  for (double s : {0.5, 1.0, 2.0}) {
    const WeightFunction g = make_gevrey_root(s);
    const ConditionVerdict w7 = check_omega_condition(g, OmegaCondition::W7);
    CHECK(w7.holds());
    CHECK(w7.witness.at("C") == 1.0);
    CHECK(check_omega_condition(g, OmegaCondition::W5).holds());
    CHECK(check_omega_condition(g, OmegaCondition::W6).holds());
    CHECK(check_omega_condition(g, OmegaCondition::W8).status == Status::Fails);
  }

  const WeightFunction pl = make_power_log(2.0);
  CHECK(check_omega_condition(pl, OmegaCondition::W1).holds());
  CHECK(check_omega_condition(pl, OmegaCondition::W2).holds());
  CHECK(check_omega_condition(pl, OmegaCondition::W4).holds());
  CHECK(check_omega_condition(pl, OmegaCondition::W5).holds());
  CHECK(check_omega_condition(pl, OmegaCondition::W6).status == Status::Fails);
  CHECK(check_omega_condition(pl, OmegaCondition::W7).holds());
  CHECK(check_omega_condition(pl, OmegaCondition::W8).holds());
}

TEST_CASE("sampled weights validate and evaluate") {
  ArrayXd t(6), v(6);
  t << 0.5, 1.0, 10.0, 100.0, 1000.0, 10000.0;
  for (Index i = 0; i < 6; ++i) v[i] = std::max(0.0, t[i] - 1.0);
  const WeightFunction w = make_sampled(t, v, "linear-sampled");
  CHECK(w.omega(50.0) == doctest::Approx(49.0));
  CHECK(w.omega(0.7) == 0.0);
  CHECK(check_omega_condition(w, OmegaCondition::W3).holds());

  ArrayXd bad = v;
  bad[3] = 1e6;  // concave spike in phi
  CHECK_THROWS_AS(make_sampled(t, bad, "broken"), std::invalid_argument);
}

TEST_CASE("inequality suite on builtins") {
  InequalityParams p;
  p.jkMax = 80;
  for (const WeightFunction& w : {make_linear_cutoff(), make_gevrey_root(1.0)}) {
    CHECK(inequality_suite(w, OmegaInequality::ConjSuperadd, p).holds());
    const ConditionVerdict sup = inequality_suite(w, OmegaInequality::OmegaSuperadd, p);
    CHECK(sup.holds());
    // the shift corollary O^rho_{k+1} <= C O^{2rho}_k carries a finite witness
    CHECK(sup.witness.count("C_shift_rho=1") == 1);
    CHECK(std::isfinite(sup.witness.at("C_shift_rho=1")));
    CHECK(inequality_suite(w, OmegaInequality::ConjIterate, p).holds());
  }

  InequalityParams pe;
  pe.rho = 1.0;
  pe.tau = 2.0;
  pe.jkMax = 80;
  CHECK(inequality_suite(make_gevrey_root(1.0), OmegaInequality::RhoEquivalence, pe).holds());

  // power_log satisfies w8, so the strict rho gap opens up
  InequalityParams pt;
  pt.rho = 1.0;
  pt.jkMax = 80;
  const ConditionVerdict rt = inequality_suite(make_power_log(2.0), OmegaInequality::RhoTriangle, pt);
  CHECK(rt.holds());
}

TEST_CASE("omega_rho bounds") {
  ArrayXd uGrid(50);
  for (Index i = 0; i < 50; ++i) uGrid[i] = 1.0 + (std::log(1000.0) - 1.0) * double(i) / 49.0;
  CHECK(omega_rho_check(make_linear_cutoff(), 1.0, uGrid).holds());
  CHECK(omega_rho_check(make_gevrey_root(1.0), 1.0, uGrid).holds());
  CHECK(omega_rho_check(make_gevrey_root(1.0), 0.5, uGrid).holds());
}

TEST_CASE("weight comparisons") {
  const WeightCompareResult a = compare_weights(make_gevrey_root(1.0), make_gevrey_root(2.0),
                                                Relation::Triangleleft);
  CHECK(a.verdict.holds());
  CHECK(a.sequenceEcho.holds());

  const WeightCompareResult self = compare_weights(make_gevrey_root(1.0), make_gevrey_root(1.0),
                                                   Relation::Lesssim);
  CHECK(self.verdict.holds());
  CHECK(self.verdict.witness.at("H") == doctest::Approx(1.0).epsilon(1e-6));

  // sqrt(t) is not O((log t)^2)
  const WeightCompareResult bad = compare_weights(make_power_log(2.0), make_gevrey_root(1.0),
                                                  Relation::Lesssim);
  CHECK(bad.verdict.status == Status::Fails);
}

TEST_CASE("no growth witness for the builtin weights") {
  CHECK(w7_failure_witness(make_gevrey_root(1.0)).holds());
  CHECK(w7_failure_witness(make_power_log(2.0)).holds());
  CHECK(w7_failure_witness(make_linear_cutoff()).holds());
}
