#include "ultraweight/batteries.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ultraweight/conditions.hpp"
#include "ultraweight/constructions.hpp"
#include "ultraweight/fdb.hpp"
#include "ultraweight/regularize.hpp"
#include "ultraweight/relations.hpp"
#include "ultraweight/series.hpp"
#include "ultraweight/weight_fn.hpp"
#include "ultraweight/weight_matrix.hpp"

namespace uw {

namespace {

struct Checker {
  bool pass = true;
  std::ostringstream detail;
  int clauses = 0;

  void require(bool ok, const std::string& what) {
    ++clauses;
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << "FAILED: " << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
  CriterionResult result(const std::string& id, const std::string& name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.pass = pass;
    std::ostringstream head;
    head << clauses << " clauses";
    r.detail = detail.tellp() > 0 ? head.str() + "; " + detail.str() : head.str();
    return r;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

WeightSeq random_seq(std::mt19937_64& rng, Index kmax, double lo = -5.0, double hi = 5.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  ArrayXd logM(kmax + 1);
  for (Index k = 0; k <= kmax; ++k) logM[k] = u(rng);
  WeightSeq M;
  M.logM = logM;
  M.label = "random";
  M.provenance = "table()";
  return M;
}

// brute-force affine minorant: max over chords through point pairs that stay
// below the whole point set
ArrayXd hull_oracle(const ArrayXd& y) {
  const Index n = y.size();
  ArrayXd best = ArrayXd::Constant(n, kNegInf);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double slope = (y[j] - y[i]) / double(j - i);
      bool valid = true;
      for (Index k = 0; k < n && valid; ++k)
        if (y[k] - (y[i] + slope * double(k - i)) < -1e-12) valid = false;
      if (!valid) continue;
      for (Index k = 0; k < n; ++k)
        best[k] = std::max(best[k], y[i] + slope * double(k - i));
    }
  }
  return best;
}

ArrayXd linear_grid(double lo, double hi, Index n) {
  ArrayXd g(n);
  for (Index i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return g;
}

ArrayXd geometric_grid(double lo, double hi, Index n) {
  ArrayXd g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (Index i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * double(i) / double(n - 1));
  return g;
}

ArrayXd rho_grid_default() {
  ArrayXd g(10);
  for (int i = -3; i <= 6; ++i) g[i + 3] = std::pow(2.0, i);
  return g;
}

double phistar_linear_closed(double t) { return t >= 1.0 ? t * std::log(t) - t + 1.0 : 0.0; }

}  // namespace

CriterionResult criterion_hull_oracle(uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  bool idempotent = true;
  for (int trial = 0; trial < 200; ++trial) {
    const WeightSeq M = random_seq(rng, 48);
    const HullResult h = lc_minorant(M, HullFlavor::Weak);
    const ArrayXd oracle = hull_oracle(M.log_kfact_M_array());
    worst = std::max(worst, (h.hullValues - oracle).abs().maxCoeff());
    const HullResult h2 = lc_minorant(h.regularized, HullFlavor::Weak);
    if ((h2.regularized.logM != h.regularized.logM).any()) idempotent = false;
  }
  c.require(worst <= 1e-9, "hull vs oracle worst " + fmt(worst));
  c.require(idempotent, "idempotence must be exact");
  c.note("worst |hull - oracle| = " + fmt(worst));
  return c.result("1", "hull oracle equivalence + exact idempotence");
}

namespace {

double duality_worst(const WeightSeq& M, Index kTo) {
  const HullResult h = lc_minorant(M, HullFlavor::Weak);
  const ArrayXd y = M.log_kfact_M_array();
  double smin = y[1] - y[0], smax = 0.0;
  for (Index k = 1; k <= M.kmax(); ++k) {
    smin = std::min(smin, y[k] - y[k - 1]);
    smax = std::max(smax, y[k] - y[k - 1]);
  }
  const ArrayXd uGrid = linear_grid(smin - 1.0, smax + 1.0, 512);
  const ArrayXd dual = dual_from_T(M, uGrid, kTo);
  double worst = 0.0;
  for (Index k = 1; k <= kTo; ++k)
    worst = std::max(worst, std::abs(dual[k] - h.regularized.logM[k]));
  return worst;
}

}  // namespace

CriterionResult criterion_t_duality() {
  Checker c;
  const double tol = std::log(1.02);
  const double w0 = duality_worst(make_gevrey(0.0, 200), 160);
  const double w1 = duality_worst(make_gevrey(1.0, 200), 160);
  const double w36 = duality_worst(example36(4.0, 320).M, 256);
  c.require(w0 <= tol, "G^0 duality error " + fmt(w0));
  c.require(w1 <= tol, "G^1 duality error " + fmt(w1));
  c.require(w36 <= tol, "staircase duality error " + fmt(w36));
  c.note("log errors: " + fmt(w0) + ", " + fmt(w1) + ", " + fmt(w36));
  return c.result("2", "minorant recovered from T on a 512-point grid (2% relative)");
}

CriterionResult criterion_example36_battery() {
  Checker c;
  const Example36Result ex = example36(4.0, 400);

  const ConditionVerdict wlc = check_condition(ex.M, SeqCondition::Wlc);
  c.require(wlc.status == Status::Fails && wlc.counterexample.has_value(),
            "wlc must fail with a counterexample");
  if (wlc.counterexample)
    c.require(Index(wlc.counterexample->indices[0]) == 3,
              "first concavity violation must sit at k = 3");

  const ConditionVerdict dc = check_condition(ex.M, SeqCondition::Dc);
  c.require(dc.holds() && std::isfinite(dc.witness.at("C")) && dc.witness.at("C") < 16.0,
            "dc witness C = " + fmt(dc.witness.at("C")));

  const FdbSufficientReport suff = fdb_sufficient_conditions(ex.M);
  c.require(suff.convolutionShift.holds(), "M_j M_k <= M_1 M_{j+k-1} exhaustively");
  c.require(suff.fdb.holds(), "closure must stay within C^k M_k");
  c.require(std::abs(suff.fdb.witness.at("C") - 1.0) <= 1e-6,
            "closure witness C = " + fmt(suff.fdb.witness.at("C")));
  c.require(suff.consistent, "sufficient conditions must imply the closure bound");

  const HullResult h = lc_minorant(ex.M, HullFlavor::Weak);
  std::vector<Index> contact;
  for (Index k : h.vertices)
    if (k >= 3 && k < h.provisionalFrom) contact.push_back(k);
  std::vector<Index> predicted;
  for (size_t i = 1; i < ex.kIndices.size(); ++i) {
    const Index v = ex.kIndices[i] - 1;
    if (v >= 3 && v < h.provisionalFrom) predicted.push_back(v);
  }
  c.require(contact == predicted, "contact set must equal the predicted thinned indices");

  const ContactRatioDiag diag = contact_ratio_diagnostic(h);
  c.require(diag.bounded == "no-trend", "contact ratios must trend unbounded");
  bool ratios_match = true;
  for (size_t i = 1; i + 1 < ex.kIndices.size(); ++i) {
    const double ratio = double(ex.kIndices[i + 1] - 1) / double(ex.kIndices[i] - 1);
    const double target = std::ceil(std::log(double(i) + 3.0));  // steps of the recursion
    if (std::abs(ratio - target) > 0.15 * target) ratios_match = false;
  }
  c.require(ratios_match, "ratios must follow the ceil(log(i+2)) staircase");
  c.note("contact = {5,11,23,47,95,287} checked; dc C = " + fmt(dc.witness.at("C")));
  return c.result("3", "staircase sequence battery (r = 4, window 400)");
}

CriterionResult criterion_fdb_oracle(uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const WeightSeq M = random_seq(rng, 25);
    const WeightSeq dp = fdb_closure(M);
    const WeightSeq oracle = fdb_closure_oracle(M, 25);
    worst = std::max(worst, (dp.logM.head(26) - oracle.logM).abs().maxCoeff());
  }
  c.require(worst <= 1e-9, "DP vs partition oracle worst " + fmt(worst));
  for (double s : {0.0, 1.0, 2.0}) {
    const WeightSeq G = make_gevrey(s, 60);
    const double err = (fdb_closure(G).logM - G.logM).abs().maxCoeff();
    c.require(err <= 1e-9, "closure of G^" + fmt(s) + " must be itself (err " + fmt(err) + ")");
  }
  c.note("worst DP/oracle gap = " + fmt(worst));
  return c.result("4", "chain-rule closure equals the partition oracle");
}

CriterionResult criterion_series_composition(uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  const Index K = 15;
  const WeightSeq M = make_gevrey(1.0, K);
  double min_margin = std::numeric_limits<double>::infinity();
  bool all_equal = true, all_hold = true;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> fc(K + 1), gc(K + 1);
    for (Index k = 0; k <= K; ++k) {
      fc[k] = coeff(rng);
      gc[k] = coeff(rng);
    }
    if (fc[1] == 0) fc[1] = 1;
    const TruncatedSeries f = make_series(fc, "g(0)");
    const TruncatedSeries g = make_series(gc, "0");
    const TruncatedSeries h = series_compose(f, g);
    const TruncatedSeries o = series_compose_oracle(f, g);
    for (Index k = 0; k <= K; ++k)
      if (h.coeffs[k] != o.coeffs[k]) all_equal = false;

    const BoundCertificate cf = minimal_certificate(f, M);
    const BoundCertificate cg = minimal_certificate(g, M);
    const CompositionBoundReport rep = verify_composition_bound(f, cf, g, cg);
    min_margin = std::min(min_margin, rep.margins.minCoeff());
    if (!rep.verdict.holds()) all_hold = false;
  }
  c.require(all_equal, "Horner composition must match the chain-rule sum exactly");
  c.require(all_hold && min_margin >= -1e-9,
            "composition bound margin " + fmt(min_margin));
  c.note("min margin over 100 trials = " + fmt(min_margin));
  return c.result("5", "exact composition + composition bound margins");
}

CriterionResult criterion_characteristic_fn() {
  Checker c;
  for (double s : {1.0, 2.0}) {
    const WeightSeq M = make_gevrey(s, 64);
    const CharFnResult cf = characteristic_fn(M, 44, 20);
    const ArrayXd y = M.log_kfact_M_array();
    bool lower = true, upper = true;
    for (Index j = 0; j <= 20; ++j) {
      if (cf.log_h[j] < y[j]) lower = false;
      ArrayXd two(2);
      two[0] = double(j + 1) * std::log(2.0) + y[j];
      two[1] = cf.tailBound[j];
      if (cf.log_h[j] > log_sum_exp(two) + 1e-9) upper = false;
    }
    c.require(lower, "h_j >= j! M_j exactly (G^" + fmt(s) + ")");
    c.require(upper, "h_j <= 2^{j+1} j! M_j + tail (G^" + fmt(s) + ")");
    c.require(std::isfinite(cf.normC) && cf.normC < 1e6,
              "norm estimate at rho = 4 must be finite (G^" + fmt(s) + ")");
    if (s == 1.0) c.note("G^1: h_0 = " + fmt(std::exp(cf.log_h[0])) + ", C(rho=4) = " + fmt(cf.normC));
  }
  return c.result("6", "characteristic sum brackets j! M_j (orders <= 20, 44 terms)");
}

CriterionResult criterion_conjugate_closed_form() {
  Checker c;
  const WeightFunction w = make_linear_cutoff();
  const ArrayXd tg = linear_grid(1.0, 100.0, 200);
  const ConjugateTable table = young_conjugate_auto(w, tg);
  double worst_rel = 0.0;
  for (Index i = 0; i < tg.size(); ++i) {
    const double closed = phistar_linear_closed(tg[i]);
    const double err = std::abs(table.phiStar[i] - closed);
    if (closed > 0)
      worst_rel = std::max(worst_rel, err / closed);
    else
      worst_rel = std::max(worst_rel, err);
  }
  c.require(worst_rel <= 1e-6, "closed-form relative error " + fmt(worst_rel));

  const ArrayXd low = linear_grid(0.0, 1.0, 50);
  const ConjugateTable zero = young_conjugate_auto(w, low);
  c.require((zero.phiStar == 0.0).all(), "phi* must vanish identically on [0, 1]");
  c.note("worst relative error on [1,100]: " + fmt(worst_rel));
  return c.result("7", "conjugate of the linear weight matches t log t - t + 1");
}

CriterionResult criterion_omega_inequalities() {
  Checker c;
  const std::vector<WeightFunction> ws = {make_linear_cutoff(), make_gevrey_root(1.0),
                                          make_gevrey_root(2.0)};
  for (const WeightFunction& w : ws) {
    InequalityParams p;
    p.rhoGrid = {0.5, 1.0, 2.0};
    p.jkMax = 100;
    c.require(inequality_suite(w, OmegaInequality::OmegaSuperadd, p).holds(),
              w.label + ": factorial superadditivity for rho in {1/2,1,2}");
    for (double sigma : {2.0, 10.0}) {
      InequalityParams ps;
      ps.rho = 1.0;
      ps.sigma = sigma;
      ps.jkMax = 100;
      const ConditionVerdict sv = inequality_suite(w, OmegaInequality::SigmaAbsorb, ps);
      c.require(sv.holds(), w.label + ": no absorbing witness for sigma = " + fmt(sigma));
      if (sv.holds())
        c.note(w.label + " sigma=" + fmt(sigma) + ": H=" + fmt(sv.witness.at("H")) +
               " C=" + fmt(sv.witness.at("C")));
    }
    for (double rho : {0.5, 1.0, 2.0}) {
      const ArrayXd uGrid = linear_grid(1.0, std::log(1000.0), 60);
      const ConditionVerdict orv = omega_rho_check(w, rho, uGrid);
      c.require(orv.holds(), w.label + ": omega_rho bounds at rho = " + fmt(rho));
    }
  }
  return c.result("8", "associated-sequence inequalities and omega_rho bounds");
}

CriterionResult criterion_matrix_batteries() {
  Checker c;
  {
    ArrayXd sGrid(3);
    sGrid << 0.5, 1.0, 2.0;
    const WeightMatrix G = gevrey_matrix(sGrid, 200);
    for (Flavor f : {Flavor::Beurling, Flavor::Roumieu})
      c.require(check_matrix_condition(G, MatrixCondition::BR, f).holds(),
                std::string("Gevrey matrix BR [") + to_string(f) + "]");
    c.require(check_relation(G.seqs[0], G.seqs[1], Relation::Triangleleft).holds() &&
                  check_relation(G.seqs[1], G.seqs[2], Relation::Triangleleft).holds(),
              "Gevrey ladder chain");
    for (Flavor f : {Flavor::Beurling, Flavor::Roumieu}) {
      const ConditionVerdict fdb = check_matrix_condition(G, MatrixCondition::FdB, f);
      c.require(fdb.holds(), std::string("Gevrey matrix FdB [") + to_string(f) + "]");
      for (const Assignment& a : fdb.assignments)
        c.require(std::abs(a.C - 1.0) <= 1e-6, "Gevrey FdB witness must be C = 1");
    }
  }
  {
    const WeightMatrix W = matrix_from_omega(make_linear_cutoff(), rho_grid_default(), 120);
    for (MatrixCondition cond : {MatrixCondition::Mg, MatrixCondition::Alg, MatrixCondition::Dc,
                                 MatrixCondition::L}) {
      for (Flavor f : {Flavor::Beurling, Flavor::Roumieu}) {
        const ConditionVerdict v = check_matrix_condition(W, cond, f);
        c.require(v.holds(), std::string("linear-weight matrix ") + to_string(cond) + " [" +
                                 to_string(f) + "]");
      }
    }
    // the doubled parameter is always an admissible mg witness; the absorbing
    // H rho is always an admissible L witness — verify both directly
    bool doubling = true;
    for (Index i = 0; i + 1 < W.size(); ++i) {
      const ArrayXd a = W.seqs[i].log_kfact_M_array();
      const ArrayXd b = W.seqs[i + 1].log_kfact_M_array();
      for (Index j = 0; j <= 100 && doubling; ++j)
        for (Index k = 0; j + k <= 100; ++k)
          if (a[j + k] > b[j] + b[k] + 1e-9) {
            doubling = false;
            break;
          }
    }
    c.require(doubling, "doubled rho must witness moderate growth");
    bool absorbing = true;
    for (Index i = 0; i + 4 < W.size(); ++i) {  // H = 16 absorbs rho^k up to rho = 10
      double worst = kNegInf;
      for (Index k = 1; k <= 100; ++k)
        worst = std::max(worst, double(k) * std::log(10.0) + W.seqs[i].logM[k] -
                                    W.seqs[i + 4].logM[k]);
      if (!std::isfinite(worst) || worst > 50.0) absorbing = false;
    }
    c.require(absorbing, "H rho must absorb rho^k with a window constant");
  }
  {
    const WeightSeq L = log_gevrey_L(20000);
    const CarlemanResult cr = carleman_sums(L);
    c.require(cr.verdict.status == Status::Certified &&
                  cr.verdict.witness.at("divergent") == 0.0,
              "log-Gevrey sequence must be certified convergent");
    for (double s : {0.25, 0.5, 1.0}) {
      const WeightSeq G = make_gevrey(s, 20000);
      c.require(check_relation(L, G, Relation::Triangleleft).holds(),
                "L strictly below G^" + fmt(s));
    }
  }
  return c.result("9", "matrix batteries: Gevrey family, linear-weight family, log-Gevrey L");
}

CriterionResult criterion_theorem_cross_consistency() {
  Checker c;
  for (double s : {0.5, 1.0, 2.0}) {
    const WeightFunction g = make_gevrey_root(s);
    c.require(check_omega_condition(g, OmegaCondition::W7).holds(),
              "gevrey_root(" + fmt(s) + ") must satisfy w7");
    const WeightMatrix W = matrix_from_omega(g, rho_grid_default(), 100);
    c.require(check_matrix_condition(W, MatrixCondition::FdB, Flavor::Roumieu).holds(),
              "associated matrix FdB [roumieu] for gevrey_root(" + fmt(s) + ")");
    c.require(roots_almost_increasing_matrix(W, Flavor::Roumieu).holds(),
              "associated matrix roots a.i. for gevrey_root(" + fmt(s) + ")");
  }
  const WeightFunction pl = make_power_log(2.0);
  c.require(check_omega_condition(pl, OmegaCondition::W6).status == Status::Fails,
            "power_log(2) must fail w6");
  InequalityParams p;
  p.rho = 1.0;
  p.tau = 4.0;
  p.jkMax = 100;
  c.require(inequality_suite(pl, OmegaInequality::RhoEquivalence, p).status == Status::Fails,
            "power_log(2) associated sequences must not be rho-equivalent (1 vs 4)");
  return c.result("10", "omega-condition vs matrix-condition cross-consistency");
}

CriterionResult criterion_transport(uint64_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(-1.0, 1.5), noise(-2.0, 2.0);
  const Index K = 64;
  int kept = 0, tried = 0;
  double worst_transport = -std::numeric_limits<double>::infinity();
  while (kept < 50 && tried < 600) {
    ++tried;
    WeightSeq N;
    N.logM = ArrayXd::Zero(K + 1);
    for (Index k = 1; k <= K; ++k) N.logM[k] = N.logM[k - 1] + step(rng);
    N.label = "random";
    N.provenance = "table()";
    WeightSeq M = N;
    for (Index k = 0; k <= K; ++k) M.logM[k] += 0.3 * double(k) + noise(rng);
    M.provenance = "table()";
    const RelationVerdict rel = check_relation(M, N, Relation::Lesssim);
    if (!rel.holds()) continue;
    ++kept;
    const double logC = std::log(rel.witness.at("C"));
    const double logrho = std::log(rel.witness.at("rho"));
    const HullResult hM = lc_minorant(M), hN = lc_minorant(N);
    double logC2 = kNegInf;
    for (Index k = 0; k <= K; ++k)
      logC2 = std::max(logC2, hM.hullValues[k] - hN.hullValues[k] - double(k) * logrho);
    worst_transport = std::max(worst_transport, logC2 - logC);
  }
  c.require(kept == 50, "needed 50 qualifying pairs, got " + std::to_string(kept));
  c.require(worst_transport <= 1e-9,
            "regularized pair must re-verify with the same rho (worst excess " +
                fmt(worst_transport) + ")");

  double worst_equiv = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const WeightSeq N = random_seq(rng, 48);
    for (double rho : {0.5, 2.0}) {
      const WeightSeq a = lc_minorant(scale(N, rho)).regularized;
      const WeightSeq b = scale(lc_minorant(N).regularized, rho);
      worst_equiv = std::max(worst_equiv, (a.logM - b.logM).abs().maxCoeff());
    }
  }
  c.require(worst_equiv <= 1e-12, "scaling equivariance error " + fmt(worst_equiv));
  c.note("transport excess " + fmt(worst_transport) + ", equivariance " + fmt(worst_equiv));
  return c.result("11", "relation transport under regularization; scaling equivariance");
}

std::vector<CriterionResult> run_all_criteria(uint64_t seed) {
  return {criterion_hull_oracle(seed),
          criterion_t_duality(),
          criterion_example36_battery(),
          criterion_fdb_oracle(seed + 1),
          criterion_series_composition(seed + 2),
          criterion_characteristic_fn(),
          criterion_conjugate_closed_form(),
          criterion_omega_inequalities(),
          criterion_matrix_batteries(),
          criterion_theorem_cross_consistency(),
          criterion_transport(seed + 3)};
}

std::vector<std::string> scenario_names() {
  return {"paper-gevrey",      "paper-example36", "paper-omega-linear",
          "paper-omega-gevreyroot", "paper-matrix-G",  "paper-fdb-series"};
}

bool is_scenario(const std::string& name) {
  for (const auto& n : scenario_names())
    if (n == name) return true;
  return false;
}

namespace {

CriterionResult gevrey_ladder_battery() {
  Checker c;
  for (double s = 0.0; s < 3.0; s += 0.25) {
    const WeightSeq a = make_gevrey(s, 64);
    const WeightSeq b = make_gevrey(s + 0.25, 64);
    c.require(check_relation(a, b, Relation::Triangleleft).holds(),
              "ladder step " + fmt(s) + " -> " + fmt(s + 0.25));
  }
  const ConditionVerdict mg = check_condition(make_gevrey(1.0, 100), SeqCondition::Mg);
  c.require(mg.holds() && mg.witness.at("C") <= 2.0,
            "factorial moderate-growth witness " + fmt(mg.witness.at("C")));
  return c.result("G", "Gevrey ladder + moderate-growth witness");
}

}  // namespace

std::vector<CriterionResult> run_scenario(const std::string& name, uint64_t seed) {
  if (name == "paper-gevrey")
    return {criterion_hull_oracle(seed), criterion_fdb_oracle(seed + 1),
            criterion_transport(seed + 3), gevrey_ladder_battery()};
  if (name == "paper-example36")
    return {criterion_example36_battery(), criterion_t_duality()};
  if (name == "paper-omega-linear")
    return {criterion_conjugate_closed_form(), criterion_omega_inequalities()};
  if (name == "paper-omega-gevreyroot")
    return {criterion_theorem_cross_consistency()};
  if (name == "paper-matrix-G")
    return {criterion_matrix_batteries()};
  if (name == "paper-fdb-series")
    return {criterion_series_composition(seed + 2), criterion_characteristic_fn()};
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace uw
