#include "ultraweight/weight_fn.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ultraweight/regularize.hpp"
#include "ultraweight/trend.hpp"

namespace uw {

namespace {

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

ArrayXd log_spaced(double lo, double hi, Index n) {
  ArrayXd u(n);
  const double a = std::log(lo), b = std::log(hi);
  for (Index i = 0; i < n; ++i) u[i] = std::exp(a + (b - a) * double(i) / double(n - 1));
  return u;
}

}  // namespace

double WeightFunction::phi(double u) const {
  switch (kind) {
    case Kind::GevreyRoot:
      return u <= 0.0 ? 0.0 : std::expm1(u / (1.0 + s));
    case Kind::PowerLog:
      return u <= 0.0 ? 0.0 : std::pow(u, s);
    case Kind::LinearCutoff:
      return u <= 0.0 ? 0.0 : std::expm1(u);
    case Kind::Sampled: {
      const double t = std::exp(std::min(u, 700.0));
      if (t <= sampleT[0]) return sampleOmega[0];
      const Index n = sampleT.size();
      if (t >= sampleT[n - 1]) {
        const double slope = (sampleOmega[n - 1] - sampleOmega[n - 2]) /
                             (sampleT[n - 1] - sampleT[n - 2]);
        return sampleOmega[n - 1] + slope * (t - sampleT[n - 1]);
      }
      Index lo = 0, hi = n - 1;
      while (hi - lo > 1) {
        const Index mid = (lo + hi) / 2;
        (sampleT[mid] <= t ? lo : hi) = mid;
      }
      const double w0 = sampleOmega[lo], w1 = sampleOmega[lo + 1];
      return w0 + (w1 - w0) * (t - sampleT[lo]) / (sampleT[lo + 1] - sampleT[lo]);
    }
  }
  return 0.0;
}

double WeightFunction::omega(double t) const {
  if (t <= 0.0) return 0.0;
  return phi(std::log(t));
}

double WeightFunction::max_u() const {
  switch (kind) {
    case Kind::GevreyRoot: return 690.0 * (1.0 + s);
    case Kind::PowerLog: return 1e8;
    case Kind::LinearCutoff: return 690.0;
    case Kind::Sampled: return 690.0;
  }
  return 690.0;
}

std::optional<bool> WeightFunction::quasianalytic() const {
  switch (kind) {
    case Kind::GevreyRoot: return s == 0.0;
    case Kind::PowerLog: return false;
    case Kind::LinearCutoff: return true;
    case Kind::Sampled: return std::nullopt;
  }
  return std::nullopt;
}

WeightFunction make_gevrey_root(double s) {
  if (s < 0) throw std::invalid_argument("gevrey_root: s must be >= 0");
  WeightFunction w;
  w.kind = WeightFunction::Kind::GevreyRoot;
  w.s = s;
  w.label = "gevrey_root(" + fmt_param(s) + ")";
  return w;
}

WeightFunction make_power_log(double s) {
  if (s <= 1) throw std::invalid_argument("power_log: s must be > 1");
  WeightFunction w;
  w.kind = WeightFunction::Kind::PowerLog;
  w.s = s;
  w.label = "power_log(" + fmt_param(s) + ")";
  return w;
}

WeightFunction make_linear_cutoff() {
  WeightFunction w;
  w.kind = WeightFunction::Kind::LinearCutoff;
  w.label = "linear_cutoff";
  return w;
}

WeightFunction make_sampled(const ArrayXd& tGrid, const ArrayXd& values, std::string label) {
  if (tGrid.size() != values.size() || tGrid.size() < 4)
    throw std::invalid_argument("sampled weight: need matching grids with >= 4 points");
  for (Index i = 0; i < tGrid.size(); ++i) {
    if (tGrid[i] <= 0) throw std::invalid_argument("sampled weight: t must be positive");
    if (i > 0 && tGrid[i] <= tGrid[i - 1])
      throw std::invalid_argument("sampled weight: t-grid must be strictly increasing");
    if (i > 0 && values[i] < values[i - 1] - 1e-12)
      throw std::invalid_argument("sampled weight: values must be nondecreasing");
  }
  if (tGrid[0] > 1.0 || values[0] != 0.0)
    throw std::invalid_argument("sampled weight: first sample must be (t <= 1, 0)");
  const Index n = tGrid.size();
  if (values[n - 1] <= values[(3 * n) / 4])
    throw std::invalid_argument("sampled weight: last-decade growth must be positive");

  WeightFunction w;
  w.kind = WeightFunction::Kind::Sampled;
  w.sampleT = tGrid;
  w.sampleOmega = values;
  w.label = std::move(label);

  // phi convexity on a uniform u-grid, tolerance 1e-8 per unit
  const double uMax = std::log(tGrid[n - 1]);
  const Index m = 256;
  ArrayXd ph(m);
  for (Index i = 0; i < m; ++i) ph[i] = w.phi(uMax * double(i) / double(m - 1));
  const double scale = std::max(1.0, ph.abs().maxCoeff());
  for (Index i = 1; i + 1 < m; ++i)
    if (ph[i - 1] + ph[i + 1] - 2.0 * ph[i] < -1e-8 * scale)
      throw std::invalid_argument("sampled weight: phi(u) = omega(e^u) fails convexity validation");
  return w;
}

ConjugateTable young_conjugate(const WeightFunction& w, const ArrayXd& tGrid, double sMax,
                               Index sGridSize) {
  for (Index i = 0; i < tGrid.size(); ++i) {
    if (tGrid[i] < 0) throw std::invalid_argument("young_conjugate: tGrid must be nonnegative");
    if (i > 0 && tGrid[i] < tGrid[i - 1])
      throw std::invalid_argument("young_conjugate: tGrid must be sorted");
  }
  sMax = std::min(sMax, w.max_u());
  const Index n = sGridSize;
  ArrayXd sg(n), phiV(n);
  for (Index i = 0; i < n; ++i) {
    sg[i] = sMax * double(i) / double(n - 1);
    phiV[i] = w.phi(sg[i]);
  }

  ConjugateTable out;
  out.tGrid = tGrid;
  out.phiStar.resize(tGrid.size());
  out.argmax.resize(tGrid.size());
  out.truncated.resize(tGrid.size());

  Index idx = 0;
  for (Index i = 0; i < tGrid.size(); ++i) {
    const double t = tGrid[i];
    auto obj_grid = [&](Index j) { return sg[j] * t - phiV[j]; };
    while (idx + 1 < n && obj_grid(idx + 1) >= obj_grid(idx)) ++idx;

    auto obj = [&](double sv) { return sv * t - w.phi(sv); };
    const double lo = sg[std::max<Index>(idx - 1, 0)];
    const double hi = sg[std::min<Index>(idx + 1, n - 1)];
    GoldenResult g = golden_max(obj, lo, hi, 60);

    double best = obj_grid(idx);
    double arg = sg[idx];
    if (g.value > best) {
      best = g.value;
      arg = g.x;
    }
    if (best < 0.0) {  // s = 0 always competes and yields phi* >= 0
      best = 0.0;
      arg = 0.0;
    }
    out.phiStar[i] = best;
    out.argmax[i] = arg;
    out.truncated[i] = (idx == n - 1);
  }
  return out;
}

ConjugateTable young_conjugate_auto(const WeightFunction& w, const ArrayXd& tGrid) {
  double sMax = 8.0;
  for (;;) {
    ConjugateTable table = young_conjugate(w, tGrid, sMax);
    bool anyTrunc = false;
    for (bool b : table.truncated) anyTrunc |= b;
    if (!anyTrunc || sMax >= w.max_u()) return table;
    sMax *= 2.0;
  }
}

double conjugate_at(const WeightFunction& w, double t) {
  ArrayXd g(1);
  g[0] = t;
  return young_conjugate_auto(w, g).phiStar[0];
}

WeightSeq omega_sequence(const WeightFunction& w, double rho, Index kmax) {
  if (rho <= 0) throw std::invalid_argument("omega_sequence: rho must be > 0");
  if (kmax < 2) throw std::invalid_argument("omega_sequence: kmax must be >= 2");
  ArrayXd tGrid(kmax + 1);
  for (Index k = 0; k <= kmax; ++k) tGrid[k] = rho * double(k);
  const ConjugateTable table = young_conjugate_auto(w, tGrid);
  for (Index k = 0; k <= kmax; ++k)
    if (table.truncated[k])
      throw std::invalid_argument("omega_sequence: conjugate truncated at t = " + fmt_param(tGrid[k]));

  WeightSeq M;
  M.logM.resize(kmax + 1);
  for (Index k = 0; k <= kmax; ++k)
    M.logM[k] = table.phiStar[k] / rho - log_factorial(k);
  M.label = "Omega^" + fmt_param(rho) + "(" + w.label + ")";
  std::string kindArgs;
  switch (w.kind) {
    case WeightFunction::Kind::GevreyRoot: kindArgs = "kind=gevrey_root,s=" + fmt_param(w.s); break;
    case WeightFunction::Kind::PowerLog: kindArgs = "kind=power_log,s=" + fmt_param(w.s); break;
    case WeightFunction::Kind::LinearCutoff: kindArgs = "kind=linear_cutoff"; break;
    case WeightFunction::Kind::Sampled: kindArgs = "kind=sampled"; break;
  }
  M.provenance = "omega_seq(" + kindArgs + ",rho=" + fmt_param(rho) + ")";
  return M;
}

const char* to_string(OmegaCondition c) {
  switch (c) {
    case OmegaCondition::W1: return "w1";
    case OmegaCondition::W2: return "w2";
    case OmegaCondition::W3: return "w3";
    case OmegaCondition::W4: return "w4";
    case OmegaCondition::W5: return "w5";
    case OmegaCondition::W6: return "w6";
    case OmegaCondition::W7: return "w7";
    case OmegaCondition::W8: return "w8";
  }
  return "?";
}

std::optional<OmegaCondition> omega_condition_from_string(const std::string& s) {
  for (OmegaCondition c : {OmegaCondition::W1, OmegaCondition::W2, OmegaCondition::W3,
                           OmegaCondition::W4, OmegaCondition::W5, OmegaCondition::W6,
                           OmegaCondition::W7, OmegaCondition::W8})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

namespace {

ArrayXd default_u_grid(const WeightFunction& w, double headroom) {
  const double cap = std::max(2.0, w.max_u() - headroom);
  return log_spaced(0.05, std::min(cap, 4000.0), 240);
}

ConditionVerdict base_verdict(const char* cond, const ArrayXd& uGrid) {
  ConditionVerdict v;
  v.condition = cond;
  std::ostringstream os;
  os << "u in [" << uGrid[0] << ", " << uGrid[uGrid.size() - 1] << "], " << uGrid.size()
     << " log-spaced points";
  v.window.grid = os.str();
  return v;
}

// series of log(phi(u + shift)) - log(phi(u)) over grid points with phi > 0
ArrayXd log_ratio_series(const WeightFunction& w, const ArrayXd& uGrid, double shift) {
  std::vector<double> vals;
  for (Index i = 0; i < uGrid.size(); ++i) {
    const double base = w.phi(uGrid[i]);
    if (base <= 0.0) continue;
    vals.push_back(std::log(w.phi(uGrid[i] + shift)) - std::log(base));
  }
  return Eigen::Map<ArrayXd>(vals.data(), Index(vals.size())).eval();
}

}  // namespace

ConditionVerdict check_omega_condition(const WeightFunction& w, OmegaCondition cond,
                                       const ArrayXd& uGridIn) {
  double headroom = 1.0;
  if (cond == OmegaCondition::W6) headroom = 15.0;
  if (cond == OmegaCondition::W7) headroom = 8.0;
  if (cond == OmegaCondition::W8) headroom = w.max_u() / 2.0;
  const ArrayXd uGrid = uGridIn.size() ? uGridIn : default_u_grid(w, headroom);
  const Index n = uGrid.size();

  switch (cond) {
    case OmegaCondition::W1: {
      ConditionVerdict v = base_verdict("w1", uGrid);
      const ArrayXd r = log_ratio_series(w, uGrid, std::log(2.0));
      if (r.size() < 8) {
        v.status = Status::Inconclusive;
        v.notes.push_back("too few samples with omega > 0");
        return v;
      }
      const TailTrend tt = tail_trend(r);
      const Index tail = std::max<Index>(8, r.size() / 5);
      v.witness["C"] = std::exp(r.tail(tail).maxCoeff());
      v.witness["trend_first"] = tt.m_first;
      v.witness["trend_second"] = tt.m_second;
      v.status = trend_rises(tt) ? Status::Fails : Status::HoldsOnWindow;
      v.diagnostics = diag_samples(r);
      return v;
    }
    case OmegaCondition::W2: {
      ConditionVerdict v = base_verdict("w2", uGrid);
      std::vector<double> vals;
      for (Index i = 0; i < n; ++i) {
        const double f = w.phi(uGrid[i]);
        if (f <= 0.0 || uGrid[i] <= 0.0) continue;
        vals.push_back(std::log(f) - std::log(uGrid[i]));
      }
      ArrayXd r = Eigen::Map<ArrayXd>(vals.data(), Index(vals.size()));
      if (r.size() < 8) {
        v.status = Status::Inconclusive;
        return v;
      }
      const TailTrend tt = tail_trend(r);
      v.witness["trend_first"] = tt.m_first;
      v.witness["trend_second"] = tt.m_second;
      if (tt.delta() > kEpsTail)
        v.status = Status::HoldsOnWindow;
      else if (tt.delta() < -kEpsTail)
        v.status = Status::Fails;
      else
        v.status = Status::Inconclusive;
      v.diagnostics = diag_samples(r);
      return v;
    }
    case OmegaCondition::W3: {
      ConditionVerdict v = base_verdict("w3", uGrid);
      const double uMax = std::min(w.max_u(), uGrid[n - 1]);
      const Index m = 512;
      ArrayXd ph(m);
      for (Index i = 0; i < m; ++i) ph[i] = w.phi(uMax * double(i) / double(m - 1));
      const double scale = std::max(1.0, ph.abs().maxCoeff());
      v.status = Status::HoldsOnWindow;
      for (Index i = 1; i + 1 < m; ++i) {
        if (ph[i - 1] + ph[i + 1] - 2.0 * ph[i] < -1e-8 * scale) {
          Counterexample c;
          c.indices = {uMax * double(i) / double(m - 1)};
          c.lhs = 2.0 * ph[i];
          c.rhs = ph[i - 1] + ph[i + 1];
          c.inequality = "phi convexity second difference";
          v.counterexample = c;
          v.status = Status::Fails;
          break;
        }
      }
      return v;
    }
    case OmegaCondition::W4:
    case OmegaCondition::W5: {
      ConditionVerdict v = base_verdict(to_string(cond), uGrid);
      std::vector<double> vals;
      for (Index i = 0; i < n; ++i) {
        const double f = w.phi(uGrid[i]);
        if (f <= 0.0) continue;
        vals.push_back(std::log(f) - uGrid[i]);  // log(omega(t)/t)
      }
      ArrayXd r = Eigen::Map<ArrayXd>(vals.data(), Index(vals.size()));
      if (r.size() < 8) {
        v.status = Status::Inconclusive;
        return v;
      }
      const TailTrend tt = tail_trend(r);
      v.witness["trend_first"] = tt.m_first;
      v.witness["trend_second"] = tt.m_second;
      if (cond == OmegaCondition::W4) {
        const Index tail = std::max<Index>(8, r.size() / 5);
        v.witness["C"] = std::exp(r.tail(tail).maxCoeff());
        v.status = trend_rises(tt) ? Status::Fails : Status::HoldsOnWindow;
      } else {
        v.status = trend_falls(tt) ? Status::HoldsOnWindow : Status::Fails;
      }
      v.diagnostics = diag_samples(r);
      return v;
    }
    case OmegaCondition::W6: {
      ConditionVerdict v = base_verdict("w6", uGrid);
      double bestViol = std::numeric_limits<double>::infinity();
      double bestH = 0.0, bestU = 0.0;
      for (int i = 0; i <= 20; ++i) {
        const double H = std::pow(2.0, i);
        double worst = 0.0, worstU = 0.0;
        for (Index j = 0; j < n; ++j) {
          const double lhs = 2.0 * w.phi(uGrid[j]);
          const double rhs = w.phi(uGrid[j] + std::log(H)) + H;
          const double gap = lhs - rhs - 1e-9 * std::max(1.0, std::abs(lhs));
          if (gap > worst) {
            worst = gap;
            worstU = uGrid[j];
          }
        }
        if (worst <= 0.0) {
          v.witness["H"] = H;
          v.status = Status::HoldsOnWindow;
          return v;
        }
        if (worst < bestViol) {
          bestViol = worst;
          bestH = H;
          bestU = worstU;
        }
      }
      Counterexample c;
      c.indices = {bestU, bestH};
      c.lhs = 2.0 * w.phi(bestU);
      c.rhs = w.phi(bestU + std::log(bestH)) + bestH;
      c.inequality = "2 omega(t) <= omega(Ht) + H (best sampled H)";
      v.counterexample = c;
      v.status = Status::Fails;
      v.notes.push_back("no sampled witness H in {2^0..2^20}");
      return v;
    }
    case OmegaCondition::W7: {
      ConditionVerdict v = base_verdict("w7", uGrid);
      const ArrayXd lambdas = log_spaced(1.0, 1000.0, 32);
      for (int i = 0; i <= 20; ++i) {  // minimal C wins; t0 may grow to reach it
        const double C = std::pow(2.0, i);
        for (double t0 : {1.0, 10.0, 100.0}) {
          const double u0 = std::log(t0);
          bool ok = true;
          for (Index j = 0; j < n && ok; ++j) {
            if (uGrid[j] < u0) continue;
            const double base = w.phi(uGrid[j]);
            for (Index l = 0; l < lambdas.size(); ++l) {
              const double lam = lambdas[l];
              const double lhs = w.phi(uGrid[j] + std::log(lam));
              if (lhs > C * lam * base + 1e-9 * std::max(1.0, lhs)) {
                ok = false;
                break;
              }
            }
          }
          if (ok) {
            v.witness["C"] = C;
            v.witness["t0"] = t0;
            v.status = Status::HoldsOnWindow;
            return v;
          }
        }
      }
      v.status = Status::Fails;
      v.notes.push_back("no sampled witness (C, t0) with C in {2^0..2^20}, t0 in {1,10,100}");
      return v;
    }
    case OmegaCondition::W8: {
      ConditionVerdict v = base_verdict("w8", uGrid);
      for (int ci = 0; ci <= 20; ++ci) {
        const double C = std::pow(2.0, ci);
        for (int hi = 0; hi <= 20; ++hi) {
          const double H = std::pow(2.0, hi);
          bool ok = true;
          for (Index j = 0; j < n && ok; ++j) {
            const double lhs = w.phi(2.0 * uGrid[j]);
            const double rhs = C * w.phi(uGrid[j] + std::log(H)) + C;
            if (lhs > rhs + 1e-9 * std::max(1.0, lhs)) ok = false;
          }
          if (ok) {
            v.witness["C"] = C;
            v.witness["H"] = H;
            v.status = Status::HoldsOnWindow;
            return v;
          }
        }
      }
      v.status = Status::Fails;
      v.notes.push_back("no sampled witness (C, H) in {2^0..2^20}^2");
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

const char* to_string(OmegaInequality w) {
  switch (w) {
    case OmegaInequality::ConjSuperadd: return "conj_superadd";
    case OmegaInequality::OmegaSuperadd: return "omega_superadd";
    case OmegaInequality::SigmaAbsorb: return "sigma_absorb";
    case OmegaInequality::RhoEquivalence: return "rho_equivalence";
    case OmegaInequality::RhoTriangle: return "rho_triangle";
    case OmegaInequality::ConjIterate: return "conj_iterate";
  }
  return "?";
}

std::optional<OmegaInequality> omega_inequality_from_string(const std::string& s) {
  for (OmegaInequality c : {OmegaInequality::ConjSuperadd, OmegaInequality::OmegaSuperadd,
                            OmegaInequality::SigmaAbsorb, OmegaInequality::RhoEquivalence,
                            OmegaInequality::RhoTriangle, OmegaInequality::ConjIterate})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

ConditionVerdict inequality_suite(const WeightFunction& w, OmegaInequality which,
                                  const InequalityParams& params) {
  ConditionVerdict v;
  v.condition = to_string(which);

  switch (which) {
    case OmegaInequality::ConjSuperadd: {
      ArrayXd tg = params.tGrid.size() ? params.tGrid : log_spaced(0.25, 64.0, 24);
      const ConjugateTable lo = young_conjugate_auto(w, tg);
      v.window.grid = "pairs over " + std::to_string(tg.size()) + " grid points";
      v.status = Status::HoldsOnWindow;
      for (Index i = 0; i < tg.size() && v.status == Status::HoldsOnWindow; ++i) {
        for (Index j = i; j < tg.size(); ++j) {
          const double sum = conjugate_at(w, tg[i] + tg[j]);
          const double upper = 0.5 * conjugate_at(w, 2.0 * tg[i]) + 0.5 * conjugate_at(w, 2.0 * tg[j]);
          const double tol = 1e-6 * std::max(1.0, std::abs(sum));
          if (lo.phiStar[i] + lo.phiStar[j] > sum + tol || sum > upper + tol) {
            Counterexample c;
            c.indices = {tg[i], tg[j]};
            c.lhs = lo.phiStar[i] + lo.phiStar[j];
            c.rhs = sum;
            c.inequality = "phi*(t)+phi*(s) <= phi*(t+s) <= phi*(2t)/2+phi*(2s)/2";
            v.counterexample = c;
            v.status = Status::Fails;
            break;
          }
        }
      }
      return v;
    }
    case OmegaInequality::OmegaSuperadd: {
      v.window.kmax = params.jkMax;
      v.status = Status::HoldsOnWindow;
      for (double rho : params.rhoGrid) {
        const WeightSeq om = omega_sequence(w, rho, params.jkMax);
        const WeightSeq om2 = omega_sequence(w, 2.0 * rho, params.jkMax);
        const ArrayXd a = om.log_kfact_M_array();
        const ArrayXd a2 = om2.log_kfact_M_array();
        for (Index j = 0; j <= params.jkMax && v.status == Status::HoldsOnWindow; ++j) {
          for (Index k = 0; j + k <= params.jkMax; ++k) {
            const double tol = 1e-9 * std::max(1.0, std::abs(a[j + k]));
            if (a[j] + a[k] > a[j + k] + tol || a[j + k] > a2[j] + a2[k] + tol) {
              Counterexample c;
              c.indices = {double(j), double(k), rho};
              c.lhs = a[j] + a[k];
              c.rhs = a[j + k];
              c.inequality = "j!O_j k!O_k <= (j+k)!O_{j+k} <= j!O2_j k!O2_k (log)";
              v.counterexample = c;
              v.status = Status::Fails;
              break;
            }
          }
        }
        // derivation-closedness corollary witness per rho
        double c = kNegInf;
        for (Index k = 0; k < params.jkMax; ++k)
          c = std::max(c, om.logM[k + 1] - om2.logM[k]);
        v.witness["C_shift_rho=" + fmt_param(rho)] = std::exp(c);
      }
      return v;
    }
    case OmegaInequality::SigmaAbsorb: {
      const Index K = params.jkMax;
      const WeightSeq om = omega_sequence(w, params.rho, K);
      v.window.kmax = K;
      for (int i = 0; i <= 20; ++i) {
        const double H = std::pow(2.0, i);
        const WeightSeq omH = omega_sequence(w, H * params.rho, K);
        ArrayXd d(K);
        for (Index k = 1; k <= K; ++k)
          d[k - 1] = double(k) * std::log(params.sigma) + om.logM[k] - omH.logM[k];
        const TailTrend tt = tail_trend(d);
        if (tt.m_second <= tt.m_first + kEpsTail) {
          v.witness["H"] = H;
          v.witness["C"] = std::exp(std::max(d.maxCoeff(), 0.0));
          v.status = Status::HoldsOnWindow;
          v.diagnostics = diag_samples(d);
          return v;
        }
      }
      v.status = Status::Fails;
      v.notes.push_back("no sampled H in {2^0..2^20} gives a stable constant");
      return v;
    }
    case OmegaInequality::RhoEquivalence: {
      const Index K = params.jkMax;
      const WeightSeq a = omega_sequence(w, params.rho, K);
      const WeightSeq b = omega_sequence(w, params.tau, K);
      const RelationVerdict rel = check_relation(a, b, Relation::Approx);
      v.window.kmax = K;
      v.status = rel.status;
      v.witness = rel.witness;
      const ConditionVerdict w6 = check_omega_condition(w, OmegaCondition::W6);
      v.notes.push_back(std::string("w6 verdict: ") + to_string(w6.status) +
                        (w6.holds() == rel.holds() ? " (consistent)" : " (cross-check mismatch)"));
      return v;
    }
    case OmegaInequality::RhoTriangle: {
      const Index K = params.jkMax;
      const WeightSeq base = omega_sequence(w, params.rho, K);
      for (int i = 1; i <= 10; ++i) {
        const double C = std::pow(2.0, i);
        const WeightSeq low = omega_sequence(w, params.rho / C, K);
        const RelationVerdict rel = check_relation(low, base, Relation::Triangleleft);
        if (rel.holds()) {
          v.witness["C"] = C;
          v.status = Status::HoldsOnWindow;
          const ConditionVerdict w8 = check_omega_condition(w, OmegaCondition::W8);
          v.notes.push_back(std::string("w8 verdict: ") + to_string(w8.status));
          return v;
        }
      }
      v.status = Status::Fails;
      v.notes.push_back("no sampled C in {2^1..2^10}");
      const ConditionVerdict w8 = check_omega_condition(w, OmegaCondition::W8);
      v.notes.push_back(std::string("w8 verdict: ") + to_string(w8.status) +
                        (w8.holds() ? " (cross-check mismatch)" : " (consistent)"));
      return v;
    }
    case OmegaInequality::ConjIterate: {
      ArrayXd tg = params.tGrid.size() ? params.tGrid : log_spaced(0.5, 64.0, 16);
      const int sMaxIter = 5;
      for (int li = 0; li <= 6; ++li) {
        const double L = std::pow(2.0, li);
        bool ok = true;
        for (Index i = 0; i < tg.size() && ok; ++i) {
          for (int s = 1; s <= sMaxIter; ++s) {
            const double Ls = std::pow(L, s);
            double sumLi = 0.0;
            for (int q = 1; q <= s; ++q) sumLi += std::pow(L, q);
            const double lhs = Ls * conjugate_at(w, tg[i]) + double(s) * Ls * tg[i];
            const double rhs = conjugate_at(w, Ls * tg[i]) + sumLi;
            if (lhs > rhs + 1e-6 * std::max(1.0, std::abs(rhs))) {
              ok = false;
              break;
            }
          }
        }
        if (ok) {
          v.witness["L"] = L;
          v.status = Status::HoldsOnWindow;
          return v;
        }
      }
      v.status = Status::Fails;
      v.notes.push_back("no sampled L in {2^0..2^6}");
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

ConditionVerdict omega_rho_check(const WeightFunction& w, double rho, const ArrayXd& uGrid) {
  if (uGrid.size() < 8) throw std::invalid_argument("omega_rho_check: grid too short");
  const double tMax = std::exp(uGrid[uGrid.size() - 1]);
  const Index kmax = Index(std::ceil(tMax / std::min(rho, 1.0) * 1.2)) + 50;
  const WeightSeq om = omega_sequence(w, rho, kmax);

  ConditionVerdict v;
  v.condition = "omega_rho";
  std::ostringstream os;
  os << "t in [" << std::exp(uGrid[0]) << ", " << tMax << "]";
  v.window.grid = os.str();
  v.witness["rho"] = rho;

  std::vector<double> lower;
  Index dropped = 0;
  v.status = Status::HoldsOnWindow;
  for (Index i = 0; i < uGrid.size(); ++i) {
    Index am = 0;
    const double om_rho = log_T(om, uGrid[i], &am);
    if (am == om.kmax()) {
      ++dropped;
      continue;
    }
    const double omv = w.phi(uGrid[i]);
    if (rho * om_rho > omv + 1e-9 * std::max(1.0, omv)) {
      Counterexample c;
      c.indices = {uGrid[i]};
      c.lhs = rho * om_rho;
      c.rhs = omv;
      c.inequality = "rho * omega_rho(t) <= omega(t)";
      v.counterexample = c;
      v.status = Status::Fails;
      return v;
    }
    lower.push_back(omv - 2.0 * rho * om_rho);
  }
  if (dropped > 0)
    v.notes.push_back(std::to_string(dropped) + " samples dropped (argmax at window edge)");
  ArrayXd low = Eigen::Map<ArrayXd>(lower.data(), Index(lower.size()));
  const Index tail = std::max<Index>(4, low.size() / 5);
  v.witness["C"] = low.tail(tail).maxCoeff();
  const TailTrend tt = tail_trend(low);
  if (trend_rises(tt, std::max(1.0, std::abs(tt.m_first)) * 0.05)) v.status = Status::Fails;
  v.diagnostics = diag_samples(low);
  return v;
}

WeightCompareResult compare_weights(const WeightFunction& w, const WeightFunction& v,
                                    Relation rel) {
  if (rel == Relation::Approx)
    throw std::invalid_argument("compare_weights: use lesssim in both directions for approx");
  const double cap = std::min({w.max_u() - 0.5, v.max_u() - 0.5, 4000.0});
  const ArrayXd uGrid = log_spaced(std::log(10.0), cap, 200);

  std::vector<double> ds;
  for (Index i = 0; i < uGrid.size(); ++i) {
    const double a = w.phi(uGrid[i]);
    const double b = v.phi(uGrid[i]);
    if (a < 1.0 || b <= 0.0) continue;
    ds.push_back(std::log(b) - std::log(a));  // log(sigma/omega)
  }
  ArrayXd d = Eigen::Map<ArrayXd>(ds.data(), Index(ds.size()));

  WeightCompareResult out;
  ConditionVerdict& cv = out.verdict;
  cv.condition = std::string("weights_") + to_string(rel);
  cv.window.grid = "tail grid, omega >= 1";
  if (d.size() < 8) {
    cv.status = Status::Inconclusive;
    cv.notes.push_back("too few tail samples with omega >= 1");
    out.sequenceEcho.status = Status::Inconclusive;
    return out;
  }
  const TailTrend tt = tail_trend(d);
  cv.witness["trend_first"] = tt.m_first;
  cv.witness["trend_second"] = tt.m_second;
  const Index tail = std::max<Index>(8, d.size() / 5);
  const double H = std::exp(std::max(d.tail(tail).maxCoeff(), 0.0));
  cv.witness["H"] = H;
  if (rel == Relation::Lesssim)
    cv.status = trend_rises(tt) ? Status::Fails : Status::HoldsOnWindow;
  else
    cv.status = trend_falls(tt) ? Status::HoldsOnWindow : Status::Fails;
  cv.diagnostics = diag_samples(d);

  // sequence-level echo: Omega^rho <= C Sigma^{H rho} pointwise on a window
  ConditionVerdict& echo = out.sequenceEcho;
  echo.condition = "assoc_seq_domination";
  const Index K = 80;
  echo.window.kmax = K;
  if (cv.holds()) {
    const double Hr = std::pow(2.0, std::ceil(std::log2(std::max(H, 1.0))));
    const WeightSeq om = omega_sequence(w, 1.0, K);
    const WeightSeq sg = omega_sequence(v, Hr * 1.0, K);
    ArrayXd e(K);
    for (Index k = 1; k <= K; ++k) e[k - 1] = om.logM[k] - sg.logM[k];
    const TailTrend et = tail_trend(e);
    echo.witness["H"] = Hr;
    echo.witness["C"] = std::exp(e.maxCoeff());
    echo.status = trend_rises(et) ? Status::Fails : Status::HoldsOnWindow;
    echo.diagnostics = diag_samples(e);
  } else {
    echo.status = Status::Inconclusive;
    echo.notes.push_back("tail relation does not hold; no echo");
  }
  return out;
}

ConditionVerdict w7_failure_witness(const WeightFunction& w, int nMax) {
  ConditionVerdict v;
  v.condition = "w7_failure_witness";
  v.window.grid = "k in {2^0..2^12}, t log-spaced with omega(t) >= 1";
  const ArrayXd uGrid = log_spaced(0.5, std::max(2.0, w.max_u() - 10.0), 160);
  for (int n = 2; n <= nMax; ++n) {
    for (int ki = 0; ki <= 12; ++ki) {
      const double k = std::pow(2.0, ki);
      for (Index i = 0; i < uGrid.size(); ++i) {
        const double base = w.phi(uGrid[i]);
        if (base < 1.0) continue;
        if (uGrid[i] + std::log(k) > w.max_u()) continue;
        if (w.phi(uGrid[i] + std::log(k)) >= double(n) * double(n) * k * base) {
          Counterexample c;
          c.indices = {double(n), k, uGrid[i]};
          c.lhs = w.phi(uGrid[i] + std::log(k));
          c.rhs = double(n) * double(n) * k * base;
          c.inequality = "omega(k t) >= n^2 k omega(t) (witness found)";
          v.counterexample = c;
          v.status = Status::Fails;
          return v;
        }
      }
    }
  }
  v.status = Status::HoldsOnWindow;
  v.notes.push_back("no growth witness found on the sampled grids");
  return v;
}

}  // namespace uw
