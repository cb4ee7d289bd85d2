#include "ultraweight/conditions.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ultraweight/trend.hpp"

namespace uw {

namespace {

Window full_window(const WeightSeq& M) { return Window{0, M.kmax(), ""}; }

// First index where y fails convexity: 2 y_k > y_{k-1} + y_{k+1} + tol.
std::optional<Counterexample> convexity_violation(const ArrayXd& y, double tol) {
  for (Index k = 1; k + 1 < y.size(); ++k) {
    const double lhs = 2.0 * y[k];
    const double rhs = y[k - 1] + y[k + 1];
    if (lhs > rhs + tol) {
      Counterexample c;
      c.indices = {double(k)};
      c.lhs = lhs;
      c.rhs = rhs;
      c.inequality = "2*y[k] <= y[k-1] + y[k+1] (log domain)";
      return c;
    }
  }
  return std::nullopt;
}

ConditionVerdict witness_verdict(const ArrayXd& series, const char* cond, const WeightSeq& M) {
  ConditionVerdict v;
  v.condition = cond;
  v.window = full_window(M);
  const double mx = series.maxCoeff();
  v.witness["C"] = std::exp(mx);
  const TailTrend tt = tail_trend(series);
  v.witness["trend_first"] = tt.m_first;
  v.witness["trend_second"] = tt.m_second;
  v.status = Status::HoldsOnWindow;
  v.diagnostics = diag_samples(series);
  return v;
}

// provenance "name(k=v,...)" -> name + flat key/value map (no nesting)
struct Provenance {
  std::string name;
  std::map<std::string, std::string> kv;
};

Provenance parse_provenance(const std::string& p) {
  Provenance out;
  const auto lp = p.find('(');
  out.name = p.substr(0, lp);
  if (lp == std::string::npos) return out;
  const auto rp = p.rfind(')');
  if (rp == std::string::npos || rp < lp) return out;
  std::string args = p.substr(lp + 1, rp - lp - 1);
  if (args.find('(') != std::string::npos) return out;  // nested: no certification
  std::istringstream is(args);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

}  // namespace

std::optional<SeqCondition> seq_condition_from_string(const std::string& s) {
  if (s == "lc") return SeqCondition::Lc;
  if (s == "wlc") return SeqCondition::Wlc;
  if (s == "mg") return SeqCondition::Mg;
  if (s == "dc") return SeqCondition::Dc;
  if (s == "ai") return SeqCondition::Ai;
  if (s == "roots_ai") return SeqCondition::RootsAi;
  return std::nullopt;
}

ConditionVerdict check_condition(const WeightSeq& M, SeqCondition cond, double convex_tol) {
  const Index K = M.kmax();
  if (K < 3) throw std::invalid_argument("check_condition: kmax must be >= 3");

  switch (cond) {
    case SeqCondition::Lc:
    case SeqCondition::Wlc: {
      ConditionVerdict v;
      v.condition = to_string(cond);
      v.window = full_window(M);
      const ArrayXd y = (cond == SeqCondition::Lc) ? M.logM : M.log_kfact_M_array();
      v.counterexample = convexity_violation(y, convex_tol);
      v.status = v.counterexample ? Status::Fails : Status::HoldsOnWindow;
      ArrayXd d2(K - 1);
      for (Index k = 1; k < K; ++k) d2[k - 1] = y[k - 1] + y[k + 1] - 2.0 * y[k];
      v.diagnostics = diag_samples(d2);
      return v;
    }
    case SeqCondition::Mg: {
      // w_s = max_{j+k=s, j,k>=1} (log M_s - log M_j - log M_k)/s
      ArrayXd w(K - 1);
      for (Index s = 2; s <= K; ++s) {
        double m = kNegInf;
        for (Index j = 1; j < s; ++j)
          m = std::max(m, M.logM[s] - M.logM[j] - M.logM[s - j]);
        w[s - 2] = m / double(s);
      }
      ConditionVerdict v = witness_verdict(w, "mg", M);
      return v;
    }
    case SeqCondition::Dc: {
      ArrayXd w(K - 1);
      for (Index k = 1; k < K; ++k) w[k - 1] = (M.logM[k + 1] - M.logM[k]) / double(k);
      return witness_verdict(w, "dc", M);
    }
    case SeqCondition::Ai: {
      ArrayXd w(K);
      double pref = M.logM[0];
      for (Index k = 1; k <= K; ++k) {
        w[k - 1] = pref - M.logM[k];
        pref = std::max(pref, M.logM[k]);
      }
      // include j = k (gap 0) so the witness is >= 1
      ConditionVerdict v = witness_verdict(w.max(0.0), "ai", M);
      return v;
    }
    case SeqCondition::RootsAi: {
      const ArrayXd r = M.log_roots();
      ArrayXd w(K);
      double pref = kNegInf;
      for (Index k = 1; k <= K; ++k) {
        pref = std::max(pref, r[k - 1]);
        w[k - 1] = pref - r[k - 1];
      }
      return witness_verdict(w, "roots_ai", M);
    }
  }
  throw std::logic_error("unreachable");
}

CarlemanResult carleman_sums(const WeightSeq& M) {
  const Index K = M.kmax();
  if (K < 16) throw std::invalid_argument("carleman_sums: kmax must be >= 16");

  CarlemanResult out;
  const ArrayXd y = M.log_kfact_M_array();
  out.partialSumRoots.resize(K);
  double acc = 0.0;
  for (Index k = 1; k <= K; ++k) {
    acc += std::exp(-y[k] / double(k));
    out.partialSumRoots[k - 1] = acc;
  }

  ConditionVerdict v;
  v.condition = "qa";
  v.window = full_window(M);
  v.diagnostics = diag_samples(out.partialSumRoots);

  const Provenance prov = parse_provenance(M.provenance);
  auto certify = [&v](bool divergent, const std::string& note) {
    v.status = Status::Certified;
    v.witness["divergent"] = divergent ? 1.0 : 0.0;
    v.notes.push_back(note);
  };
  if (prov.name == "gevrey") {
    const double s = std::stod(prov.kv.at("s"));
    if (s == 0.0)
      certify(true, "harmonic comparison: (k!)^{-1/k} >= 1/k");
    else
      certify(false, "p-series comparison: term ~ (e/k)^{1+s}");
  } else if (prov.name == "log_gevrey_L") {
    certify(false, "integral test: term = 1/(k log^2(k+e))");
  } else if (prov.name == "omega_seq") {
    const std::string kind = prov.kv.count("kind") ? prov.kv.at("kind") : "";
    if (kind == "linear_cutoff") {
      certify(true, "weight grows linearly: integral of omega(t)/t^2 diverges");
    } else if (kind == "gevrey_root") {
      const double s = std::stod(prov.kv.at("s"));
      if (s == 0.0)
        certify(true, "weight grows linearly: integral of omega(t)/t^2 diverges");
      else
        certify(false, "integral of t^{1/(1+s)}/t^2 converges for s > 0");
    } else if (kind == "power_log") {
      certify(false, "integral of log^s(t)/t^2 converges");
    }
  }
  if (v.status != Status::Certified) {
    v.status = Status::Inconclusive;
    v.notes.push_back("no closed-form certificate for this provenance; see trend diagnostics");
    // trend of the terms as a diagnostic aid
    ArrayXd terms(K);
    for (Index k = 1; k <= K; ++k) terms[k - 1] = -y[k] / double(k);
    const TailTrend tt = tail_trend(terms);
    v.witness["log_term_trend_first"] = tt.m_first;
    v.witness["log_term_trend_second"] = tt.m_second;
  }
  out.verdict = v;

  // ratio-form diagnostic for weakly log-convex input
  if (!convexity_violation(y, 1e-9)) {
    const ArrayXd logmu = mu_of(M);
    ArrayXd rs(logmu.size());
    double racc = 0.0;
    for (Index k = 0; k < logmu.size(); ++k) {
      racc += std::exp(-logmu[k]);
      rs[k] = racc;
    }
    out.ratioSums = rs;
  }
  return out;
}

}  // namespace uw
