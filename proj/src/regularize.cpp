#include "ultraweight/regularize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uw {

namespace {

// Monotone-chain lower hull over (k, y_k); returns strict vertex indices
// (collinear middle points are dropped, slopes strictly increase).
std::vector<Index> strict_lower_hull(const ArrayXd& y) {
  std::vector<Index> st;
  for (Index k = 0; k < y.size(); ++k) {
    while (st.size() >= 2) {
      const Index a = st[st.size() - 2], b = st.back();
      if ((y[b] - y[a]) * double(k - b) >= (y[k] - y[b]) * double(b - a))
        st.pop_back();
      else
        break;
    }
    st.push_back(k);
  }
  return st;
}

ArrayXd hull_values(const ArrayXd& y, const std::vector<Index>& verts) {
  ArrayXd hull(y.size());
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    const Index a = verts[i], b = verts[i + 1];
    for (Index k = a; k <= b; ++k)
      hull[k] = (y[a] * double(b - k) + y[b] * double(k - a)) / double(b - a);
  }
  if (verts.size() == 1) hull[verts[0]] = y[verts[0]];
  return hull;
}

}  // namespace

HullResult lc_minorant(const WeightSeq& M, HullFlavor flavor, double contact_tol) {
  const Index K = M.kmax();
  if (K + 1 < 3) throw std::invalid_argument("lc_minorant: window too short (< 3)");

  const ArrayXd y = (flavor == HullFlavor::Weak) ? M.log_kfact_M_array() : M.logM;

  HullResult out;
  out.degenerate = last_quartile_slope(y) <= 0.0;

  const std::vector<Index> strict = strict_lower_hull(y);
  ArrayXd hull = hull_values(y, strict);
  for (Index k = 0; k <= K; ++k) {
    if (y[k] - hull[k] <= contact_tol) hull[k] = y[k];  // snap contacts
    if (hull[k] == y[k]) out.vertices.push_back(k);
  }
  out.provisionalFrom = out.degenerate ? 0
                        : (strict.size() >= 2 ? strict[strict.size() - 2] + 1 : 0);
  out.hullValues = hull;

  out.regularized.logM = (flavor == HullFlavor::Weak) ? (hull - log_factorials(K)).eval() : hull;
  out.regularized.label = (flavor == HullFlavor::Weak ? "bc(" : "lc(") + M.label + ")";
  out.regularized.provenance = std::string("lc_minorant(flavor=") +
                               (flavor == HullFlavor::Weak ? "weak" : "strong") +
                               ",base=" + M.provenance + ")";
  return out;
}

double log_T(const WeightSeq& M, double u, Index* argmax) {
  const ArrayXd y = M.log_kfact_M_array();
  double best = kNegInf;
  Index bestk = 0;
  for (Index k = 0; k <= M.kmax(); ++k) {
    const double v = double(k) * u - y[k];
    if (v > best) {
      best = v;
      bestk = k;
    }
  }
  if (argmax) *argmax = bestk;
  return best;
}

double log_S(const WeightSeq& M, double u, Index* argmax) {
  const ArrayXd y = M.log_kfact_M_array();
  Index cap = M.kmax();
  if (u < std::log(double(M.kmax()) + 1.0)) cap = std::min<Index>(cap, Index(std::floor(std::exp(u))));
  if (cap < 0) cap = 0;
  double best = kNegInf;
  Index bestk = 0;
  for (Index k = 0; k <= cap; ++k) {
    const double v = double(k) * u - y[k];
    if (v > best) {
      best = v;
      bestk = k;
    }
  }
  if (argmax) *argmax = bestk;
  return best;
}

AssocSample assoc_function(const WeightSeq& M, char which, const ArrayXd& tGrid) {
  if (which != 'T' && which != 'S') throw std::invalid_argument("assoc_function: which must be 'T' or 'S'");
  for (Index i = 0; i < tGrid.size(); ++i) {
    if (tGrid[i] <= 0.0) throw std::invalid_argument("assoc_function: tGrid must be positive");
    if (i > 0 && tGrid[i] <= tGrid[i - 1]) throw std::invalid_argument("assoc_function: tGrid must be sorted increasing");
  }
  AssocSample out;
  out.which = which;
  out.tGrid = tGrid;
  out.values.resize(tGrid.size());
  out.argmax.resize(tGrid.size());
  out.truncated.resize(tGrid.size());
  for (Index i = 0; i < tGrid.size(); ++i) {
    const double u = std::log(tGrid[i]);
    Index am = 0;
    out.values[i] = (which == 'T') ? log_T(M, u, &am) : log_S(M, u, &am);
    out.argmax[i] = am;
    out.truncated[i] = (am == M.kmax());
  }
  return out;
}

WeightSeq b_o_regularization(const WeightSeq& M, double tMax) {
  const Index K = M.kmax();
  if (tMax < double(K)) throw std::invalid_argument("b_o_regularization: tMax must be >= kmax");

  WeightSeq out;
  out.logM.resize(K + 1);
  for (Index k = 0; k <= K; ++k) {
    const double umin = std::log(std::max<double>(double(k), 1.0));
    const double umax = std::log(tMax);
    auto obj = [&](double u) { return double(k) * u - log_S(M, u); };
    if (umax <= umin) {
      out.logM[k] = obj(umin) - log_factorial(k);
      continue;
    }
    const Index n = std::min<Index>(
        8192, std::max<Index>(64, Index(std::ceil(64.0 * (umax - umin) / std::log(2.0)))));
    double best = kNegInf;
    Index bi = 0;
    for (Index i = 0; i <= n; ++i) {
      const double u = umin + (umax - umin) * double(i) / double(n);
      const double v = obj(u);
      if (v > best) {
        best = v;
        bi = i;
      }
    }
    const double step = (umax - umin) / double(n);
    const double lo = umin + step * double(std::max<Index>(bi - 1, 0));
    const double hi = umin + step * double(std::min<Index>(bi + 1, n));
    const GoldenResult g = golden_max(obj, lo, hi, 48);
    out.logM[k] = std::max(best, g.value) - log_factorial(k);
  }
  out.label = "bo(" + M.label + ")";
  out.provenance = "b_o_regularization(base=" + M.provenance + ")";
  return out;
}

ArrayXd dual_from_T(const WeightSeq& M, const ArrayXd& uGrid, Index kTo) {
  ArrayXd out(kTo + 1);
  const Index n = uGrid.size();
  if (n < 2) throw std::invalid_argument("dual_from_T: grid too short");
  for (Index k = 0; k <= kTo; ++k) {
    auto obj = [&](double u) { return double(k) * u - log_T(M, u); };
    double best = kNegInf;
    Index bi = 0;
    for (Index i = 0; i < n; ++i) {
      const double v = obj(uGrid[i]);
      if (v > best) {
        best = v;
        bi = i;
      }
    }
    const double lo = uGrid[std::max<Index>(bi - 1, 0)];
    const double hi = uGrid[std::min<Index>(bi + 1, n - 1)];
    const GoldenResult g = golden_max(obj, lo, hi, 80);
    out[k] = std::max(best, g.value) - log_factorial(k);
  }
  return out;
}

ContactRatioDiag contact_ratio_diagnostic(const HullResult& h) {
  ContactRatioDiag out;
  for (Index k : h.vertices)
    if (k >= 1 && k < h.provisionalFrom) out.verticesUsed.push_back(k);
  if (out.verticesUsed.size() < 3)
    throw std::invalid_argument("contact_ratio_diagnostic: need >= 3 interior vertices");

  for (size_t i = 0; i + 1 < out.verticesUsed.size(); ++i) {
    const double a = double(out.verticesUsed[i + 1]) / double(out.verticesUsed[i]);
    out.ratios.push_back(a);
    out.lowerBounds.push_back(0.5 * (a / (a - 1.0)) * std::log(a) - std::log(2.0) - 1.0);
  }

  const size_t n = out.ratios.size();
  bool last_three_up = false;
  if (n >= 3)
    last_three_up = out.ratios[n - 1] > out.ratios[n - 2] && out.ratios[n - 2] > out.ratios[n - 3];
  bool late_spike = false;
  if (n >= 2) {
    double earlier = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) earlier = std::max(earlier, out.ratios[i]);
    late_spike = out.ratios[n - 1] > earlier && out.ratios[n - 1] > out.ratios[n - 2] + 1e-6;
  }
  out.bounded = (last_three_up || late_spike) ? "no-trend" : "yes-on-window";
  return out;
}

ConditionVerdict cartan_check(const WeightSeq& derivBounds, const ArrayXd& logValuesAt0,
                              double lambda) {
  const Index K = derivBounds.kmax();
  const double llam = std::log(lambda);
  for (Index k = 0; k <= K; ++k) {
    if (derivBounds.logM[0] > double(k) * llam + derivBounds.logM[k] + 1e-12) {
      std::ostringstream os;
      os << "cartan_check: hypothesis M_0 <= lambda^k M_k violated at k=" << k;
      throw std::invalid_argument(os.str());
    }
  }

  const HullResult h = lc_minorant(derivBounds, HullFlavor::Weak);
  ConditionVerdict v;
  v.condition = "cartan_bound";
  v.window = Window{0, std::min<Index>(K, logValuesAt0.size() - 1), ""};
  v.witness["lambda"] = lambda;
  v.status = Status::HoldsOnWindow;
  for (Index k = 0; k <= v.window.kmax; ++k) {
    const double bound = std::log(2.0) + double(k) + log_factorial(k) + h.regularized.logM[k];
    if (logValuesAt0[k] > bound + 1e-9) {
      Counterexample c;
      c.indices = {double(k)};
      c.lhs = logValuesAt0[k];
      c.rhs = bound;
      c.inequality = "log|f^(k)(0)| <= log 2 + k + log k! + log M^{b(c)}_k";
      v.counterexample = c;
      v.status = Status::Fails;
      break;
    }
  }
  return v;
}

}  // namespace uw
