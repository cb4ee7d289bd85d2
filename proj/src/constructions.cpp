#include "ultraweight/constructions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ultraweight/conditions.hpp"
#include "ultraweight/relations.hpp"

namespace uw {

namespace {
std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace

Example36Result example36(double r, Index kmaxTarget, double logbase) {
  if (r < 4.0) throw std::invalid_argument("example36: r must be >= 4");
  if (logbase <= 1.0) throw std::invalid_argument("example36: logbase must be > 1");
  if (kmaxTarget < 8) throw std::invalid_argument("example36: window too short");

  Example36Result out;
  out.r = r;
  out.logbase = logbase;

  out.kIndices.push_back(3);
  for (Index i = 2;; ++i) {
    const double step = std::ceil(std::log(double(i) + 1.0) / std::log(logbase));
    const Index next = out.kIndices.back() * Index(step);
    if (next > kmaxTarget) break;
    out.kIndices.push_back(next);
  }

  const double logr = std::log(r);
  out.logmu.resize(kmaxTarget);
  size_t idx = 0;  // last kIndex at or below the running k
  for (Index k = 1; k <= kmaxTarget; ++k) {
    double v;
    if (k <= 2) {
      v = 0.0;  // mu_1 = mu_2 = 1
    } else {
      while (idx + 1 < out.kIndices.size() && out.kIndices[idx + 1] <= k) ++idx;
      if (k == out.kIndices[idx])
        v = double(k) * logr;  // mu_{k_i} = r^{k_i}
      else
        v = double(out.kIndices[idx] - 1) * logr;  // plateau between jumps
    }
    out.logmu[k - 1] = v;
  }

  out.M = from_mu(out.logmu, kmaxTarget);
  out.M.label = "M(" + fmt_param(r) + ")";
  out.M.provenance = "example36(r=" + fmt_param(r) + ",K=" + std::to_string(kmaxTarget) +
                     ",logbase=" + fmt_param(logbase) + ")";
  return out;
}

CharFnResult characteristic_fn(const WeightSeq& M, Index N, Index jmax) {
  const Index K = M.kmax();
  if (N + jmax > K) throw std::invalid_argument("characteristic_fn: need N + jmax <= kmax");
  if (!check_condition(M, SeqCondition::Wlc).holds())
    throw std::invalid_argument("characteristic_fn: M must be weakly log-convex");
  const ArrayXd logmu = mu_of(M);
  for (Index k = 0; k + 1 < N; ++k)
    if (logmu[k] > logmu[k + 1] + 1e-9)
      throw std::invalid_argument("characteristic_fn: mu must be nondecreasing on the window");

  const ArrayXd y = M.log_kfact_M_array();
  const double log2 = std::log(2.0);

  CharFnResult out;
  out.terms = N;
  out.log_h.resize(jmax + 1);
  out.tailBound.resize(jmax + 1);
  for (Index j = 0; j <= jmax; ++j) {
    ArrayXd terms(N + 1);
    for (Index k = 0; k <= N; ++k)
      terms[k] = y[k] + double(j - k) * (log2 + logmu[k]);
    out.log_h[j] = log_sum_exp(terms);
    // dropped k > N terms are dominated by j!M_j 2^{-(k-j)}
    out.tailBound[j] = y[j] - double(N - j) * log2;
  }

  double c = kNegInf;
  for (Index j = 0; j <= jmax; ++j)
    c = std::max(c, out.log_h[j] - (log_factorial(j) + double(j) * std::log(out.normRho) + M.logM[j]));
  out.normC = std::exp(c);
  return out;
}

std::pair<WeightSeq, WeightSeq> interpolate(const WeightSeq& L, const WeightSeq& M,
                                            InterpolationVariant variant) {
  const Index K = std::min(L.kmax(), M.kmax());
  const WeightSeq Lc = truncated(L, K), Mc = truncated(M, K);
  const RelationVerdict below = check_relation(Lc, Mc, Relation::Triangleleft);
  if (!below.holds())
    throw std::invalid_argument("interpolate: L must sit strictly below M on the window");
  const ArrayXd growth = (variant == InterpolationVariant::Sqrt) ? Mc.logM : Mc.log_kfact_M_array();
  if (last_quartile_slope(growth) <= 0.0)
    throw std::invalid_argument("interpolate: M must grow in the variant's sense");

  WeightSeq N1;
  N1.logM.resize(K + 1);
  for (Index k = 0; k <= K; ++k) {
    const double half = (variant == InterpolationVariant::Sqrt)
                            ? 0.5 * Mc.logM[k]
                            : 0.5 * (Mc.logM[k] - log_factorial(k));
    N1.logM[k] = std::max(half, Lc.logM[k]);
  }
  N1.label = "N1(" + L.label + "," + M.label + ")";
  N1.provenance = "interpolate_n1(lower=" + L.provenance + ",upper=" + M.provenance + ")";

  WeightSeq N2 = geo_mean(N1, Mc);
  N2.label = "N2(" + L.label + "," + M.label + ")";
  N2.provenance = "interpolate_n2(lower=" + L.provenance + ",upper=" + M.provenance + ")";
  return {N1, N2};
}

WeightSeq log_gevrey_L(Index kmax) {
  if (kmax < 8) throw std::invalid_argument("log_gevrey_L: kmax must be >= 8");
  WeightSeq out;
  out.logM.resize(kmax + 1);
  out.logM[0] = 0.0;
  const double e = std::exp(1.0);
  for (Index k = 1; k <= kmax; ++k) {
    const double kk = double(k);
    out.logM[k] = kk * std::log(kk) + 2.0 * kk * std::log(std::log(kk + e)) - log_factorial(k);
  }
  out.label = "L";
  out.provenance = "log_gevrey_L(K=" + std::to_string(kmax) + ")";
  return out;
}

}  // namespace uw
