#include "ultraweight/weight_seq.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uw {

namespace {

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_finite(const ArrayXd& logM) {
  for (Index k = 0; k < logM.size(); ++k)
    if (!std::isfinite(logM[k])) throw std::invalid_argument("weight sequence has non-finite log entry");
}

}  // namespace

WeightSeq make_gevrey(double s, Index kmax) {
  if (s < 0) throw std::invalid_argument("gevrey: s must be >= 0");
  if (kmax < 2) throw std::invalid_argument("gevrey: kmax must be >= 2");
  WeightSeq M;
  M.logM = s * log_factorials(kmax);
  M.label = "G^" + fmt_param(s);
  M.provenance = "gevrey(s=" + fmt_param(s) + ")";
  return M;
}

WeightSeq from_mu(const ArrayXd& logmu, Index kmax) {
  if (logmu.size() != kmax) throw std::invalid_argument("from_mu: need exactly kmax entries (mu_1..mu_kmax)");
  require_finite(logmu);
  WeightSeq M;
  M.logM = ArrayXd::Zero(kmax + 1);
  double acc = 0.0;
  for (Index k = 1; k <= kmax; ++k) {
    acc += logmu[k - 1];
    M.logM[k] = acc - log_factorial(k);
  }
  M.label = "mu-generated";
  M.provenance = "mu_table()";
  return M;
}

ArrayXd mu_of(const WeightSeq& M) {
  if (M.kmax() < 2) throw std::invalid_argument("mu_of: kmax must be >= 2");
  ArrayXd out(M.kmax());
  for (Index k = 0; k < M.kmax(); ++k)
    out[k] = std::log(double(k + 1)) + M.logM[k + 1] - M.logM[k];
  return out;
}

WeightSeq scale(const WeightSeq& M, double rho) {
  if (rho <= 0) throw std::invalid_argument("scale: rho must be > 0");
  WeightSeq out = M;
  const double lr = std::log(rho);
  for (Index k = 0; k <= M.kmax(); ++k) out.logM[k] += double(k) * lr;
  out.label = "scale(" + M.label + "," + fmt_param(rho) + ")";
  out.provenance = "scale(base=" + M.provenance + ",rho=" + fmt_param(rho) + ")";
  return out;
}

WeightSeq shift_plus_one(const WeightSeq& M) {
  if (M.kmax() < 1) throw std::invalid_argument("shift_plus_one: window too short");
  WeightSeq out;
  out.logM = M.logM.tail(M.kmax());
  out.label = "shift(" + M.label + ")";
  out.provenance = "shift_plus_one(base=" + M.provenance + ")";
  return out;
}

namespace {
WeightSeq binary_common(const WeightSeq& M, const WeightSeq& N, const char* name) {
  const Index k = std::min(M.kmax(), N.kmax());
  WeightSeq out;
  out.logM.resize(k + 1);
  out.label = std::string(name) + "(" + M.label + "," + N.label + ")";
  out.provenance = std::string(name) + "(a=" + M.provenance + ",b=" + N.provenance + ")";
  return out;
}
}  // namespace

WeightSeq pointwise_max(const WeightSeq& M, const WeightSeq& N) {
  WeightSeq out = binary_common(M, N, "max");
  const Index k = out.kmax();
  out.logM = M.logM.head(k + 1).max(N.logM.head(k + 1));
  return out;
}

WeightSeq geo_mean(const WeightSeq& M, const WeightSeq& N) {
  WeightSeq out = binary_common(M, N, "geo_mean");
  const Index k = out.kmax();
  out.logM = 0.5 * (M.logM.head(k + 1) + N.logM.head(k + 1));
  return out;
}

WeightSeq sqrt_seq(const WeightSeq& M) {
  WeightSeq out = M;
  out.logM *= 0.5;
  out.label = "sqrt(" + M.label + ")";
  out.provenance = "sqrt(base=" + M.provenance + ")";
  return out;
}

WeightSeq truncated(const WeightSeq& M, Index kmax) {
  if (kmax > M.kmax()) throw std::invalid_argument("truncated: cannot extend a window");
  if (kmax == M.kmax()) return M;
  WeightSeq out = M;
  out.logM = M.logM.head(kmax + 1).eval();
  return out;
}

double last_quartile_slope(const ArrayXd& y) {
  const Index n = y.size();
  if (n < 2) return 0.0;
  const Index a = std::min(n - 2, (3 * (n - 1)) / 4);
  return (y[n - 1] - y[a]) / double(n - 1 - a);
}

WeightSeq from_table(const ArrayXd& logM, std::string label) {
  if (logM.size() < 3) throw std::invalid_argument("table: need kmax >= 2");
  require_finite(logM);
  WeightSeq M;
  M.logM = logM;
  M.label = label;
  M.provenance = "table()";
  return M;
}

}  // namespace uw
