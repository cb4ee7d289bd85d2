#include "ultraweight/series.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "ultraweight/fdb.hpp"

namespace uw {

using boost::multiprecision::cpp_int;

TruncatedSeries make_series(std::vector<Rational> coeffs, std::string basepoint) {
  if (coeffs.size() < 2) throw std::invalid_argument("series: order must be >= 1");
  TruncatedSeries s;
  s.order = Index(coeffs.size()) - 1;
  s.coeffs = std::move(coeffs);
  s.basepoint = std::move(basepoint);
  return s;
}

TruncatedSeries series_identity(Index K) {
  std::vector<Rational> c(K + 1, Rational(0));
  c[1] = 1;
  return make_series(std::move(c), "0");
}

TruncatedSeries series_exp(Index K) {
  std::vector<Rational> c(K + 1);
  Rational f = 1;
  c[0] = 1;
  for (Index k = 1; k <= K; ++k) {
    f *= Rational(k);
    c[k] = Rational(1) / f;
  }
  return make_series(std::move(c), "0");
}

namespace {
// decimal-string to cpp_int; leading zeros stripped so the parse stays base 10
cpp_int parse_decimal_int(std::string digits) {
  bool neg = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    neg = digits[0] == '-';
    digits.erase(0, 1);
  }
  size_t start = 0;
  while (start + 1 < digits.size() && digits[start] == '0') ++start;
  digits.erase(0, start);
  if (digits.empty()) throw std::invalid_argument("rational: empty number");
  const cpp_int v(digits);
  return neg ? -v : v;
}
}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const cpp_int num = parse_decimal_int(text.substr(0, slash));
    const cpp_int den = parse_decimal_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac = text.size() - dot - 1;
    cpp_int den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    return Rational(parse_decimal_int(digits), den);
  }
  return Rational(parse_decimal_int(text));
}

double log_abs(const Rational& r) {
  if (r == 0) return kNegInf;
  auto log_int = [](cpp_int v) {
    if (v < 0) v = -v;
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 900) return std::log(v.convert_to<double>());
    const cpp_int shifted = v >> (bits - 52);
    return std::log(shifted.convert_to<double>()) + double(bits - 52) * std::log(2.0);
  };
  return log_int(boost::multiprecision::numerator(r)) -
         log_int(boost::multiprecision::denominator(r));
}

namespace {

// truncated product to order K
std::vector<Rational> trunc_mul(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                Index K) {
  std::vector<Rational> out(K + 1, Rational(0));
  for (Index i = 0; i <= K; ++i) {
    if (a[i] == 0) continue;
    for (Index j = 0; i + j <= K; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.order != g.order) throw std::invalid_argument("series_compose: order mismatch");
  const Index K = f.order;
  std::vector<Rational> gs = g.coeffs;  // g - g(x0)
  gs[0] = 0;

  // Horner: h = f_K; h = h*gs + f_i
  std::vector<Rational> h(K + 1, Rational(0));
  h[0] = f.coeffs[K];
  for (Index i = K - 1; i >= 0; --i) {
    h = trunc_mul(h, gs, K);
    h[0] += f.coeffs[i];
  }
  TruncatedSeries out;
  out.order = K;
  out.coeffs = std::move(h);
  out.basepoint = g.basepoint;
  return out;
}

TruncatedSeries series_compose_oracle(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.order != g.order) throw std::invalid_argument("series_compose_oracle: order mismatch");
  const Index K = f.order;
  if (K > 25) throw std::invalid_argument("series_compose_oracle: order must be <= 25");
  std::vector<Rational> gs = g.coeffs;
  gs[0] = 0;

  TruncatedSeries out;
  out.order = K;
  out.coeffs.assign(K + 1, Rational(0));
  out.coeffs[0] = f.coeffs[0];
  out.basepoint = g.basepoint;

  // h_k = sum over j >= 1, ordered compositions (a_1..a_j) of k, of
  // f_j * prod gs_{a_i}
  for (Index k = 1; k <= K; ++k) {
    Rational total = 0;
    struct Frame { Index rem, j; Rational prod; };
    std::vector<Frame> stack{{k, 0, Rational(1)}};
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      if (fr.rem == 0) {
        total += f.coeffs[fr.j] * fr.prod;
        continue;
      }
      for (Index a = 1; a <= fr.rem; ++a) {
        if (gs[a] == 0) continue;
        stack.push_back({fr.rem - a, fr.j + 1, fr.prod * gs[a]});
      }
    }
    out.coeffs[k] = total;
  }
  return out;
}

bool certificate_valid(const BoundCertificate& cert, const TruncatedSeries& f, double tol) {
  if (cert.C <= 0 || cert.rho <= 0) return false;
  if (cert.M.kmax() < f.order) return false;
  const double logC = std::log(cert.C), logrho = std::log(cert.rho);
  for (Index k = 0; k <= f.order; ++k) {
    if (log_abs(f.coeffs[k]) > logC + double(k) * logrho + cert.M.logM[k] + tol) return false;
  }
  return true;
}

BoundCertificate minimal_certificate(const TruncatedSeries& f, const WeightSeq& M, Index k0) {
  if (M.kmax() < f.order) throw std::invalid_argument("minimal_certificate: sequence window too short");
  double logrho = kNegInf;
  const Index from = (f.order > k0 + 1) ? k0 + 1 : 1;
  for (Index k = from; k <= f.order; ++k) {
    if (f.coeffs[k] == 0) continue;
    logrho = std::max(logrho, (log_abs(f.coeffs[k]) - M.logM[k]) / double(k));
  }
  if (!std::isfinite(logrho)) logrho = 0.0;
  double logC = kNegInf;
  for (Index k = 0; k <= f.order; ++k) {
    if (f.coeffs[k] == 0) continue;
    logC = std::max(logC, log_abs(f.coeffs[k]) - double(k) * logrho - M.logM[k]);
  }
  if (!std::isfinite(logC)) logC = 0.0;
  BoundCertificate cert;
  cert.C = std::exp(logC) * (1.0 + 1e-12);
  cert.rho = std::exp(logrho);
  cert.M = M;
  return cert;
}

CompositionBoundReport verify_composition_bound(const TruncatedSeries& f,
                                                const BoundCertificate& certF,
                                                const TruncatedSeries& g,
                                                const BoundCertificate& certG) {
  if (certF.M.kmax() != certG.M.kmax() ||
      (certF.M.logM != certG.M.logM).any())
    throw std::invalid_argument("verify_composition_bound: certificates must reference the same sequence");
  if (!certificate_valid(certF, f)) throw std::invalid_argument("verify_composition_bound: f certificate fails re-verification");
  if (!certificate_valid(certG, g)) throw std::invalid_argument("verify_composition_bound: g certificate fails re-verification");

  const Index K = f.order;
  CompositionBoundReport rep;
  rep.composed = series_compose(f, g);
  rep.sigma = certG.rho * (1.0 + certF.rho * certG.C);

  const WeightSeq closure = fdb_closure(truncated(certF.M, K));
  const double head = std::log(certF.C) + std::log(certG.C) + std::log(certF.rho);

  rep.margins.resize(K);
  ConditionVerdict v;
  v.condition = "composition_bound";
  v.window = Window{1, K, ""};
  v.witness["sigma"] = rep.sigma;
  v.witness["C_f"] = certF.C;
  v.witness["C_g"] = certG.C;
  v.witness["rho_f"] = certF.rho;
  v.witness["rho_g"] = certG.rho;
  v.status = Status::HoldsOnWindow;
  for (Index k = 1; k <= K; ++k) {
    const double bound = head + double(k) * std::log(rep.sigma) + closure.logM[k];
    const double margin = bound - log_abs(rep.composed.coeffs[k]);
    rep.margins[k - 1] = margin;
    if (margin < -1e-9 && v.status == Status::HoldsOnWindow) {
      Counterexample c;
      c.indices = {double(k)};
      c.lhs = log_abs(rep.composed.coeffs[k]);
      c.rhs = bound;
      c.inequality = "|h_k| <= C_f C_g rho_f sigma^k M°_k (log domain)";
      v.counterexample = c;
      v.status = Status::Fails;
    }
  }
  v.witness["min_margin"] = rep.margins.minCoeff();
  v.diagnostics = diag_samples(rep.margins);
  rep.verdict = v;
  return rep;
}

}  // namespace uw
