#pragma once

// Log-domain numeric helpers shared across the library. All sequence data is
// kept as natural logs; k! enters through lgamma(k+1).

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace uw {

using ArrayXd = Eigen::ArrayXd;
using Index = Eigen::Index;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_factorial(Index k) { return std::lgamma(double(k) + 1.0); }

inline ArrayXd log_factorials(Index kmax) {
  ArrayXd out(kmax + 1);
  for (Index k = 0; k <= kmax; ++k) out[k] = log_factorial(k);
  return out;
}

// log(sum exp(v)) with the max factored out; exact lower bound by the max term.
inline double log_sum_exp(const ArrayXd& v) {
  if (v.size() == 0) return kNegInf;
  const double mx = v.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::exp(v[i] - mx);
  return mx + std::log(acc);
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (v[mid - 1] + hi);
}

inline double median(const ArrayXd& a, Index begin, Index end) {
  std::vector<double> v(a.data() + begin, a.data() + end);
  return median(std::move(v));
}

// Golden-section maximizer for a concave objective on [a, b]. Returns the best
// point seen (including the endpoints of the shrinking bracket).
struct GoldenResult {
  double x = 0.0;
  double value = kNegInf;
};

inline GoldenResult golden_max(const std::function<double(double)>& f, double a,
                               double b, int iters = 60) {
  static const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  GoldenResult best;
  auto note = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  note(c, fc);
  note(d, fd);
  for (int i = 0; i < iters && b - a > 0.0; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
      note(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
      note(d, fd);
    }
  }
  return best;
}

}  // namespace uw
