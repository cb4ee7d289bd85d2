#pragma once

// Tail-trend statistics used to decide asymptotic conditions on finite
// windows. The tail is the last 20% of the samples (at least 8); it is split
// in half and the two medians compared. Decisions based on the median delta
// are invariant under constant shifts, so scaling a sequence by rho^k moves
// root-ratio levels without changing verdicts.

#include <algorithm>

#include "ultraweight/numeric.hpp"

namespace uw {

constexpr double kEpsTail = 1e-3;

struct TailTrend {
  double m_first = 0.0;   // median of the first half of the tail
  double m_second = 0.0;  // median of the second half
  Index tail_start = 0;
  double delta() const { return m_second - m_first; }
};

// v holds samples for k = 1.. (v[0] is the k = 1 sample).
inline TailTrend tail_trend(const ArrayXd& v) {
  const Index n = v.size();
  const Index t = std::max<Index>(8, n / 5);
  const Index start = std::max<Index>(0, n - t);
  const Index h = (n - start) / 2;
  TailTrend out;
  out.tail_start = start;
  out.m_first = median(v, start, start + h);
  out.m_second = median(v, start + h, n);
  return out;
}

// Evidence that a witness-style series is escaping upward: the tail rises and
// sits above zero. A series rising toward zero from below stays compatible
// with a finite witness.
inline bool trend_rises(const TailTrend& t, double eps = kEpsTail) {
  return t.m_second > std::max(t.m_first, 0.0) + eps;
}

// Evidence that a root-ratio tends to zero: strictly decreasing tail medians.
inline bool trend_falls(const TailTrend& t, double eps = kEpsTail) {
  return t.m_second < t.m_first - eps;
}

}  // namespace uw
