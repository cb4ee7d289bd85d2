#include "ultraweight/relations.hpp"

#include <cmath>
#include <stdexcept>

#include "ultraweight/trend.hpp"

namespace uw {

namespace {

ArrayXd root_ratio(const WeightSeq& M, const WeightSeq& N, Index K) {
  ArrayXd rr(K);
  for (Index k = 1; k <= K; ++k) rr[k - 1] = (M.logM[k] - N.logM[k]) / double(k);
  return rr;
}

}  // namespace

std::pair<double, double> lesssim_witness(const WeightSeq& M, const WeightSeq& N, Index k0) {
  const Index K = std::min(M.kmax(), N.kmax());
  double logrho = kNegInf;
  const Index from = (K > k0 + 1) ? k0 + 1 : 1;
  for (Index k = from; k <= K; ++k)
    logrho = std::max(logrho, (M.logM[k] - N.logM[k]) / double(k));
  double logC = M.logM[0] - N.logM[0];
  for (Index k = 1; k <= K; ++k)
    logC = std::max(logC, M.logM[k] - N.logM[k] - double(k) * logrho);
  logC = std::max(logC, 0.0);
  return {std::exp(logC), std::exp(logrho)};
}

RelationVerdict check_relation(const WeightSeq& M, const WeightSeq& N, Relation rel,
                               const RelationOptions& opt) {
  const Index K = std::min(M.kmax(), N.kmax());
  if (K < 16) throw std::invalid_argument("check_relation: overlapping window must be >= 16");

  RelationVerdict v;
  v.relation = to_string(rel);
  v.rootRatio = root_ratio(M, N, K);
  v.supEstimate = v.rootRatio.maxCoeff();
  const Index tail = std::max<Index>(8, K / 5);
  v.tailEstimate = median(v.rootRatio, K - tail, K);
  const TailTrend tt = tail_trend(v.rootRatio);
  v.witness["trend_first"] = tt.m_first;
  v.witness["trend_second"] = tt.m_second;

  switch (rel) {
    case Relation::Lesssim: {
      auto [C, rho] = lesssim_witness(M, N, opt.k0);
      v.witness["C"] = C;
      v.witness["rho"] = rho;
      v.status = trend_rises(tt, opt.eps_tail) ? Status::Fails : Status::HoldsOnWindow;
      break;
    }
    case Relation::Triangleleft: {
      v.status = trend_falls(tt, opt.eps_tail) ? Status::HoldsOnWindow : Status::Fails;
      break;
    }
    case Relation::Approx: {
      RelationVerdict fwd = check_relation(M, N, Relation::Lesssim, opt);
      RelationVerdict rev = check_relation(N, M, Relation::Lesssim, opt);
      v.witness["C"] = fwd.witness["C"];
      v.witness["rho"] = fwd.witness["rho"];
      v.witness["C_rev"] = rev.witness["C"];
      v.witness["rho_rev"] = rev.witness["rho"];
      v.status = (fwd.holds() && rev.holds()) ? Status::HoldsOnWindow : Status::Fails;
      break;
    }
  }
  return v;
}

}  // namespace uw
