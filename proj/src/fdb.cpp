#include "ultraweight/fdb.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ultraweight/conditions.hpp"
#include "ultraweight/trend.hpp"

namespace uw {

namespace {

// best[k] = max over j of (logM[j] + best sum of j parts summing to k)
struct ClosureTables {
  ArrayXd best;                       // log M°
  std::vector<std::vector<int>> argA; // argA[j][k]: smallest first part attaining f(k,j)
  std::vector<int> argJ;              // smallest j attaining the outer max
};

ClosureTables closure_dp(const WeightSeq& M, bool record_args) {
  const Index K = M.kmax();
  const ArrayXd& logM = M.logM;

  ClosureTables t;
  t.best = ArrayXd::Constant(K + 1, kNegInf);
  t.best[0] = 0.0;
  if (record_args) {
    t.argA.assign(K + 1, {});
    t.argJ.assign(K + 1, 0);
  }

  std::vector<double> cur(K + 1, kNegInf), nxt(K + 1, kNegInf);
  for (Index k = 1; k <= K; ++k) cur[k] = logM[k];  // j = 1
  for (Index k = 1; k <= K; ++k) {
    t.best[k] = logM[1] + cur[k];
    if (record_args) t.argJ[k] = 1;
  }
  if (record_args) {
    t.argA[1].assign(K + 1, 0);
    for (Index k = 1; k <= K; ++k) t.argA[1][k] = int(k);
  }

  for (Index j = 2; j <= K; ++j) {
    std::fill(nxt.begin(), nxt.end(), kNegInf);
    std::vector<int> args;
    if (record_args) args.assign(K + 1, 0);
    for (Index k = j; k <= K; ++k) {
      double m = kNegInf;
      int ma = 0;
      const Index amax = k - j + 1;
      for (Index a = 1; a <= amax; ++a) {
        const double v = logM[a] + cur[k - a];
        if (v > m) {
          m = v;
          ma = int(a);
        }
      }
      nxt[k] = m;
      if (record_args) args[k] = ma;
    }
    cur.swap(nxt);
    if (record_args) t.argA[j] = std::move(args);
    for (Index k = j; k <= K; ++k) {
      const double v = logM[j] + cur[k];
      if (v > t.best[k]) {
        t.best[k] = v;
        if (record_args) t.argJ[k] = int(j);
      }
    }
  }
  return t;
}

}  // namespace

WeightSeq fdb_closure(const WeightSeq& M) {
  if (M.kmax() < 2) throw std::invalid_argument("fdb_closure: kmax must be >= 2");
  ClosureTables t = closure_dp(M, false);
  WeightSeq out;
  out.logM = std::move(t.best);
  out.label = "fdb(" + M.label + ")";
  out.provenance = "fdb_closure(base=" + M.provenance + ")";
  return out;
}

std::vector<Index> fdb_maximizer(const WeightSeq& M, Index k) {
  if (k < 1 || k > M.kmax()) throw std::invalid_argument("fdb_maximizer: k out of window");
  ClosureTables t = closure_dp(M, true);
  std::vector<Index> parts;
  Index j = t.argJ[k];
  Index rem = k;
  for (Index jj = j; jj >= 1; --jj) {
    const Index a = t.argA[jj][rem];
    parts.push_back(a);
    rem -= a;
  }
  return parts;
}

WeightSeq fdb_closure_oracle(const WeightSeq& M, Index kmax_small) {
  if (kmax_small > 30) throw std::invalid_argument("fdb_closure_oracle: kmax_small must be <= 30");
  if (kmax_small > M.kmax()) throw std::invalid_argument("fdb_closure_oracle: window too short");
  const ArrayXd& logM = M.logM;

  WeightSeq out;
  out.logM = ArrayXd::Constant(kmax_small + 1, kNegInf);
  out.logM[0] = 0.0;
  out.label = "fdb_oracle(" + M.label + ")";
  out.provenance = "fdb_closure_oracle(base=" + M.provenance + ")";

  // enumerate partitions with nonincreasing parts
  for (Index k = 1; k <= kmax_small; ++k) {
    double best = kNegInf;
    // (rem, maxPart, j, sum) explicit stack
    struct Frame { Index rem, maxPart, j; double sum; };
    std::vector<Frame> stack{{k, k, 0, 0.0}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.rem == 0) {
        best = std::max(best, logM[f.j] + f.sum);
        continue;
      }
      for (Index a = std::min(f.rem, f.maxPart); a >= 1; --a)
        stack.push_back({f.rem - a, a, f.j + 1, f.sum + logM[a]});
    }
    out.logM[k] = best;
  }
  return out;
}

ConditionVerdict check_fdb_property(const WeightSeq& M) {
  if (M.kmax() < 4) throw std::invalid_argument("check_fdb_property: kmax must be >= 4");
  const WeightSeq closure = fdb_closure(M);
  const Index K = M.kmax();
  ArrayXd w(K);
  for (Index k = 1; k <= K; ++k) w[k - 1] = (closure.logM[k] - M.logM[k]) / double(k);

  ConditionVerdict v;
  v.condition = "fdb";
  v.window = Window{0, K, ""};
  v.witness["C"] = std::exp(w.maxCoeff());
  const TailTrend tt = tail_trend(w);
  v.witness["trend_first"] = tt.m_first;
  v.witness["trend_second"] = tt.m_second;
  v.status = trend_rises(tt) ? Status::Fails : Status::HoldsOnWindow;
  v.diagnostics = diag_samples(w);
  return v;
}

FdbSufficientReport fdb_sufficient_conditions(const WeightSeq& M) {
  if (M.kmax() < 4) throw std::invalid_argument("fdb_sufficient_conditions: kmax must be >= 4");
  const Index K = M.kmax();
  FdbSufficientReport rep;

  rep.logConvex = check_condition(M, SeqCondition::Lc);

  // derivation closed + almost-increasing roots, trend-gated so the verdict
  // carries asymptotic content
  ConditionVerdict dc = check_condition(M, SeqCondition::Dc);
  ConditionVerdict rai = check_condition(M, SeqCondition::RootsAi);
  ConditionVerdict both;
  both.condition = "dc+roots_ai";
  both.window = Window{0, K, ""};
  both.witness["C_dc"] = dc.witness["C"];
  both.witness["C_roots"] = rai.witness["C"];
  const bool dc_stable = !(dc.witness["trend_second"] > std::max(dc.witness["trend_first"], 0.0) + kEpsTail);
  const bool rai_stable = !(rai.witness["trend_second"] > std::max(rai.witness["trend_first"], 0.0) + kEpsTail);
  both.status = (dc_stable && rai_stable) ? Status::HoldsOnWindow : Status::Fails;
  rep.derivClosedRootsAi = both;

  // M_j M_k <= M_1 M_{j+k-1}, exhaustively over j+k <= kmax+1
  ConditionVerdict conv;
  conv.condition = "convolution_shift";
  conv.window = Window{0, K, ""};
  conv.status = Status::HoldsOnWindow;
  for (Index j = 1; j <= K && conv.status == Status::HoldsOnWindow; ++j) {
    for (Index k = 1; j + k - 1 <= K; ++k) {
      const double lhs = M.logM[j] + M.logM[k];
      const double rhs = M.logM[1] + M.logM[j + k - 1];
      if (lhs > rhs + 1e-9) {
        Counterexample c;
        c.indices = {double(j), double(k)};
        c.lhs = lhs;
        c.rhs = rhs;
        c.inequality = "M_j M_k <= M_1 M_{j+k-1} (log domain)";
        conv.counterexample = c;
        conv.status = Status::Fails;
        break;
      }
    }
  }
  rep.convolutionShift = conv;

  rep.fdb = check_fdb_property(M);

  rep.consistent = !((rep.logConvex.holds() || both.holds() || conv.holds()) && !rep.fdb.holds());
  if (rep.logConvex.holds()) {
    const double cap = std::max(std::exp(M.logM[1]), 1.0) * (1.0 + 1e-9);
    if (rep.fdb.witness["C"] > cap) rep.consistent = false;
  }
  return rep;
}

}  // namespace uw
