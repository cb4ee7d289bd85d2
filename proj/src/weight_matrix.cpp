#include "ultraweight/weight_matrix.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ultraweight/conditions.hpp"
#include "ultraweight/fdb.hpp"
#include "ultraweight/trend.hpp"

namespace uw {

namespace {

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void validate(const WeightMatrix& X) {
  if (X.size() < 1 || Index(X.seqs.size()) != X.size())
    throw std::invalid_argument("weight matrix: need matching lambdas and sequences");
  for (Index i = 1; i < X.size(); ++i)
    if (X.lambdas[i] <= X.lambdas[i - 1])
      throw std::invalid_argument("weight matrix: lambdas must be strictly increasing");
  const Index K = X.seqs.front().kmax();
  for (Index i = 0; i < X.size(); ++i) {
    const WeightSeq& M = X.seqs[i];
    if (M.kmax() != K) throw std::invalid_argument("weight matrix: members must share the window");
    if (std::abs(M.logM[0]) > 1e-9)
      throw std::invalid_argument("weight matrix: members must have M_0 = 1");
    if (!check_condition(M, SeqCondition::Wlc).holds())
      throw std::invalid_argument("weight matrix: member " + M.label + " is not weakly log-convex");
    if (last_quartile_slope(M.log_kfact_M_array()) <= 0.0)
      throw std::invalid_argument("weight matrix: member " + M.label + " has non-growing k!M_k");
    if (i > 0) {
      for (Index k = 0; k <= K; ++k)
        if (X.seqs[i - 1].logM[k] > M.logM[k] + 1e-9)
          throw std::invalid_argument("weight matrix: members must be pointwise monotone in lambda");
    }
  }
}

// Per-(lambda, mu) scan: returns the witness series whose rising trend means
// "no finite constant"; the caller gates it.
using PairSeries = std::function<ArrayXd(const WeightSeq& a, const WeightSeq& b)>;

struct PairOutcome {
  bool pass = false;
  double C = 0.0;
};

PairOutcome gate_series(const ArrayXd& w) {
  PairOutcome out;
  const TailTrend tt = tail_trend(w);
  out.pass = !trend_rises(tt);
  out.C = std::exp(std::max(w.maxCoeff(), 0.0));
  return out;
}

struct QuantifierResult {
  Status status = Status::Inconclusive;
  std::vector<Assignment> assignments;
  std::vector<std::string> notes;
};

// For every sampled lambda find a sampled mu passing `pass(lambda, mu)`.
// Candidates are tried in ascending order (smallest admissible mu wins). A
// block of unwitnessed lambdas at the sample edge in the quantifier's helpful
// direction (largest for Roumieu, smallest for Beurling) is excluded with a
// note; an interior unwitnessed lambda fails the condition.
QuantifierResult forall_exists(const WeightMatrix& X, Flavor flavor,
                               const std::function<PairOutcome(Index, Index)>& pair_check) {
  const Index n = X.size();
  QuantifierResult qr;
  std::vector<int> witness(n, -1);
  std::vector<double> consts(n, 0.0);
  for (Index l = 0; l < n; ++l) {
    for (Index m = 0; m < n; ++m) {
      const PairOutcome po = pair_check(l, m);
      if (po.pass) {
        witness[l] = int(m);
        consts[l] = po.C;
        break;
      }
    }
  }

  if (n == 1) {
    if (witness[0] >= 0) {
      qr.status = Status::HoldsOnWindow;
      qr.assignments.push_back({X.lambdas[0], X.lambdas[0], consts[0]});
    } else {
      qr.status = Status::Inconclusive;
      qr.notes.push_back("singleton matrix: no self-witness; sample cannot decide");
    }
    return qr;
  }

  // indices ordered so the sample edge in the helpful direction comes last
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = (flavor == Flavor::Roumieu) ? i : n - 1 - i;

  Index passCount = 0;
  bool interiorFail = false;
  bool seenFail = false;
  for (Index oi = 0; oi < n; ++oi) {
    const Index l = order[oi];
    if (witness[l] >= 0) {
      if (seenFail) interiorFail = true;  // a pass after a failure: hole inside the sample
      ++passCount;
      qr.assignments.push_back({X.lambdas[l], X.lambdas[witness[l]], consts[l]});
    } else {
      seenFail = true;
    }
  }
  for (Index oi = 0; oi < n; ++oi) {
    const Index l = order[oi];
    if (witness[l] < 0)
      qr.notes.push_back("lambda=" + fmt_param(X.lambdas[l]) + ": no sampled witness");
  }
  if (interiorFail || passCount < (n + 1) / 2)
    qr.status = Status::Fails;
  else {
    qr.status = Status::HoldsOnWindow;
    if (passCount < n)
      qr.notes.push_back("unwitnessed lambdas sit at the sample edge; excluded from the quantifier");
  }
  return qr;
}

ArrayXd dc_series(const WeightSeq& a, const WeightSeq& b) {
  // a_{k+1} <= C^k b_k
  const Index K = a.kmax();
  ArrayXd w(K - 1);
  for (Index k = 1; k < K; ++k) w[k - 1] = (a.logM[k + 1] - b.logM[k]) / double(k);
  return w;
}

ArrayXd mg_series(const WeightSeq& a, const WeightSeq& b) {
  // a_{j+k} <= C^{j+k} b_j b_k
  const Index K = a.kmax();
  ArrayXd w(K - 1);
  for (Index s = 2; s <= K; ++s) {
    double worst = kNegInf;
    for (Index j = 1; j < s; ++j)
      worst = std::max(worst, a.logM[s] - b.logM[j] - b.logM[s - j]);
    w[s - 2] = worst / double(s);
  }
  return w;
}

ArrayXd alg_series(const WeightSeq& a, const WeightSeq& b) {
  // a_j a_k <= C^{j+k} b_{j+k}
  const Index K = a.kmax();
  ArrayXd w(K - 1);
  for (Index s = 2; s <= K; ++s) {
    double worst = kNegInf;
    for (Index j = 1; j < s; ++j)
      worst = std::max(worst, a.logM[j] + a.logM[s - j] - b.logM[s]);
    w[s - 2] = worst / double(s);
  }
  return w;
}

ArrayXd roots_gap_series(const WeightSeq& a, const WeightSeq& b) {
  // max_{j<=k} roots_a[j] <= log C + roots_b[k]
  const Index K = a.kmax();
  const ArrayXd ra = a.log_roots(), rb = b.log_roots();
  ArrayXd w(K);
  double pref = kNegInf;
  for (Index k = 1; k <= K; ++k) {
    pref = std::max(pref, ra[k - 1]);
    w[k - 1] = pref - rb[k - 1];
  }
  return w;
}

}  // namespace

WeightMatrix explicit_matrix(std::vector<WeightSeq> seqs, const ArrayXd& lambdas,
                             std::string label) {
  WeightMatrix X;
  X.lambdas = lambdas;
  X.seqs = std::move(seqs);
  X.label = std::move(label);
  validate(X);
  return X;
}

WeightMatrix matrix_from_omega(const WeightFunction& w, const ArrayXd& rhoGrid, Index kmax) {
  std::vector<WeightSeq> seqs;
  for (Index i = 0; i < rhoGrid.size(); ++i) {
    if (rhoGrid[i] <= 0) throw std::invalid_argument("matrix_from_omega: rho must be positive");
    seqs.push_back(omega_sequence(w, rhoGrid[i], kmax));
  }
  return explicit_matrix(std::move(seqs), rhoGrid, "W(" + w.label + ")");
}

WeightMatrix gevrey_matrix(const ArrayXd& sGrid, Index kmax) {
  std::vector<WeightSeq> seqs;
  for (Index i = 0; i < sGrid.size(); ++i) {
    if (sGrid[i] <= 0) throw std::invalid_argument("gevrey_matrix: s must be positive");
    seqs.push_back(make_gevrey(sGrid[i], kmax));
  }
  return explicit_matrix(std::move(seqs), sGrid, "G");
}

const char* to_string(MatrixCondition c) {
  switch (c) {
    case MatrixCondition::H: return "H";
    case MatrixCondition::CwBeurling: return "Cw_beurling";
    case MatrixCondition::CwRoumieu: return "Cw_roumieu";
    case MatrixCondition::Dc: return "dc";
    case MatrixCondition::Mg: return "mg";
    case MatrixCondition::Alg: return "alg";
    case MatrixCondition::FdB: return "FdB";
    case MatrixCondition::L: return "L";
    case MatrixCondition::BR: return "BR";
  }
  return "?";
}

std::optional<MatrixCondition> matrix_condition_from_string(const std::string& s) {
  for (MatrixCondition c : {MatrixCondition::H, MatrixCondition::CwBeurling,
                            MatrixCondition::CwRoumieu, MatrixCondition::Dc, MatrixCondition::Mg,
                            MatrixCondition::Alg, MatrixCondition::FdB, MatrixCondition::L,
                            MatrixCondition::BR})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

ConditionVerdict check_matrix_condition(const WeightMatrix& X, MatrixCondition cond,
                                        Flavor flavor) {
  validate(X);
  ConditionVerdict v;
  v.condition = std::string(to_string(cond)) + "[" + to_string(flavor) + "]";
  v.window = Window{0, X.kmax(), ""};

  auto finish = [&v](const QuantifierResult& qr) {
    v.status = qr.status;
    v.assignments = qr.assignments;
    for (const auto& nte : qr.notes) v.notes.push_back(nte);
    return v;
  };

  switch (cond) {
    case MatrixCondition::H:
    case MatrixCondition::CwBeurling:
    case MatrixCondition::CwRoumieu: {
      Index passCount = 0;
      for (Index i = 0; i < X.size(); ++i) {
        // per-k slope of the root trend: a sustained descent means the roots
        // collapse, a sustained climb means they escape; convergence to a
        // positive limit shows up as a vanishing slope
        const ArrayXd roots = X.seqs[i].log_roots();
        const TailTrend tt = tail_trend(roots);
        const double span = std::max<double>(1.0, double(roots.size() - tt.tail_start) / 2.0);
        const double slope = tt.delta() / span;
        bool memberPass;
        if (cond == MatrixCondition::CwBeurling)
          memberPass = slope > kEpsTail;  // roots still climbing
        else
          memberPass = slope >= -kEpsTail;  // roots not collapsing
        if (memberPass)
          ++passCount;
        else if (cond != MatrixCondition::CwRoumieu)
          v.notes.push_back("lambda=" + fmt_param(X.lambdas[i]) + ": root trend fails");
      }
      const bool exists = cond == MatrixCondition::CwRoumieu;
      v.status = (exists ? passCount > 0 : passCount == X.size()) ? Status::HoldsOnWindow
                                                                  : Status::Fails;
      return v;
    }
    case MatrixCondition::Dc:
    case MatrixCondition::Mg:
    case MatrixCondition::Alg: {
      PairSeries series = (cond == MatrixCondition::Dc)   ? PairSeries(dc_series)
                          : (cond == MatrixCondition::Mg) ? PairSeries(mg_series)
                                                          : PairSeries(alg_series);
      auto pair_check = [&](Index l, Index m) {
        // Beurling bounds the mu-member by the lambda-member, Roumieu the
        // lambda-member by the mu-member.
        const WeightSeq& a = (flavor == Flavor::Beurling) ? X.seqs[m] : X.seqs[l];
        const WeightSeq& b = (flavor == Flavor::Beurling) ? X.seqs[l] : X.seqs[m];
        return gate_series(series(a, b));
      };
      return finish(forall_exists(X, flavor, pair_check));
    }
    case MatrixCondition::FdB: {
      std::vector<std::optional<WeightSeq>> closures(X.size());
      auto closure_of = [&](Index i) -> const WeightSeq& {
        if (!closures[i]) closures[i] = fdb_closure(X.seqs[i]);
        return *closures[i];
      };
      auto pair_check = [&](Index l, Index m) {
        const WeightSeq& clo = (flavor == Flavor::Beurling) ? closure_of(m) : closure_of(l);
        const WeightSeq& target = (flavor == Flavor::Beurling) ? X.seqs[l] : X.seqs[m];
        const Index K = clo.kmax();
        ArrayXd w(K);
        for (Index k = 1; k <= K; ++k) w[k - 1] = (clo.logM[k] - target.logM[k]) / double(k);
        return gate_series(w);
      };
      return finish(forall_exists(X, flavor, pair_check));
    }
    case MatrixCondition::L: {
      // for each lambda and each rho in a geometric grid there must be a mu;
      // the grid scales with the sampled lambda span so interior lambdas keep
      // sampled headroom
      const double span = X.lambdas[X.size() - 1] / X.lambdas[0];
      const int top = std::max(1, std::min(3, int(std::floor(std::log2(std::max(span, 2.0)))) - 1));
      std::vector<double> rhos;
      for (int i = 1; i <= top; ++i) rhos.push_back(std::pow(2.0, i));
      v.notes.push_back("rho quantifier sampled at {2..2^" + std::to_string(top) + "}");
      auto pair_check = [&](Index l, Index m) {
        PairOutcome combined;
        combined.pass = true;
        for (double rho : rhos) {
          const WeightSeq& a = (flavor == Flavor::Beurling) ? X.seqs[m] : X.seqs[l];
          const WeightSeq& b = (flavor == Flavor::Beurling) ? X.seqs[l] : X.seqs[m];
          const Index K = a.kmax();
          ArrayXd w(K);
          for (Index k = 1; k <= K; ++k)
            w[k - 1] = double(k) * std::log(rho) + a.logM[k] - b.logM[k];
          const PairOutcome po = gate_series(w);
          combined.pass = combined.pass && po.pass;
          combined.C = std::max(combined.C, po.C);
          if (!combined.pass) break;
        }
        return combined;
      };
      return finish(forall_exists(X, flavor, pair_check));
    }
    case MatrixCondition::BR: {
      auto pair_check = [&](Index l, Index m) {
        const WeightSeq& small = (flavor == Flavor::Beurling) ? X.seqs[m] : X.seqs[l];
        const WeightSeq& big = (flavor == Flavor::Beurling) ? X.seqs[l] : X.seqs[m];
        PairOutcome po;
        const RelationVerdict rel = check_relation(small, big, Relation::Triangleleft);
        po.pass = rel.holds();
        po.C = std::exp(rel.tailEstimate);
        return po;
      };
      return finish(forall_exists(X, flavor, pair_check));
    }
  }
  throw std::logic_error("unreachable");
}

const char* to_string(MatrixRelation r) {
  switch (r) {
    case MatrixRelation::LesssimBeurling: return "lesssim_beurling";
    case MatrixRelation::LesssimRoumieu: return "lesssim_roumieu";
    case MatrixRelation::TriangleleftRoumieu: return "triangleleft_roumieu";
    case MatrixRelation::LesssimMixed: return "lesssim_mixed";
  }
  return "?";
}

std::optional<MatrixRelation> matrix_relation_from_string(const std::string& s) {
  for (MatrixRelation r : {MatrixRelation::LesssimBeurling, MatrixRelation::LesssimRoumieu,
                           MatrixRelation::TriangleleftRoumieu, MatrixRelation::LesssimMixed})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

ConditionVerdict check_matrix_relation(const WeightMatrix& X, const WeightMatrix& Y,
                                       MatrixRelation rel) {
  validate(X);
  validate(Y);
  ConditionVerdict v;
  v.condition = to_string(rel);
  v.window = Window{0, std::min(X.kmax(), Y.kmax()), ""};

  switch (rel) {
    case MatrixRelation::LesssimBeurling: {
      // forall lambda (over Y) exists mu (over X): M^mu <= C rho^k N^lambda
      v.status = Status::HoldsOnWindow;
      for (Index l = 0; l < Y.size(); ++l) {
        bool found = false;
        for (Index m = 0; m < X.size() && !found; ++m) {
          const RelationVerdict r = check_relation(X.seqs[m], Y.seqs[l], Relation::Lesssim);
          if (r.holds()) {
            found = true;
            v.assignments.push_back({Y.lambdas[l], X.lambdas[m], r.witness.at("C")});
          }
        }
        if (!found) {
          v.status = Status::Fails;
          v.notes.push_back("lambda=" + fmt_param(Y.lambdas[l]) + ": no sampled witness");
        }
      }
      return v;
    }
    case MatrixRelation::LesssimRoumieu: {
      v.status = Status::HoldsOnWindow;
      for (Index l = 0; l < X.size(); ++l) {
        bool found = false;
        for (Index m = 0; m < Y.size() && !found; ++m) {
          const RelationVerdict r = check_relation(X.seqs[l], Y.seqs[m], Relation::Lesssim);
          if (r.holds()) {
            found = true;
            v.assignments.push_back({X.lambdas[l], Y.lambdas[m], r.witness.at("C")});
          }
        }
        if (!found) {
          v.status = Status::Fails;
          v.notes.push_back("lambda=" + fmt_param(X.lambdas[l]) + ": no sampled witness");
        }
      }
      return v;
    }
    case MatrixRelation::TriangleleftRoumieu: {
      v.status = Status::HoldsOnWindow;
      for (Index l = 0; l < X.size(); ++l)
        for (Index m = 0; m < Y.size(); ++m) {
          const RelationVerdict r = check_relation(X.seqs[l], Y.seqs[m], Relation::Triangleleft);
          if (!r.holds()) {
            v.status = Status::Fails;
            Counterexample c;
            c.indices = {X.lambdas[l], Y.lambdas[m]};
            c.lhs = r.tailEstimate;
            c.rhs = 0.0;
            c.inequality = "root ratio must trend to zero for every pair";
            v.counterexample = c;
            return v;
          }
        }
      return v;
    }
    case MatrixRelation::LesssimMixed: {
      for (Index l = 0; l < X.size(); ++l)
        for (Index m = 0; m < Y.size(); ++m) {
          const RelationVerdict r = check_relation(X.seqs[l], Y.seqs[m], Relation::Lesssim);
          if (r.holds()) {
            v.status = Status::HoldsOnWindow;
            v.assignments.push_back({X.lambdas[l], Y.lambdas[m], r.witness.at("C")});
            return v;
          }
        }
      v.status = Status::Fails;
      v.notes.push_back("no sampled pair");
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

ConditionVerdict roots_almost_increasing_matrix(const WeightMatrix& X, Flavor flavor) {
  validate(X);
  ConditionVerdict v;
  v.condition = std::string("roots_ai[") + to_string(flavor) + "]";
  v.window = Window{0, X.kmax(), ""};

  auto pair_check = [&](Index l, Index m) {
    const WeightSeq& a = (flavor == Flavor::Roumieu) ? X.seqs[l] : X.seqs[m];
    const WeightSeq& b = (flavor == Flavor::Roumieu) ? X.seqs[m] : X.seqs[l];
    return gate_series(roots_gap_series(a, b));
  };
  const QuantifierResult qr = forall_exists(X, flavor, pair_check);
  v.status = qr.status;
  v.assignments = qr.assignments;
  for (const auto& nte : qr.notes) v.notes.push_back(nte);

  // soft cross-reference: with dc, the FdB condition should agree
  const ConditionVerdict dc = check_matrix_condition(X, MatrixCondition::Dc, flavor);
  if (dc.holds()) {
    const ConditionVerdict fdb = check_matrix_condition(X, MatrixCondition::FdB, flavor);
    v.notes.push_back(std::string("FdB cross-check: ") + to_string(fdb.status) +
                      (fdb.holds() == v.holds() ? " (consistent)" : " (mismatch)"));
  }
  return v;
}

}  // namespace uw
