// ultraweight: weight sequences, weight functions, and weight matrices from
// ultradifferentiable analysis. Parses spec documents (JSON or shorthand),
// dispatches to the library, and renders JSON reports plus CSV diagnostics.
//
// Exit codes: 0 = every requested check produced a verdict (a "fails" verdict
// is a result, not an error); 2 = input error; 3 = internal failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ultraweight/batteries.hpp"
#include "ultraweight/conditions.hpp"
#include "ultraweight/constructions.hpp"
#include "ultraweight/fdb.hpp"
#include "ultraweight/regularize.hpp"
#include "ultraweight/relations.hpp"
#include "ultraweight/report.hpp"
#include "ultraweight/series.hpp"
#include "ultraweight/spec_io.hpp"
#include "ultraweight/weight_fn.hpp"
#include "ultraweight/weight_matrix.hpp"

namespace {

using namespace uw;
using Json = nlohmann::json;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(tok);
  return out;
}

double parse_number_token(const std::string& s) {
  if (s == "e") return std::exp(1.0);
  return std::stod(s);
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split_list(s)) out.push_back(parse_number_token(tok));
  return out;
}

Index default_window() {
  if (const char* env = std::getenv("ULTRAWEIGHT_DEFAULT_K")) return Index(std::atoll(env));
  return 200;
}

struct Emitter {
  Report report;
  std::string outPath;
  std::string csvDir;

  void add(const ConditionVerdict& v, const std::string& id) {
    report.verdicts.push_back(to_json(v, id));
    if (!csvDir.empty() && !v.diagnostics.empty()) {
      std::ofstream f(csv_path(id));
      write_diag_csv(f, v.diagnostics);
      report.manifest.outputs.push_back(csv_path(id));
    }
  }
  void add(const RelationVerdict& v, const std::string& id) {
    report.verdicts.push_back(to_json(v, id));
  }
  std::string csv_path(const std::string& id) const {
    std::string name = id;
    std::replace(name.begin(), name.end(), ':', '_');
    return csvDir + "/" + name + ".csv";
  }
  int finish() {
    std::sort(report.verdicts.begin(), report.verdicts.end(),
              [](const Json& a, const Json& b) {
                return a.at("check_id").get<std::string>() < b.at("check_id").get<std::string>();
              });
    report.manifest.generated_at = iso_timestamp();
    const Json j = to_json(report);
    if (outPath.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::ofstream f(outPath);
      f << j.dump(2) << "\n";
      std::cerr << "report written to " << outPath << "\n";
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultraweight: computations with weight sequences, functions, and matrices"};
  app.require_subcommand(1);

  std::string spec, left, right, omega, matrixSpec, rel = "lesssim", flavor = "roumieu";
  std::string conditions, which, outPath, csvDir, tList, rhoList = "1", variant = "sqrt";
  std::string fSpec, gSpec, mSpec, logbase = "e", scenarioName;
  Index K = default_window();
  double rParam = 4.0, rhoParam = 1.0, tauParam = 2.0, sigmaParam = 2.0, lambdaParam = 1.0;
  Index terms = 16, orders = 8;
  uint64_t seed = 20240801;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--K", K, "window / truncation order");
    cmd->add_option("--out", outPath, "write the JSON report here (default stdout)");
    cmd->add_option("--csv", csvDir, "directory for CSV diagnostics");
    cmd->add_option("--seed", seed, "seed for randomized batteries");
  };

  // seq
  CLI::App* seq = app.add_subcommand("seq", "weight-sequence operations");
  seq->require_subcommand(1);
  CLI::App* seqCheck = seq->add_subcommand("check", "growth/stability conditions");
  seqCheck->add_option("--spec", spec, "sequence spec or shorthand")->required();
  seqCheck->add_option("--conditions", conditions, "comma list: lc,wlc,mg,dc,ai,roots_ai")->required();
  add_common(seqCheck);
  CLI::App* seqCompare = seq->add_subcommand("compare", "binary relations");
  seqCompare->add_option("--left", left)->required();
  seqCompare->add_option("--right", right)->required();
  seqCompare->add_option("--rel", rel, "lesssim | triangleleft | approx");
  add_common(seqCompare);
  CLI::App* seqReg = seq->add_subcommand("regularize", "log-convex minorant + contact diagnostics");
  seqReg->add_option("--spec", spec)->required();
  seqReg->add_option("--flavor", flavor, "weak | strong");
  add_common(seqReg);
  CLI::App* seqFdb = seq->add_subcommand("fdb", "chain-rule closure property + sufficient conditions");
  seqFdb->add_option("--spec", spec)->required();
  add_common(seqFdb);
  CLI::App* seqCarleman = seq->add_subcommand("carleman", "quasianalyticity sums");
  seqCarleman->add_option("--spec", spec)->required();
  add_common(seqCarleman);
  CLI::App* seqStab = seq->add_subcommand("stability", "composition-stability checkers on b(c)/b(o)");
  seqStab->add_option("--spec", spec)->required();
  add_common(seqStab);

  // wf
  CLI::App* wf = app.add_subcommand("wf", "weight-function operations");
  wf->require_subcommand(1);
  CLI::App* wfConj = wf->add_subcommand("conjugate", "Young conjugate table");
  wfConj->add_option("--omega", omega)->required();
  wfConj->add_option("--t", tList, "comma list of t values ('e' allowed)")->required();
  add_common(wfConj);
  CLI::App* wfSeq = wf->add_subcommand("sequences", "associated sequences");
  wfSeq->add_option("--omega", omega)->required();
  wfSeq->add_option("--rho", rhoList, "comma list of rho values");
  add_common(wfSeq);
  CLI::App* wfCheck = wf->add_subcommand("check", "omega conditions w1..w8");
  wfCheck->add_option("--omega", omega)->required();
  wfCheck->add_option("--conditions", conditions, "comma list: w1..w8")->required();
  add_common(wfCheck);
  CLI::App* wfIneq = wf->add_subcommand("inequalities", "conjugate inequality suite");
  wfIneq->add_option("--omega", omega)->required();
  wfIneq->add_option("--which", which,
                     "comma list: conj_superadd,omega_superadd,sigma_absorb,"
                     "rho_equivalence,rho_triangle,conj_iterate")
      ->required();
  wfIneq->add_option("--rho", rhoParam);
  wfIneq->add_option("--tau", tauParam);
  wfIneq->add_option("--sigma", sigmaParam);
  add_common(wfIneq);
  CLI::App* wfOmegaRho = wf->add_subcommand("omegarho", "log T of the associated sequence vs omega");
  wfOmegaRho->add_option("--omega", omega)->required();
  wfOmegaRho->add_option("--rho", rhoParam);
  add_common(wfOmegaRho);
  CLI::App* wfCompare = wf->add_subcommand("compare", "O/o relations between weights");
  wfCompare->add_option("--left", left)->required();
  wfCompare->add_option("--right", right)->required();
  wfCompare->add_option("--rel", rel, "lesssim | triangleleft");
  add_common(wfCompare);

  // matrix
  CLI::App* mtx = app.add_subcommand("matrix", "weight-matrix operations");
  mtx->require_subcommand(1);
  CLI::App* mtxCheck = mtx->add_subcommand("check", "matrix conditions");
  mtxCheck->add_option("--matrix", matrixSpec)->required();
  mtxCheck->add_option("--cond", conditions, "comma list: H,Cw_beurling,Cw_roumieu,dc,mg,alg,FdB,L,BR")
      ->required();
  mtxCheck->add_option("--flavor", flavor, "beurling | roumieu");
  add_common(mtxCheck);
  CLI::App* mtxRelate = mtx->add_subcommand("relate", "matrix relations");
  mtxRelate->add_option("--left", left)->required();
  mtxRelate->add_option("--right", right)->required();
  mtxRelate->add_option("--rel", rel,
                        "lesssim_beurling | lesssim_roumieu | triangleleft_roumieu | lesssim_mixed");
  add_common(mtxRelate);

  // construct
  CLI::App* con = app.add_subcommand("construct", "builtin constructions");
  con->require_subcommand(1);
  CLI::App* conEx = con->add_subcommand("example36", "staircase sequence M(r)");
  conEx->add_option("--r", rParam);
  conEx->add_option("--logbase", logbase, "e | 2 | 10");
  add_common(conEx);
  CLI::App* conChar = con->add_subcommand("charfn", "characteristic exponential sum");
  conChar->add_option("--spec", spec)->required();
  conChar->add_option("--terms", terms, "truncation N of the sum");
  conChar->add_option("--orders", orders, "jmax");
  add_common(conChar);
  CLI::App* conInterp = con->add_subcommand("interpolate", "sequences strictly between L and M");
  conInterp->add_option("--lower", left)->required();
  conInterp->add_option("--upper", right)->required();
  conInterp->add_option("--variant", variant, "sqrt | sqrt-factorial");
  add_common(conInterp);
  CLI::App* conLogL = con->add_subcommand("logL", "log-Gevrey sequence");
  add_common(conLogL);

  // series
  CLI::App* ser = app.add_subcommand("series", "exact truncated power series");
  ser->require_subcommand(1);
  CLI::App* serCompose = ser->add_subcommand("compose", "Taylor coefficients of f∘g");
  serCompose->add_option("--f", fSpec)->required();
  serCompose->add_option("--g", gSpec)->required();
  add_common(serCompose);
  CLI::App* serVerify = ser->add_subcommand("verify-fdb", "composition bound margins");
  serVerify->add_option("--f", fSpec)->required();
  serVerify->add_option("--g", gSpec)->required();
  serVerify->add_option("--M", mSpec, "sequence spec for the certificates")->required();
  add_common(serVerify);

  // scenario
  CLI::App* scen = app.add_subcommand("scenario", "named verification batteries");
  scen->add_option("name", scenarioName, "paper-gevrey | paper-example36 | paper-omega-linear | "
                                         "paper-omega-gevreyroot | paper-matrix-G | paper-fdb-series")
      ->required();
  add_common(scen);

  // cartan check lives under seq for derivative-bound certificates
  CLI::App* seqCartan = seq->add_subcommand("cartan", "derivative bound through the minorant");
  seqCartan->add_option("--spec", spec, "derivative-bound sequence")->required();
  seqCartan->add_option("--values", tList, "comma list of log|f^(k)(0)|")->required();
  seqCartan->add_option("--lambda", lambdaParam);
  add_common(seqCartan);

  CLI11_PARSE(app, argc, argv);

  Emitter em;
  em.outPath = outPath;
  em.csvDir = csvDir;
  if (!csvDir.empty()) std::filesystem::create_directories(csvDir);
  {
    std::ostringstream cmd;
    for (int i = 1; i < argc; ++i) cmd << (i > 1 ? " " : "") << argv[i];
    em.report.manifest.command = cmd.str();
  }
  Json& params = em.report.manifest.parameters;
  params["K"] = K;
  params["seed"] = seed;

  try {
    if (seqCheck->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      for (const auto& name : split_list(conditions)) {
        const auto cond = seq_condition_from_string(name);
        if (!cond) throw std::invalid_argument("unknown condition '" + name + "'");
        em.add(check_condition(M, *cond), "check:" + name);
      }
    } else if (seqCompare->parsed()) {
      const WeightSeq A = parse_sequence_arg(left, K), B = parse_sequence_arg(right, K);
      em.report.manifest.inputs.push_back(sequence_spec(A));
      em.report.manifest.inputs.push_back(sequence_spec(B));
      Relation r = Relation::Lesssim;
      if (rel == "triangleleft") r = Relation::Triangleleft;
      else if (rel == "approx") r = Relation::Approx;
      else if (rel != "lesssim") throw std::invalid_argument("unknown relation '" + rel + "'");
      em.add(check_relation(A, B, r), "compare:" + rel);
    } else if (seqReg->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const HullFlavor fl = (flavor == "strong") ? HullFlavor::Strong : HullFlavor::Weak;
      const HullResult h = lc_minorant(M, fl);
      ConditionVerdict v;
      v.condition = "lc_minorant";
      v.window = Window{0, M.kmax(), ""};
      v.status = Status::HoldsOnWindow;
      v.witness["vertices"] = double(h.vertices.size());
      v.witness["provisionalFrom"] = double(h.provisionalFrom);
      v.witness["degenerate"] = h.degenerate ? 1.0 : 0.0;
      // root gap between M and its minorant as a diagnostic
      ArrayXd gap(M.kmax());
      for (Index k = 1; k <= M.kmax(); ++k)
        gap[k - 1] = (M.logM[k] - h.regularized.logM[k]) / double(k);
      v.diagnostics = diag_samples(gap);
      em.add(v, "regularize:hull");
      if (h.vertices.size() >= 4 && h.provisionalFrom > 1) {
        const ContactRatioDiag d = contact_ratio_diagnostic(h);
        ConditionVerdict cv;
        cv.condition = "contact_ratios";
        cv.window = Window{0, M.kmax(), ""};
        cv.status = d.bounded == "yes-on-window" ? Status::HoldsOnWindow
                    : d.bounded == "no-trend" ? Status::Fails
                                              : Status::Inconclusive;
        cv.notes.push_back("bounded: " + d.bounded);
        for (size_t i = 0; i < d.ratios.size(); ++i)
          cv.diagnostics.emplace_back(double(d.verticesUsed[i]), d.ratios[i]);
        em.add(cv, "regularize:contact_ratios");
      }
      if (!csvDir.empty()) {
        std::ofstream f(em.csv_path("regularize:table"));
        write_hull_csv(f, M, h);
        em.report.manifest.outputs.push_back(em.csv_path("regularize:table"));
        // T samples over the slope range of the window (t capped to stay finite)
        const ArrayXd y = M.log_kfact_M_array();
        double smax = 0.0;
        for (Index k = 1; k <= M.kmax(); ++k) smax = std::max(smax, y[k] - y[k - 1]);
        const double uTop = std::min(600.0, smax + 1.0);
        ArrayXd tg(128);
        for (Index i = 0; i < 128; ++i)
          tg[i] = std::exp(std::log(0.5) + (uTop - std::log(0.5)) * double(i) / 127.0);
        std::ofstream fa(em.csv_path("regularize:assoc"));
        write_assoc_csv(fa, assoc_function(M, 'T', tg));
        em.report.manifest.outputs.push_back(em.csv_path("regularize:assoc"));
      }
    } else if (seqFdb->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const FdbSufficientReport rep = fdb_sufficient_conditions(M);
      em.add(rep.fdb, "fdb:property");
      em.add(rep.logConvex, "fdb:sufficient_lc");
      em.add(rep.derivClosedRootsAi, "fdb:sufficient_dc_roots");
      em.add(rep.convolutionShift, "fdb:sufficient_convolution");
      ConditionVerdict cons;
      cons.condition = "cross_consistency";
      cons.status = rep.consistent ? Status::HoldsOnWindow : Status::Fails;
      em.add(cons, "fdb:consistency");
    } else if (seqCarleman->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const CarlemanResult cr = carleman_sums(M);
      em.add(cr.verdict, "carleman:verdict");
      if (!csvDir.empty()) {
        std::ofstream f(em.csv_path("carleman:partial_sums"));
        std::vector<std::pair<double, double>> rows;
        for (Index k = 0; k < cr.partialSumRoots.size(); ++k)
          rows.emplace_back(double(k + 1), cr.partialSumRoots[k]);
        write_diag_csv(f, rows);
        em.report.manifest.outputs.push_back(em.csv_path("carleman:partial_sums"));
      }
    } else if (seqStab->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const WeightSeq bc = lc_minorant(M, HullFlavor::Weak).regularized;
      // the sup behind b(o) lives near t = e^slope; size the cap accordingly
      const ArrayXd ykf = M.log_kfact_M_array();
      double smax = 0.0;
      for (Index k = 1; k <= M.kmax(); ++k) smax = std::max(smax, ykf[k] - ykf[k - 1]);
      const double tMax = std::max(double(2 * M.kmax()), std::exp(std::min(600.0, smax + 1.0)));
      const WeightSeq bo = b_o_regularization(M, tMax);
      em.add(check_condition(bc, SeqCondition::RootsAi), "stability:roots_ai_bc");
      em.add(check_condition(bo, SeqCondition::RootsAi), "stability:roots_ai_bo");
      em.add(check_fdb_property(bc), "stability:fdb_bc");
      em.add(check_fdb_property(bo), "stability:fdb_bo");
      RelationVerdict cmp = check_relation(bo, bc, Relation::Lesssim);
      cmp.notes.push_back("b(o) vs b(c) diagnostic only; equivalence is not certified");
      em.add(cmp, "stability:bo_vs_bc");
    } else if (seqCartan->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const std::vector<double> vals = split_numbers(tList);
      ArrayXd v(vals.size());
      for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
      em.add(cartan_check(M, v, lambdaParam), "cartan:bound");
    } else if (wfConj->parsed()) {
      const WeightFunction w = parse_weight_arg(omega);
      em.report.manifest.inputs.push_back(weight_spec(w));
      const std::vector<double> ts = split_numbers(tList);
      ArrayXd tg(ts.size());
      for (size_t i = 0; i < ts.size(); ++i) tg[i] = ts[i];
      std::sort(tg.data(), tg.data() + tg.size());
      const ConjugateTable table = young_conjugate_auto(w, tg);
      ConditionVerdict v;
      v.condition = "young_conjugate";
      v.window.grid = "t list (" + std::to_string(tg.size()) + " points)";
      v.status = Status::HoldsOnWindow;
      for (Index i = 0; i < tg.size(); ++i) v.diagnostics.emplace_back(tg[i], table.phiStar[i]);
      em.add(v, "conjugate:table");
      if (!csvDir.empty()) {
        std::ofstream f(em.csv_path("conjugate:table"));
        write_conjugate_csv(f, table);
        em.report.manifest.outputs.push_back(em.csv_path("conjugate:table"));
      }
    } else if (wfSeq->parsed()) {
      const WeightFunction w = parse_weight_arg(omega);
      em.report.manifest.inputs.push_back(weight_spec(w));
      Json emitted = Json::array();
      for (double rho : split_numbers(rhoList)) {
        const WeightSeq M = omega_sequence(w, rho, K);
        ConditionVerdict v = check_condition(M, SeqCondition::Wlc);
        v.notes.push_back("sequence " + M.label);
        em.add(v, "sequences:rho_" + std::to_string(rho));
        emitted.push_back(sequence_spec(M));
      }
      params["sequences"] = emitted;
    } else if (wfCheck->parsed()) {
      const WeightFunction w = parse_weight_arg(omega);
      em.report.manifest.inputs.push_back(weight_spec(w));
      for (const auto& name : split_list(conditions)) {
        const auto cond = omega_condition_from_string(name);
        if (!cond) throw std::invalid_argument("unknown omega condition '" + name + "'");
        em.add(check_omega_condition(w, *cond), "check:" + name);
      }
    } else if (wfIneq->parsed()) {
      const WeightFunction w = parse_weight_arg(omega);
      em.report.manifest.inputs.push_back(weight_spec(w));
      InequalityParams p;
      p.rho = rhoParam;
      p.tau = tauParam;
      p.sigma = sigmaParam;
      p.jkMax = std::min<Index>(K, 100);
      for (const auto& name : split_list(which)) {
        const auto ineq = omega_inequality_from_string(name);
        if (!ineq) throw std::invalid_argument("unknown inequality '" + name + "'");
        em.add(inequality_suite(w, *ineq, p), "inequality:" + name);
      }
    } else if (wfOmegaRho->parsed()) {
      const WeightFunction w = parse_weight_arg(omega);
      em.report.manifest.inputs.push_back(weight_spec(w));
      ArrayXd uGrid(60);
      for (Index i = 0; i < 60; ++i)
        uGrid[i] = 1.0 + (std::log(1000.0) - 1.0) * double(i) / 59.0;
      em.add(omega_rho_check(w, rhoParam, uGrid), "omegarho:bounds");
    } else if (wfCompare->parsed()) {
      const WeightFunction a = parse_weight_arg(left), b = parse_weight_arg(right);
      em.report.manifest.inputs.push_back(weight_spec(a));
      em.report.manifest.inputs.push_back(weight_spec(b));
      const Relation r = (rel == "triangleleft") ? Relation::Triangleleft : Relation::Lesssim;
      const WeightCompareResult res = compare_weights(a, b, r);
      em.add(res.verdict, "compare:relation");
      em.add(res.sequenceEcho, "compare:sequence_echo");
    } else if (mtxCheck->parsed()) {
      const WeightMatrix X = parse_matrix_arg(matrixSpec, K);
      Flavor fl = Flavor::Roumieu;
      if (flavor == "beurling") fl = Flavor::Beurling;
      else if (flavor != "roumieu") throw std::invalid_argument("unknown flavor '" + flavor + "'");
      for (const auto& name : split_list(conditions)) {
        const auto cond = matrix_condition_from_string(name);
        if (!cond) throw std::invalid_argument("unknown matrix condition '" + name + "'");
        em.add(check_matrix_condition(X, *cond, fl), "matrix:" + name);
      }
    } else if (mtxRelate->parsed()) {
      const WeightMatrix X = parse_matrix_arg(left, K), Y = parse_matrix_arg(right, K);
      const auto mr = matrix_relation_from_string(rel);
      if (!mr) throw std::invalid_argument("unknown matrix relation '" + rel + "'");
      em.add(check_matrix_relation(X, Y, *mr), "relate:" + rel);
    } else if (conEx->parsed()) {
      const double lb = (logbase == "e") ? std::exp(1.0) : std::stod(logbase);
      if (conEx->count("--K") == 0 && !std::getenv("ULTRAWEIGHT_DEFAULT_K"))
        K = 400;  // staircase analyses want a longer default window
      const Example36Result ex = example36(rParam, K, lb);
      Json spec_out;
      spec_out["kind"] = "example36";
      spec_out["r"] = rParam;
      spec_out["K"] = K;
      spec_out["logbase"] = (logbase == "e") ? Json("e") : Json(std::stod(logbase));
      params["spec"] = spec_out;
      params["kIndices"] = ex.kIndices;
      ConditionVerdict wlc = check_condition(ex.M, SeqCondition::Wlc);
      wlc.notes.push_back("log base defaulted to " + logbase + "; ratios unbounded for any base > 1");
      em.add(wlc, "example36:wlc");
      em.add(check_condition(ex.M, SeqCondition::Dc), "example36:dc");
    } else if (conChar->parsed()) {
      const WeightSeq M = parse_sequence_arg(spec, K);
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const CharFnResult cf = characteristic_fn(M, terms, orders);
      ConditionVerdict v;
      v.condition = "characteristic_fn";
      v.window = Window{0, orders, ""};
      v.status = Status::HoldsOnWindow;
      v.witness["normC"] = cf.normC;
      v.witness["normRho"] = cf.normRho;
      v.notes.push_back(cf.phase);
      const ArrayXd y = M.log_kfact_M_array();
      for (Index j = 0; j <= orders; ++j) {
        v.diagnostics.emplace_back(double(j), cf.log_h[j]);
        if (cf.log_h[j] < y[j]) {
          v.status = Status::Fails;
          Counterexample ce;
          ce.indices = {double(j)};
          ce.lhs = cf.log_h[j];
          ce.rhs = y[j];
          ce.inequality = "h_j >= j! M_j";
          v.counterexample = ce;
        }
      }
      em.add(v, "charfn:h");
      if (!csvDir.empty()) {
        std::ofstream f(em.csv_path("charfn:table"));
        write_charfn_csv(f, cf.log_h, y.head(orders + 1));
        em.report.manifest.outputs.push_back(em.csv_path("charfn:table"));
      }
    } else if (conInterp->parsed()) {
      const WeightSeq L = parse_sequence_arg(left, K), M = parse_sequence_arg(right, K);
      em.report.manifest.inputs.push_back(sequence_spec(L));
      em.report.manifest.inputs.push_back(sequence_spec(M));
      const InterpolationVariant varnt = (variant == "sqrt-factorial")
                                             ? InterpolationVariant::SqrtOverFactorial
                                             : InterpolationVariant::Sqrt;
      const auto [N1, N2] = interpolate(L, M, varnt);
      em.add(check_relation(N1, N2, Relation::Triangleleft), "interpolate:n1_below_n2");
      em.add(check_relation(N2, truncated(M, N2.kmax()), Relation::Triangleleft),
             "interpolate:n2_below_m");
      params["N1"] = sequence_spec(N1);
      params["N2"] = sequence_spec(N2);
    } else if (conLogL->parsed()) {
      const WeightSeq L = log_gevrey_L(K);
      params["spec"] = Json{{"kind", "log_gevrey_L"}, {"K", K}};
      const CarlemanResult cr = carleman_sums(L);
      em.add(cr.verdict, "logL:carleman");
    } else if (serCompose->parsed()) {
      const TruncatedSeries f = parse_series_arg(fSpec, K);
      const TruncatedSeries g = parse_series_arg(gSpec, K);
      const TruncatedSeries h = series_compose(f, g);
      Json coeffs = Json::array();
      for (const auto& cc : h.coeffs) {
        std::ostringstream os;
        os << cc;
        coeffs.push_back(os.str());
      }
      params["composed"] = Json{{"coeffs", coeffs}, {"K", h.order}};
      ConditionVerdict v;
      v.condition = "series_compose";
      v.window = Window{0, h.order, ""};
      v.status = Status::HoldsOnWindow;
      em.add(v, "series:composed");
    } else if (serVerify->parsed()) {
      const TruncatedSeries f = parse_series_arg(fSpec, K);
      const TruncatedSeries g = parse_series_arg(gSpec, K);
      const WeightSeq M = parse_sequence_arg(mSpec, K);
      const BoundCertificate cf = minimal_certificate(f, M);
      const BoundCertificate cg = minimal_certificate(g, M);
      const CompositionBoundReport rep = verify_composition_bound(f, cf, g, cg);
      ConditionVerdict v = rep.verdict;
      for (Index k = 1; k <= rep.composed.order; ++k)
        v.diagnostics.emplace_back(double(k), rep.margins[k - 1]);
      em.add(v, "series:composition_bound");
    } else if (scen->parsed()) {
      if (!is_scenario(scenarioName))
        throw std::invalid_argument("unknown scenario '" + scenarioName + "'");
      const std::vector<CriterionResult> results = run_scenario(scenarioName, seed);
      bool all = true;
      for (const CriterionResult& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << "\n";
        ConditionVerdict v;
        v.condition = r.name;
        v.status = r.pass ? Status::HoldsOnWindow : Status::Fails;
        v.notes.push_back(r.detail);
        em.add(v, "scenario:" + r.id);
      }
      params["scenario"] = scenarioName;
      params["all_pass"] = all;
    }
    return em.finish();
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
