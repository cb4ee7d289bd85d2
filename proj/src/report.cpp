#include "ultraweight/report.hpp"

#include <ctime>
#include <iomanip>
#include <sstream>

namespace uw {

using Json = nlohmann::json;

namespace {

Json window_json(const Window& w) {
  Json j;
  if (!w.grid.empty()) {
    j["grid"] = w.grid;
  } else {
    j["kmin"] = w.kmin;
    j["kmax"] = w.kmax;
  }
  return j;
}

Json counterexample_json(const Counterexample& c) {
  Json j;
  j["indices"] = c.indices;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["inequality"] = c.inequality;
  return j;
}

Json diagnostics_json(const std::vector<std::pair<double, double>>& d) {
  Json j = Json::array();
  for (const auto& [k, v] : d) j.push_back(Json::array({k, v}));
  return j;
}

}  // namespace

Json to_json(const ConditionVerdict& v, const std::string& check_id) {
  Json j;
  j["check_id"] = check_id;
  j["condition"] = v.condition;
  j["window"] = window_json(v.window);
  j["status"] = to_string(v.status);
  if (!v.witness.empty()) j["witness"] = v.witness;
  if (v.counterexample) j["counterexample"] = counterexample_json(*v.counterexample);
  if (!v.diagnostics.empty()) j["diagnostics"] = diagnostics_json(v.diagnostics);
  if (!v.assignments.empty()) {
    Json a = Json::array();
    for (const auto& as : v.assignments)
      a.push_back(Json{{"lambda", as.lambda}, {"mu", as.mu}, {"C", as.C}});
    j["assignments"] = a;
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json to_json(const RelationVerdict& v, const std::string& check_id) {
  Json j;
  j["check_id"] = check_id;
  j["condition"] = "relation:" + v.relation;
  j["status"] = to_string(v.status);
  j["supEstimate"] = v.supEstimate;
  j["tailEstimate"] = v.tailEstimate;
  if (!v.witness.empty()) j["witness"] = v.witness;
  Json rr = Json::array();
  const Index stride = std::max<Index>(1, v.rootRatio.size() / 64);
  for (Index i = 0; i < v.rootRatio.size(); i += stride)
    rr.push_back(Json::array({double(i + 1), v.rootRatio[i]}));
  j["rootRatio"] = rr;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json to_json(const Report& r) {
  Json m;
  m["command"] = r.manifest.command;
  m["inputs"] = r.manifest.inputs;
  m["parameters"] = r.manifest.parameters;
  m["toolVersion"] = r.manifest.toolVersion;
  m["outputs"] = r.manifest.outputs;
  m["generated_at"] = r.manifest.generated_at;
  Json j;
  j["manifest"] = m;
  j["verdicts"] = r.verdicts;
  return j;
}

std::string iso_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

namespace {
void csv_numeric(std::ostream& os, double v) {
  std::ostringstream tmp;
  tmp << std::setprecision(17) << v;
  os << tmp.str();
}
}  // namespace

void write_diag_csv(std::ostream& os, const std::vector<std::pair<double, double>>& rows) {
  os << "k,value\n";
  for (const auto& [k, v] : rows) {
    csv_numeric(os, k);
    os << ',';
    csv_numeric(os, v);
    os << '\n';
  }
}

void write_hull_csv(std::ostream& os, const WeightSeq& M, const HullResult& h) {
  os << "k,logkfMk,logkfMbc,is_vertex\n";
  const ArrayXd y = M.log_kfact_M_array();
  std::vector<bool> isv(M.kmax() + 1, false);
  for (Index k : h.vertices) isv[k] = true;
  for (Index k = 0; k <= M.kmax(); ++k) {
    os << k << ',';
    csv_numeric(os, y[k]);
    os << ',';
    csv_numeric(os, h.regularized.log_kfact_M(k));
    os << ',' << (isv[k] ? 1 : 0) << '\n';
  }
}

void write_assoc_csv(std::ostream& os, const AssocSample& a) {
  os << "t,logT,argmax_k,truncated\n";
  for (Index i = 0; i < a.tGrid.size(); ++i) {
    csv_numeric(os, a.tGrid[i]);
    os << ',';
    csv_numeric(os, a.values[i]);
    os << ',' << a.argmax[i] << ',' << (a.truncated[i] ? 1 : 0) << '\n';
  }
}

void write_conjugate_csv(std::ostream& os, const ConjugateTable& t) {
  os << "t,phistar,argmax,truncated\n";
  for (Index i = 0; i < t.tGrid.size(); ++i) {
    csv_numeric(os, t.tGrid[i]);
    os << ',';
    csv_numeric(os, t.phiStar[i]);
    os << ',';
    csv_numeric(os, t.argmax[i]);
    os << ',' << (t.truncated[i] ? 1 : 0) << '\n';
  }
}

void write_charfn_csv(std::ostream& os, const ArrayXd& log_h, const ArrayXd& log_jfactM) {
  os << "j,log_hj,log_jfactMj,ratio\n";
  for (Index j = 0; j < log_h.size(); ++j) {
    os << j << ',';
    csv_numeric(os, log_h[j]);
    os << ',';
    csv_numeric(os, log_jfactM[j]);
    os << ',';
    csv_numeric(os, std::exp(log_h[j] - log_jfactM[j]));
    os << '\n';
  }
}

}  // namespace uw
