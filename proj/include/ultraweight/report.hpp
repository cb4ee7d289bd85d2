#pragma once

// Report rendering: every command emits {"manifest": ..., "verdicts": [...]};
// identical manifests reproduce byte-identical reports apart from the
// generated_at stamp. Diagnostics go to CSV with pinned headers.

#include <json.hpp>
#include <ostream>
#include <string>

#include "ultraweight/regularize.hpp"
#include "ultraweight/verdict.hpp"
#include "ultraweight/weight_fn.hpp"

namespace uw {

struct Manifest {
  std::string command;
  std::vector<nlohmann::json> inputs;
  nlohmann::json parameters = nlohmann::json::object();
  std::string toolVersion = "ultraweight 1.0.0";
  std::vector<std::string> outputs;
  std::string generated_at;  // excluded from determinism comparisons
};

struct Report {
  Manifest manifest;
  std::vector<nlohmann::json> verdicts;
};

nlohmann::json to_json(const ConditionVerdict& v, const std::string& check_id);
nlohmann::json to_json(const RelationVerdict& v, const std::string& check_id);
nlohmann::json to_json(const Report& r);

std::string iso_timestamp();

void write_diag_csv(std::ostream& os, const std::vector<std::pair<double, double>>& rows);
void write_hull_csv(std::ostream& os, const WeightSeq& M, const HullResult& h);
void write_assoc_csv(std::ostream& os, const AssocSample& a);
void write_conjugate_csv(std::ostream& os, const ConjugateTable& t);
void write_charfn_csv(std::ostream& os, const ArrayXd& log_h, const ArrayXd& log_jfactM);

}  // namespace uw
