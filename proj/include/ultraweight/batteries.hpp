#pragma once

// Named verification batteries over the builtin families. The acceptance
// suite runs all of them; the CLI exposes them as `scenario <name>`.

#include <cstdint>
#include <string>
#include <vector>

namespace uw {

struct CriterionResult {
  std::string id;      // "1".."11"
  std::string name;
  bool pass = false;
  std::string detail;  // one line: witnesses, worst errors, counterexamples
};

CriterionResult criterion_hull_oracle(uint64_t seed);           // 1
CriterionResult criterion_t_duality();                          // 2
CriterionResult criterion_example36_battery();                  // 3
CriterionResult criterion_fdb_oracle(uint64_t seed);            // 4
CriterionResult criterion_series_composition(uint64_t seed);    // 5
CriterionResult criterion_characteristic_fn();                  // 6
CriterionResult criterion_conjugate_closed_form();              // 7
CriterionResult criterion_omega_inequalities();                 // 8
CriterionResult criterion_matrix_batteries();                   // 9
CriterionResult criterion_theorem_cross_consistency();          // 10
CriterionResult criterion_transport(uint64_t seed);             // 11

std::vector<CriterionResult> run_all_criteria(uint64_t seed);

std::vector<std::string> scenario_names();
bool is_scenario(const std::string& name);
std::vector<CriterionResult> run_scenario(const std::string& name, uint64_t seed);

}  // namespace uw
