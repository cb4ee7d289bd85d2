#pragma once

// Spec documents: small JSON objects (or colon shorthands on the command
// line) describing sequences, weight functions, matrices, and series. Every
// generator can emit the spec that reproduces it.

#include <json.hpp>
#include <string>

#include "ultraweight/constructions.hpp"
#include "ultraweight/series.hpp"
#include "ultraweight/weight_fn.hpp"
#include "ultraweight/weight_matrix.hpp"
#include "ultraweight/weight_seq.hpp"

namespace uw {

using Json = nlohmann::json;

// kinds: gevrey (s) | table (logM) | mu_table (logmu) |
//        example36 (r, K, logbase) | log_gevrey_L (K) | scaled (base, rho)
WeightSeq sequence_from_spec(const Json& spec, Index defaultK);
Json sequence_spec(const WeightSeq& generatedOrTable);  // emits a table spec for opaque input

// kinds: gevrey_root (s) | power_log (s) | linear_cutoff | sampled (t, omega)
WeightFunction weight_from_spec(const Json& spec);
Json weight_spec(const WeightFunction& w);

// kinds: gevrey_matrix (sGrid) | from_omega (weight, rhoGrid) | explicit (seqs, lambdas)
WeightMatrix matrix_from_spec(const Json& spec, Index defaultK);

// {"coeffs": ["1", "1/2", "0.25", ...]}; decimal or num/den strings
TruncatedSeries series_from_spec(const Json& spec, Index defaultK);

// Shorthand forms: "gevrey:1", "example36:r=4", "log_gevrey_L",
// "gevrey_root:1", "power_log:2", "linear_cutoff", "exp", "id",
// "poly:0,1,1", matrix "gevrey:0.5,1,2" or "omega:<weight>@1,2,4".
// A leading '{' means inline JSON; a leading '@' reads a JSON file.
Json resolve_spec_text(const std::string& text);  // shorthand/file/inline -> JSON for sequences & weights
Json sequence_shorthand(const std::string& text);
Json weight_shorthand(const std::string& text);
Json matrix_shorthand(const std::string& text);
Json series_shorthand(const std::string& text, Index K);

WeightSeq parse_sequence_arg(const std::string& text, Index defaultK);
WeightFunction parse_weight_arg(const std::string& text);
WeightMatrix parse_matrix_arg(const std::string& text, Index defaultK);
TruncatedSeries parse_series_arg(const std::string& text, Index K);

}  // namespace uw
