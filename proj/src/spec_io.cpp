#include "ultraweight/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uw {

namespace {

[[noreturn]] void bad_spec(const std::string& what) {
  throw std::invalid_argument("spec error: " + what);
}

ArrayXd json_to_array(const Json& j, const char* field) {
  if (!j.is_array()) bad_spec(std::string(field) + " must be an array");
  ArrayXd out(j.size());
  Index i = 0;
  for (const auto& v : j) out[i++] = v.get<double>();
  return out;
}

Json array_to_json(const ArrayXd& a) {
  Json j = Json::array();
  for (Index i = 0; i < a.size(); ++i) j.push_back(a[i]);
  return j;
}

double parse_logbase(const Json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "e") return std::exp(1.0);
    return std::stod(s);
  }
  return v.get<double>();
}

struct Shorthand {
  std::string kind;
  std::vector<std::string> positional;
  std::map<std::string, std::string> kv;
};

Shorthand parse_shorthand(const std::string& text) {
  Shorthand sh;
  const auto colon = text.find(':');
  sh.kind = text.substr(0, colon);
  if (colon == std::string::npos) return sh;
  std::istringstream is(text.substr(colon + 1));
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos)
      sh.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    else
      sh.positional.push_back(tok);
  }
  return sh;
}

double sh_num(const Shorthand& sh, const char* key, size_t pos, double fallback,
              bool required = false) {
  if (sh.kv.count(key)) return std::stod(sh.kv.at(key));
  if (pos < sh.positional.size()) return std::stod(sh.positional[pos]);
  if (required) bad_spec(std::string("shorthand missing parameter '") + key + "'");
  return fallback;
}

}  // namespace

WeightSeq sequence_from_spec(const Json& spec, Index defaultK) {
  if (!spec.is_object() || !spec.contains("kind")) bad_spec("sequence spec needs a 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  const Index K = spec.contains("K") ? spec.at("K").get<Index>() : defaultK;

  WeightSeq M;
  if (kind == "gevrey") {
    M = make_gevrey(spec.at("s").get<double>(), K);
  } else if (kind == "table") {
    M = from_table(json_to_array(spec.at("logM"), "logM"));
  } else if (kind == "mu_table") {
    const ArrayXd logmu = json_to_array(spec.at("logmu"), "logmu");
    M = from_mu(logmu, logmu.size());
  } else if (kind == "example36") {
    const double logbase = spec.contains("logbase") ? parse_logbase(spec.at("logbase"))
                                                    : std::exp(1.0);
    M = example36(spec.at("r").get<double>(), K, logbase).M;
  } else if (kind == "log_gevrey_L") {
    M = log_gevrey_L(K);
  } else if (kind == "scaled") {
    const WeightSeq base = sequence_from_spec(spec.at("base"), K);
    M = scale(base, spec.at("rho").get<double>());
  } else {
    bad_spec("unknown sequence kind '" + kind + "'");
  }
  if (spec.contains("label")) M.label = spec.at("label").get<std::string>();
  return M;
}

Json sequence_spec(const WeightSeq& M) {
  // emit the exact table; generator-specific specs are produced by the CLI
  Json j;
  j["kind"] = "table";
  j["logM"] = array_to_json(M.logM);
  j["label"] = M.label;
  return j;
}

WeightFunction weight_from_spec(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind")) bad_spec("weight spec needs a 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "gevrey_root") return make_gevrey_root(spec.at("s").get<double>());
  if (kind == "power_log") return make_power_log(spec.at("s").get<double>());
  if (kind == "linear_cutoff") return make_linear_cutoff();
  if (kind == "sampled")
    return make_sampled(json_to_array(spec.at("t"), "t"), json_to_array(spec.at("omega"), "omega"),
                        spec.contains("label") ? spec.at("label").get<std::string>() : "sampled");
  bad_spec("unknown weight kind '" + kind + "'");
}

Json weight_spec(const WeightFunction& w) {
  Json j;
  switch (w.kind) {
    case WeightFunction::Kind::GevreyRoot:
      j["kind"] = "gevrey_root";
      j["s"] = w.s;
      break;
    case WeightFunction::Kind::PowerLog:
      j["kind"] = "power_log";
      j["s"] = w.s;
      break;
    case WeightFunction::Kind::LinearCutoff:
      j["kind"] = "linear_cutoff";
      break;
    case WeightFunction::Kind::Sampled:
      j["kind"] = "sampled";
      j["t"] = array_to_json(w.sampleT);
      j["omega"] = array_to_json(w.sampleOmega);
      break;
  }
  j["label"] = w.label;
  return j;
}

WeightMatrix matrix_from_spec(const Json& spec, Index defaultK) {
  if (!spec.is_object() || !spec.contains("kind")) bad_spec("matrix spec needs a 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  const Index K = spec.contains("K") ? spec.at("K").get<Index>() : defaultK;
  if (kind == "gevrey_matrix") return gevrey_matrix(json_to_array(spec.at("sGrid"), "sGrid"), K);
  if (kind == "from_omega")
    return matrix_from_omega(weight_from_spec(spec.at("weight")),
                             json_to_array(spec.at("rhoGrid"), "rhoGrid"), K);
  if (kind == "explicit") {
    std::vector<WeightSeq> seqs;
    for (const auto& s : spec.at("seqs")) seqs.push_back(sequence_from_spec(s, K));
    return explicit_matrix(std::move(seqs), json_to_array(spec.at("lambdas"), "lambdas"));
  }
  bad_spec("unknown matrix kind '" + kind + "'");
}

TruncatedSeries series_from_spec(const Json& spec, Index defaultK) {
  if (!spec.is_object() || !spec.contains("coeffs")) bad_spec("series spec needs 'coeffs'");
  std::vector<Rational> coeffs;
  for (const auto& c : spec.at("coeffs")) {
    if (c.is_string())
      coeffs.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer())
      coeffs.push_back(Rational(c.get<long long>()));
    else
      bad_spec("series coefficients must be strings or integers (exactness)");
  }
  const Index K = spec.contains("K") ? spec.at("K").get<Index>() : defaultK;
  while (Index(coeffs.size()) < K + 1) coeffs.push_back(Rational(0));
  if (Index(coeffs.size()) > K + 1) coeffs.resize(K + 1);
  return make_series(std::move(coeffs),
                     spec.contains("basepoint") ? spec.at("basepoint").get<std::string>() : "0");
}

Json resolve_spec_text(const std::string& text) {
  if (!text.empty() && text[0] == '{') return Json::parse(text);
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) bad_spec("cannot open spec file " + text.substr(1));
    Json j;
    in >> j;
    return j;
  }
  return Json();  // caller interprets as shorthand
}

Json sequence_shorthand(const std::string& text) {
  const Shorthand sh = parse_shorthand(text);
  Json j;
  if (sh.kind == "gevrey") {
    j["kind"] = "gevrey";
    j["s"] = sh_num(sh, "s", 0, 0.0, true);
  } else if (sh.kind == "example36") {
    j["kind"] = "example36";
    j["r"] = sh_num(sh, "r", 0, 4.0);
    if (sh.kv.count("K")) j["K"] = Index(std::stod(sh.kv.at("K")));
    if (sh.kv.count("logbase"))
      j["logbase"] = sh.kv.at("logbase") == "e" ? Json("e") : Json(std::stod(sh.kv.at("logbase")));
  } else if (sh.kind == "log_gevrey_L") {
    j["kind"] = "log_gevrey_L";
    if (sh.kv.count("K")) j["K"] = Index(std::stod(sh.kv.at("K")));
  } else {
    bad_spec("unknown sequence shorthand '" + sh.kind + "'");
  }
  return j;
}

Json weight_shorthand(const std::string& text) {
  const Shorthand sh = parse_shorthand(text);
  Json j;
  if (sh.kind == "gevrey_root" || sh.kind == "power_log") {
    j["kind"] = sh.kind;
    j["s"] = sh_num(sh, "s", 0, 0.0, true);
  } else if (sh.kind == "linear_cutoff") {
    j["kind"] = "linear_cutoff";
  } else {
    bad_spec("unknown weight shorthand '" + sh.kind + "'");
  }
  return j;
}

Json matrix_shorthand(const std::string& text) {
  Json j;
  if (text == "gevrey" || text.rfind("gevrey:", 0) == 0) {
    j["kind"] = "gevrey_matrix";
    Json grid = Json::array();
    if (text == "gevrey") {
      for (int i = 1; i <= 12; ++i) grid.push_back(0.25 * i);  // default s-grid
    } else {
      std::istringstream is(text.substr(7));
      std::string tok;
      while (std::getline(is, tok, ',')) grid.push_back(std::stod(tok));
    }
    j["sGrid"] = grid;
    return j;
  }
  if (text.rfind("omega:", 0) == 0) {
    const auto at = text.find('@');
    j["kind"] = "from_omega";
    Json grid = Json::array();
    if (at == std::string::npos) {
      j["weight"] = weight_shorthand(text.substr(6));
      for (int i = -3; i <= 6; ++i) grid.push_back(std::pow(2.0, i));  // default rho-grid
    } else {
      j["weight"] = weight_shorthand(text.substr(6, at - 6));
      std::istringstream is(text.substr(at + 1));
      std::string tok;
      while (std::getline(is, tok, ',')) grid.push_back(std::stod(tok));
    }
    j["rhoGrid"] = grid;
    return j;
  }
  bad_spec("unknown matrix shorthand '" + text + "'");
}

Json series_shorthand(const std::string& text, Index K) {
  Json j;
  Json coeffs = Json::array();
  if (text == "exp") {
    const TruncatedSeries s = series_exp(K);
    for (const auto& c : s.coeffs) {
      std::ostringstream os;
      os << c;
      coeffs.push_back(os.str());
    }
  } else if (text == "id") {
    const TruncatedSeries s = series_identity(K);
    for (const auto& c : s.coeffs) {
      std::ostringstream os;
      os << c;
      coeffs.push_back(os.str());
    }
  } else if (text.rfind("poly:", 0) == 0) {
    std::istringstream is(text.substr(5));
    std::string tok;
    while (std::getline(is, tok, ',')) coeffs.push_back(tok);
  } else {
    bad_spec("unknown series shorthand '" + text + "'");
  }
  j["coeffs"] = coeffs;
  j["K"] = K;
  return j;
}

WeightSeq parse_sequence_arg(const std::string& text, Index defaultK) {
  Json j = resolve_spec_text(text);
  if (j.is_null()) j = sequence_shorthand(text);
  return sequence_from_spec(j, defaultK);
}

WeightFunction parse_weight_arg(const std::string& text) {
  Json j = resolve_spec_text(text);
  if (j.is_null()) j = weight_shorthand(text);
  return weight_from_spec(j);
}

WeightMatrix parse_matrix_arg(const std::string& text, Index defaultK) {
  Json j = resolve_spec_text(text);
  if (j.is_null()) j = matrix_shorthand(text);
  return matrix_from_spec(j, defaultK);
}

TruncatedSeries parse_series_arg(const std::string& text, Index K) {
  Json j = resolve_spec_text(text);
  if (j.is_null()) j = series_shorthand(text, K);
  return series_from_spec(j, K);
}

}  // namespace uw
