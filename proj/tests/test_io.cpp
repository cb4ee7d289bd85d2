#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ultraweight/report.hpp"
#include "ultraweight/spec_io.hpp"

using namespace uw;

TEST_CASE("sequence specs round-trip") {
  const Json g = Json{{"kind", "gevrey"}, {"s", 1.0}, {"K", 20}};
  const WeightSeq G = sequence_from_spec(g, 200);
  CHECK(G.kmax() == 20);
  CHECK(G.logM[3] == doctest::Approx(std::log(6.0)));

  // emitted table spec re-parses to the identical object
  const Json table = sequence_spec(G);
  const WeightSeq back = sequence_from_spec(table, 200);
  CHECK((back.logM == G.logM).all());
  CHECK(back.label == G.label);

  const Json ex = Json{{"kind", "example36"}, {"r", 4.0}, {"K", 60}, {"logbase", "e"}};
  CHECK(std::exp(sequence_from_spec(ex, 200).logM[3]) == doctest::Approx(64.0 / 6.0));

  const Json scaled = Json{{"kind", "scaled"}, {"base", g}, {"rho", 2.0}};
  const WeightSeq S = sequence_from_spec(scaled, 200);
  CHECK(S.logM[2] == doctest::Approx(std::log(2.0) + 2.0 * std::log(2.0)));

  const Json mu = Json{{"kind", "mu_table"}, {"logmu", Json::array({0.0, 0.0, 0.0})}};
  CHECK(std::exp(sequence_from_spec(mu, 200).logM[3]) == doctest::Approx(1.0 / 6.0));

  CHECK_THROWS_AS(sequence_from_spec(Json{{"kind", "nope"}}, 200), std::invalid_argument);
}

TEST_CASE("shorthand forms") {
  CHECK(parse_sequence_arg("gevrey:1", 30).logM[2] == doctest::Approx(std::log(2.0)));
  CHECK(parse_sequence_arg("gevrey:s=2", 30).logM[2] == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(parse_sequence_arg("example36:r=4", 100).label == "M(4)");
  CHECK(parse_sequence_arg("log_gevrey_L", 100).label == "L");
  CHECK(parse_weight_arg("linear_cutoff").label == "linear_cutoff");
  CHECK(parse_weight_arg("gevrey_root:1").s == 1.0);
  CHECK(parse_weight_arg("power_log:2").s == 2.0);
  CHECK_THROWS_AS(parse_sequence_arg("unknown:1", 30), std::invalid_argument);

  const WeightMatrix G = parse_matrix_arg("gevrey:0.5,1,2", 40);
  CHECK(G.size() == 3);
  CHECK(G.lambdas[2] == 2.0);
  const WeightMatrix W = parse_matrix_arg("omega:linear_cutoff@1,2,4", 40);
  CHECK(W.size() == 3);

  const TruncatedSeries e = parse_series_arg("exp", 6);
  CHECK(e.coeffs[3] == Rational(1, 6));
  const TruncatedSeries p = parse_series_arg("poly:0,1,1/2", 6);
  CHECK(p.coeffs[2] == Rational(1, 2));
  CHECK(p.coeffs[6] == Rational(0));
  const TruncatedSeries inlined =
      parse_series_arg(R"({"coeffs": ["1", "0.5", "-2/3"], "K": 4})", 4);
  CHECK(inlined.coeffs[2] == Rational(-2, 3));
}

TEST_CASE("weight spec round trip") {
  const WeightFunction w = parse_weight_arg("gevrey_root:1.5");
  const Json j = weight_spec(w);
  const WeightFunction back = weight_from_spec(j);
  CHECK(back.kind == w.kind);
  CHECK(back.s == w.s);
}

TEST_CASE("report json shape and determinism") {
  ConditionVerdict v;
  v.condition = "lc";
  v.window = Window{0, 10, ""};
  v.status = Status::HoldsOnWindow;
  v.witness["C"] = 2.0;
  v.diagnostics = {{1.0, 0.5}, {2.0, 0.25}};

  Report r;
  r.manifest.command = "seq check --spec gevrey:1";
  r.manifest.parameters["K"] = 10;
  r.manifest.generated_at = "STAMP";
  r.verdicts.push_back(to_json(v, "check:lc"));

  const Json j1 = to_json(r);
  CHECK(j1.at("manifest").at("toolVersion") == "ultraweight 1.0.0");
  CHECK(j1.at("verdicts")[0].at("status") == "holds-on-window");
  CHECK(j1.at("verdicts")[0].at("check_id") == "check:lc");

  // identical content renders to identical bytes apart from the stamp
  Report r2 = r;
  r2.manifest.generated_at = "STAMP2";
  Json j2 = to_json(r2);
  j2["manifest"]["generated_at"] = "STAMP";
  CHECK(j1.dump(2) == j2.dump(2));
}

TEST_CASE("csv emission formats") {
  std::ostringstream os;
  write_diag_csv(os, {{1.0, 2.5}, {2.0, 3.5}});
  CHECK(os.str() == "k,value\n1,2.5\n2,3.5\n");

  std::ostringstream os2;
  const WeightSeq g = make_gevrey(1.0, 4);
  const HullResult h = lc_minorant(g, HullFlavor::Weak);
  write_hull_csv(os2, g, h);
  CHECK(os2.str().rfind("k,logkfMk,logkfMbc,is_vertex\n", 0) == 0);
  CHECK(os2.str().find("\n0,0,0,1\n") != std::string::npos);

  std::ostringstream os3;
  ArrayXd tg(2);
  tg << 1.0, 2.0;
  write_conjugate_csv(os3, young_conjugate_auto(make_linear_cutoff(), tg));
  CHECK(os3.str().rfind("t,phistar,argmax,truncated\n", 0) == 0);
}
