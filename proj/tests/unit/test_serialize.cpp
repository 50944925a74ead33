#include <doctest.h>

#include "classicality/serialize.hpp"

using namespace classicality;

TEST_CASE("indicator JSON carries exact values and provenance") {
  const auto pi = KernelSpectrum<Rational>::create({1, 1, -1});
  const auto j = to_json(indicator(3, DegeneracyType({2, 1}), pi, {Method::LA}));
  CHECK(j["n"] == 3);
  CHECK(j["stratum"]["blocks"] == Json::array({2, 1}));
  CHECK(j["spectrum"] == Json::array({"1", "1", "-1"}));
  CHECK(j["value"]["exact"] == "1/32");
  CHECK(j["value"]["decimal"] == "0.03125");
  CHECK(j["denominator"]["exact"] == "11/160");
  CHECK(j["method"] == "la");
  CHECK(j["provenance"]["arithmetic"] == "rational");
  CHECK(j["provenance"]["seed"].is_null());
  CHECK(j["provenance"]["tolerances"].contains("real_sign"));
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("Monte Carlo provenance records the seed") {
  const auto pi = KernelSpectrum<Rational>::create({1, 1, -1});
  IndicatorOptions mc;
  mc.method = Method::MonteCarlo;
  mc.mc_samples = 1000;
  mc.seed = 99;
  const auto j = to_json(indicator(3, DegeneracyType({1, 1, 1}), pi, mc));
  CHECK(j["provenance"]["seed"] == 99);
  CHECK(j["provenance"]["samples"] == 1000);
  CHECK(j["stderr"].is_number());
}

TEST_CASE("hierarchy, polytope and polynomial JSON") {
  const auto pi = KernelSpectrum<Rational>::create({1, 1, -1});
  const auto h = to_json(hierarchy_check(3, pi));
  CHECK(h["conjecture_holds"] == true);
  CHECK(h["entries"].size() == 3);
  CHECK(h["violations"].empty());

  const auto p = to_json(positivity_polytope(pi, DegeneracyType({1, 1, 1})));
  CHECK(p["dim"] == 2);
  CHECK(p["vertices"].size() == 3);
  CHECK(p["tags"].size() == 3);

  const auto poly = to_json(SparsePolynomial<Rational>::monomial({2, 1}, Rational(3, 4)));
  CHECK(poly["terms"][0][0] == Json::array({2, 1}));
  CHECK(poly["terms"][0][1] == "3/4");
}
