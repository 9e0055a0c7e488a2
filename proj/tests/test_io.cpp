#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>
#include <sstream>

#include "qw1d/errors.hpp"
#include "qw1d/io.hpp"
#include "support/generators.hpp"

using namespace qw1d;
using qw1d::testing::Rng;

TEST_CASE("parse_complex accepts the usual shapes") {
  REQUIRE(parse_complex("1") == Complex(1.0, 0.0));
  REQUIRE(parse_complex("-2.5e-3") == Complex(-2.5e-3, 0.0));
  REQUIRE(parse_complex("i") == Complex(0.0, 1.0));
  REQUIRE(parse_complex("-i") == Complex(0.0, -1.0));
  REQUIRE(parse_complex("2i") == Complex(0.0, 2.0));
  REQUIRE(parse_complex("1+2i") == Complex(1.0, 2.0));
  REQUIRE(parse_complex("0.5-0.25i") == Complex(0.5, -0.25));
  REQUIRE(parse_complex(" 1e2 + 3e-1i ") == Complex(100.0, 0.3));
  REQUIRE_THROWS_AS(parse_complex("banana"), ParseError);
  REQUIRE_THROWS_AS(parse_complex(""), ParseError);
}

TEST_CASE("spec round-trips exactly through JSON") {
  Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    WalkSpec spec = qw1d::testing::random_spec_any(rng, 0.0, 1.0);
    LoadedSpec back = parse_spec_text(spec_to_json(spec));
    auto same = [](const CoeffSite& x, const CoeffSite& y) {
      return x.r() == y.r() && x.a().value() == y.a().value() &&
             x.b().value() == y.b().value() && x.c().value() == y.c().value() &&
             x.d().value() == y.d().value();
    };
    REQUIRE(same(spec.left_tail(), back.spec.left_tail()));
    REQUIRE(same(spec.right_tail(), back.spec.right_tail()));
    REQUIRE(spec.exceptions().size() == back.spec.exceptions().size());
    for (const auto& [n, site] : spec.exceptions()) {
      REQUIRE(same(site, back.spec.exceptions().at(n)));
    }
  }
}

TEST_CASE("vector-form sites convert through coeffs_from_vectors") {
  const double h = 1.0 / std::sqrt(2.0);
  std::ostringstream doc;
  doc << "{\"left_tail\":{\"xi_right\":[[1,0],[0,0]],\"xi_left\":[[0,0],[1,0]],"
      << "\"zeta_to_left\":[[" << h << ",0],[" << h << ",0]],"
      << "\"zeta_to_right\":[[" << h << ",0],[" << -h << ",0]]},"
      << "\"right_tail\":{\"r\":" << h << ",\"a\":0,\"b\":0,\"c\":0,\"d\":"
      << pi << "}}";
  LoadedSpec loaded = parse_spec_text(doc.str());
  REQUIRE(loaded.spec.left_tail().r() == Catch::Approx(h).margin(1e-15));
  REQUIRE(phase_distance(loaded.spec.left_tail().d().value(), pi) < 1e-12);
}

TEST_CASE("constraint violations surface as ValidationError") {
  std::string doc =
      "{\"left_tail\":{\"r\":0.5,\"a\":0.3,\"b\":0,\"c\":0,\"d\":0},"
      "\"right_tail\":{\"r\":0.5,\"a\":0,\"b\":0,\"c\":0,\"d\":3.14159265358979}}";
  try {
    parse_spec_text(doc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(std::string(e.what()).find("phase constraint") !=
            std::string::npos);
  }
}

TEST_CASE("malformed documents surface as ParseError") {
  REQUIRE_THROWS_AS(parse_spec_text("{"), ParseError);
  REQUIRE_THROWS_AS(parse_spec_text("{\"left_tail\":{}}"), ParseError);
  REQUIRE_THROWS_AS(
      parse_spec_text("{\"left_tail\":{\"r\":1,\"a\":0,\"b\":0,\"c\":0,\"d\":0},"
                      "\"right_tail\":{\"r\":1,\"a\":0,\"b\":0,\"c\":0,\"d\":0},"
                      "\"exceptions\":{\"x\":{}}}"),
      ParseError);
}

TEST_CASE("fmt17 round-trips doubles") {
  Rng rng(89);
  for (int trial = 0; trial < 200; ++trial) {
    double x = qw1d::testing::uniform(rng, -1e3, 1e3);
    REQUIRE(std::stod(fmt17(x)) == x);
  }
}

TEST_CASE("distribution CSV layout") {
  std::vector<Distribution> steps(2);
  steps[0][0] = 1.0;
  steps[1][-1] = 0.5;
  steps[1][1] = 0.5;
  std::ostringstream out;
  write_distribution_csv(out, steps);
  REQUIRE(out.str() ==
          "t,site,probability\n0,0,1\n1,-1,0.5\n1,1,0.5\n");
}

TEST_CASE("canonical and witness JSON have the documented keys") {
  CanonicalForm form = CanonicalTwoPhaseDefect{0.6, 0.7, 0.5, Phase(0.2),
                                               Phase(0.4), Phase(1.1)};
  auto doc = nlohmann::json::parse(canonical_to_json(form));
  REQUIRE(doc["class"] == "TwoPhaseDefect");
  REQUIRE(doc["params"]["r_plus"] == 0.6);
  REQUIRE(doc["params"]["mu3"] == 1.1);

  CanonicalState st{0.5, Phase(0.25)};
  auto doc2 = nlohmann::json::parse(canonical_to_json(form, st));
  REQUIRE(doc2["state"]["alpha"] == 0.5);

  EquivalenceWitness w;
  w.half_width = 2;
  w.lambda = pi;
  w.u = {0, 1, 2, 3, 4};
  w.v = {4, 3, 2, 1, 0};
  auto doc3 = nlohmann::json::parse(witness_to_json(w));
  REQUIRE(doc3["lambda"] == pi);
  REQUIRE(doc3["u"]["-2"] == 0.0);
  REQUIRE(doc3["v"]["2"] == 0.0);
}
