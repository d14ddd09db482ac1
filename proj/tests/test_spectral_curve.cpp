#include <random>
#include <sstream>

#include "doctest.h"
#include "finitegap/curve_io.hpp"
#include "finitegap/differentials.hpp"
#include "finitegap/spectral_curve.hpp"

using namespace finitegap;

TEST_CASE("clifford_curve data") {
  const CurveSpec c = clifford_curve();
  CHECK(c.u() == Complex{0.25, 0.25});
  REQUIRE(c.glue().size() == 2);
  CHECK(c.glue()[0].first == Complex{0.25, 0.25});
  CHECK(c.glue()[0].second == Complex{-0.25, 0.25});
  CHECK(c.glue()[1].first == Complex{-0.25, -0.25});
  CHECK(c.glue()[1].second == Complex{0.25, -0.25});
  for (const GluePair& g : c.glue()) {
    CHECK(g.second == -std::conj(g.first));
    CHECK(g.multiplicity == 1);
  }
  CHECK(c.k_minus(Complex{0.5, 0.0}) == Complex{-0.25, 0.0});
}

TEST_CASE("genus") {
  const Genus g = genus(clifford_curve());
  CHECK(g.geometric == 0);
  CHECK(g.arithmetic == 2);

  const Complex u{0.25, 0.25};
  CHECK(genus(CurveSpec(u, {})).arithmetic == 0);
  CHECK(genus(CurveSpec(u, {{1.0, 2.0, 1}})).arithmetic == 1);

  // Appending a disjoint simple pair increments p_a by one.
  std::vector<GluePair> glue = clifford_curve().glue();
  glue.push_back({3.0, 4.0, 1});
  CHECK(genus(CurveSpec(u, glue)).arithmetic == 3);
  glue.push_back({5.0, 6.0, 2});
  CHECK(genus(CurveSpec(u, glue)).arithmetic == 6);
}

TEST_CASE("curve validation") {
  const Complex u{0.25, 0.25};
  CHECK_THROWS_AS(CurveSpec(Complex{}, {}), CurveError);
  CHECK_THROWS_AS(CurveSpec(u, {{1.0, 1.0, 1}}), CurveError);
  CHECK_THROWS_AS(CurveSpec(u, {{0.0, 1.0, 1}}), CurveError);
  CHECK_THROWS_AS(CurveSpec(u, {{1e-10, 1.0, 1}}), CurveError);
  CHECK_THROWS_AS(CurveSpec(u, {{1.0, 2.0, 1}, {2.0, 3.0, 1}}), CurveError);
  CHECK_THROWS_AS(CurveSpec(u, {{1.0, 2.0, 0}}), CurveError);

  const CurveSpec doubled(u, {{1.0, 2.0, 2}});
  CHECK_THROWS_WITH_AS(doubled.require_simple(), "unsupported multiplicity", CurveError);
}

TEST_CASE("involutions") {
  const Complex u{0.25, 0.25};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int k = 0; k < 1000; ++k) {
    const Complex l{d(rng), d(rng)};
    if (std::abs(l) < 1e-6) continue;
    CHECK(std::abs(sigma(sigma(l)) - l) <= 1e-14 * std::abs(l));
    CHECK(std::abs(tau(tau(l, u), u) - l) <= 1e-14 * std::abs(l));
  }
  const double r = 1.0 / std::sqrt(8.0);
  CHECK(std::abs(tau(r, u) - r) < 1e-16);
  CHECK(std::abs(tau(u, u) - u) < 1e-16);
  CHECK_THROWS_AS(tau(Complex{}, u), CurveError);
}

TEST_CASE("permutes_glue") {
  const CurveSpec c = clifford_curve();
  CHECK(permutes_glue(c, Involution::Sigma));
  CHECK(permutes_glue(c, Involution::Tau));
  const CurveSpec single(Complex{0.25, 0.25}, {{1.0, 2.0, 1}});
  CHECK_FALSE(permutes_glue(single, Involution::Sigma));
  const CurveSpec symmetric(Complex{0.25, 0.25}, {{1.0, -1.0, 1}});
  CHECK(permutes_glue(symmetric, Involution::Sigma));
}

TEST_CASE("glue supports avoid marked points and poles") {
  const CurveSpec c = clifford_curve();
  const PoleDivisor poles = pole_divisor(c.u());
  for (const GluePair& g : c.glue())
    for (Complex q : {g.first, g.second}) {
      CHECK(std::abs(q) > 1e-3);
      for (Complex p : poles.points) CHECK(std::abs(q - p) > 1e-3);
    }
}

TEST_CASE("curve spec JSON") {
  const CurveSpec c = parse_curve_spec(curve_spec_to_json(clifford_curve()));
  CHECK(c.u() == clifford_curve().u());
  REQUIRE(c.glue().size() == 2);
  CHECK(c.glue()[1].second == clifford_curve().glue()[1].second);

  const CurveSpec m = parse_curve_spec(R"({"u": [0.25, 0.25], "glue": [[[1, 0], [2, 0], 2]]})");
  CHECK(m.glue()[0].multiplicity == 2);
  CHECK(parse_curve_spec(R"({"u": [1, 0]})").glue().empty());

  CHECK_THROWS_AS(parse_curve_spec("{not json"), ParseError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"glue": []})"), ParseError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"u": [1]})"), ParseError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"u": [1, 0], "glue": [[[1, 0]]]})"), ParseError);
  CHECK_THROWS_AS(parse_curve_spec(R"({"u": [1, 0], "glue": [[[1, 0], [1, 0]]]})"), ParseError);
  CHECK_THROWS_AS(load_curve_spec("/nonexistent/curve.json"), ParseError);

  std::istringstream in(R"({"u": [0.25, 0.25], "glue": []})");
  CHECK(read_curve_spec(in).u() == Complex{0.25, 0.25});
}
