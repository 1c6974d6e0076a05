#include "doctest.h"

#include "gmmtk/scenario.hpp"

using namespace gmm;

TEST_CASE("catalog registration") {
  auto& cat = register_scenarios();
  SUBCASE("all advertised names resolve") {
    for (const char* name :
         {"s1-rotation-s2", "hopf-s3", "torus-cp1", "diag-c2", "cp2-weights",
          "t2-product", "calabi-eckmann", "toric-c2-quotient",
          "hopf-coupling"}) {
      CAPTURE(name);
      CHECK(cat.contains(name));
      CHECK_NOTHROW(make_scenario(name));
    }
  }
  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(make_scenario("no-such-scenario"), Error);
  }
  SUBCASE("duplicate registration is rejected") {
    CHECK_THROWS_AS(
        cat.add("diag-c2", [](const Json&, const Tolerances&) {
          return Scenario{};
        }),
        Error);
  }
  SUBCASE("registration is idempotent") {
    CHECK_NOTHROW(register_scenarios());
    CHECK_NOTHROW(register_scenarios());
  }
}

TEST_CASE("scenario ground truth blocks") {
  SUBCASE("sphere: poles and the segment [-1, 1]") {
    auto sc = make_scenario("s1-rotation-s2");
    REQUIRE(sc.fixed_components.size() == 2);
    CHECK(sc.fixed_components[0].psi_value[0] == doctest::Approx(1.0));
    CHECK(sc.fixed_components[1].psi_value[0] == doctest::Approx(-1.0));
    CHECK(sc.compact);
    CHECK(sc.is_complex);
  }
  SUBCASE("cp2 weights parameterized") {
    auto params = Json::object();
    params["weights"] = {0.0, 1.0, 3.0};
    auto sc = make_scenario("cp2-weights", params);
    CHECK(sc.fixed_components.size() == 3);
    CHECK(sc.fixed_components[2].psi_value[0] == doctest::Approx(3.0));
  }
  SUBCASE("samplers stay on the manifold") {
    Rng rng(300);
    for (const char* name :
         {"s1-rotation-s2", "torus-cp1", "cp2-weights", "t2-product",
          "calabi-eckmann", "toric-c2-quotient"}) {
      CAPTURE(name);
      auto sc = make_scenario(name);
      for (const auto& sampler : sc.stratum_samplers)
        for (int i = 0; i < 10; ++i)
          CHECK(sc.manifold.residual(sampler(rng)) <=
                sc.manifold.tol().eps_mem);
    }
  }
  SUBCASE("tolerance overrides propagate") {
    Tolerances tol;
    tol.apply({{"eps_mem", 1e-8}});
    CHECK(tol.eps_mem == 1e-8);
    CHECK_THROWS_AS(tol.apply({{"bogus", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(tol.apply({{"eps_mem", -1.0}}), std::invalid_argument);
  }
}

TEST_CASE("deterministic sampling") {
  auto sc = make_scenario("cp2-weights");
  Rng a(7), b(7);
  for (int i = 0; i < 20; ++i) {
    Vec xa = sc.sample(a);
    Vec xb = sc.sample(b);
    CHECK((xa - xb).norm() == 0.0);  // bit identical
  }
}
