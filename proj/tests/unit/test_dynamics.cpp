#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tranche/dynamics.hpp"
#include "tranche/errors.hpp"
#include "tranche/mahavier.hpp"

using namespace tranche;

namespace {

std::vector<double> coords(const HPoint& p) { return {p.coords().begin(), p.coords().end()}; }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("fixed point") {
    const auto orbit = sigma_orbit(HPoint(std::vector<double>(8, 0.0)), 5);
    REQUIRE(orbit.size() == 6);
    for (const auto& p : orbit) CHECK(product_metric(p, HPoint{}) == 0.0);
  }

  TEST_CASE("orbits stay admissible") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const HPoint x = random_admissible(s, 10);
      REQUIRE(oracle::admissible(coords(x)));
      for (const auto& p : sigma_orbit(x, 3)) CHECK(oracle::admissible(coords(p)));
    }
  }

  TEST_CASE("alternating orbit") {
    const HPoint x = realize_itinerary({0, 1, 0, 1, 0, 1}, 6);
    const auto orbit = sigma_orbit(x, 4);
    for (std::size_t i = 0; i < orbit.size(); ++i) CHECK(orbit[i][0] == static_cast<double>(i % 2));
  }

  TEST_CASE("inadmissible points are rejected") {
    CHECK_THROWS_AS(sigma_orbit(HPoint{0.3, 0.3}, 2), DomainError);
  }

  TEST_CASE("itineraries") {
    const HPoint x = realize_itinerary({0, 1, 0, 1}, 8);
    CHECK(x.dim() == 8);
    CHECK(x[1] == 1.0);
    CHECK(x[4] == 0.0);
    CHECK(oracle::admissible(coords(x)));
    CHECK(product_metric(realize_itinerary({0, 0, 0}, 6), HPoint{}) == 0.0);
    CHECK_THROWS_AS(realize_itinerary({0, 1, 0}, 2), DomainError);
  }

  TEST_CASE("distinct words are half separated") {
    const std::size_t n = 6;
    for (unsigned a = 0; a < (1u << n); a += 5)
      for (unsigned b = a + 1; b < (1u << n); b += 7) {
        std::vector<int> wa(n), wb(n);
        for (std::size_t i = 0; i < n; ++i) {
          wa[i] = (a >> i) & 1;
          wb[i] = (b >> i) & 1;
        }
        CHECK(bowen_distance(realize_itinerary(wa, 10), realize_itinerary(wb, 10), n) >= 0.5);
      }
  }

  TEST_CASE("entropy bound") {
    const EntropyReport r = entropy_lower_bound(8, 0.4, 512);
    CHECK(r.from_itineraries == 256);
    CHECK(r.bound >= std::log(2.0) - 0.05);
    CHECK(entropy_lower_bound(1, 2.0).bound == 0.0);
    double prev = INFINITY;
    for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
      const double b = entropy_lower_bound(5, eps, 1024).bound;
      CHECK(b <= prev);
      prev = b;
    }
  }

  TEST_CASE("entropy bound is reproducible") {
    CHECK(entropy_lower_bound(6, 0.2, 800, 3).separated == entropy_lower_bound(6, 0.2, 800, 3).separated);
  }

  TEST_CASE("exactness witnesses") {
    const Cloud x = build_Xhat(7, 2000);
    const ExactnessReport r = exactness_witness(fiber(x, 0.0, 0.0), x, 3);
    CHECK(r.found);
    CHECK(r.n == 1);

    const Cloud lower = build_Xhat(5, 2000);
    const Cloud u = prefixed_copy({0.5, 1.0}, lower);
    const ExactnessReport r2 = exactness_witness(u, x, 4);
    CHECK(r2.found);
    CHECK(r2.n == 2);

    const Cloud point = Cloud::from_points("p", x.mesh(), {random_admissible(5, 7)});
    const ExactnessReport r3 = exactness_witness(point, x, 5);
    CHECK_FALSE(r3.found);
    CHECK(r3.best > r3.threshold);
  }
}
