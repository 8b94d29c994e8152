#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tranche/errors.hpp"
#include "tranche/hilbert.hpp"

using namespace tranche;

TEST_SUITE("hilbert") {
  TEST_CASE("product metric on small points") {
    const HPoint x{0.3, 0.9, 0.1};
    CHECK(product_metric(x, x) == 0.0);
    CHECK(product_metric(HPoint{1.0}, HPoint{}) == doctest::Approx(0.5));
    CHECK(product_metric(HPoint{1.0, 1.0}, HPoint{0.0}) == doctest::Approx(0.75));
  }

  TEST_CASE("coordinates outside the unit interval are rejected") {
    CHECK_THROWS_AS(HPoint({1.5}), DomainError);
    CHECK_THROWS_AS(HPoint({-0.1, 0.2}), DomainError);
  }

  TEST_CASE("shift maps") {
    CHECK(right_shift(HPoint{1.0}).coords().size() == 2);
    CHECK(right_shift(HPoint{1.0})[0] == 0.0);
    CHECK(right_shift(HPoint{1.0})[1] == 1.0);
    const HPoint h = half_shift(HPoint{1.0, 1.0});
    CHECK(h[0] == 0.0);
    CHECK(h[1] == 0.5);
    CHECK(h[2] == 0.5);
    CHECK(product_metric(right_shift(HPoint{0.0, 0.0}), HPoint{}) == 0.0);
    const HPoint s = left_shift(HPoint{0.3, 0.7});
    CHECK(s[0] == 0.7);
    CHECK(s[1] == 0.0);
  }

  TEST_CASE("sigma is a left inverse of theta and theta halves distances") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> a(8), b(8);
      for (auto& v : a) v = u(rng);
      for (auto& v : b) v = u(rng);
      const HPoint x(a), y(b);
      CHECK(product_metric(left_shift(right_shift(x)), x) == 0.0);
      CHECK(product_metric(right_shift(x), right_shift(y)) == doctest::Approx(0.5 * oracle::metric(a, b)).epsilon(1e-14));
    }
  }

  TEST_CASE("cloud sigma is pointwise") {
    const Cloud c = Cloud::from_points("c", 0.01, {HPoint{0.1, 0.2, 0.3}, HPoint{0.4, 0.2, 0.3}});
    const Cloud s = left_shift(c);
    REQUIRE(s.size() == 2);
    CHECK(s.dim() == 2);
    CHECK(s[0][0] == 0.2);
    CHECK(s[1][1] == 0.3);
  }

  TEST_CASE("hausdorff basics") {
    const Cloud a = Cloud::from_points("a", 0.0, {HPoint{0.0}});
    const Cloud b = Cloud::from_points("b", 0.0, {HPoint{0.0}, HPoint{1.0}});
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, b) == doctest::Approx(0.5));
    CHECK(hausdorff(a, b) == oracle::hausdorff(a.with_dim(1), b.with_dim(1)));
  }

  TEST_CASE("fast path equals the pairwise oracle exactly") {
    std::mt19937_64 rng(99);
    for (std::size_t dim : {1u, 2u, 5u, 12u}) {
      for (int k = 0; k < 10; ++k) {
        const Cloud a = oracle::random_cloud(rng, 50, dim);
        const Cloud b = oracle::random_cloud(rng, 50, dim);
        CHECK(hausdorff(a, b, HausdorffMode::Fast) == oracle::hausdorff(a, b));
        CHECK(hausdorff(a, b, HausdorffMode::Brute) == oracle::hausdorff(a, b));
      }
    }
  }

  TEST_CASE("fast path on clouds with a common prefix") {
    // Shifted copies share their first coordinates.
    std::mt19937_64 rng(5);
    const Cloud base = oracle::random_cloud(rng, 400, 4);
    const Cloud a = right_shift(right_shift(base));
    const Cloud b = right_shift(right_shift(oracle::random_cloud(rng, 300, 4)));
    CHECK(hausdorff(a, b, HausdorffMode::Fast) == oracle::hausdorff(a, b));
  }

  TEST_CASE("empty clouds are rejected") {
    CHECK_THROWS_AS(Cloud("e", 0.0, 2, {}), DomainError);
  }

  TEST_CASE("json round trip is bit exact") {
    std::mt19937_64 rng(17);
    const Cloud c = oracle::random_cloud(rng, 30, 3).with_mesh(1.0 / 3.0);
    const Cloud back = cloud_from_json(cloud_to_json(c));
    CHECK(back.label() == c.label());
    CHECK(back.mesh() == c.mesh());
    CHECK(back.dim() == c.dim());
    CHECK(back.data() == c.data());
  }

  TEST_CASE("csv export has a header and one row per point") {
    const Cloud c = Cloud::from_points("c", 0.0, {HPoint{0.25, 0.5}, HPoint{1.0, 0.0}});
    const std::string csv = cloud_to_csv(c, {0, 1});
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  }
}
