#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tranche/curves.hpp"
#include "tranche/errors.hpp"
#include "tranche/mahavier.hpp"
#include "tranche/tent.hpp"

using namespace tranche;

namespace {

bool contains(const Cloud& c, const std::vector<double>& p, double tol = 1e-12) {
  const Cloud q("q", 0.0, c.dim(), [&] {
    std::vector<double> v(c.dim(), 0.0);
    std::copy_n(p.begin(), std::min(p.size(), v.size()), v.begin());
    return v;
  }());
  return nearest_distance(q[0], c) <= tol;
}

}  // namespace

TEST_SUITE("mahavier") {
  TEST_CASE("A_0 and A_1 members") {
    const Cloud a0 = build_A_n(0, 4000);
    CHECK(contains(a0, {1.0}));
    CHECK(contains(a0, {0.0}));
    const Cloud a1 = build_A_n(1, 4000);
    CHECK(warsaw_f(1.0) == doctest::Approx(1.0));
    CHECK(contains(a1, {1.0, 1.0}, 1e-9));
  }

  TEST_CASE("projection of A_{n+1} is A_n") {
    const Cloud a1 = build_A_n(1, 4000);
    const Cloud a2 = build_A_n(2, 4000);
    CHECK(hausdorff(a2.with_dim(2), a1) <= a1.mesh());
  }

  TEST_CASE("successive A_n are close") {
    for (std::size_t n = 0; n < 4; ++n) {
      const Cloud a = build_A_n(n, 4000), b = build_A_n(n + 1, 4000);
      CHECK(hausdorff(a, b) <= std::ldexp(1.0, -static_cast<int>(n + 2)) + std::max(a.mesh(), b.mesh()));
    }
  }

  TEST_CASE("A contains 0 and theta(A) within the mesh") {
    const Cloud a = build_A(6, 4000);
    CHECK(contains(a, {}));
    const Cloud shifted = right_shift(a).with_dim(a.dim());
    CHECK(directed_hausdorff(shifted, a) <= a.mesh() + 1.0 / 128.0);
  }

  TEST_CASE("X_n samples are admissible") {
    const Cloud x = build_X_n(4, 2000);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto p = oracle::row(x, i);
      REQUIRE(oracle::admissible(p, 1e-7));
    }
    CHECK(contains(x, {}));
  }

  TEST_CASE("vertical segments make any successor admissible") {
    const std::vector<double> a{0.0, 0.37, tent::value(0.37)};
    CHECK(admissible(a));
    const std::vector<double> b{1.0, 0.2};
    CHECK(admissible(b));
    const std::vector<double> bad{0.3, 0.3};
    CHECK_FALSE(admissible(bad));
  }

  TEST_CASE("X_0 is the base interval") {
    const Cloud x0 = build_X_n(0, 512);
    CHECK(x0.dim() == 1);
    CHECK(contains(x0, {0.5}, 1e-2));
  }

  TEST_CASE("consecutive truncations are close") {
    for (std::size_t D : {3u, 5u}) {
      const Cloud a = build_Xhat(D, 2000), b = build_Xhat(D + 1, 2000);
      CHECK(hausdorff(a, b.with_dim(a.dim())) <= std::ldexp(1.0, -static_cast<int>(D + 1)) + a.mesh() + 1e-12);
    }
  }

  TEST_CASE("fiber over zero is a shifted copy") {
    const Cloud x = build_Xhat(6, 2000);
    const Cloud f = fiber(x, 0.0, 0.0);
    const Cloud lower = build_Xhat(5, 2000);
    CHECK(hausdorff(f, right_shift(lower)) <= x.mesh());
    CHECK(hausdorff(left_shift(f), lower) <= 2.0 * x.mesh());
  }

  TEST_CASE("fiber of A over 0 is theta(A)") {
    const Cloud a = build_A(5, 4000);
    const Cloud f = fiber(a, 0.0, 0.0);
    CHECK(hausdorff(f, right_shift(build_A(4, 4000))) <= a.mesh());
  }

  TEST_CASE("empty fiber") {
    const Cloud x = build_X_n(0, 64);
    CHECK_THROWS_AS(fiber(x, 0.123456, 1e-9), DomainError);
  }

  TEST_CASE("tranche bases") {
    const auto b1 = tranche_bases_exact(1);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == Rational(0));
    CHECK(b1[1] == Rational(1));
    const auto b2 = tranche_bases_exact(2);
    const Rational a0(1, 4), a1(3, 4), m(1, 2);
    CHECK(std::find(b2.begin(), b2.end(), a0) != b2.end());
    CHECK(std::find(b2.begin(), b2.end(), a1) != b2.end());
    CHECK(std::find(b2.begin(), b2.end(), m) != b2.end());
    CHECK(std::is_sorted(b2.begin(), b2.end()));
  }

  TEST_CASE("gap law") {
    Rational expect(1);
    for (std::size_t level = 1; level <= 5; ++level) {
      CHECK(longest_tranche_gap(level).longest == expect);
      expect = expect * Rational(1, 4);
    }
  }

  TEST_CASE("fibers off the bases are points") {
    // Constant first coordinate away from every base determines the whole tuple.
    const Cloud x = build_X_n(3, 2000);
    const auto bases = tranche_bases(3);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < x.size() && checked < 50; i += 7) {
      const double y = x[i][0];
      const bool near_base = std::any_of(bases.begin(), bases.end(), [&](double b) { return std::fabs(b - y) < 1e-9; });
      bool hits = false;  // chains through 0 or 1 finer than the base floor
      for (std::size_t k = 0; k < 3; ++k) hits = hits || x[i][k] == 0.0 || x[i][k] == 1.0;
      if (near_base || hits) continue;
      const Cloud f = fiber(x, y, 0.0);
      CHECK(diameter(f) < 1e-9);
      ++checked;
    }
    CHECK(checked > 10);
  }
}
