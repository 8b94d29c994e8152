#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tranche/curves.hpp"
#include "tranche/errors.hpp"
#include "tranche/sampling.hpp"

using namespace tranche;

TEST_SUITE("curves") {
  TEST_CASE("warsaw_f values") {
    CHECK(warsaw_f(1.0) == doctest::Approx(1.0));
    CHECK(warsaw_f(0.5) == doctest::Approx(0.25 * std::sin(2.0) + 0.5));
    const double left = 0.5 * ((1.0 - 0.7) * std::sin(1.0 / 0.7) + 1.0);
    CHECK(std::fabs(warsaw_f(0.7) - left) < 1e-12);
    CHECK(std::fabs(warsaw_f(0.7 - 1e-13) - warsaw_f(0.7 + 1e-13)) < 1e-11);
  }

  TEST_CASE("depth_f values") {
    CHECK(depth_f(1.0) == doctest::Approx(0.0));
    CHECK(depth_f(0.5) == doctest::Approx(0.625));
    CHECK(depth_f(0.5 - 1e-13) == doctest::Approx(1.25 - 1.25 * 0.5));
    CHECK(depth_f(0.4) == doctest::Approx(0.8));
  }

  TEST_CASE("extrema interleave") {
    const ExtremaTable& ex = depth_extrema(60);
    CHECK(ex.y(1) == 1.0);
    for (std::size_t n = 1; n <= 60; ++n) {
      CHECK(ex.y(n + 1) < ex.z(n));
      CHECK(ex.z(n) < ex.y(n));
    }
  }

  TEST_CASE("maxima are local maxima") {
    const ExtremaTable& ex = depth_extrema(40);
    for (std::size_t n = 1; n <= 40; ++n) {
      const double z = ex.z(n), h = 1e-3 * z * z;
      CHECK(depth_f(z) >= depth_f(z + h));
      CHECK(depth_f(z) >= depth_f(z - h));
      const double y = ex.y(n + 1);
      CHECK(depth_f(y) <= depth_f(y + h));
      CHECK(depth_f(y) <= depth_f(y - h));
    }
  }

  TEST_CASE("truncated maps") {
    const ExtremaTable& ex = depth_extrema(24);
    CHECK(truncated_f(ex, 5, 0.0) == 0.0);
    const double cut = ex.y(6);
    CHECK(truncated_f(ex, 5, cut) == doctest::Approx(depth_f(cut)).epsilon(1e-14));
    const Interval p03{ex.y(4), ex.z(3)};
    for (int k = 0; k <= 20; ++k) {
      const double t = p03.lo + p03.length() * k / 20.0;
      CHECK(truncated_f(ex, 5, t) == depth_f(t));
    }
    CHECK_THROWS_AS(truncated_f(ex, 5, 1.5), DomainError);
  }

  TEST_CASE("lap inversion") {
    const ExtremaTable& ex = depth_extrema(24);
    const Interval lap{ex.y(4), ex.z(3)};
    const Map1D f = depth_map();
    CHECK(lap_invert(f, lap, f(lap.mid())) == doctest::Approx(lap.mid()).epsilon(1e-12));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(f(lap.lo), f(lap.hi));
    double prev_v = -1.0, prev_t = -1.0;
    std::vector<double> vs(100);
    for (auto& v : vs) v = u(rng);
    std::sort(vs.begin(), vs.end());
    for (double v : vs) {
      const double t = lap_invert(f, lap, v);
      CHECK(std::fabs(f(t) - v) < 1e-10);
      if (prev_v >= 0.0) CHECK(t >= prev_t);
      prev_v = v;
      prev_t = t;
    }
    CHECK_THROWS_AS(lap_invert(f, lap, 2.0), RangeError);
  }

  TEST_CASE("adaptive sampling refines where the curve moves") {
    auto circle = [](double t, double* out) {
      out[0] = 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * t);
      out[1] = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * t);
    };
    SamplingOptions opt;
    opt.target = 1e-3;
    const SampledCurve c = sample_curve(circle, 2, 0.0, 1.0, opt);
    CHECK(c.fineness <= 1e-3);
    CHECK(std::is_sorted(c.params.begin(), c.params.end()));
    CHECK(c.coords.size() == c.params.size() * 2);
  }
}
