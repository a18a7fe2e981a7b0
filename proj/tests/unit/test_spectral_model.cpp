#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kdvgas/errors.hpp"
#include "kdvgas/spectral_model.hpp"

using namespace kdvgas;

TEST_CASE("GasSpectrum validation") {
  const GasSpectrum sp(0.5, 1.5);
  CHECK(sp.modulus() == doctest::Approx(1.0 / 3.0));
  CHECK(sp.width() == 1.0);
  CHECK_THROWS_AS(GasSpectrum(1.5, 0.5), DomainError);
  CHECK_THROWS_AS(GasSpectrum(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(GasSpectrum(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(GasSpectrum(std::nan(""), 1.0), DomainError);
}

TEST_CASE("reflection coefficient kinds") {
  const GasSpectrum sp(0.5, 1.5);
  const auto c = ReflectionCoefficient::constant(sp, 2.0);
  CHECK(c.r1(1.0) == 2.0);
  CHECK(c.r(1.0) == 4.0);
  CHECK(c.log_r(0.7) == doctest::Approx(std::log(4.0)));

  const auto p = ReflectionCoefficient::polynomial(sp, {1.0, 0.5});
  CHECK(p.r1(1.2) == doctest::Approx(1.0 + 0.5 * 1.44));

  std::vector<double> z, v;
  for (int i = 0; i <= 10; ++i) {
    z.push_back(0.5 + 0.1 * i);
    v.push_back(1.0 + z.back());
  }
  const auto t = ReflectionCoefficient::tabulated(sp, z, v);
  CHECK(t.r1(0.5) == doctest::Approx(1.5));
  CHECK(t.r1(1.05) == doctest::Approx(2.05).epsilon(1e-10));

  const auto f = ReflectionCoefficient::function(sp, [](double s) { return s; });
  CHECK(f.r(1.25) == 2.5);
  CHECK(f.kind() == ReflectionCoefficient::Kind::function);
}

TEST_CASE("reflection coefficient rejection") {
  const GasSpectrum sp(0.5, 1.5);
  CHECK_THROWS_AS(ReflectionCoefficient::constant(sp, -1.0), PositivityError);
  CHECK_THROWS_AS(ReflectionCoefficient::polynomial(sp, {1.0, -1.0}), PositivityError);
  CHECK_THROWS_AS(ReflectionCoefficient::function(sp, [](double s) { return s - 1.0; }),
                  PositivityError);
  CHECK_THROWS_AS(ReflectionCoefficient::tabulated(sp, {0.6, 0.8, 1.0, 1.5}, {1, 1, 1, 1}),
                  DomainError);
  CHECK_THROWS_AS(ReflectionCoefficient::tabulated(sp, {0.5, 1.0, 1.5}, {1, 1, 1}), DomainError);

  const auto zero = ReflectionCoefficient::constant(sp, 0.0);
  CHECK(zero.is_zero());
  CHECK(zero.r(1.0) == 0.0);
  CHECK_THROWS_AS(zero.log_r(1.0), QuadratureError);
}

TEST_CASE("sample_poles uniform") {
  const GasSpectrum sp(0.5, 1.5);
  const auto one = sample_poles(1, sp);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 1.5);
  const auto four = sample_poles(4, sp);
  const double expect[] = {0.75, 1.0, 1.25, 1.5};
  for (int j = 0; j < 4; ++j) CHECK(four[j] == doctest::Approx(expect[j]).epsilon(1e-14));
  CHECK_THROWS_AS(sample_poles(0, sp), DomainError);
}

TEST_CASE("sample_poles with a triangular density matches bisection quantiles") {
  const GasSpectrum sp(0.5, 1.5);
  // rho(s) = 2 (s - eta1), mass 1 on (0.5, 1.5)
  const Density tri = [](double s) { return 2.0 * (s - 0.5); };
  const auto poles = sample_poles(100, sp, tri);
  REQUIRE(poles.size() == 100);
  for (int j = 1; j <= 100; ++j) {
    const double target = double(j) / 100.0;
    double lo = 0.5, hi = 1.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((mid - 0.5) * (mid - 0.5) < target ? lo : hi) = mid;
    }
    CHECK(std::abs(poles[j - 1] - 0.5 * (lo + hi)) < 1e-12);
    if (j > 1) CHECK(poles[j - 1] > poles[j - 2]);
  }
}

TEST_CASE("sample_poles rejects bad densities") {
  const GasSpectrum sp(0.5, 1.5);
  CHECK_THROWS_AS(sample_poles(10, sp, Density([](double) { return 2.0; })), DensityError);
  CHECK_THROWS_AS(sample_poles(10, sp, Density([](double s) { return 4.0 * (s - 1.0); })),
                  DensityError);
}

TEST_CASE("norming constants") {
  const GasSpectrum sp(0.5, 1.5);
  const auto r = ReflectionCoefficient::constant(sp, 1.0);
  const auto poles = sample_poles(10, sp);
  for (double c : norming_constants(poles, r, 10, sp)) {
    CHECK(c == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  }
  // r(zeta) = 2 zeta, i.e. r1 = zeta
  const auto lin = ReflectionCoefficient::function(sp, [](double s) { return s; });
  const auto p4 = sample_poles(4, sp);
  const auto c4 = norming_constants(p4, lin, 4, sp);
  for (int j = 0; j < 4; ++j) CHECK(c4[j] == doctest::Approx(p4[j] / std::numbers::pi));

  const auto zero = ReflectionCoefficient::constant(sp, 0.0);
  CHECK_THROWS_AS(norming_constants(poles, zero, 10, sp), PositivityError);
  CHECK_THROWS_AS(norming_constants(poles, r, 9, sp), DomainError);
}

TEST_CASE("ensemble invariants") {
  const GasSpectrum sp(0.5, 1.5);
  const auto e = make_ensemble(50, sp, ReflectionCoefficient::constant(sp, 1.0));
  CHECK(e.size() == 50);
  CHECK_NOTHROW(e.validate(sp));
  SolitonEnsemble bad = e;
  bad.kappa[3] = 0.4;
  CHECK_THROWS_AS(bad.validate(sp), DomainError);
  bad = e;
  bad.c_tilde[0] = 0.0;
  CHECK_THROWS_AS(bad.validate(sp), DomainError);
}

TEST_CASE("json round trip") {
  const GasSpectrum sp = spectrum_from_json({{"eta1", 0.4}, {"eta2", 1.1}});
  CHECK(sp.eta1 == 0.4);
  CHECK(spectrum_to_json(sp)["eta2"] == 1.1);
  CHECK_THROWS_AS(spectrum_from_json({{"eta1", 2.0}, {"eta2", 1.0}}), ConfigError);
  CHECK_THROWS_AS(spectrum_from_json({{"eta1", "a"}, {"eta2", 1.0}}), ConfigError);
  CHECK_THROWS_AS(spectrum_from_json(nlohmann::json::array()), ConfigError);

  const auto p = ReflectionCoefficient::polynomial(sp, {1.0, 2.0});
  const auto back = reflection_from_json(p.to_json(), sp);
  CHECK(back.r1(0.9) == doctest::Approx(p.r1(0.9)));
  CHECK_THROWS_AS(reflection_from_json({{"kind", "spline"}}, sp), ConfigError);
  CHECK_THROWS_AS(reflection_from_json({{"kind", "constant"}}, sp), ConfigError);
  CHECK_THROWS_AS(reflection_from_json({{"kind", "constant"}, {"r1", -1.0}}, sp), PositivityError);
}
