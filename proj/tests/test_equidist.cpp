#include <cmath>
#include <numbers>

#include "doctest.h"

#include "eas/charsums.hpp"
#include "eas/equidist.hpp"

using namespace eas::equidist;
using eas::ValidationError;
using eas::gf::Field;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("equidist: Sato-Tate closed forms and quadrature agree") {
  CHECK(sato_tate_expectation(FuncSpec::one()) == 1.0);
  CHECK(sato_tate_expectation(FuncSpec::cos_multiple(2)) == -0.5);
  for (int n : {1, 3, 4, 5, 6}) CHECK(sato_tate_expectation(FuncSpec::cos_multiple(n)) == 0.0);
  CHECK(sato_tate_expectation(FuncSpec::cos_power(2)) == Approx(0.25));
  for (int m : {1, 2, 3}) CHECK(sato_tate_expectation(FuncSpec::cos_power(2 * m + 1)) == 0.0);

  // Independent quadrature route for the closed forms.
  for (int n = 0; n <= 8; ++n) {
    const double quad = sato_tate_expectation(
        FuncSpec::custom([n](double t) { return std::pow(std::cos(t), n); }));
    CHECK(quad == Approx(sato_tate_expectation(FuncSpec::cos_power(n))).epsilon(1e-9));
  }

  // Indicator: mass of [0, pi] is 1 and halves add up.
  CHECK(sato_tate_expectation(FuncSpec::indicator(0.0, kPi)) == Approx(1.0));
  const double left = sato_tate_expectation(FuncSpec::indicator(0.0, kPi / 2));
  const double right = sato_tate_expectation(FuncSpec::indicator(kPi / 2, kPi));
  CHECK(left + right == Approx(1.0).epsilon(1e-12));
  CHECK(left == Approx(0.5).epsilon(1e-12));  // the density is symmetric

  CHECK_THROWS_AS(FuncSpec::cos_power(-1), ValidationError);
}

TEST_CASE("equidist: Sato-Tate CDF properties") {
  CHECK(sato_tate_cdf(0.0) == Approx(0.0));
  CHECK(sato_tate_cdf(kPi) == Approx(1.0));
  double prev = -1.0;
  for (int g = 0; g <= 1000; ++g) {
    const double theta = kPi * g / 1000.0;
    const double v = sato_tate_cdf(theta);
    CHECK(v >= prev - 1e-15);  // monotone
    prev = v;
  }
  // Derivative matches the density (2/pi) sin^2 via central differences.
  for (double theta : {0.3, 1.0, 2.0, 2.8}) {
    const double h = 1e-6;
    const double deriv = (sato_tate_cdf(theta + h) - sato_tate_cdf(theta - h)) / (2 * h);
    CHECK(deriv == Approx(2.0 / kPi * std::sin(theta) * std::sin(theta)).epsilon(1e-6));
  }
}

TEST_CASE("equidist: empirical expectations and the moment bridge") {
  for (const std::int64_t q : {7, 9, 13, 121, 499}) {
    const Field& f = Field::of(q);
    const auto sample = angle_sample(f);
    REQUIRE(sample.angles.size() == static_cast<std::size_t>(q - 1));
    for (const double t : sample.angles) {
      CHECK(t >= 0.0);
      CHECK(t <= kPi);
    }
    CHECK(empirical_expectation(sample, FuncSpec::one()) == Approx(1.0).epsilon(1e-12));

    // 2^l q^{l/2} (q-1) E_K[cos^l] = M_{q,l}, l <= 10.
    const auto table = eas::charsums::moments(f, 10);
    for (int ell = 1; ell <= 10; ++ell) {
      const double lhs = std::pow(2.0, ell) *
                         std::pow(static_cast<double>(q), ell / 2.0) *
                         static_cast<double>(q - 1) *
                         empirical_expectation(sample, FuncSpec::cos_power(ell));
      const double rhs = static_cast<double>(table.raw[ell - 1]);
      CHECK(lhs == Approx(rhs).epsilon(1e-8));
    }

    // E_K[cos theta] = M_1 / (2 sqrt(q) (q-1)) = 1 / (2 sqrt(q) (q-1)).
    CHECK(empirical_expectation(sample, FuncSpec::cos_power(1)) ==
          Approx(1.0 / (2.0 * std::sqrt(static_cast<double>(q)) * (q - 1)))
              .epsilon(1e-9));
    // E_K[cos^2] = (q^2 - q - 1) / (4 q (q - 1)).
    CHECK(empirical_expectation(sample, FuncSpec::cos_power(2)) ==
          Approx(static_cast<double>(q * q - q - 1) /
                 (4.0 * static_cast<double>(q) * (q - 1)))
              .epsilon(1e-9));

    // Indicator average is exactly the in-range fraction.
    const double lo = 0.7, hi = 2.1;
    std::size_t inside = 0;
    for (const double t : sample.angles)
      if (t >= lo && t <= hi) ++inside;
    CHECK(empirical_expectation(sample, FuncSpec::indicator(lo, hi)) ==
          Approx(static_cast<double>(inside) / (q - 1)).epsilon(1e-12));
  }
}

TEST_CASE("equidist: KS distance is a CDF distance and shrinks with q") {
  for (const std::int64_t q : {7, 101, 499}) {
    const double d = ks_distance(Field::of(q));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
  // Median KS near q ~ 100 exceeds the value at a much larger prime.
  std::vector<double> small;
  for (const std::int64_t q : {101, 103, 107, 109, 113}) small.push_back(ks_distance(Field::of(q)));
  std::sort(small.begin(), small.end());
  CHECK(ks_distance(Field::of(4999)) < small[2]);
}

TEST_CASE("equidist: moment asymptotics table") {
  const auto rows = moment_asymptotics_report(Field::of(101), 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].catalan_m == 1);
  CHECK(rows[1].catalan_m == 2);
  CHECK(rows[2].catalan_m == 5);
  // m = 1 ratio is exactly (q^2 - q - 1) / q^2.
  CHECK(rows[0].even_ratio ==
        Approx((101.0 * 101.0 - 101.0 - 1.0) / (101.0 * 101.0)).epsilon(1e-9));
  for (const auto& r : rows) {
    CHECK(r.even_ratio > 0.5);
    CHECK(r.even_ratio < 1.5);
  }
}

TEST_CASE("equidist: trigonometric identities to 1e-10") {
  for (int ell = 1; ell <= 8; ++ell) CHECK(trig_identity_residual(ell) < 1e-10);
  CHECK_THROWS_AS(trig_identity_residual(0), ValidationError);
}
