#include "eas/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eas/charsums.hpp"
#include "eas/util.hpp"

namespace eas::equidist {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson_rec(const std::function<double(double)>& g, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(g, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson_rec(g, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

}  // namespace

FuncSpec FuncSpec::cos_power(int n) {
  if (n < 0) throw ValidationError("cos power must be nonnegative");
  FuncSpec f;
  f.kind = Kind::kCosPower;
  f.n = n;
  return f;
}

FuncSpec FuncSpec::cos_multiple(int n) {
  if (n < 0) throw ValidationError("cos multiple must be nonnegative");
  FuncSpec f;
  f.kind = Kind::kCosMultiple;
  f.n = n;
  return f;
}

FuncSpec FuncSpec::indicator(double lo, double hi) {
  if (!(lo <= hi)) throw ValidationError("indicator requires lo <= hi");
  FuncSpec f;
  f.kind = Kind::kIndicator;
  f.lo = lo;
  f.hi = hi;
  return f;
}

FuncSpec FuncSpec::custom(std::function<double(double)> fn) {
  FuncSpec f;
  f.kind = Kind::kCustom;
  f.fn = std::move(fn);
  return f;
}

double FuncSpec::operator()(double theta) const {
  switch (kind) {
    case Kind::kOne:
      return 1.0;
    case Kind::kCosPower:
      return std::pow(std::cos(theta), n);
    case Kind::kCosMultiple:
      return std::cos(n * theta);
    case Kind::kIndicator:
      return (theta >= lo && theta <= hi) ? 1.0 : 0.0;
    case Kind::kCustom:
      return fn(theta);
  }
  throw ValidationError("unknown function spec");
}

double sato_tate_cdf(double theta) {
  return theta / kPi - std::sin(2.0 * theta) / (2.0 * kPi);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                        double tol) {
  // A fixed initial split keeps oscillatory integrands (cos(n theta) up to
  // n ~ 20) from aliasing into a spuriously converged first estimate.
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == kPanels ? b : lo + h;
    const double fa = g(lo);
    const double fb = g(hi);
    const double fm = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_rec(g, lo, hi, fa, fm, fb, whole, tol / kPanels, 48);
  }
  return total;
}

double sato_tate_expectation(const FuncSpec& f) {
  switch (f.kind) {
    case FuncSpec::Kind::kOne:
      return 1.0;
    case FuncSpec::Kind::kCosPower: {
      if (f.n == 0) return 1.0;
      if (f.n % 2 != 0) return 0.0;
      const int m = f.n / 2;
      // E_ST[cos^{2m}] = C(2m, m) / (2^{2m} (m + 1)).
      return static_cast<double>(binomial(2 * m, m)) /
             (std::pow(2.0, 2 * m) * static_cast<double>(m + 1));
    }
    case FuncSpec::Kind::kCosMultiple:
      if (f.n == 0) return 1.0;
      if (f.n == 2) return -0.5;
      return 0.0;
    case FuncSpec::Kind::kIndicator: {
      const double lo = std::clamp(f.lo, 0.0, kPi);
      const double hi = std::clamp(f.hi, 0.0, kPi);
      return sato_tate_cdf(hi) - sato_tate_cdf(lo);
    }
    case FuncSpec::Kind::kCustom: {
      auto integrand = [&f](double t) {
        const double s = std::sin(t);
        return f.fn(t) * s * s;
      };
      return 2.0 / kPi * adaptive_simpson(integrand, 0.0, kPi, 1e-10);
    }
  }
  throw ValidationError("unknown function spec");
}

AngleSample angle_sample(const Field& field) {
  const std::int64_t q = field.q();
  const auto& k1 = charsums::k1_values(field);
  AngleSample s;
  s.q = q;
  s.angles.reserve(static_cast<std::size_t>(q - 1));
  for (std::int64_t a = 1; a < q; ++a)
    s.angles.push_back(charsums::angle_from_value(k1[static_cast<std::size_t>(a)], q));
  std::sort(s.angles.begin(), s.angles.end());
  return s;
}

double empirical_expectation(const AngleSample& sample, const FuncSpec& f) {
  if (sample.angles.empty()) throw ValidationError("empty angle sample");
  KahanAccumulator acc;
  for (const double t : sample.angles) acc.add(f(t));
  return static_cast<double>(acc.sum / static_cast<long double>(sample.angles.size()));
}

double ks_distance(const AngleSample& sample) {
  const std::size_t n = sample.angles.size();
  if (n == 0) throw ValidationError("empty angle sample");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = sato_tate_cdf(sample.angles[i]);
    d = std::max(d, cdf - static_cast<double>(i) / static_cast<double>(n));
    d = std::max(d, static_cast<double>(i + 1) / static_cast<double>(n) - cdf);
  }
  return d;
}

double ks_distance(const Field& field) { return ks_distance(angle_sample(field)); }

std::vector<MomentAsymptoticsRow> moment_asymptotics_report(const Field& field, int max_m) {
  if (max_m < 1) throw ValidationError("max_m >= 1 required");
  const auto table = charsums::moments(field, 2 * max_m + 1);
  const long double q = static_cast<long double>(field.q());
  std::vector<MomentAsymptoticsRow> rows;
  rows.reserve(static_cast<std::size_t>(max_m));
  for (int m = 1; m <= max_m; ++m) {
    MomentAsymptoticsRow r;
    r.m = m;
    r.catalan_m = catalan(m);
    r.even_ratio = static_cast<double>(
        table.raw[2 * m - 1] / (std::pow(q, static_cast<long double>(m + 1)) * static_cast<long double>(r.catalan_m)));
    r.odd_normalized = static_cast<double>(
        table.raw[2 * m] / std::pow(q, static_cast<long double>(m) + 1.5L));
    rows.push_back(r);
  }
  return rows;
}

double trig_identity_residual(int ell, int grid_points) {
  if (ell < 1) throw ValidationError("ell >= 1 required");
  if (grid_points < 2) throw ValidationError("grid needs at least 2 points");
  double worst = 0.0;

  // Pointwise product-to-sum expansions.
  for (int g = 0; g < grid_points; ++g) {
    const double theta = kPi * static_cast<double>(g) / static_cast<double>(grid_points - 1);
    // 2^{2l-1} cos^{2l} = sum_{k<l} C(2l,k) cos((2l-2k)theta) + C(2l,l)/2
    double even_rhs = 0.5 * static_cast<double>(binomial(2 * ell, ell));
    for (int k = 0; k < ell; ++k)
      even_rhs += static_cast<double>(binomial(2 * ell, k)) * std::cos((2 * ell - 2 * k) * theta);
    const double even_lhs = std::pow(2.0, 2 * ell - 1) * std::pow(std::cos(theta), 2 * ell);
    worst = std::max(worst, std::fabs(even_lhs - even_rhs));

    // 2^{2l} cos^{2l+1} = sum_{k<=l} C(2l+1,k) cos((2l+1-2k)theta)
    double odd_rhs = 0.0;
    for (int k = 0; k <= ell; ++k)
      odd_rhs += static_cast<double>(binomial(2 * ell + 1, k)) *
                 std::cos((2 * ell + 1 - 2 * k) * theta);
    const double odd_lhs = std::pow(2.0, 2 * ell) * std::pow(std::cos(theta), 2 * ell + 1);
    worst = std::max(worst, std::fabs(odd_lhs - odd_rhs));
  }

  // Quadrature checks: cosine orthogonality and the Sato-Tate cos moments.
  const int bound = std::min(2 * ell, 6);
  for (int m = 0; m <= bound; ++m) {
    for (int n = 0; n <= bound; ++n) {
      const double integral = adaptive_simpson(
          [m, n](double t) { return std::cos(m * t) * std::cos(n * t); }, 0.0, kPi, 1e-12);
      const double expect = (m == n ? 1.0 : 0.0) + (m == n && m == 0 ? 1.0 : 0.0);
      worst = std::max(worst, std::fabs(2.0 / kPi * integral - expect));
    }
    const double st = sato_tate_expectation(
        FuncSpec::custom([m](double t) { return std::cos(m * t); }));
    const double closed = sato_tate_expectation(FuncSpec::cos_multiple(m));
    worst = std::max(worst, std::fabs(st - closed));
  }
  return worst;
}

}  // namespace eas::equidist
