#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "eas/gf.hpp"

namespace eas::equidist {

using gf::Field;

// Descriptor of an integrand on [0, pi]: the closed-form families plus a
// custom callable (evaluated by adaptive quadrature).
struct FuncSpec {
  enum class Kind { kOne, kCosPower, kCosMultiple, kIndicator, kCustom };
  Kind kind = Kind::kOne;
  int n = 0;
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> fn;

  static FuncSpec one() { return {}; }
  static FuncSpec cos_power(int n);
  static FuncSpec cos_multiple(int n);
  static FuncSpec indicator(double lo, double hi);
  static FuncSpec custom(std::function<double(double)> fn);

  double operator()(double theta) const;
};

// Sato-Tate CDF F(theta) = theta/pi - sin(2 theta)/(2 pi) (antiderivative of
// the density (2/pi) sin^2).
double sato_tate_cdf(double theta);

// E_ST[f]: closed form for the cos families and indicators, adaptive Simpson
// quadrature (1e-10 target) otherwise.
double sato_tate_expectation(const FuncSpec& f);

// Adaptive Simpson integral of g over [a, b].
double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                        double tol = 1e-10);

// The q-1 Kloosterman angles theta_{q,a}, sorted ascending.
struct AngleSample {
  std::int64_t q = 0;
  std::vector<double> angles;
};

AngleSample angle_sample(const Field& field);

// Sample mean of f over the Kloosterman angles.
double empirical_expectation(const AngleSample& sample, const FuncSpec& f);

// One-sample Kolmogorov-Smirnov distance of the angle sample to the
// Sato-Tate CDF.
double ks_distance(const AngleSample& sample);
double ks_distance(const Field& field);

struct MomentAsymptoticsRow {
  int m = 0;
  std::int64_t catalan_m = 0;
  double even_ratio = 0.0;       // M_{q,2m} / (q^{m+1} C_m)
  double odd_normalized = 0.0;   // M_{q,2m+1} / q^{m+1.5}
};

std::vector<MomentAsymptoticsRow> moment_asymptotics_report(const Field& field, int max_m);

// Max residual of the product-to-sum expansions of cos^{2l} and cos^{2l+1}
// over a uniform grid on [0, pi], combined with quadrature checks of the
// cosine orthogonality relations and the E_ST[cos(n theta)] values.
double trig_identity_residual(int ell, int grid_points = 1000);

}  // namespace eas::equidist
