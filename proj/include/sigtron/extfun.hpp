#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

// Extended exponential/logarithm on their restricted domains, the SIGTRON
// sigmoid family, its derivatives, and the F integral behind the induced loss.

namespace sigtron {

/// Shape/scale parameters of one SIGTRON sigmoid.
///
/// alpha in [0,2], c > 0.  c_alpha = c^(1-alpha)/(alpha-1) is derived
/// (NaN at alpha == 1, where the canonical-sigmoid branch applies).
/// When 1/|alpha-1| is an integer, `order` holds that polynomial order k.
struct SigtronParams {
  double alpha;
  double c;
  double c_alpha;  // NaN for alpha == 1
  std::optional<int> order;

  SigtronParams(double alpha_, double c_);

  /// Build from (alpha, |c_alpha|): c_alpha gets the sign forced by alpha
  /// (positive above 1, negative below).  alpha == 1 ignores the magnitude.
  static SigtronParams from_c_alpha(double alpha, double c_alpha_mag);

  /// Build from a polynomial order k >= 1 and |c_alpha|.  above_one selects
  /// alpha = (k+1)/k, otherwise alpha = (k-1)/k.
  static SigtronParams from_order(int k, double c_alpha_mag, bool above_one);

  bool canonical() const { return alpha == 1.0; }
};

// Tolerance band for comparisons against the kink at +-c_alpha.
inline double boundary_band(const SigtronParams& p) {
  return 1e-14 * (1.0 + std::abs(p.c_alpha));
}

/// exp_{alpha,c}(x).  For alpha > 1, x >= c_alpha returns +inf (the boundary
/// limit).  For alpha < 1, x < c_alpha is a domain error.
double ext_exp(const SigtronParams& p, double x);

/// ln_{alpha,c}(y) on the Table-of-domains restriction; inverse of ext_exp
/// on the interior of its domain.
double ext_ln(const SigtronParams& p, double y);

/// s_{alpha,c}(x): the extended asymmetric sigmoid stitched with the
/// Perceptron outside dom(sigma).  Total on the reals, values in [0,1],
/// s(0) = 1/2 for every parameter choice.
double sigtron(const SigtronParams& p, double x);

/// Gradient c^(alpha-1) (1-s)^alpha s^(2-alpha); zero outside dom(sigma).
/// Rejects alpha in {0,2}, where the gradient is not defined.
double sigtron_grad(const SigtronParams& p, double x);

/// n-th derivative of s_{alpha,c}; requires alpha in (1-1/n, 1+1/n).
double sigtron_nth_deriv(const SigtronParams& p, int n, double x);

/// Inflection point -ln_{alpha,c}(c*alpha/(2-alpha)); 0 at alpha == 1.
/// Rejects alpha in {0,2}.
double inflection_point(const SigtronParams& p);

using int128 = __int128;

inline constexpr int kStirlingCap = 20;

/// Unsigned Stirling number of the first kind [n l]; exact up to the cap.
int128 stirling_first(int n, int l);

/// Stirling number of the second kind {l k}; exact up to the cap.
int128 stirling_second(int l, int k);

/// F(z;b) = int_0^z dt / (1 + t^(1/b)).  Closed form when b = 1/k with
/// k in 1..6, adaptive Simpson quadrature (abs tol 1e-10) otherwise.
double f_integral(double z, double b);

/// Closed-form F(z;1/k) for any integer k >= 1 (partial fractions).
double f_integral_closed(double z, int k);

/// Adaptive-Simpson F(z;b), exposed for cross-checking the closed forms.
double f_integral_quadrature(double z, double b, double abs_tol = 1e-10);

}  // namespace sigtron
