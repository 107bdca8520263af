#include "sigtron/extfun.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <vector>

namespace sigtron {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<int> detect_order(double alpha) {
  if (alpha == 1.0) return std::nullopt;
  const double k = 1.0 / std::abs(alpha - 1.0);
  const double kr = std::round(k);
  if (kr >= 1.0 && std::abs(k - kr) <= 1e-9 * kr) return static_cast<int>(kr);
  return std::nullopt;
}

}  // namespace

SigtronParams::SigtronParams(double alpha_, double c_) : alpha(alpha_), c(c_) {
  if (!(alpha >= 0.0 && alpha <= 2.0))
    throw std::domain_error("SigtronParams: alpha must be in [0,2]");
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::domain_error("SigtronParams: c must be positive and finite");
  c_alpha = (alpha == 1.0) ? kNaN : std::pow(c, 1.0 - alpha) / (alpha - 1.0);
  order = detect_order(alpha);
}

SigtronParams SigtronParams::from_c_alpha(double alpha, double c_alpha_mag) {
  if (!(c_alpha_mag > 0.0))
    throw std::domain_error("SigtronParams: |c_alpha| must be positive");
  if (alpha == 1.0) return SigtronParams(1.0, 1.0);
  // c = ((alpha-1) c_alpha)^(1/(1-alpha)) with sign(c_alpha) forced by alpha.
  const double ca = (alpha > 1.0) ? c_alpha_mag : -c_alpha_mag;
  const double c = std::pow((alpha - 1.0) * ca, 1.0 / (1.0 - alpha));
  return SigtronParams(alpha, c);
}

SigtronParams SigtronParams::from_order(int k, double c_alpha_mag, bool above_one) {
  if (k < 1) throw std::domain_error("SigtronParams: order k must be >= 1");
  const double alpha = above_one ? (k + 1.0) / k : (k - 1.0) / k;
  return from_c_alpha(alpha, c_alpha_mag);
}

double ext_exp(const SigtronParams& p, double x) {
  if (p.canonical()) return p.c * std::exp(x);
  const double band = boundary_band(p);
  if (p.alpha < 1.0) {
    if (x < p.c_alpha - band)
      throw std::domain_error("ext_exp: x below c_alpha for alpha < 1");
    if (x <= p.c_alpha) return 0.0;
    return p.c * std::pow(1.0 - x / p.c_alpha, 1.0 / (1.0 - p.alpha));
  }
  // alpha > 1: finite below c_alpha, +inf at and above it.
  if (x >= p.c_alpha - band) return kInf;
  return p.c * std::pow(1.0 - x / p.c_alpha, 1.0 / (1.0 - p.alpha));
}

double ext_ln(const SigtronParams& p, double y) {
  if (p.canonical()) {
    if (!(y > 0.0)) throw std::domain_error("ext_ln: y must be positive");
    return std::log(y / p.c);
  }
  if (p.alpha < 1.0) {
    if (!(y >= 0.0)) throw std::domain_error("ext_ln: y must be nonnegative");
  } else {
    if (!(y > 0.0)) throw std::domain_error("ext_ln: y must be positive");
  }
  const double y_alpha = std::pow(y, 1.0 - p.alpha) / (p.alpha - 1.0);
  return p.c_alpha - y_alpha;
}

double sigtron(const SigtronParams& p, double x) {
  if (p.canonical()) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  }
  const double band = boundary_band(p);
  if (p.alpha < 1.0) {
    // dom(sigma) = {x <= -c_alpha}; Perceptron (=1, since -c_alpha > 0) beyond.
    if (x > -p.c_alpha + band) return 1.0;
    if (x >= -p.c_alpha) return 1.0;  // continuous limit at the kink
    const double e = ext_exp(p, -x);
    return p.c / (p.c + e);
  }
  // alpha > 1: dom(sigma) = {x >= -c_alpha}, closed with sigma(-c_alpha) = 0.
  if (x < -p.c_alpha - band) return 0.0;
  if (x <= -p.c_alpha) return 0.0;
  const double e = ext_exp(p, -x);
  if (std::isinf(e)) return 0.0;
  return p.c / (p.c + e);
}

double sigtron_grad(const SigtronParams& p, double x) {
  if (p.alpha <= 0.0 || p.alpha >= 2.0)
    throw std::domain_error("sigtron_grad: alpha must be in (0,2)");
  const double s = sigtron(p, x);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  if (p.canonical()) return s * (1.0 - s);
  return std::pow(p.c, p.alpha - 1.0) * std::pow(1.0 - s, p.alpha) *
         std::pow(s, 2.0 - p.alpha);
}

namespace {

struct StirlingTables {
  // value[n][l], unsigned first kind and second kind up to the cap.
  std::array<std::array<int128, kStirlingCap + 1>, kStirlingCap + 1> s1{};
  std::array<std::array<int128, kStirlingCap + 1>, kStirlingCap + 1> s2{};
  StirlingTables() {
    s1[0][0] = 1;
    s2[0][0] = 1;
    for (int n = 1; n <= kStirlingCap; ++n) {
      for (int l = 1; l <= n; ++l) {
        s1[n][l] = int128(n - 1) * s1[n - 1][l] + s1[n - 1][l - 1];
        s2[n][l] = int128(l) * s2[n - 1][l] + s2[n - 1][l - 1];
      }
    }
  }
};

const StirlingTables& tables() {
  static const StirlingTables t;
  return t;
}

void check_stirling_args(int a, int b) {
  if (a < 0 || b < 0) throw std::domain_error("stirling: negative argument");
  if (a > kStirlingCap || b > kStirlingCap)
    throw std::overflow_error("stirling: argument above cap");
}

}  // namespace

int128 stirling_first(int n, int l) {
  check_stirling_args(n, l);
  if (l > n) return 0;
  return tables().s1[n][l];
}

int128 stirling_second(int l, int k) {
  check_stirling_args(l, k);
  if (k > l) return 0;
  return tables().s2[l][k];
}

namespace {

// A_{n,k}(1/(1-alpha)) = (-1)^{n+k} k! sum_l [n l]{l k} (alpha-1)^{n-l}
double coefficient_A(int n, int k, double alpha) {
  double sum = 0.0;
  for (int l = k; l <= n; ++l) {
    const double s = static_cast<double>(stirling_first(n, l)) *
                     static_cast<double>(stirling_second(l, k));
    sum += s * std::pow(alpha - 1.0, n - l);
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
  return sign * fact * sum;
}

// n-th derivative of the canonical sigmoid as a polynomial in s, built from
// s' = s(1-s).
double canonical_nth_deriv(int n, double x) {
  std::vector<double> poly = {0.0, 1.0};  // s itself
  for (int i = 0; i < n; ++i) {
    // d/dx poly(s) = poly'(s) * (s - s^2)
    std::vector<double> deriv(poly.size() + 1, 0.0);
    for (std::size_t j = 1; j < poly.size(); ++j) {
      deriv[j] += poly[j] * static_cast<double>(j);
      deriv[j + 1] -= poly[j] * static_cast<double>(j);
    }
    poly = std::move(deriv);
  }
  const double s = sigtron(SigtronParams(1.0, 1.0), x);
  double v = 0.0;
  for (std::size_t j = poly.size(); j-- > 0;) v = v * s + poly[j];
  return v;
}

}  // namespace

double sigtron_nth_deriv(const SigtronParams& p, int n, double x) {
  if (n < 1) throw std::domain_error("sigtron_nth_deriv: n must be >= 1");
  if (p.canonical()) return canonical_nth_deriv(n, x);
  if (!(p.alpha > 1.0 - 1.0 / n && p.alpha < 1.0 + 1.0 / n))
    throw std::domain_error("sigtron_nth_deriv: alpha outside smoothness window");
  const double band = boundary_band(p);
  if (p.alpha < 1.0 && x >= -p.c_alpha - band) return 0.0;
  if (p.alpha > 1.0 && x <= -p.c_alpha + band) return 0.0;
  const double e = ext_exp(p, -x);
  if (e == 0.0 || std::isinf(e)) return 0.0;
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double expo = k - n * (1.0 - p.alpha);
    sum += coefficient_A(n, k, p.alpha) * p.c * std::pow(e, expo) /
           std::pow(p.c + e, k + 1.0);
  }
  return sum;
}

double inflection_point(const SigtronParams& p) {
  if (p.alpha <= 0.0 || p.alpha >= 2.0)
    throw std::domain_error("inflection_point: alpha must be in (0,2)");
  if (p.canonical()) return 0.0;
  return -ext_ln(p, p.c * p.alpha / (2.0 - p.alpha));
}

namespace {

double simpson(double (*f)(double, double), double b, double lo, double hi,
               double flo, double fmid, double fhi, double whole, double tol,
               int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const double flm = f(lm, b), frm = f(rm, b);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson(f, b, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
         simpson(f, b, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

double integrand(double t, double b) { return 1.0 / (1.0 + std::pow(t, 1.0 / b)); }

}  // namespace

double f_integral_quadrature(double z, double b, double abs_tol) {
  if (!(z >= 0.0)) throw std::domain_error("f_integral: z must be >= 0");
  if (!(b > 0.0)) throw std::domain_error("f_integral: b must be > 0");
  if (z == 0.0) return 0.0;
  const double flo = integrand(0.0, b);
  const double fhi = integrand(z, b);
  const double fmid = integrand(0.5 * z, b);
  const double whole = z / 6.0 * (flo + 4.0 * fmid + fhi);
  return simpson(integrand, b, 0.0, z, flo, fmid, fhi, whole, abs_tol, 60);
}

double f_integral_closed(double z, int k) {
  if (!(z >= 0.0)) throw std::domain_error("f_integral: z must be >= 0");
  if (k < 1) throw std::domain_error("f_integral: order must be >= 1");
  if (k == 1) return std::log1p(z);
  if (k == 2) return std::atan(z);
  // Partial fractions of 1/(1+t^k) over the k-th roots of -1.
  double sum = (k % 2 == 1) ? std::log1p(z) / k : 0.0;
  for (int m = 1; m <= k / 2; ++m) {
    const double theta = (2.0 * m - 1.0) * std::numbers::pi / k;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double quad = z * z - 2.0 * z * ct + 1.0;
    sum += (-2.0 / k) * (0.5 * ct * std::log(quad) -
                         st * (std::atan((z - ct) / st) + std::atan(ct / st)));
  }
  return sum;
}

double f_integral(double z, double b) {
  if (!(z >= 0.0)) throw std::domain_error("f_integral: z must be >= 0");
  if (!(b > 0.0)) throw std::domain_error("f_integral: b must be > 0");
  // The partial-fraction antiderivative is exact for every integer order,
  // so unit-fraction b never pays for quadrature (the sweep grid is all
  // unit fractions and quadrature there is ~100x slower).
  const double k = 1.0 / b;
  const double kr = std::round(k);
  if (kr >= 1.0 && kr <= 40.0 && std::abs(k - kr) <= 1e-12 * kr)
    return f_integral_closed(z, static_cast<int>(kr));
  return f_integral_quadrature(z, b);
}

}  // namespace sigtron
