#include "sigtron/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sigtron {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> lbfgs_direction(const std::vector<double>& grad,
                                    const std::deque<CurvaturePair>& history) {
  std::vector<double> q = grad;
  if (inf_norm(grad) == 0.0) {
    std::fill(q.begin(), q.end(), 0.0);
    return q;
  }
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    const auto& p = history[i];
    alpha[i] = p.rho * dot(p.s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * p.y[j];
  }
  if (!history.empty()) {
    const auto& last = history.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& p = history[i];
    const double beta = p.rho * dot(p.y, q);
    for (std::size_t j = 0; j < q.size(); ++j)
      q[j] += (alpha[i] - beta) * p.s[j];
  }
  for (double& v : q) v = -v;
  return q;
}

double bisection_line_search(const std::function<double(double)>& phi_prime,
                             double phi_prime_0, const OptimConfig& cfg,
                             std::vector<double>* trials) {
  if (!(phi_prime_0 < 0.0))
    throw std::invalid_argument("bisection_line_search: phi'(0) must be < 0");
  const double accept = -cfg.c2 * phi_prime_0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double rho = cfg.rho0;
  for (int i = 0; i < cfg.max_linesearch; ++i) {
    if (trials) trials->push_back(rho);
    const double d = phi_prime(rho);
    if (std::abs(d) <= accept) return rho;
    if (d > 0.0)
      hi = rho;
    else
      lo = rho;
    rho = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
  }
  return 0.0;
}

MinimizeResult minimize(const ValueFn& value, const GradientFn& gradient,
                        std::vector<double> x0, const OptimConfig& cfg) {
  const std::size_t n = x0.size();
  std::vector<double> x = std::move(x0);
  std::vector<double> grad(n), trial_grad(n);
  std::vector<IterationRecord> trace;
  int evals = 0;

  gradient(x, grad);
  ++evals;
  double fval = value(x);
  if (!std::isfinite(fval) || !all_finite(grad))
    throw NumericFailure("minimize: non-finite objective at start", trace);

  if (cfg.check_gradient) {
    std::vector<double> xp = x;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(x[j]));
      xp[j] = x[j] + h;
      const double vp = value(xp);
      xp[j] = x[j] - h;
      const double vm = value(xp);
      xp[j] = x[j];
      const double fd = (vp - vm) / (2.0 * h);
      if (std::abs(fd - grad[j]) > 1e-4 * (1.0 + std::abs(fd)))
        throw NumericFailure("minimize: gradient self-check failed", trace);
    }
  }

  std::deque<CurvaturePair> history;
  StopReason reason = StopReason::IterationCap;

  for (int t = 0; t <= cfg.max_outer; ++t) {
    const double gnorm = inf_norm(grad);
    trace.push_back({t, fval, gnorm, 0.0, evals});
    if (gnorm <= cfg.eps_tol1) {
      reason = StopReason::GradientTolerance;
      break;
    }
    if (t == cfg.max_outer) break;

    std::vector<double> z = lbfgs_direction(grad, history);
    double dphi0 = dot(grad, z);
    if (!(dphi0 < 0.0)) {
      // Round-off produced a non-descent direction; fall back to steepest descent.
      for (std::size_t j = 0; j < n; ++j) z[j] = -grad[j];
      dphi0 = dot(grad, z);
    }

    std::vector<double> xt(n);
    double last_rho = std::numeric_limits<double>::quiet_NaN();
    auto phi_prime = [&](double rho) {
      for (std::size_t j = 0; j < n; ++j) xt[j] = x[j] + rho * z[j];
      gradient(xt, trial_grad);
      ++evals;
      if (!all_finite(trial_grad))
        throw NumericFailure("minimize: non-finite gradient in line search",
                             trace);
      last_rho = rho;
      return dot(trial_grad, z);
    };

    const double rho = bisection_line_search(phi_prime, dphi0, cfg);
    trace.back().step = rho;
    if (rho == 0.0) {
      reason = StopReason::LineSearchZero;
      break;
    }

    std::vector<double> x_new(n);
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      x_new[j] = x[j] + rho * z[j];
      diff = std::max(diff, std::abs(x_new[j] - x[j]));
    }

    std::vector<double> grad_new(n);
    if (last_rho == rho) {
      grad_new = trial_grad;  // the accepted trial already evaluated it
    } else {
      gradient(x_new, grad_new);
      ++evals;
    }

    // Curvature pair, gated by <y,s> > 1e-10 ||y|| ||s||.
    CurvaturePair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      pair.s[j] = x_new[j] - x[j];
      pair.y[j] = grad_new[j] - grad[j];
    }
    const double ys = dot(pair.y, pair.s);
    const double floor =
        1e-10 * std::sqrt(dot(pair.y, pair.y)) * std::sqrt(dot(pair.s, pair.s));
    if (ys > floor) {
      pair.rho = 1.0 / ys;
      history.push_back(std::move(pair));
      if (static_cast<int>(history.size()) > cfg.m) history.pop_front();
    }

    x = std::move(x_new);
    grad = std::move(grad_new);
    fval = value(x);
    if (!std::isfinite(fval))
      throw NumericFailure("minimize: non-finite objective value", trace);

    if (diff <= cfg.eps_tol2) {
      trace.push_back({t + 1, fval, inf_norm(grad), 0.0, evals});
      reason = StopReason::IterateTolerance;
      break;
    }
  }

  return {std::move(x), std::move(trace), reason, evals};
}

std::string format_trace(const std::vector<IterationRecord>& trace) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& r : trace)
    os << r.iter << ' ' << r.value << ' ' << r.grad_inf_norm << ' ' << r.step
       << ' ' << r.grad_evals << '\n';
  return os.str();
}

}  // namespace sigtron
