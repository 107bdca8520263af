#pragma once

#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Quasi-Newton (L-BFGS) driver with the interval-based bisection line
// search under the strong Wolfe stopping criterion.

namespace sigtron {

struct OptimConfig {
  int m = 40;                 // L-BFGS memory
  double c2 = 0.4;            // strong-Wolfe constant c_II
  double eps_tol1 = 1e-2;     // gradient sup-norm stop
  double eps_tol2 = 1e-4;     // iterate sup-norm stop
  int max_outer = 100;
  int max_linesearch = 100;
  double rho0 = 1.0;          // initial trial step
  bool check_gradient = false;  // finite-difference self-check at x0
};

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;  // 1 / <y,s>
};

struct IterationRecord {
  int iter;
  double value;
  double grad_inf_norm;
  double step;
  int grad_evals;  // cumulative
};

enum class StopReason { GradientTolerance, IterateTolerance, LineSearchZero,
                        IterationCap };

struct MinimizeResult {
  std::vector<double> x;
  std::vector<IterationRecord> trace;
  StopReason reason;
  int grad_evals;
};

struct NumericFailure : std::runtime_error {
  std::vector<IterationRecord> trace;
  NumericFailure(const std::string& what, std::vector<IterationRecord> t)
      : std::runtime_error(what), trace(std::move(t)) {}
};

/// Two-loop recursion: z = -H * grad with gamma = <s,y>/<y,y> initial
/// scaling (identity when the history is empty).
std::vector<double> lbfgs_direction(const std::vector<double>& grad,
                                    const std::deque<CurvaturePair>& history);

/// Interval-based bisection line search.  phi_prime(rho) is the directional
/// derivative; phi_prime_0 = phi'(0) must be negative.  Returns rho* with
/// |phi'(rho*)| <= -c2 * phi'(0), or 0 after max_linesearch trials.
/// `trials` (optional) receives every trial step in order.
double bisection_line_search(const std::function<double(double)>& phi_prime,
                             double phi_prime_0, const OptimConfig& cfg,
                             std::vector<double>* trials = nullptr);

using ValueFn = std::function<double(const std::vector<double>&)>;
using GradientFn =
    std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// The line search consumes only gradients; `value` is called once per
/// outer iteration for the trace.
MinimizeResult minimize(const ValueFn& value, const GradientFn& gradient,
                        std::vector<double> x0, const OptimConfig& cfg);

/// Writes the trace as line-delimited "iter value grad_inf step evals".
std::string format_trace(const std::vector<IterationRecord>& trace);

}  // namespace sigtron
