#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigtron/data.hpp"
#include "sigtron/loss.hpp"
#include "sigtron/optim.hpp"

// Model training, lambda cross-validation, OVA multi-class, the
// (alpha+, alpha-) grid sweep, and skewed-hyperplane diagnostics.

namespace sigtron {

struct Hyperplane {
  std::vector<double> w;
  double b = 0.0;
  double decision(std::span<const double> x) const;
};

struct TrainResult {
  Hyperplane h;
  std::vector<IterationRecord> trace;
  StopReason reason;
};

TrainResult train_binary(const Dataset& ds, const LossSpec& spec, double lambda,
                         const OptimConfig& cfg);

/// +1 if <w,x>+b >= 0 else -1 (boundary -> +1).
int predict_binary(const Hyperplane& h, std::span<const double> x);

/// Percent of exactly matching labels, in [0,100].
double accuracy_binary(const Hyperplane& h, const Dataset& ds);

/// The 20 candidates lambda = 2^r, r = -14..5.
std::vector<double> lambda_grid();

struct CvResult {
  double best_lambda;
  std::vector<std::pair<double, double>> per_lambda;  // (lambda, mean accuracy %)
};

/// k-fold CV over lambda_grid(); ties resolved toward the larger lambda.
CvResult cross_validate_lambda(const Dataset& ds, const LossSpec& spec,
                               const OptimConfig& cfg, int folds,
                               std::uint64_t seed);

struct OvaModel {
  std::vector<Hyperplane> planes;  // one per class id
  std::vector<double> lambdas;     // CV'd per class
};

OvaModel train_ova(const Dataset& ds, const LossSpec& spec,
                   const OptimConfig& cfg, int folds, std::uint64_t seed);

/// argmax_k h_k(x); ties -> smallest class id.
int predict_ova(const OvaModel& model, std::span<const double> x);

double accuracy_ova(const OvaModel& model, const Dataset& ds);

/// The paper's alpha grid: (k-1)/k and (k+1)/k for k = 1..kmax, ascending
/// (alpha = 1 itself excluded).  kmax = 10 gives the 20-value grid.
std::vector<double> alpha_grid(int kmax = 10);

struct SweepOptions {
  double c_alpha_mag = 2.0;
  OptimConfig cfg;
  int folds = 4;
  std::uint64_t seed = 0;
  int kmax = 10;  // 6 restricts to the 12x12 closed-form sub-grid
  int jobs = 1;
};

struct SweepResult {
  std::vector<double> alphas_pos;
  std::vector<double> alphas_neg;
  std::vector<double> accuracy;       // n x n row-major (%), NaN = failed cell
  std::vector<double> chosen_lambda;  // n x n; NaN for multi-class cells
  std::vector<std::string> cell_errors;  // empty string = ok
  std::size_t best_row = 0, best_col = 0;
  double best_accuracy = 0.0;
  double wall_seconds = 0.0;

  std::size_t n() const { return alphas_pos.size(); }
  double& at(std::size_t i, std::size_t j) { return accuracy[i * n() + j]; }
  double at(std::size_t i, std::size_t j) const { return accuracy[i * n() + j]; }
};

/// Trains one model per (alpha+, alpha-) cell: CV-selects lambda on train,
/// refits on the full training split, scores test.  Multi-class inputs go
/// through OVA per cell.
SweepResult sweep_alpha_grid(const Dataset& train, const Dataset& test,
                             const SweepOptions& opt);

/// Accuracy matrix as CSV: alpha- grid as header row, alpha+ as first column.
void write_sweep_csv(const SweepResult& r, const std::string& path);
/// JSON sidecar: best cell, chosen lambda per cell, timing.
void write_sweep_sidecar(const SweepResult& r, const std::string& path);

struct HyperplaneDiagnostics {
  double eta;              // k- / (k+ + k-)
  double signed_dist_pos;  // h(x_p^c) / ||w||
  double signed_dist_neg;  // h(x_n^c) / ||w||
  double cos_theta_pos;
};

HyperplaneDiagnostics diagnostics(const Hyperplane& h, const Dataset& ds,
                                  const SicSpec& spec);

}  // namespace sigtron
