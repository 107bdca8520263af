#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sigtron/classify.hpp"

// Command implementations behind the `sigtron` binary: dataset statistics,
// single-model training, lambda cross-validation, the (alpha+, alpha-) grid
// sweep, and the focal-loss comparison run.

namespace sigtron {

struct RunConfig {
  std::string command;  // stats, train, cv, sweep, compare
  std::string train_path;
  std::string test_path;  // optional
  FileFormat format = FileFormat::Csv;

  std::string loss = "sic";  // sic | focal | logistic
  double alpha_pos = 0.5;
  double alpha_neg = 1.5;
  double calpha_mag = 2.0;
  double pi = 0.5;
  double gamma = 1.0;
  double xi = 0.0;

  std::optional<double> lambda;  // fixed lambda; otherwise CV
  int cv_folds = 4;
  int m = 40;
  double c2 = 0.4;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 -> hardware concurrency
  int alphas_kmax = 10;
  bool standardize = true;
  std::string out;  // output path stem
};

/// The paper's 19 x 8 focal grid: pi in {0.05,...,0.95}, gamma in {1,2,3,4},
/// xi in {0,1} -- 152 parameter triples in a fixed row-major order.
std::vector<FocalParams> focal_grid();

LossSpec make_loss_spec(const RunConfig& cfg);
OptimConfig make_optim_config(const RunConfig& cfg);
int effective_jobs(const RunConfig& cfg);

// Each returns a process exit code: 0 success, 1 usage error, 2 data error,
// 3 numeric failure.  Reports go to `out`; diagnostics to `err`.
int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_cv(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command; unknown command is a usage error.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace sigtron
