#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sigtron/cli.hpp"

namespace {

void add_common(CLI::App* cmd, sigtron::RunConfig& cfg, std::string& fmt) {
  cmd->add_option("train", cfg.train_path, "training dataset")->required();
  cmd->add_option("test", cfg.test_path, "test dataset");
  cmd->add_option("--format", fmt, "csv|libsvm")
      ->envname("SGT_FORMAT")
      ->check(CLI::IsMember({"csv", "libsvm"}));
  cmd->add_option("--seed", cfg.seed, "fold-shuffle seed")->envname("SGT_SEED");
  cmd->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)")
      ->envname("SGT_JOBS");
  cmd->add_flag("--no-standardize{false}", cfg.standardize,
                "skip dimension-wise standardization");
}

void add_model(CLI::App* cmd, sigtron::RunConfig& cfg) {
  cmd->add_option("--loss", cfg.loss, "sic|focal|logistic")
      ->envname("SGT_LOSS")
      ->check(CLI::IsMember({"sic", "focal", "logistic"}));
  cmd->add_option("--alpha-pos", cfg.alpha_pos, "positive-class alpha")
      ->envname("SGT_ALPHA_POS");
  cmd->add_option("--alpha-neg", cfg.alpha_neg, "negative-class alpha")
      ->envname("SGT_ALPHA_NEG");
  cmd->add_option("--calpha-mag", cfg.calpha_mag, "|c_alpha| (default 2)")
      ->envname("SGT_CALPHA_MAG");
  cmd->add_option("--pi", cfg.pi, "focal class weight")->envname("SGT_PI");
  cmd->add_option("--gamma", cfg.gamma, "focal stiffness")->envname("SGT_GAMMA");
  cmd->add_option("--xi", cfg.xi, "focal shift")->envname("SGT_XI");
  cmd->add_option_function<double>(
         "--lambda", [&cfg](double v) { cfg.lambda = v; },
         "fixed regularization weight (skips CV)")
      ->envname("SGT_LAMBDA");
  cmd->add_option("--cv-folds", cfg.cv_folds, "CV folds (default 4)")
      ->envname("SGT_CV_FOLDS");
  cmd->add_option("--m", cfg.m, "L-BFGS memory (default 40)")->envname("SGT_M");
  cmd->add_option("--c2", cfg.c2, "strong-Wolfe constant (default 0.4)")
      ->envname("SGT_C2");
  cmd->add_option("--out", cfg.out, "output path")->envname("SGT_OUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIGTRON-induced classification toolkit"};
  app.require_subcommand(1);

  sigtron::RunConfig cfg;
  std::string fmt = "csv";

  CLI::App* stats = app.add_subcommand("stats", "class/scale imbalance report");
  add_common(stats, cfg, fmt);

  CLI::App* train = app.add_subcommand("train", "fit one model");
  add_common(train, cfg, fmt);
  add_model(train, cfg);

  CLI::App* cv = app.add_subcommand("cv", "lambda cross-validation table");
  add_common(cv, cfg, fmt);
  add_model(cv, cfg);

  CLI::App* sweep = app.add_subcommand("sweep", "(alpha+, alpha-) grid sweep");
  add_common(sweep, cfg, fmt);
  add_model(sweep, cfg);
  sweep->add_option("--alphas", cfg.alphas_kmax,
                    "alpha grid half-size k (default 10; 6 = 12x12 sub-grid)")
      ->envname("SGT_ALPHAS");

  CLI::App* compare =
      app.add_subcommand("compare", "focal grid vs logistic vs one SIC cell");
  add_common(compare, cfg, fmt);
  add_model(compare, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = (fmt == "libsvm") ? sigtron::FileFormat::LibsvmSparse
                                 : sigtron::FileFormat::Csv;
  return sigtron::run_command(cfg, std::cout, std::cerr);
}
