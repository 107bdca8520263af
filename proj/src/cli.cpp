#include "sigtron/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace sigtron {

namespace {

void echo_config(const RunConfig& cfg, std::ostream& out) {
  out << "# command=" << cfg.command << " train=" << cfg.train_path
      << " test=" << (cfg.test_path.empty() ? "-" : cfg.test_path)
      << " format=" << (cfg.format == FileFormat::Csv ? "csv" : "libsvm")
      << " loss=" << cfg.loss << '\n';
  out << "# alpha_pos=" << cfg.alpha_pos << " alpha_neg=" << cfg.alpha_neg
      << " calpha_mag=" << cfg.calpha_mag << " pi=" << cfg.pi
      << " gamma=" << cfg.gamma << " xi=" << cfg.xi << '\n';
  out << "# lambda=";
  if (cfg.lambda)
    out << *cfg.lambda;
  else
    out << "cv(" << cfg.cv_folds << " folds)";
  out << " m=" << cfg.m << " c2=" << cfg.c2 << " seed=" << cfg.seed
      << " jobs=" << effective_jobs(cfg) << " alphas=" << cfg.alphas_kmax
      << " standardize=" << (cfg.standardize ? 1 : 0) << '\n';
}

Dataset concat(const Dataset& a, const Dataset& b) {
  if (a.cols != b.cols || a.n_classes != b.n_classes)
    throw ConfigError("stats: train/test splits are incompatible");
  Dataset out = a;
  out.rows = a.rows + b.rows;
  out.x.insert(out.x.end(), b.x.begin(), b.x.end());
  out.y.insert(out.y.end(), b.y.begin(), b.y.end());
  out.fold_ids.clear();
  return out;
}

void stats_line(const Dataset& ds, const std::string& label,
                std::ostream& out) {
  if (ds.binary()) {
    ImbalanceStats st = imbalance_stats(ds, 1);
    out << label << ",r_c," << st.r_c << ",r_sc," << st.r_sc << '\n';
  } else {
    double rc_min = std::numeric_limits<double>::infinity(), rc_max = 0.0;
    double rsc_min = rc_min, rsc_max = 0.0;
    for (int cls = 0; cls < ds.n_classes; ++cls) {
      ImbalanceStats st = imbalance_stats(ds, cls);
      rc_min = std::min(rc_min, st.r_c);
      rc_max = std::max(rc_max, st.r_c);
      rsc_min = std::min(rsc_min, st.r_sc);
      rsc_max = std::max(rsc_max, st.r_sc);
    }
    out << label << ",r_c," << rc_min << '/' << rc_max << ",r_sc," << rsc_min
        << '/' << rsc_max << '\n';
  }
}

struct Splits {
  Dataset train;
  std::optional<Dataset> test;
};

Splits load_splits(const RunConfig& cfg) {
  Splits s;
  s.train = load_dataset(cfg.train_path, cfg.format);
  if (!cfg.test_path.empty())
    s.test = load_dataset(cfg.test_path, cfg.format);
  if (cfg.standardize) {
    std::vector<Dataset*> apply;
    if (s.test) apply.push_back(&*s.test);
    standardize(s.train, apply);
  }
  return s;
}

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    for (const auto& r : e.trace)
      err << "  iter " << r.iter << " F=" << r.value
          << " |g|=" << r.grad_inf_norm << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

std::vector<FocalParams> focal_grid() {
  std::vector<FocalParams> grid;
  for (int i = 1; i <= 19; ++i) {
    const double pi = i / 20.0;  // exact 0.5 at i = 10
    for (double gamma : {1.0, 2.0, 3.0, 4.0})
      for (double xi : {0.0, 1.0}) grid.emplace_back(pi, gamma, xi);
  }
  return grid;
}

LossSpec make_loss_spec(const RunConfig& cfg) {
  if (cfg.loss == "sic")
    return SicSpec{SigtronParams::from_c_alpha(cfg.alpha_pos, cfg.calpha_mag),
                   SigtronParams::from_c_alpha(cfg.alpha_neg, cfg.calpha_mag)};
  if (cfg.loss == "focal") return FocalParams(cfg.pi, cfg.gamma, cfg.xi);
  if (cfg.loss == "logistic") return LogisticSpec{};
  throw ConfigError("unknown loss '" + cfg.loss + "'");
}

OptimConfig make_optim_config(const RunConfig& cfg) {
  OptimConfig oc;
  oc.m = cfg.m;
  oc.c2 = cfg.c2;
  return oc;
}

int effective_jobs(const RunConfig& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    RunConfig raw = cfg;
    raw.standardize = false;  // stats describe the raw data
    echo_config(raw, out);
    Splits s = load_splits(raw);
    out << "split,stat,value,stat,value\n";
    if (s.test) {
      stats_line(concat(s.train, *s.test), "combined", out);
      stats_line(s.train, "train", out);
      stats_line(*s.test, "test", out);
    } else {
      stats_line(s.train, "train", out);
      out << "test,n/a\n";
    }
    return 0;
  });
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    echo_config(cfg, out);
    Splits s = load_splits(cfg);
    const LossSpec spec = make_loss_spec(cfg);
    const OptimConfig oc = make_optim_config(cfg);
    double lambda;
    if (cfg.lambda) {
      lambda = *cfg.lambda;
    } else {
      lambda = cross_validate_lambda(s.train, spec, oc, cfg.cv_folds, cfg.seed)
                   .best_lambda;
      out << "cv_lambda," << lambda << '\n';
    }
    TrainResult tr = train_binary(s.train, spec, lambda, oc);
    out << "iterations," << tr.trace.back().iter << '\n';
    out << "grad_evals," << tr.trace.back().grad_evals << '\n';
    out << "objective," << std::setprecision(12) << tr.trace.back().value
        << '\n';
    out << "train_accuracy," << accuracy_binary(tr.h, s.train) << '\n';
    if (s.test) out << "test_accuracy," << accuracy_binary(tr.h, *s.test) << '\n';
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out);
      if (!f) throw ParseError("cannot write " + cfg.out);
      f << std::setprecision(17);
      for (double w : tr.h.w) f << w << '\n';
      f << tr.h.b << '\n';
      out << "model," << cfg.out << '\n';
    }
    return 0;
  });
}

int cmd_cv(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    echo_config(cfg, out);
    Splits s = load_splits(cfg);
    CvResult cv = cross_validate_lambda(s.train, make_loss_spec(cfg),
                                        make_optim_config(cfg), cfg.cv_folds,
                                        cfg.seed);
    out << "lambda,mean_accuracy\n";
    for (const auto& [lam, acc] : cv.per_lambda)
      out << lam << ',' << acc << '\n';
    out << "best_lambda," << cv.best_lambda << '\n';
    return 0;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    echo_config(cfg, out);
    if (cfg.test_path.empty())
      throw ConfigError("sweep: a test split is required");
    Splits s = load_splits(cfg);
    SweepOptions opt;
    opt.c_alpha_mag = cfg.calpha_mag;
    opt.cfg = make_optim_config(cfg);
    opt.folds = cfg.cv_folds;
    opt.seed = cfg.seed;
    opt.kmax = cfg.alphas_kmax;
    opt.jobs = effective_jobs(cfg);
    SweepResult r = sweep_alpha_grid(s.train, *s.test, opt);

    const std::string stem = cfg.out.empty() ? "sweep" : cfg.out;
    write_sweep_csv(r, stem + ".csv");
    write_sweep_sidecar(r, stem + ".json");

    out << "best_cell," << r.alphas_pos[r.best_row] << ','
        << r.alphas_neg[r.best_col] << ',' << r.best_accuracy << '\n';
    // MaxA-style fixed cell (7/8, 8/7), present whenever kmax >= 8.
    const auto& grid = r.alphas_pos;
    auto find_alpha = [&](double a) {
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - a) < 1e-12) return static_cast<std::ptrdiff_t>(i);
      return static_cast<std::ptrdiff_t>(-1);
    };
    const auto i78 = find_alpha(7.0 / 8.0), j87 = find_alpha(8.0 / 7.0);
    if (i78 >= 0 && j87 >= 0)
      out << "cell_7/8_8/7," << r.at(i78, j87) << '\n';
    out << "wall_seconds," << r.wall_seconds << '\n';

    std::size_t failed = 0;
    for (const auto& e : r.cell_errors)
      if (!e.empty()) ++failed;
    if (failed) out << "failed_cells," << failed << '\n';
    const double fail_frac =
        static_cast<double>(failed) / static_cast<double>(r.cell_errors.size());
    return fail_frac <= 0.05 ? 0 : 3;
  });
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    echo_config(cfg, out);
    Splits s = load_splits(cfg);
    const Dataset& score_on = s.test ? *s.test : s.train;
    const OptimConfig oc = make_optim_config(cfg);

    struct Row {
      std::string label;
      double lambda = std::numeric_limits<double>::quiet_NaN();
      double accuracy = std::numeric_limits<double>::quiet_NaN();
      std::string error;
      explicit Row(std::string l) : label(std::move(l)) {}
    };
    std::vector<LossSpec> specs;
    std::vector<Row> rows;
    for (const FocalParams& f : focal_grid()) {
      specs.emplace_back(f);
      std::ostringstream label;
      label << "focal," << f.pi << ',' << f.gamma << ',' << f.xi;
      if (f.pi == 0.5 && f.gamma == 1.0 && f.xi == 0.0)
        label << ",logistic-equivalent";
      rows.push_back(Row(label.str()));
    }
    specs.emplace_back(LogisticSpec{});
    rows.push_back(Row("logistic"));
    specs.push_back(make_loss_spec(
        [&] { RunConfig c = cfg; c.loss = "sic"; return c; }()));
    {
      std::ostringstream label;
      label << "sic," << cfg.alpha_pos << ',' << cfg.alpha_neg;
      rows.push_back(Row(label.str()));
    }

    const int jobs = effective_jobs(cfg);
    auto worker = [&](int w) {
      for (std::size_t i = w; i < specs.size(); i += jobs) {
        try {
          CvResult cv = cross_validate_lambda(s.train, specs[i], oc,
                                              cfg.cv_folds, cfg.seed);
          TrainResult tr = train_binary(s.train, specs[i], cv.best_lambda, oc);
          rows[i].lambda = cv.best_lambda;
          rows[i].accuracy = accuracy_binary(tr.h, score_on);
        } catch (const std::exception& e) {
          rows[i].error = e.what();
        }
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }

    out << "model,lambda,accuracy\n";
    std::size_t failed = 0;
    for (const Row& r : rows) {
      if (!r.error.empty()) {
        out << r.label << ",failed: " << r.error << '\n';
        ++failed;
        continue;
      }
      out << r.label << ',' << r.lambda << ',' << r.accuracy << '\n';
    }
    const double fail_frac =
        static_cast<double>(failed) / static_cast<double>(rows.size());
    return fail_frac <= 0.05 ? 0 : 3;
  });
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.train_path.empty()) {
    err << "error: a training dataset path is required\n";
    return 1;
  }
  if (cfg.command == "stats") return cmd_stats(cfg, out, err);
  if (cfg.command == "train") return cmd_train(cfg, out, err);
  if (cfg.command == "cv") return cmd_cv(cfg, out, err);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
  if (cfg.command == "compare") return cmd_compare(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return 1;
}

}  // namespace sigtron
