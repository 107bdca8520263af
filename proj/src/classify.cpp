#include "sigtron/classify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace sigtron {

double Hyperplane::decision(std::span<const double> x) const {
  if (x.size() != w.size())
    throw ConfigError("Hyperplane: feature dimension mismatch");
  double h = b;
  for (std::size_t j = 0; j < w.size(); ++j) h += w[j] * x[j];
  return h;
}

TrainResult train_binary(const Dataset& ds, const LossSpec& spec, double lambda,
                         const OptimConfig& cfg) {
  Objective obj(ds, spec, lambda);
  std::vector<double> x0(obj.dim(), 0.0);
  auto value = [&obj](const std::vector<double>& x) { return obj.value(x); };
  auto grad = [&obj](const std::vector<double>& x, std::vector<double>& g) {
    obj.grad_only(x, g);
  };
  MinimizeResult res = minimize(value, grad, std::move(x0), cfg);
  TrainResult out;
  out.h.w.assign(res.x.begin(), res.x.end() - 1);
  out.h.b = res.x.back();
  out.trace = std::move(res.trace);
  out.reason = res.reason;
  return out;
}

int predict_binary(const Hyperplane& h, std::span<const double> x) {
  return h.decision(x) >= 0.0 ? 1 : -1;
}

double accuracy_binary(const Hyperplane& h, const Dataset& ds) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.rows; ++i)
    if (predict_binary(h, ds.row(i)) == ds.y[i]) ++hits;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ds.rows);
}

std::vector<double> lambda_grid() {
  std::vector<double> out;
  for (int r = -14; r <= 5; ++r) out.push_back(std::ldexp(1.0, r));
  return out;
}

CvResult cross_validate_lambda(const Dataset& ds, const LossSpec& spec,
                               const OptimConfig& cfg, int folds,
                               std::uint64_t seed) {
  Dataset work = ds;
  if (work.fold_ids.size() != work.rows) kfold_assign(work, folds, seed);
  std::vector<Dataset> train_parts, test_parts;
  for (int f = 0; f < folds; ++f) {
    train_parts.push_back(fold_split(work, f, false));
    test_parts.push_back(fold_split(work, f, true));
  }
  CvResult res;
  res.best_lambda = 0.0;
  double best_acc = -1.0;
  for (double lambda : lambda_grid()) {
    double acc_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
      TrainResult tr = train_binary(train_parts[f], spec, lambda, cfg);
      acc_sum += accuracy_binary(tr.h, test_parts[f]);
    }
    const double mean_acc = acc_sum / folds;
    res.per_lambda.emplace_back(lambda, mean_acc);
    if (mean_acc >= best_acc) {  // ties -> larger lambda (grid is ascending)
      best_acc = mean_acc;
      res.best_lambda = lambda;
    }
  }
  return res;
}

OvaModel train_ova(const Dataset& ds, const LossSpec& spec,
                   const OptimConfig& cfg, int folds, std::uint64_t seed) {
  if (ds.n_classes < 2) throw ConfigError("train_ova: need at least 2 classes");
  OvaModel model;
  const int k = ds.binary() ? 2 : ds.n_classes;
  for (int cls = 0; cls < k; ++cls) {
    const int positive = ds.binary() ? (cls == 0 ? 1 : -1) : cls;
    Dataset view = make_ova_view(ds, positive);
    CvResult cv = cross_validate_lambda(view, spec, cfg, folds, seed);
    TrainResult tr = train_binary(view, spec, cv.best_lambda, cfg);
    model.planes.push_back(std::move(tr.h));
    model.lambdas.push_back(cv.best_lambda);
  }
  return model;
}

int predict_ova(const OvaModel& model, std::span<const double> x) {
  int best = 0;
  double best_score = model.planes[0].decision(x);
  for (std::size_t k = 1; k < model.planes.size(); ++k) {
    const double s = model.planes[k].decision(x);
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(k);
    }
  }
  return best;
}

double accuracy_ova(const OvaModel& model, const Dataset& ds) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ds.rows; ++i) {
    const int pred = predict_ova(model, ds.row(i));
    const int truth = ds.binary() ? (ds.y[i] == 1 ? 0 : 1) : ds.y[i];
    if (pred == truth) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ds.rows);
}

std::vector<double> alpha_grid(int kmax) {
  std::vector<double> out;
  for (int k = 1; k <= kmax; ++k) out.push_back((k - 1.0) / k);
  for (int k = kmax; k >= 1; --k) out.push_back((k + 1.0) / k);
  return out;
}

namespace {

struct CellOutcome {
  double accuracy = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

CellOutcome run_cell(const Dataset& train, const Dataset& test, double a_pos,
                     double a_neg, const SweepOptions& opt) {
  CellOutcome out;
  try {
    SicSpec spec{SigtronParams::from_c_alpha(a_pos, opt.c_alpha_mag),
                 SigtronParams::from_c_alpha(a_neg, opt.c_alpha_mag)};
    if (train.binary()) {
      CvResult cv =
          cross_validate_lambda(train, spec, opt.cfg, opt.folds, opt.seed);
      TrainResult tr = train_binary(train, spec, cv.best_lambda, opt.cfg);
      out.accuracy = accuracy_binary(tr.h, test);
      out.lambda = cv.best_lambda;
    } else {
      OvaModel m = train_ova(train, spec, opt.cfg, opt.folds, opt.seed);
      out.accuracy = accuracy_ova(m, test);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

SweepResult sweep_alpha_grid(const Dataset& train, const Dataset& test,
                             const SweepOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult r;
  r.alphas_pos = alpha_grid(opt.kmax);
  r.alphas_neg = r.alphas_pos;
  const std::size_t n = r.alphas_pos.size();
  r.accuracy.assign(n * n, 0.0);
  r.chosen_lambda.assign(n * n, 0.0);
  r.cell_errors.assign(n * n, "");

  const int jobs = std::max(1, opt.jobs);
  auto worker = [&](int w) {
    for (std::size_t idx = w; idx < n * n; idx += jobs) {
      const std::size_t i = idx / n, j = idx % n;
      CellOutcome c =
          run_cell(train, test, r.alphas_pos[i], r.alphas_neg[j], opt);
      r.accuracy[idx] = c.accuracy;
      r.chosen_lambda[idx] = c.lambda;
      r.cell_errors[idx] = std::move(c.error);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  r.best_accuracy = -1.0;
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    if (std::isnan(r.accuracy[idx])) continue;
    if (r.accuracy[idx] > r.best_accuracy) {
      r.best_accuracy = r.accuracy[idx];
      r.best_row = idx / n;
      r.best_col = idx % n;
    }
  }
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void write_sweep_csv(const SweepResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  out << "alpha_pos\\alpha_neg";
  for (double a : r.alphas_neg) out << ',' << a;
  out << '\n';
  const std::size_t n = r.n();
  for (std::size_t i = 0; i < n; ++i) {
    out << r.alphas_pos[i];
    for (std::size_t j = 0; j < n; ++j) out << ',' << r.at(i, j);
    out << '\n';
  }
}

void write_sweep_sidecar(const SweepResult& r, const std::string& path) {
  nlohmann::json j;
  j["best_cell"] = {{"alpha_pos", r.alphas_pos[r.best_row]},
                    {"alpha_neg", r.alphas_neg[r.best_col]},
                    {"accuracy", r.best_accuracy}};
  j["chosen_lambda"] = r.chosen_lambda;
  j["wall_seconds"] = r.wall_seconds;
  std::vector<std::string> failures;
  for (std::size_t idx = 0; idx < r.cell_errors.size(); ++idx)
    if (!r.cell_errors[idx].empty())
      failures.push_back(std::to_string(idx) + ": " + r.cell_errors[idx]);
  j["failed_cells"] = failures;
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << '\n';
}

HyperplaneDiagnostics diagnostics(const Hyperplane& h, const Dataset& ds,
                                  const SicSpec& spec) {
  double wn = 0.0;
  for (double v : h.w) wn += v * v;
  wn = std::sqrt(wn);
  if (wn == 0.0) throw ConfigError("diagnostics: degenerate plane (w = 0)");
  if (!spec.pos.order || !spec.neg.order)
    throw ConfigError("diagnostics: eta needs unit-fraction polynomial orders");
  ImbalanceStats st = imbalance_stats(ds, 1);
  HyperplaneDiagnostics d;
  const double kp = *spec.pos.order, kn = *spec.neg.order;
  d.eta = kn / (kp + kn);
  d.signed_dist_pos = h.decision(st.pos_centroid) / wn;
  d.signed_dist_neg = h.decision(st.neg_centroid) / wn;
  double diff_norm = 0.0, dot = 0.0;
  for (std::size_t j = 0; j < ds.cols; ++j) {
    const double dj = st.pos_centroid[j] - st.neg_centroid[j];
    diff_norm += dj * dj;
    dot += h.w[j] * dj;
  }
  d.cos_theta_pos = dot / (wn * std::sqrt(diff_norm));
  return d;
}

}  // namespace sigtron
