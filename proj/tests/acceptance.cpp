// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <data-dir>   (expects fixture300_{train,test}.csv)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sigtron/classify.hpp"
#include "sigtron/cli.hpp"

using namespace sigtron;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_data_dir = "data";
int g_failures = 0;

void report(int n, bool pass, const std::string& what,
            const std::string& detail = "") {
  std::printf("criterion %2d: %s  %s%s%s\n", n, pass ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int n, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(n, pass, what, detail);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Dataset make_dataset(std::vector<std::vector<double>> rows,
                     std::vector<int> labels) {
  Dataset ds;
  ds.rows = rows.size();
  ds.cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) ds.x.insert(ds.x.end(), r.begin(), r.end());
  ds.y = std::move(labels);
  ds.n_classes = 2;
  return ds;
}

// --- criterion 1: closed forms vs quadrature --------------------------------

bool criterion1(std::string& detail) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k) {
    for (int i = 0; i < 200; ++i) {
      const double a = 100.0 * i / 199.0;
      const double diff =
          std::abs(f_integral_closed(a, k) - f_integral_quadrature(a, 1.0 / k));
      worst = std::max(worst, diff);
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "max |closed - quadrature| = " << worst << ", " << secs << " s";
  detail = os.str();
  return worst <= 1e-8 && secs < 1.0;
}

// --- criterion 2: loss-gradient identity ------------------------------------

bool criterion2(std::string& detail) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(-5.0, 5.0);
  double worst = 0.0;
  for (double a : {0.0, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0}) {
    for (double mag : {1.0, 2.0, 5.0}) {
      SigtronParams p = SigtronParams::from_c_alpha(a, mag);
      int done = 0;
      while (done < 100) {
        const double x = ux(rng);
        if (std::abs(x + p.c_alpha) < 1e-3) continue;  // C1 kink
        ++done;
        const double h = 1e-6;
        const double fd =
            (sigtron_loss(p, x + h) - sigtron_loss(p, x - h)) / (2.0 * h);
        const double g = sigtron_loss_grad(p, x);
        worst = std::max(worst, std::abs(fd - g) / (1.0 + std::abs(g)));
      }
    }
  }
  std::ostringstream os;
  os << "max relative gap = " << worst;
  detail = os.str();
  return worst <= 1e-5;
}

// --- criterion 3: Theorem 2 derivatives -------------------------------------

bool criterion3(std::string& detail) {
  double worst = 0.0;
  // alpha inside each smoothness window (1 - 1/n, 1 + 1/n).
  const std::vector<std::vector<double>> alphas = {
      {0.25, 0.75, 1.25, 1.75},        // n = 1
      {0.6, 0.75, 1.25, 1.4},          // n = 2
      {0.7, 0.8, 1.2, 1.3}};           // n = 3
  for (int n = 1; n <= 3; ++n) {
    for (double a : alphas[n - 1]) {
      SigtronParams p = SigtronParams::from_c_alpha(a, 2.0);
      for (double x = -1.5; x <= 1.5; x += 0.25) {
        const double h = (n == 3) ? 2e-3 : 1e-4;
        double fd;
        if (n == 1) {
          fd = (sigtron::sigtron(p, x + h) - sigtron::sigtron(p, x - h)) / (2.0 * h);
        } else if (n == 2) {
          fd = (sigtron::sigtron(p, x + h) - 2.0 * sigtron::sigtron(p, x) + sigtron::sigtron(p, x - h)) /
               (h * h);
        } else {
          fd = (sigtron::sigtron(p, x + 2 * h) - 2.0 * sigtron::sigtron(p, x + h) +
                2.0 * sigtron::sigtron(p, x - h) - sigtron::sigtron(p, x - 2 * h)) /
               (2.0 * h * h * h);
        }
        const double v = sigtron_nth_deriv(p, n, x);
        worst = std::max(worst, std::abs(v - fd) / (1.0 + std::abs(fd)));
      }
      // Zero with continuity at the kink x = -c_alpha.  The derivative can
      // vanish slowly (like distance^{1/(alpha-1) - n}), so check decay over
      // shrinking offsets instead of a single magnitude.
      const double at = sigtron_nth_deriv(p, n, -p.c_alpha);
      if (at != 0.0) return false;
      const double sgn = (a > 1.0) ? 1.0 : -1.0;
      double prev = std::abs(sigtron_nth_deriv(p, n, -p.c_alpha + sgn * 1e-4));
      for (double d : {1e-6, 1e-8}) {
        const double cur = std::abs(sigtron_nth_deriv(p, n, -p.c_alpha + sgn * d));
        if (cur > prev + 1e-12) return false;
        prev = cur;
      }
      if (prev > 5e-3) return false;
    }
  }
  std::ostringstream os;
  os << "max relative FD gap = " << worst;
  detail = os.str();
  return worst <= 1e-4;
}

// --- criterion 4: Eq. (9) symmetry ------------------------------------------

bool criterion4(std::string& detail) {
  double worst = 0.0;
  for (double a = 0.0; a <= 2.0 + 1e-12; a += 0.125) {
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      SigtronParams p(a, c), q(2.0 - a, 1.0 / c);
      for (double x = -8.0; x <= 8.0; x += 0.05)
        worst = std::max(worst,
                         std::abs(sigtron::sigtron(p, x) - (1.0 - sigtron::sigtron(q, -x))));
    }
  }
  std::ostringstream os;
  os << "max asymmetry = " << worst;
  detail = os.str();
  return worst <= 1e-12;
}

// --- criterion 5: line-search contract --------------------------------------

bool criterion5(std::string& detail) {
  // Hand-traced sequences.
  {
    OptimConfig cfg;  // c2 = 0.4, rho0 = 1
    std::vector<double> trials;
    auto d1 = [](double r) { return 2.0 * (r - 1.0); };
    if (bisection_line_search(d1, -2.0, cfg, &trials) != 1.0) return false;
    if (trials != std::vector<double>{1.0}) return false;

    OptimConfig half = cfg;
    half.rho0 = 0.5;
    trials.clear();
    if (bisection_line_search(d1, -2.0, half, &trials) != 1.0) return false;
    if (trials != std::vector<double>{0.5, 1.0}) return false;

    trials.clear();
    auto d2 = [](double r) { return -std::exp(-r); };
    if (bisection_line_search(d2, -1.0, cfg, &trials) != 1.0) return false;
    if (trials != std::vector<double>{1.0}) return false;
  }
  // Random convex quadratics under each c2.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.1, 10.0), ur(0.05, 20.0);
  int max_trials = 0;
  for (double c2 : {0.1, 0.4, 0.9}) {
    OptimConfig cfg;
    cfg.c2 = c2;
    for (int i = 0; i < 50; ++i) {
      const double a = ua(rng), r0 = ur(rng);
      auto dphi = [&](double r) { return 2.0 * a * (r - r0); };
      std::vector<double> trials;
      const double rstar = bisection_line_search(dphi, dphi(0.0), cfg, &trials);
      max_trials = std::max(max_trials, static_cast<int>(trials.size()));
      if (rstar == 0.0) return false;
      if (std::abs(dphi(rstar)) > -c2 * dphi(0.0) + 1e-12) return false;
      if (trials.size() > 100) return false;
    }
  }
  std::ostringstream os;
  os << "worst trial count = " << max_trials;
  detail = os.str();
  return true;
}

// --- criterion 6: optimizer sanity ------------------------------------------

bool criterion6(std::string& detail) {
  Dataset ds = make_dataset(
      {{1.0, 1.0}, {2.0, 0.5}, {-1.0, -1.0}, {-2.0, -0.5}}, {1, 1, -1, -1});
  OptimConfig cfg;
  SicSpec sic1{SigtronParams(1.0, 1.0), SigtronParams(1.0, 1.0)};
  TrainResult tr = train_binary(ds, sic1, std::ldexp(1.0, -10), cfg);
  const bool sane = tr.trace.back().grad_inf_norm <= 1e-2 &&
                    accuracy_binary(tr.h, ds) == 100.0 &&
                    static_cast<int>(tr.trace.size()) - 1 <= 100;
  if (!sane) {
    detail = "SIC(alpha=1) run missed the exit contract";
    return false;
  }

  // Focal(0.5,1,0) with weight lambda has objective = 1/2 of the logistic
  // objective with 2*lambda, so both share one strongly convex minimizer;
  // drive both to tight tolerance and compare hyperplanes.
  OptimConfig tight;
  tight.eps_tol1 = 1e-12;
  tight.eps_tol2 = 1e-14;
  tight.max_outer = 500;
  const double lambda = std::ldexp(1.0, -4);
  TrainResult focal =
      train_binary(ds, FocalParams(0.5, 1.0, 0.0), lambda, tight);
  TrainResult logi = train_binary(ds, LogisticSpec{}, 2.0 * lambda, tight);
  double gap = std::abs(focal.h.b - logi.h.b);
  for (std::size_t j = 0; j < focal.h.w.size(); ++j)
    gap = std::max(gap, std::abs(focal.h.w[j] - logi.h.w[j]));
  std::ostringstream os;
  os << "focal-vs-logistic hyperplane gap = " << gap;
  detail = os.str();
  return gap <= 1e-8;
}

// --- criterion 7: Theorem 1 -------------------------------------------------

bool criterion7(std::string& detail) {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> usize(2, 60);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 1000; ++trial) {
    const int np = usize(rng), nn = usize(rng), dim = 4;
    Dataset ds;
    ds.rows = np + nn;
    ds.cols = dim;
    ds.n_classes = 2;
    ds.x.resize(ds.rows * dim);
    for (double& v : ds.x) v = u(rng);
    for (int i = 0; i < np + nn; ++i) ds.y.push_back(i < np ? 1 : -1);
    for (int j = 0; j < dim; ++j) {
      double mean = 0.0;
      for (std::size_t i = 0; i < ds.rows; ++i) mean += ds.x[i * dim + j];
      mean /= ds.rows;
      for (std::size_t i = 0; i < ds.rows; ++i) ds.x[i * dim + j] -= mean;
    }
    ImbalanceStats st = imbalance_stats(ds, 1);
    if (std::abs(st.r_sc - 1.0) < 1e-9) continue;
    ++checked;
    if (!(std::abs(st.r_sc - 1.0) < std::abs(st.r_c - 1.0) + 1e-6))
      return false;
  }
  std::ostringstream os;
  os << checked << " datasets checked";
  detail = os.str();
  return checked >= 1000;
}

// --- criterion 8: Theorem 4 / eta behavior ----------------------------------

bool criterion8(std::string& detail) {
  const auto t0 = Clock::now();
  // Two 2-dim blobs, 200 points each, centers +-2 on x (separation 4 sigma
  // with sigma = 1), r_c = 1.
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({2.0 + g(rng), g(rng)});
    labels.push_back(1);
  }
  for (int i = 0; i < 200; ++i) {
    rows.push_back({-2.0 + g(rng), g(rng)});
    labels.push_back(-1);
  }
  Dataset ds = make_dataset(rows, labels);

  const std::vector<std::pair<int, int>> orders = {
      {10, 1}, {2, 1}, {1, 1}, {1, 2}, {1, 10}};  // eta = k-/(k+ + k-)
  OptimConfig cfg;
  cfg.eps_tol1 = 1e-6;
  cfg.max_outer = 300;
  double prev_dist = -1e9;
  std::ostringstream os;
  bool ok = true;
  // The skewed-hyperplane ratio comes from linearizing the gradient around
  // the probability-half point, which requires the centroid margins to stay
  // inside (0, 1).  A strong ridge keeps ||w|| small enough for that; the
  // ratio itself is scale-invariant.
  const double lambda = 4096.0;
  for (auto [kp, kn] : orders) {
    SicSpec spec{SigtronParams::from_order(kp, 2.0, true),
                 SigtronParams::from_order(kn, 2.0, true)};
    TrainResult tr = train_binary(ds, spec, lambda, cfg);
    HyperplaneDiagnostics d = diagnostics(tr.h, ds, spec);
    const double eta = static_cast<double>(kn) / (kp + kn);
    const double want = eta / (1.0 - eta);
    const double got = d.signed_dist_pos / (-d.signed_dist_neg);
    const double rel = std::abs(got - want) / want;
    os << "eta=" << eta << " ratio=" << got << " (target " << want << ", "
       << rel * 100.0 << "%) dist+=" << d.signed_dist_pos << "; ";
    if (rel > 0.15) ok = false;
    // Positive-centroid distance grows with eta: larger eta means a stiffer
    // negative-class loss pushing the plane away from the negative centroid
    // (the paper's skewed-hyperplane mechanism; its Example 2 pairs the
    // smallest eta = 1/11 with the closest positive-centroid plane).
    if (d.signed_dist_pos <= prev_dist) ok = false;
    prev_dist = d.signed_dist_pos;
  }
  const double secs = seconds_since(t0);
  os << secs << " s";
  detail = os.str();
  return ok && secs < 30.0;
}

// --- criterion 9: protocol fidelity -----------------------------------------

bool criterion9(std::string& detail) {
  const auto alphas = alpha_grid();
  if (alphas.size() != 20) return false;
  // Exactly the Eq. (35) set.
  std::vector<double> expect;
  for (int k = 1; k <= 10; ++k) expect.push_back((k - 1.0) / k);
  for (int k = 10; k >= 1; --k) expect.push_back((k + 1.0) / k);
  for (std::size_t i = 0; i < 20; ++i)
    if (std::abs(alphas[i] - expect[i]) > 1e-15) return false;

  const auto lambdas = lambda_grid();
  if (lambdas.size() != 20) return false;
  for (int r = -14; r <= 5; ++r)
    if (lambdas[r + 14] != std::ldexp(1.0, r)) return false;

  if (focal_grid().size() != 152) return false;
  detail = "20x20 alpha cells, 20 lambdas, 152 focal models";
  return true;
}

// --- criterion 10: end-to-end sweep on the bundled fixture ------------------

bool criterion10(std::string& detail) {
  const std::string train_path = g_data_dir + "/fixture300_train.csv";
  const std::string test_path = g_data_dir + "/fixture300_test.csv";
  Dataset train = load_dataset(train_path, FileFormat::Csv);
  Dataset test = load_dataset(test_path, FileFormat::Csv);
  std::vector<Dataset*> apply = {&test};
  standardize(train, apply);

  SweepOptions opt;
  opt.jobs = 2;
  const auto t0 = Clock::now();
  SweepResult r = sweep_alpha_grid(train, test, opt);
  const double secs = seconds_since(t0);
  if (r.accuracy.size() != 400) return false;

  // Deterministic CSV across repeated runs.
  SweepResult r2 = sweep_alpha_grid(train, test, opt);
  write_sweep_csv(r, "acceptance_sweep_a.csv");
  write_sweep_csv(r2, "acceptance_sweep_b.csv");
  std::ifstream fa("acceptance_sweep_a.csv"), fb("acceptance_sweep_b.csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  const bool identical = sa.str() == sb.str();
  std::remove("acceptance_sweep_a.csv");
  std::remove("acceptance_sweep_b.csv");

  // Logistic baseline with the same CV protocol.
  OptimConfig cfg;
  CvResult cv = cross_validate_lambda(train, LogisticSpec{}, cfg, 4, 0);
  TrainResult logi = train_binary(train, LogisticSpec{}, cv.best_lambda, cfg);
  const double baseline = accuracy_binary(logi.h, test);

  std::ostringstream os;
  os << "sweep " << secs << " s, best_cell " << r.best_accuracy
     << "% vs logistic " << baseline << "%, deterministic="
     << (identical ? "yes" : "no");
  detail = os.str();
  return secs < 120.0 && identical && r.best_accuracy >= baseline;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_data_dir = argv[1];
  run(1, "closed-form/quadrature agreement (k=1..6)", criterion1);
  run(2, "loss-gradient identity (Eq. 11)", criterion2);
  run(3, "Theorem 2 derivative check (n=1..3)", criterion3);
  run(4, "extended symmetry (Eq. 9)", criterion4);
  run(5, "line-search contract (Algorithm 2)", criterion5);
  run(6, "optimizer sanity (SIC/focal/logistic)", criterion6);
  run(7, "Theorem 1 property (1000 datasets)", criterion7);
  run(8, "Theorem 4 / eta behavior", criterion8);
  run(9, "protocol fidelity (grids and cardinalities)", criterion9);
  run(10, "end-to-end sweep on the bundled fixture", criterion10);
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
