#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sigtron/extfun.hpp"

// Per-sample margin losses (virtual SIGTRON-induced, pi-weighted convex
// focal, logistic) and the regularized training objective with its gradient.

namespace sigtron {

/// Virtual SIGTRON-induced loss L^S_{alpha,c}(x); alpha == 1 dispatches to
/// the logistic loss (the canonical-sigmoid limit).
double sigtron_loss(const SigtronParams& p, double x);

/// Its gradient s_{alpha,c}(x) - 1, defined for every alpha in [0,2].
double sigtron_loss_grad(const SigtronParams& p, double x);

/// pi-weighted convex focal loss parameters.
struct FocalParams {
  double pi;     // class weight in (0,1)
  double gamma;  // stiffness >= 1
  double xi;     // shift >= 0
  FocalParams(double pi_, double gamma_, double xi_);
};

// Margin convention: the positive-class loss takes m = h(x), the negative
// class takes the reflected margin m = -h(x).
double focal_loss_pos(const FocalParams& f, double margin);
double focal_loss_neg(const FocalParams& f, double margin);
double focal_loss_pos_grad(const FocalParams& f, double margin);
double focal_loss_neg_grad(const FocalParams& f, double margin);

/// Stable log(1 + e^{-x}).
double logistic_loss(double x);
/// d/dx logistic loss = sigma(x) - 1.
double logistic_loss_grad(double x);

struct SicSpec {
  SigtronParams pos;
  SigtronParams neg;
};
struct LogisticSpec {};

using LossSpec = std::variant<SicSpec, FocalParams, LogisticSpec>;

/// Per-class margin loss value/gradient under a LossSpec.  positive selects
/// L_+ (margin h(x)) versus L_- (margin -h(x)).
double margin_loss(const LossSpec& spec, bool positive, double margin);
double margin_loss_grad(const LossSpec& spec, bool positive, double margin);

class Dataset;  // data.hpp

/// F(w,b) = sum_+ L_+(h(x_i)) + sum_- L_-(-h(x_j)) + (lambda/2)||w||^2.
/// The gradient stacks d/dw (with the lambda*w term) and d/db (never
/// regularized).
struct Objective {
  const Dataset* ds;
  LossSpec spec;
  double lambda;

  Objective(const Dataset& dataset, LossSpec s, double lam);

  double value(std::span<const double> wb) const;
  // Returns the value; writes the full gradient of dimension s+1.
  double value_and_grad(std::span<const double> wb,
                        std::vector<double>& grad) const;
  void grad_only(std::span<const double> wb, std::vector<double>& grad) const;
  std::size_t dim() const;
};

}  // namespace sigtron
