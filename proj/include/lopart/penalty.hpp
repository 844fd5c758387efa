#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lopart/labels.hpp"
#include "lopart/metrics.hpp"
#include "lopart/sequence.hpp"

namespace lopart {

// 21 penalties 10^-5, 10^-4.5, ..., 10^5.
std::vector<double> penalty_grid();

// OPART label errors against train labels at every grid penalty.
struct ErrorCurve {
  std::string sequence_id;
  Position n = 0;
  std::vector<double> grid;
  std::vector<ErrorCounts> errors;
};

ErrorCurve compute_error_curve(const DataSequence& seq,
                               const LabelSet& train_labels,
                               std::string sequence_id = {});

enum class PenaltyMethod { bic0, constant1, linear2 };

std::string_view to_string(PenaltyMethod method);
PenaltyMethod parse_penalty_method(std::string_view name);

// bic0: lambda = ln n.
// constant1: lambda = b (the selected grid penalty itself).
// linear2: ln lambda = w * ln ln n + b.
struct PenaltyModel {
  PenaltyMethod method = PenaltyMethod::bic0;
  double w = 0.0;
  double b = 0.0;
};

double bic_penalty(Position n);
double predict_penalty(const PenaltyModel& model, Position n);

// Grid penalty minimizing the summed label errors; ties go to the larger
// penalty.
PenaltyModel best_constant(std::span<const ErrorCurve> curves);

// Target interval for the log penalty, in natural-log units. Either end may
// be infinite.
struct TargetInterval {
  double lo;
  double hi;
};

// Longest contiguous run of grid points achieving the minimal error (first
// such run on ties). An end touching the grid boundary is widened to -inf or
// +inf.
TargetInterval target_interval(const ErrorCurve& curve);

struct HingeOptions {
  double margin = 1.0;
  double step = 0.01;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-6;
};

// Mean over samples of
//   max(0, lo + margin - f)^2 + max(0, f - hi + margin)^2,  f = w x + b.
// Infinite endpoints contribute nothing.
double squared_hinge_loss(std::span<const double> features,
                          std::span<const TargetInterval> intervals, double w,
                          double b, double margin = 1.0);

// Analytic gradient (d/dw, d/db) of squared_hinge_loss.
std::pair<double, double> squared_hinge_gradient(
    std::span<const double> features, std::span<const TargetInterval> intervals,
    double w, double b, double margin = 1.0);

struct LinearFit {
  PenaltyModel model;
  int iterations = 0;
  bool converged = false;
  // Set when no interval has a finite end: nothing to learn from, the
  // initialization (w, b) = (1, 0) is returned unchanged.
  bool degenerate = false;
  std::vector<double> loss_trace;  // loss before each step, then the final loss
};

// Fixed-step full-gradient descent from (w, b) = (1, 0).
LinearFit fit_linear2(std::span<const double> features,
                      std::span<const TargetInterval> intervals,
                      const HingeOptions& options = {});

// ln ln n, the single feature used by linear2.
double log_log_feature(Position n);

}  // namespace lopart
