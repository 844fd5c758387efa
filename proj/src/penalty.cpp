#include "lopart/penalty.hpp"

#include <cmath>
#include <limits>

#include "lopart/errors.hpp"
#include "lopart/solver.hpp"

namespace lopart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGridSize = 21;

void require_matching(std::span<const double> features,
                      std::span<const TargetInterval> intervals) {
  if (features.size() != intervals.size()) {
    throw InvalidInput("features and intervals differ in length");
  }
  if (features.empty()) throw InvalidInput("need at least one sample");
}

}  // namespace

std::vector<double> penalty_grid() {
  std::vector<double> grid;
  grid.reserve(kGridSize);
  for (int k = 0; k < kGridSize; ++k) {
    grid.push_back(std::pow(10.0, -5.0 + 0.5 * k));
  }
  return grid;
}

ErrorCurve compute_error_curve(const DataSequence& seq,
                               const LabelSet& train_labels,
                               std::string sequence_id) {
  ErrorCurve curve;
  curve.sequence_id = std::move(sequence_id);
  curve.n = seq.size();
  curve.grid = penalty_grid();
  for (const double penalty : curve.grid) {
    const Segmentation fit = opart(seq, penalty);
    curve.errors.push_back(total_errors(train_labels, fit.changepoints));
  }
  return curve;
}

std::string_view to_string(PenaltyMethod method) {
  switch (method) {
    case PenaltyMethod::bic0:
      return "bic0";
    case PenaltyMethod::constant1:
      return "constant1";
    case PenaltyMethod::linear2:
      return "linear2";
  }
  return "unknown";
}

PenaltyMethod parse_penalty_method(std::string_view name) {
  if (name == "bic0" || name == "BIC.0") return PenaltyMethod::bic0;
  if (name == "constant1" || name == "constant.1") return PenaltyMethod::constant1;
  if (name == "linear2" || name == "linear.2") return PenaltyMethod::linear2;
  throw InvalidInput("unknown penalty method '" + std::string(name) + "'");
}

double bic_penalty(Position n) {
  if (n < 2) throw InvalidInput("BIC penalty needs n >= 2");
  return std::log(static_cast<double>(n));
}

double log_log_feature(Position n) {
  if (n < 2) throw InvalidInput("log log n is undefined for n < 2");
  return std::log(std::log(static_cast<double>(n)));
}

double predict_penalty(const PenaltyModel& model, Position n) {
  if (n < 2) throw InvalidInput("penalty prediction needs n >= 2");
  switch (model.method) {
    case PenaltyMethod::bic0:
      return bic_penalty(n);
    case PenaltyMethod::constant1:
      return model.b;
    case PenaltyMethod::linear2:
      // exp(w ln ln n + b) written so that (1, 0) gives ln n exactly.
      return std::exp(model.b) *
             std::pow(std::log(static_cast<double>(n)), model.w);
  }
  throw InvalidInput("unknown penalty method");
}

PenaltyModel best_constant(std::span<const ErrorCurve> curves) {
  if (curves.empty()) throw InvalidInput("need at least one error curve");
  const std::vector<double>& grid = curves.front().grid;
  std::vector<long> total(grid.size(), 0);
  for (const ErrorCurve& curve : curves) {
    if (curve.errors.size() != grid.size()) {
      throw InvalidInput("error curves use different grids");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      total[k] += curve.errors[k].errors();
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (total[k] <= total[best]) best = k;
  }
  return {PenaltyMethod::constant1, 0.0, grid[best]};
}

TargetInterval target_interval(const ErrorCurve& curve) {
  const std::size_t size = curve.errors.size();
  if (size == 0 || size != curve.grid.size()) {
    throw InvalidInput("error curve is empty or malformed");
  }
  long min_error = curve.errors.front().errors();
  for (const ErrorCounts& counts : curve.errors) {
    min_error = std::min(min_error, counts.errors());
  }
  std::size_t best_first = 0;
  std::size_t best_length = 0;
  for (std::size_t k = 0; k < size;) {
    if (curve.errors[k].errors() != min_error) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < size && curve.errors[end].errors() == min_error) ++end;
    if (end - k > best_length) {
      best_first = k;
      best_length = end - k;
    }
    k = end;
  }
  const std::size_t best_last = best_first + best_length - 1;
  return {best_first == 0 ? -kInf : std::log(curve.grid[best_first]),
          best_last + 1 == size ? kInf : std::log(curve.grid[best_last])};
}

double squared_hinge_loss(std::span<const double> features,
                          std::span<const TargetInterval> intervals, double w,
                          double b, double margin) {
  require_matching(features, intervals);
  double total = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double predicted = w * features[i] + b;
    const TargetInterval& target = intervals[i];
    if (std::isfinite(target.lo)) {
      const double below = target.lo + margin - predicted;
      if (below > 0.0) total += below * below;
    }
    if (std::isfinite(target.hi)) {
      const double above = predicted - target.hi + margin;
      if (above > 0.0) total += above * above;
    }
  }
  return total / static_cast<double>(features.size());
}

std::pair<double, double> squared_hinge_gradient(
    std::span<const double> features, std::span<const TargetInterval> intervals,
    double w, double b, double margin) {
  require_matching(features, intervals);
  double grad_w = 0.0;
  double grad_b = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double predicted = w * features[i] + b;
    const TargetInterval& target = intervals[i];
    double slope = 0.0;
    if (std::isfinite(target.lo)) {
      const double below = target.lo + margin - predicted;
      if (below > 0.0) slope -= 2.0 * below;
    }
    if (std::isfinite(target.hi)) {
      const double above = predicted - target.hi + margin;
      if (above > 0.0) slope += 2.0 * above;
    }
    grad_w += slope * features[i];
    grad_b += slope;
  }
  const double count = static_cast<double>(features.size());
  return {grad_w / count, grad_b / count};
}

LinearFit fit_linear2(std::span<const double> features,
                      std::span<const TargetInterval> intervals,
                      const HingeOptions& options) {
  require_matching(features, intervals);
  LinearFit fit;
  fit.model = {PenaltyMethod::linear2, 1.0, 0.0};

  bool any_finite = false;
  for (const TargetInterval& target : intervals) {
    any_finite = any_finite || std::isfinite(target.lo) || std::isfinite(target.hi);
  }
  if (!any_finite) {
    fit.degenerate = true;
    return fit;
  }

  double w = fit.model.w;
  double b = fit.model.b;
  for (; fit.iterations < options.max_iterations; ++fit.iterations) {
    fit.loss_trace.push_back(
        squared_hinge_loss(features, intervals, w, b, options.margin));
    const auto [grad_w, grad_b] =
        squared_hinge_gradient(features, intervals, w, b, options.margin);
    if (std::hypot(grad_w, grad_b) < options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    w -= options.step * grad_w;
    b -= options.step * grad_b;
  }
  if (!fit.converged) {
    fit.loss_trace.push_back(
        squared_hinge_loss(features, intervals, w, b, options.margin));
  }
  fit.model.w = w;
  fit.model.b = b;
  return fit;
}

}  // namespace lopart
