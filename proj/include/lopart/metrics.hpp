#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lopart/labels.hpp"

namespace lopart {

enum class LabelStatus { correct, false_positive, false_negative };

std::string_view to_string(LabelStatus status);

struct LabelOutcome {
  std::size_t label_index = 0;
  Position predicted_changes = 0;
  LabelStatus status = LabelStatus::correct;
  bool true_positive = false;
};

struct ErrorCounts {
  long fp = 0;
  long fn = 0;
  long tp = 0;
  long labels = 0;
  long positive_labels = 0;

  long errors() const { return fp + fn; }

  ErrorCounts& operator+=(const ErrorCounts& other) {
    fp += other.fp;
    fn += other.fn;
    tp += other.tp;
    labels += other.labels;
    positive_labels += other.positive_labels;
    return *this;
  }
  friend ErrorCounts operator+(ErrorCounts a, const ErrorCounts& b) {
    return a += b;
  }
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

// False positive: more predicted changes than expected (either polarity).
// False negative: no predicted change in a positive label.
// True positive: at least one predicted change in a positive label.
LabelOutcome classify_label(const Label& label,
                            std::span<const Position> changepoints,
                            std::size_t label_index = 0);

std::vector<LabelOutcome> classify_labels(
    const LabelSet& labels, std::span<const Position> changepoints);

ErrorCounts total_errors(const LabelSet& labels,
                         std::span<const Position> changepoints);

// tpr = tp / positive_labels and fpr = fp / labels; either is absent when its
// denominator is zero.
struct RocPoint {
  double penalty = 0.0;
  std::optional<double> tpr;
  std::optional<double> fpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  // sorted by fpr, then tpr
  std::optional<double> auc;     // absent when any rate is undefined
};

// Trapezoid-rule AUC after anchoring the curve at (0,0) and (1,1).
RocCurve roc_curve(std::span<const std::pair<double, ErrorCounts>> per_penalty);

}  // namespace lopart
