#include "lopart/metrics.hpp"

#include <algorithm>

#include "lopart/errors.hpp"

namespace lopart {

std::string_view to_string(LabelStatus status) {
  switch (status) {
    case LabelStatus::correct:
      return "correct";
    case LabelStatus::false_positive:
      return "false_positive";
    case LabelStatus::false_negative:
      return "false_negative";
  }
  return "unknown";
}

LabelOutcome classify_label(const Label& label,
                            std::span<const Position> changepoints,
                            std::size_t label_index) {
  LabelOutcome out;
  out.label_index = label_index;
  out.predicted_changes = count_changes(changepoints, label.start, label.end);
  if (out.predicted_changes > label.changes) {
    out.status = LabelStatus::false_positive;
  } else if (out.predicted_changes == 0 && label.changes == 1) {
    out.status = LabelStatus::false_negative;
  }
  out.true_positive = label.changes == 1 && out.predicted_changes >= 1;
  return out;
}

std::vector<LabelOutcome> classify_labels(
    const LabelSet& labels, std::span<const Position> changepoints) {
  std::vector<LabelOutcome> out;
  out.reserve(labels.size());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    out.push_back(classify_label(labels[j], changepoints, j));
  }
  return out;
}

ErrorCounts total_errors(const LabelSet& labels,
                         std::span<const Position> changepoints) {
  ErrorCounts counts;
  for (const Label& label : labels.labels()) {
    const LabelOutcome outcome = classify_label(label, changepoints);
    counts.labels += 1;
    counts.positive_labels += label.positive() ? 1 : 0;
    counts.fp += outcome.status == LabelStatus::false_positive ? 1 : 0;
    counts.fn += outcome.status == LabelStatus::false_negative ? 1 : 0;
    counts.tp += outcome.true_positive ? 1 : 0;
  }
  return counts;
}

RocCurve roc_curve(
    std::span<const std::pair<double, ErrorCounts>> per_penalty) {
  if (per_penalty.empty()) throw InvalidInput("ROC needs at least one point");
  RocCurve curve;
  bool defined = true;
  for (const auto& [penalty, counts] : per_penalty) {
    RocPoint point{penalty, std::nullopt, std::nullopt};
    if (counts.positive_labels > 0) {
      point.tpr = static_cast<double>(counts.tp) /
                  static_cast<double>(counts.positive_labels);
    }
    if (counts.labels > 0) {
      point.fpr = static_cast<double>(counts.fp) /
                  static_cast<double>(counts.labels);
    }
    defined = defined && point.tpr && point.fpr;
    curve.points.push_back(point);
  }
  if (!defined) return curve;

  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const RocPoint& a, const RocPoint& b) {
                     if (*a.fpr != *b.fpr) return *a.fpr < *b.fpr;
                     return *a.tpr < *b.tpr;
                   });
  double area = 0.0;
  double prev_fpr = 0.0;
  double prev_tpr = 0.0;
  for (const RocPoint& point : curve.points) {
    area += (*point.fpr - prev_fpr) * (*point.tpr + prev_tpr) / 2.0;
    prev_fpr = *point.fpr;
    prev_tpr = *point.tpr;
  }
  area += (1.0 - prev_fpr) * (1.0 + prev_tpr) / 2.0;
  curve.auc = area;
  return curve;
}

}  // namespace lopart
