#include "lopart/labels.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lopart/errors.hpp"

namespace lopart {

namespace {

std::string describe(const Label& label) {
  return "(" + std::to_string(label.start) + ", " + std::to_string(label.end) +
         ", " + std::to_string(label.changes) + ")";
}

}  // namespace

LabelSet::LabelSet(std::vector<Label> labels, Position n)
    : labels_(std::move(labels)), n_(n) {
  for (const Label& label : labels_) {
    if (label.changes != 0) continue;
    for (Position i = label.start; i < label.end; ++i) {
      negative_region_.push_back(i);
    }
  }
}

bool LabelSet::is_negative(Position index) const {
  return std::binary_search(negative_region_.begin(), negative_region_.end(),
                            index);
}

std::size_t LabelSet::positive_count() const {
  return static_cast<std::size_t>(std::count_if(
      labels_.begin(), labels_.end(),
      [](const Label& label) { return label.positive(); }));
}

LabelSet LabelSet::subset(const std::function<bool(std::size_t)>& keep) const {
  std::vector<Label> kept;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (keep(j)) kept.push_back(labels_[j]);
  }
  return LabelSet(std::move(kept), n_);
}

LabelSet validate_labels(std::vector<Label> raw, Position n) {
  if (n < 1) throw InvalidInput("sequence length must be at least 1");
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const Label& label = raw[j];
    const std::string where = "label " + std::to_string(j) + " " +
                              describe(label) + ": ";
    if (label.changes != 0 && label.changes != 1) {
      throw InvalidInput(where + "changes must be 0 or 1", j);
    }
    if (label.start >= label.end) {
      throw InvalidInput(where + "start must be less than end", j);
    }
    if (label.start < 1 || label.end > n) {
      throw InvalidInput(
          where + "positions must lie within [1, " + std::to_string(n) + "]",
          j);
    }
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return raw[a].start < raw[b].start;
                   });

  std::vector<Label> sorted;
  sorted.reserve(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Label& label = raw[order[k]];
    if (k > 0 && sorted.back().end > label.start) {
      throw InvalidInput("label " + std::to_string(order[k]) + " " +
                             describe(label) + ": overlaps " +
                             describe(sorted.back()),
                         order[k]);
    }
    sorted.push_back(label);
  }
  return LabelSet(std::move(sorted), n);
}

std::size_t last_label_index(const LabelSet& labels, Position t) {
  const auto all = labels.labels();
  const auto it = std::partition_point(
      all.begin(), all.end(), [t](const Label& label) { return label.start < t; });
  return static_cast<std::size_t>(it - all.begin());
}

Position count_changes(std::span<const Position> changepoints, Position first,
                       Position last) {
  if (last <= first) return 0;
  const auto lo = std::lower_bound(changepoints.begin(), changepoints.end(), first);
  const auto hi = std::lower_bound(lo, changepoints.end(), last);
  return static_cast<Position>(hi - lo);
}

}  // namespace lopart
