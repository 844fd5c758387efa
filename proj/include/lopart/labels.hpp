#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lopart/sequence.hpp"

namespace lopart {

// A labeled region [start, end] expecting `changes` changepoints among the
// change indices start..end-1. Only 0/1 labels are supported.
struct Label {
  Position start = 0;
  Position end = 0;
  int changes = 0;

  bool positive() const { return changes == 1; }
  friend bool operator==(const Label&, const Label&) = default;
};

// Validated, ordered labels for a sequence of length n:
//   1 <= start_1 < end_1 <= start_2 < ... < end_M <= n.
// Adjacent labels may share a boundary point; the change index at the shared
// point belongs to the later label.
class LabelSet {
 public:
  LabelSet() = default;

  std::span<const Label> labels() const { return labels_; }
  const Label& operator[](std::size_t j) const { return labels_[j]; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Position n() const { return n_; }

  // Sorted change indices covered by y=0 labels (A^0).
  const std::vector<Position>& negative_region() const {
    return negative_region_;
  }
  bool is_negative(Position index) const;

  std::size_t positive_count() const;

  // Labels for which keep(j) is true, in order. Any subset of a valid set is
  // valid, so no re-validation happens.
  LabelSet subset(const std::function<bool(std::size_t)>& keep) const;

  friend LabelSet validate_labels(std::vector<Label> raw, Position n);

 private:
  LabelSet(std::vector<Label> labels, Position n);

  std::vector<Label> labels_;
  std::vector<Position> negative_region_;
  Position n_ = 0;
};

// Sorts by start and checks every ordering/range constraint. Throws
// InvalidInput carrying the 0-based index (in `raw`) of the offending label.
LabelSet validate_labels(std::vector<Label> raw, Position n);

// J_t = max {0} u {j : start_j < t}, with labels numbered from 1.
std::size_t last_label_index(const LabelSet& labels, Position t);

// Number of changepoints among indices first..last-1.
Position count_changes(std::span<const Position> changepoints, Position first,
                       Position last);

}  // namespace lopart
