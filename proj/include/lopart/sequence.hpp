#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace lopart {

// Data positions are 1-based everywhere outside this header. A changepoint at
// position i sits between data points i and i+1.
using Position = std::int64_t;

// Optimal single-segment fit under the square loss.
struct SegmentFit {
  double loss;
  double mean;
};

// Observations x_1..x_N plus prefix sums of x and x^2 so that the square loss
// of any segment costs O(1).
class DataSequence {
 public:
  // Throws InvalidInput when values is empty or holds a non-finite entry.
  explicit DataSequence(std::vector<double> values);

  Position size() const { return static_cast<Position>(values_.size()); }
  std::span<const double> values() const { return values_; }
  double value(Position i) const { return values_[i - 1]; }

  std::span<const double> cum_sum() const { return cum_sum_; }
  std::span<const double> cum_sq() const { return cum_sq_; }

  // No bounds checks; 1 <= first <= last <= size() is the caller's job.
  SegmentFit fit(Position first, Position last) const {
    const double count = static_cast<double>(last - first + 1);
    const double sum = cum_sum_[last] - cum_sum_[first - 1];
    const double mean = sum / count;
    if (first == last) return {0.0, mean};
    const double loss = cum_sq_[last] - cum_sq_[first - 1] - sum * mean;
    return {std::max(loss, 0.0), mean};
  }

 private:
  std::vector<double> values_;
  std::vector<double> cum_sum_;
  std::vector<double> cum_sq_;
};

// Checked form of DataSequence::fit: min over mu of sum_{i=p..q} (mu - x_i)^2
// together with the minimizing mu. Throws InvalidInput unless 1 <= p <= q <= N.
SegmentFit segment_loss(const DataSequence& seq, Position first, Position last);

}  // namespace lopart
