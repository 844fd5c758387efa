#include "lopart/sequence.hpp"

#include <cmath>
#include <string>

#include "lopart/errors.hpp"

namespace lopart {

DataSequence::DataSequence(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("data sequence must be non-empty");
  cum_sum_.assign(values_.size() + 1, 0.0);
  cum_sq_.assign(values_.size() + 1, 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!std::isfinite(x)) {
      throw InvalidInput(
          "data value at position " + std::to_string(i + 1) + " is not finite",
          i);
    }
    cum_sum_[i + 1] = cum_sum_[i] + x;
    cum_sq_[i + 1] = cum_sq_[i] + x * x;
  }
}

SegmentFit segment_loss(const DataSequence& seq, Position first,
                        Position last) {
  if (first < 1 || last > seq.size() || first > last) {
    throw InvalidInput("segment [" + std::to_string(first) + ", " +
                       std::to_string(last) + "] is not within [1, " +
                       std::to_string(seq.size()) + "]");
  }
  return seq.fit(first, last);
}

}  // namespace lopart
