#include "lopart/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lopart/errors.hpp"

namespace lopart {

namespace {

// Direct summation, independent of the prefix-sum path used by the DP.
SegmentFit direct_fit(std::span<const double> values, Position first,
                      Position last) {
  double sum = 0.0;
  for (Position i = first; i <= last; ++i) sum += values[i - 1];
  const double mean = sum / static_cast<double>(last - first + 1);
  double loss = 0.0;
  for (Position i = first; i <= last; ++i) {
    const double diff = values[i - 1] - mean;
    loss += diff * diff;
  }
  return {loss, mean};
}

// DP trace-back order: compare changepoints from the last one backwards; an
// exhausted list reads as position 0, the smallest possible.
bool traceback_precedes(const std::vector<Position>& a,
                        const std::vector<Position>& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  for (;; ++ia, ++ib) {
    const Position va = ia == a.rend() ? 0 : *ia;
    const Position vb = ib == b.rend() ? 0 : *ib;
    if (va != vb) return va < vb;
    if (va == 0) return false;
  }
}

}  // namespace

Segmentation brute_force_solve(const DataSequence& seq, const LabelSet& labels,
                               double penalty) {
  const Position n = seq.size();
  if (n > kBruteForceMaxSize) {
    throw InvalidInput("brute force is limited to N <= " +
                       std::to_string(kBruteForceMaxSize));
  }
  if (!std::isfinite(penalty) || penalty < 0.0) {
    throw InvalidInput("penalty must be finite and non-negative");
  }
  const auto values = seq.values();

  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<Position> best_changes;
  std::vector<Position> changes;
  const std::uint32_t subsets = std::uint32_t{1} << (n - 1);
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    changes.clear();
    for (Position i = 1; i < n; ++i) {
      if (mask & (std::uint32_t{1} << (i - 1))) changes.push_back(i);
    }
    const bool feasible = std::all_of(
        labels.labels().begin(), labels.labels().end(), [&](const Label& l) {
          return count_changes(changes, l.start, l.end) == l.changes;
        });
    if (!feasible) continue;

    double cost = penalty * static_cast<double>(changes.size());
    Position start = 1;
    for (std::size_t k = 0; k <= changes.size(); ++k) {
      const Position end = k < changes.size() ? changes[k] : n;
      cost += direct_fit(values, start, end).loss;
      start = end + 1;
    }

    const double tol = 1e-12 * std::max({1.0, std::abs(cost), std::abs(best_cost)});
    const bool better =
        !found || cost < best_cost - tol ||
        (std::abs(cost - best_cost) <= tol &&
         traceback_precedes(changes, best_changes));
    if (better) {
      found = true;
      best_cost = cost;
      best_changes = changes;
    }
  }
  if (!found) throw std::logic_error("no feasible segmentation");

  Segmentation out;
  out.n = n;
  out.penalty = penalty;
  out.changepoints = best_changes;
  out.cost = best_cost;
  Position start = 1;
  for (std::size_t k = 0; k <= best_changes.size(); ++k) {
    const Position end = k < best_changes.size() ? best_changes[k] : n;
    const SegmentFit fit = direct_fit(values, start, end);
    out.means.push_back(fit.mean);
    out.loss += fit.loss;
    start = end + 1;
  }
  return out;
}

}  // namespace lopart
