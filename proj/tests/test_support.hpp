#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lopart/labels.hpp"
#include "lopart/sequence.hpp"

namespace lopart::testing {

inline bool near(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline DataSequence random_sequence(std::mt19937_64& rng, Position n) {
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> jump(0, 3);
  std::vector<double> values;
  double mean = 0.0;
  for (Position i = 0; i < n; ++i) {
    if (jump(rng) == 0) mean = std::round(noise(rng) * 4.0);
    values.push_back(mean + noise(rng));
  }
  return DataSequence(std::move(values));
}

// Up to max_labels non-overlapping labels with random polarity. Fewer come
// back when the sampled cut points leave no room.
inline LabelSet random_labels(std::mt19937_64& rng, Position n, int max_labels) {
  std::uniform_int_distribution<int> count_dist(0, max_labels);
  const int count = count_dist(rng);
  std::vector<Position> cuts;
  std::uniform_int_distribution<Position> pos(1, n);
  for (int i = 0; i < 2 * count; ++i) cuts.push_back(pos(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Label> labels;
  std::bernoulli_distribution positive(0.5);
  Position floor = 1;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
    const Position start = std::max(cuts[i], floor);
    const Position end = cuts[i + 1];
    if (start >= end) continue;
    labels.push_back({start, end, positive(rng) ? 1 : 0});
    floor = end;
  }
  return validate_labels(std::move(labels), n);
}

}  // namespace lopart::testing
