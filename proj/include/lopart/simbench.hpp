#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lopart/labels.hpp"
#include "lopart/sequence.hpp"
#include "lopart/solver.hpp"

namespace lopart {

// n i.i.d. standard normal draws; a pure function of (n, seed).
DataSequence simulate_normal(Position n, std::uint64_t seed);

// m positive labels, label k spanning [1 + k*spacing, 1 + k*spacing + width].
struct FixedCount {
  Position m = 0;
  Position width = 9;
  Position spacing = 10;
};

// floor(ratio * n) positive labels spread evenly, each of width
// min(9, spacing - 1) where spacing = floor(n / m).
struct Density {
  double ratio = 0.0;
};

using LabelScheme = std::variant<FixedCount, Density>;

// Throws InvalidInput when the scheme does not fit in n points.
LabelSet generate_labels(Position n, const LabelScheme& scheme);

struct BenchConfig {
  std::vector<Position> n_values;
  LabelScheme scheme = Density{0.0};
  int repeats = 5;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms = {Algorithm::opart, Algorithm::lopart};
};

struct TimingRow {
  Algorithm algorithm;
  Position n;
  Position m;
  double median_seconds;
  double q25;
  double q75;
};

// Times each algorithm on `repeats` simulated sequences per n, after one
// discarded warm-up solve. Rows are sorted by (algorithm, n, m). Throws
// std::logic_error if a solve disagrees with the correctness guard (M=0:
// lopart == opart; M>0: lopart satisfies every label).
std::vector<TimingRow> run_benchmark(const BenchConfig& config);

// Least-squares slope of ln(median_seconds) against ln(n).
double fit_slope(std::span<const TimingRow> rows, Algorithm algorithm);

// Labeled corpus entry used by the cross-validation harness.
struct CorpusEntry {
  std::string id;
  DataSequence data;
  LabelSet labels;
};

struct SyntheticCorpusOptions {
  int sequences = 20;
  Position n = 200;
  int labels_per_sequence = 4;
  std::uint64_t seed = 1;
};

// Piecewise-constant signals with Gaussian noise and occasional outliers.
// Each sequence gets at least one positive and one negative label: positive
// labels straddle a true change, negative labels cover a constant stretch
// (sometimes holding an outlier).
std::vector<CorpusEntry> synthetic_corpus(const SyntheticCorpusOptions& options);

}  // namespace lopart
