#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lopart/labels.hpp"
#include "lopart/sequence.hpp"

namespace lopart {

enum class Algorithm { opart, lopart, segannot };

std::string_view to_string(Algorithm algorithm);
// Accepts "opart", "lopart", "segannot"; throws InvalidInput otherwise.
Algorithm parse_algorithm(std::string_view name);

struct Segment {
  Position start;
  Position end;
  double mean;
};

struct Segmentation {
  Position n = 0;
  std::vector<Position> changepoints;  // sorted, each in 1..n-1
  std::vector<double> means;           // one per segment
  double loss = 0.0;                   // sum of segment square losses
  double cost = 0.0;                   // loss + penalty * |changepoints|
  double penalty = 0.0;                // may be +inf

  // For an infinite penalty the objective is infinite; `cost` then holds the
  // unpenalized loss and this flag is set.
  bool infinite_penalty() const;
  std::vector<Segment> segments() const;
};

// Dynamic programming tables, indexed by position 0..N.
struct DpState {
  std::vector<double> cost;          // W_t; W_0 = -penalty, +inf when skipped
  std::vector<Position> last_change;  // tau*_t, -1 when skipped
  std::vector<double> last_mean;      // mean of the segment tau*_t+1..t
  std::vector<Position> candidates;   // T_N after the final step
};

DpState opart_dp(const DataSequence& seq, double penalty);
// W_t and tau*_t are not computed for t in the negative region A^0.
DpState lopart_dp(const DataSequence& seq, const LabelSet& labels,
                  double penalty);

// Follows tau* back from N.
Segmentation decode(const DataSequence& seq, const DpState& state,
                    double penalty);

// Unconstrained optimal partitioning. penalty must be finite and >= 0.
Segmentation opart(const DataSequence& seq, double penalty);

// Optimal partitioning subject to every label constraint. Falls back to the
// unconstrained recursion when labels is empty.
Segmentation lopart(const DataSequence& seq, const LabelSet& labels,
                    double penalty);

// The penalty -> infinity limit: one change inside each positive label and
// none anywhere else.
Segmentation lopart_infinite(const DataSequence& seq, const LabelSet& labels);

// Positive labels plus negative labels filling every gap between them.
LabelSet positive_with_negative_complement(const LabelSet& labels);

// Dispatches on algorithm and penalty; an infinite penalty uses the
// dedicated limit path for lopart and a single segment for opart.
Segmentation solve(const DataSequence& seq, const LabelSet& labels,
                   double penalty, Algorithm algorithm);

// Sum of segment losses plus penalty per change, recomputed from scratch.
double recompute_cost(const DataSequence& seq,
                      std::span<const Position> changepoints, double penalty);

}  // namespace lopart
