#pragma once

#include "lopart/labels.hpp"
#include "lopart/sequence.hpp"
#include "lopart/solver.hpp"

namespace lopart {

inline constexpr Position kBruteForceMaxSize = 16;

// Exhaustive reference solver: enumerates all 2^(N-1) changepoint subsets,
// keeps those satisfying every label, and returns the cheapest. Among
// equal-cost optima it returns the one the DP trace-back would produce
// (smallest last changepoint, then smallest second-to-last, ...). Costs within
// a relative 1e-12 are treated as equal.
//
// Throws InvalidInput when N > kBruteForceMaxSize or penalty is not finite.
Segmentation brute_force_solve(const DataSequence& seq, const LabelSet& labels,
                               double penalty);

}  // namespace lopart
