#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lopart/labels.hpp"
#include "lopart/metrics.hpp"
#include "lopart/penalty.hpp"
#include "lopart/simbench.hpp"
#include "lopart/solver.hpp"

namespace lopart {

enum class FoldMode { random, sequential };

std::string_view to_string(FoldMode mode);
FoldMode parse_fold_mode(std::string_view name);

struct FoldAssignment {
  std::string sequence_id;
  int k = 2;
  FoldMode mode = FoldMode::random;
  std::uint64_t seed = 0;
  std::vector<int> folds;  // per label, 1..k
};

// random: shuffle label indices with a generator seeded by `seed`, then deal
// folds round-robin. sequential: contiguous blocks in label order.
// Every fold receives at least one label. Throws InvalidInput when M < k.
FoldAssignment assign_folds(const LabelSet& labels, int k, FoldMode mode,
                            std::uint64_t seed, std::string sequence_id = {});

// Labels whose fold differs from / equals the test fold.
LabelSet train_labels(const LabelSet& labels, const FoldAssignment& folds,
                      int test_fold);
LabelSet test_labels(const LabelSet& labels, const FoldAssignment& folds,
                     int test_fold);

struct ReportRow {
  std::string sequence_id;
  int split = 0;  // the test fold
  Algorithm algorithm = Algorithm::opart;
  std::string method;  // "best" or a PenaltyMethod name
  double penalty = 0.0;
  ErrorCounts train;
  ErrorCounts test;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  // Sorted by (sequence_id, split, algorithm, method).
  void normalize();
  void append(const ExperimentReport& other);
};

// For each split: OPART (labels ignored) and LOPART (train labels) over the
// penalty grid, keeping the penalty with the fewest train+test errors (ties
// toward the larger penalty). SegAnnot is the infinite-penalty LOPART fit on
// the train labels.
ExperimentReport best_penalty_analysis(const CorpusEntry& entry,
                                       const FoldAssignment& folds,
                                       std::span<const Algorithm> algorithms);

struct RocSummary {
  int split = 0;
  Algorithm algorithm = Algorithm::opart;
  PenaltyMethod method = PenaltyMethod::bic0;
  RocCurve curve;
};

struct PredictedAnalysis {
  ExperimentReport report;
  std::vector<RocSummary> roc;
};

// For each split, fits every method on OPART train-label error curves, then
// runs OPART, LOPART and SegAnnot at each sequence's predicted penalty.
// ROC points come from scaling every predicted penalty by the grid factors
// 10^-5 .. 10^5 and pooling test errors across sequences.
PredictedAnalysis predicted_penalty_analysis(
    std::span<const CorpusEntry> corpus, std::span<const FoldAssignment> folds,
    std::span<const PenaltyMethod> methods);

struct CvOptions {
  int k = 2;
  FoldMode mode = FoldMode::random;
  std::uint64_t seed = 1;
  std::vector<PenaltyMethod> methods = {
      PenaltyMethod::bic0, PenaltyMethod::constant1, PenaltyMethod::linear2};
};

struct CvResult {
  ExperimentReport report;  // best-penalty rows followed by predicted rows
  std::vector<RocSummary> roc;
};

// Assigns folds per sequence (seed + sequence index), runs both analyses.
CvResult run_cross_validation(std::span<const CorpusEntry> corpus,
                              const CvOptions& options);

}  // namespace lopart
