#include "lopart/cv.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "lopart/errors.hpp"

namespace lopart {

namespace {

constexpr std::string_view kBestMethod = "best";

struct Evaluation {
  double penalty;
  ErrorCounts train;
  ErrorCounts test;
};

Evaluation evaluate(const DataSequence& seq, const LabelSet& train,
                    const LabelSet& test, Algorithm algorithm, double penalty) {
  const Segmentation fit = solve(seq, train, penalty, algorithm);
  return {penalty, total_errors(train, fit.changepoints),
          total_errors(test, fit.changepoints)};
}

}  // namespace

std::string_view to_string(FoldMode mode) {
  return mode == FoldMode::random ? "random" : "sequential";
}

FoldMode parse_fold_mode(std::string_view name) {
  if (name == "random") return FoldMode::random;
  if (name == "sequential") return FoldMode::sequential;
  throw InvalidInput("unknown fold mode '" + std::string(name) + "'");
}

FoldAssignment assign_folds(const LabelSet& labels, int k, FoldMode mode,
                            std::uint64_t seed, std::string sequence_id) {
  const std::size_t count = labels.size();
  if (k < 1 || count < static_cast<std::size_t>(k)) {
    throw InvalidInput("sequence '" + sequence_id + "' has " +
                       std::to_string(count) + " labels, fewer than k=" +
                       std::to_string(k));
  }
  FoldAssignment out{std::move(sequence_id), k, mode, seed,
                     std::vector<int>(count, 0)};
  if (mode == FoldMode::sequential) {
    for (std::size_t j = 0; j < count; ++j) {
      out.folds[j] = static_cast<int>(j * static_cast<std::size_t>(k) / count) + 1;
    }
    return out;
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < count; ++i) {
    out.folds[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k)) + 1;
  }
  return out;
}

LabelSet train_labels(const LabelSet& labels, const FoldAssignment& folds,
                      int test_fold) {
  return labels.subset(
      [&](std::size_t j) { return folds.folds.at(j) != test_fold; });
}

LabelSet test_labels(const LabelSet& labels, const FoldAssignment& folds,
                     int test_fold) {
  return labels.subset(
      [&](std::size_t j) { return folds.folds.at(j) == test_fold; });
}

void ExperimentReport::normalize() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     return std::tie(a.sequence_id, a.split, a.algorithm,
                                     a.method) < std::tie(b.sequence_id, b.split,
                                                          b.algorithm, b.method);
                   });
}

void ExperimentReport::append(const ExperimentReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

ExperimentReport best_penalty_analysis(const CorpusEntry& entry,
                                       const FoldAssignment& folds,
                                       std::span<const Algorithm> algorithms) {
  if (folds.folds.size() != entry.labels.size()) {
    throw InvalidInput("fold assignment does not match the labels of '" +
                       entry.id + "'");
  }
  const std::vector<double> grid = penalty_grid();
  ExperimentReport report;
  for (int split = 1; split <= folds.k; ++split) {
    const LabelSet train = train_labels(entry.labels, folds, split);
    const LabelSet test = test_labels(entry.labels, folds, split);
    for (const Algorithm algorithm : algorithms) {
      Evaluation chosen{};
      if (algorithm == Algorithm::segannot) {
        chosen = evaluate(entry.data, train, test, algorithm,
                          std::numeric_limits<double>::infinity());
      } else {
        bool first = true;
        for (const double penalty : grid) {
          const Evaluation e = evaluate(entry.data, train, test, algorithm, penalty);
          const long total = e.train.errors() + e.test.errors();
          if (first || total <= chosen.train.errors() + chosen.test.errors()) {
            chosen = e;
            first = false;
          }
        }
      }
      report.rows.push_back({entry.id, split, algorithm, std::string(kBestMethod),
                             chosen.penalty, chosen.train, chosen.test});
    }
  }
  report.normalize();
  return report;
}

PredictedAnalysis predicted_penalty_analysis(
    std::span<const CorpusEntry> corpus, std::span<const FoldAssignment> folds,
    std::span<const PenaltyMethod> methods) {
  if (corpus.empty()) throw InvalidInput("corpus is empty");
  if (folds.size() != corpus.size()) {
    throw InvalidInput("need one fold assignment per sequence");
  }
  const int k = folds.front().k;
  for (const FoldAssignment& f : folds) {
    if (f.k != k) throw InvalidInput("fold assignments disagree on k");
  }

  const std::vector<double> factors = penalty_grid();
  PredictedAnalysis out;
  for (int split = 1; split <= k; ++split) {
    std::vector<LabelSet> train;
    std::vector<LabelSet> test;
    std::vector<ErrorCurve> curves;
    std::vector<double> features;
    std::vector<TargetInterval> intervals;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      train.push_back(train_labels(corpus[i].labels, folds[i], split));
      test.push_back(test_labels(corpus[i].labels, folds[i], split));
      curves.push_back(
          compute_error_curve(corpus[i].data, train.back(), corpus[i].id));
      features.push_back(log_log_feature(corpus[i].data.size()));
      intervals.push_back(target_interval(curves.back()));
    }

    for (const PenaltyMethod method : methods) {
      PenaltyModel model{method, 0.0, 0.0};
      if (method == PenaltyMethod::constant1) model = best_constant(curves);
      if (method == PenaltyMethod::linear2) {
        model = fit_linear2(features, intervals).model;
      }

      std::vector<double> predicted;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        predicted.push_back(predict_penalty(model, corpus[i].data.size()));
        for (const Algorithm algorithm :
             {Algorithm::opart, Algorithm::lopart, Algorithm::segannot}) {
          const double penalty = algorithm == Algorithm::segannot
                                     ? std::numeric_limits<double>::infinity()
                                     : predicted.back();
          const Evaluation e =
              evaluate(corpus[i].data, train[i], test[i], algorithm, penalty);
          out.report.rows.push_back({corpus[i].id, split, algorithm,
                                     std::string(to_string(method)), e.penalty,
                                     e.train, e.test});
        }
      }

      for (const Algorithm algorithm : {Algorithm::opart, Algorithm::lopart}) {
        std::vector<std::pair<double, ErrorCounts>> points;
        for (const double factor : factors) {
          ErrorCounts pooled;
          for (std::size_t i = 0; i < corpus.size(); ++i) {
            pooled += evaluate(corpus[i].data, train[i], test[i], algorithm,
                               predicted[i] * factor)
                          .test;
          }
          points.emplace_back(factor, pooled);
        }
        out.roc.push_back({split, algorithm, method, roc_curve(points)});
      }
    }
  }
  out.report.normalize();
  return out;
}

CvResult run_cross_validation(std::span<const CorpusEntry> corpus,
                              const CvOptions& options) {
  if (corpus.empty()) throw InvalidInput("corpus is empty");
  std::vector<FoldAssignment> folds;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    folds.push_back(assign_folds(corpus[i].labels, options.k, options.mode,
                                 options.seed + i, corpus[i].id));
  }
  CvResult result;
  const Algorithm all[] = {Algorithm::opart, Algorithm::lopart,
                           Algorithm::segannot};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    result.report.append(best_penalty_analysis(corpus[i], folds[i], all));
  }
  PredictedAnalysis predicted =
      predicted_penalty_analysis(corpus, folds, options.methods);
  result.report.append(predicted.report);
  result.report.normalize();
  result.roc = std::move(predicted.roc);
  return result;
}

}  // namespace lopart
