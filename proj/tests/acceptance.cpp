// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lopart/brute_force.hpp"
#include "lopart/candidates.hpp"
#include "lopart/cv.hpp"
#include "lopart/io.hpp"
#include "lopart/metrics.hpp"
#include "lopart/penalty.hpp"
#include "lopart/simbench.hpp"
#include "lopart/solver.hpp"
#include "test_support.hpp"

namespace {

using namespace lopart;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kOracleRelTol = 1e-9;
constexpr double kOracleBudgetSeconds = 60.0;
constexpr double kGradientRelTol = 1e-4;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kLopartSlopeMin = 0.8;
constexpr double kLopartSlopeMax = 1.4;
constexpr double kOpartSlopeMin = 1.7;
constexpr double kOpartSlopeMax = 2.3;
constexpr double kNoLabelRuntimeRatio = 2.0;
constexpr double kTimingBudgetSeconds = 600.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

std::string cps_string(const std::vector<Position>& cps) {
  std::string out = "{";
  for (std::size_t i = 0; i < cps.size(); ++i) {
    out += (i ? "," : "") + std::to_string(cps[i]);
  }
  return out + "}";
}

Outcome oracle_equivalence() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  const std::vector<double> penalties{0.0, 0.5, 1.0, 10.0, 1e3};
  int comparisons = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const Position n = std::uniform_int_distribution<Position>(3, 12)(rng);
    const DataSequence seq = testing::random_sequence(rng, n);
    const LabelSet labels = testing::random_labels(rng, n, 3);
    const LabelSet none = validate_labels({}, n);
    for (double penalty : penalties) {
      const Segmentation dp = lopart::lopart(seq, labels, penalty);
      const Segmentation brute = brute_force_solve(seq, labels, penalty);
      if (!testing::near(dp.cost, brute.cost, kOracleRelTol) ||
          dp.changepoints != brute.changepoints) {
        out.fail(fmt("lopart instance %d penalty %g: dp %s cost %.17g, brute %s cost %.17g",
                     instance, penalty, cps_string(dp.changepoints).c_str(), dp.cost,
                     cps_string(brute.changepoints).c_str(), brute.cost));
      }
      const Segmentation dp_free = opart(seq, penalty);
      const Segmentation brute_free = brute_force_solve(seq, none, penalty);
      if (!testing::near(dp_free.cost, brute_free.cost, kOracleRelTol) ||
          dp_free.changepoints != brute_free.changepoints) {
        out.fail(fmt("opart instance %d penalty %g: dp %s, brute %s", instance, penalty,
                     cps_string(dp_free.changepoints).c_str(),
                     cps_string(brute_free.changepoints).c_str()));
      }
      comparisons += 2;
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kOracleBudgetSeconds) out.fail(fmt("took %.1f s", elapsed));
  if (out.pass) {
    out.detail = fmt("%d comparisons, rel tol %g, %.2f s", comparisons,
                     kOracleRelTol, elapsed);
  }
  return out;
}

Outcome zero_train_errors() {
  Outcome out;
  std::mt19937_64 rng(777);
  const std::vector<double> penalties{0.0, 1.0, 10.0, kInf};
  long labels_checked = 0;
  for (int instance = 0; instance < 500; ++instance) {
    const Position n = std::uniform_int_distribution<Position>(2, 200)(rng);
    const DataSequence seq = testing::random_sequence(rng, n);
    const LabelSet labels = testing::random_labels(rng, n, 8);
    for (double penalty : penalties) {
      const Segmentation fit = std::isinf(penalty) ? lopart_infinite(seq, labels)
                                                   : lopart::lopart(seq, labels, penalty);
      for (const LabelOutcome& o : classify_labels(labels, fit.changepoints)) {
        ++labels_checked;
        if (o.status != LabelStatus::correct) {
          out.fail(fmt("instance %d penalty %g label %zu is %s", instance, penalty,
                       o.label_index + 1, std::string(to_string(o.status)).c_str()));
        }
      }
    }
  }
  if (out.pass) out.detail = fmt("%ld label checks, all correct", labels_checked);
  return out;
}

std::string serialize(const Segmentation& fit) {
  std::ostringstream text;
  io::write_segments(text, fit, 17);
  char bits[sizeof(double)];
  std::memcpy(bits, &fit.cost, sizeof bits);
  text.write(bits, sizeof bits);
  std::memcpy(bits, &fit.loss, sizeof bits);
  text.write(bits, sizeof bits);
  return text.str();
}

Outcome no_label_equivalence() {
  Outcome out;
  std::mt19937_64 rng(4242);
  for (int instance = 0; instance < 100; ++instance) {
    const Position n = std::uniform_int_distribution<Position>(1, 300)(rng);
    const DataSequence seq = testing::random_sequence(rng, n);
    const double penalty = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
    const LabelSet none = validate_labels({}, n);
    if (serialize(lopart::lopart(seq, none, penalty)) != serialize(opart(seq, penalty))) {
      out.fail(fmt("instance %d (n=%lld, penalty %g) differs", instance,
                   static_cast<long long>(n), penalty));
    }
  }
  if (out.pass) out.detail = "100 instances byte-identical";
  return out;
}

Outcome infinite_penalty_contract() {
  Outcome out;
  std::mt19937_64 rng(99);
  for (int instance = 0; instance < 300; ++instance) {
    const Position n = std::uniform_int_distribution<Position>(2, 500)(rng);
    const DataSequence seq = testing::random_sequence(rng, n);
    const LabelSet labels = testing::random_labels(rng, n, 10);
    const Segmentation fit = solve(seq, labels, kInf, Algorithm::lopart);
    if (fit.changepoints.size() != labels.positive_count()) {
      out.fail(fmt("instance %d: %zu changes for %zu positive labels", instance,
                   fit.changepoints.size(), labels.positive_count()));
      continue;
    }
    for (Position cp : fit.changepoints) {
      bool inside_positive = false;
      for (const Label& label : labels.labels()) {
        inside_positive = inside_positive ||
                          (label.positive() && cp >= label.start && cp < label.end);
      }
      if (!inside_positive) out.fail(fmt("instance %d: change %lld outside positive labels",
                                         instance, static_cast<long long>(cp)));
    }
    for (const Label& label : labels.labels()) {
      if (label.positive() &&
          count_changes(fit.changepoints, label.start, label.end) != 1) {
        out.fail(fmt("instance %d: positive label without exactly one change", instance));
      }
    }
  }
  if (out.pass) out.detail = "300 instances";
  return out;
}

Outcome candidate_fixture() {
  Outcome out;
  const LabelSet labels = validate_labels({{45, 55, 1}, {80, 90, 0}}, 100);
  std::vector<Position> expected;
  for (Position t = 45; t <= 79; ++t) expected.push_back(t);
  for (Position t = 90; t <= 99; ++t) expected.push_back(t);

  CandidateSet incremental(labels);
  for (Position t = 1; t <= 100; ++t) incremental.advance(t);
  const auto got = incremental.positions();
  if (std::vector<Position>(got.begin(), got.end()) != expected) {
    out.fail("incremental candidate set differs");
  }
  std::vector<Position> stateless;
  for (Position t = 1; t <= 100; ++t) stateless = candidate_set_update(stateless, t, labels);
  if (stateless != expected) out.fail("stateless candidate set differs");

  const DataSequence seq = simulate_normal(100, 3);
  if (lopart_dp(seq, labels, 1.0).candidates != expected) {
    out.fail("solver's final candidate set differs");
  }
  if (out.pass) out.detail = "T_100 = {45..79} u {90..99}";
  return out;
}

Outcome opart_monotonicity() {
  Outcome out;
  std::mt19937_64 rng(5150);
  const auto grid = penalty_grid();
  for (int instance = 0; instance < 50; ++instance) {
    const Position n = std::uniform_int_distribution<Position>(10, 400)(rng);
    const DataSequence seq = testing::random_sequence(rng, n);
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (double penalty : grid) {
      const std::size_t count = opart(seq, penalty).changepoints.size();
      if (count > previous) {
        out.fail(fmt("instance %d: %zu changes at penalty %g after %zu", instance,
                     count, penalty, previous));
      }
      previous = count;
    }
  }
  if (out.pass) out.detail = "50 instances x 21 penalties";
  return out;
}

Outcome timing_shape() {
  Outcome out;
  const auto start = Clock::now();

  BenchConfig dense;
  dense.n_values = {1000, 10000, 100000};
  dense.scheme = Density{0.1};
  dense.algorithms = {Algorithm::lopart};
  const double lopart_slope = fit_slope(run_benchmark(dense), Algorithm::lopart);

  BenchConfig quadratic;
  quadratic.n_values = {1000, 3000, 10000};
  quadratic.scheme = Density{0.0};
  quadratic.algorithms = {Algorithm::opart};
  const double opart_slope = fit_slope(run_benchmark(quadratic), Algorithm::opart);

  BenchConfig unlabeled;
  unlabeled.n_values = {10000};
  unlabeled.scheme = Density{0.0};
  const auto rows = run_benchmark(unlabeled);
  double opart_median = 0.0;
  double lopart_median = 0.0;
  for (const TimingRow& row : rows) {
    (row.algorithm == Algorithm::opart ? opart_median : lopart_median) =
        row.median_seconds;
  }
  const double ratio = std::max(opart_median, lopart_median) /
                       std::min(opart_median, lopart_median);
  const double elapsed = seconds_since(start);

  if (lopart_slope < kLopartSlopeMin || lopart_slope > kLopartSlopeMax) {
    out.fail(fmt("lopart slope %.3f outside [%g, %g]", lopart_slope, kLopartSlopeMin,
                 kLopartSlopeMax));
  }
  if (opart_slope < kOpartSlopeMin || opart_slope > kOpartSlopeMax) {
    out.fail(fmt("opart slope %.3f outside [%g, %g]", opart_slope, kOpartSlopeMin,
                 kOpartSlopeMax));
  }
  if (!(ratio <= kNoLabelRuntimeRatio)) {
    out.fail(fmt("M=0 runtime ratio %.3f above %g", ratio, kNoLabelRuntimeRatio));
  }
  if (elapsed >= kTimingBudgetSeconds) out.fail(fmt("took %.1f s", elapsed));
  const std::string summary =
      fmt("lopart slope %.3f, opart slope %.3f, M=0 ratio %.3f, %.1f s", lopart_slope,
          opart_slope, ratio, elapsed);
  out.detail = out.pass ? summary : out.detail + " (" + summary + ")";
  return out;
}

Outcome penalty_learning() {
  Outcome out;
  if (bic_penalty(39) != std::log(39.0)) out.fail("bic_penalty(39) != ln 39");

  const PenaltyModel identity{PenaltyMethod::linear2, 1.0, 0.0};
  for (Position n = 10; n <= 100000; ++n) {
    if (predict_penalty(identity, n) != bic_penalty(n)) {
      out.fail(fmt("linear2(1,0) differs from BIC at n=%lld", static_cast<long long>(n)));
      break;
    }
  }

  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> uniform(-3.0, 3.0);
  std::vector<double> x;
  std::vector<TargetInterval> y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(uniform(rng));
    const double lo = uniform(rng);
    y.push_back({lo, lo + 0.5 + std::abs(uniform(rng))});
  }
  const double h = kFiniteDifferenceStep;
  for (int point = 0; point < 20; ++point) {
    const double w = uniform(rng);
    const double b = uniform(rng);
    const auto [gw, gb] = squared_hinge_gradient(x, y, w, b);
    const double nw =
        (squared_hinge_loss(x, y, w + h, b) - squared_hinge_loss(x, y, w - h, b)) / (2 * h);
    const double nb =
        (squared_hinge_loss(x, y, w, b + h) - squared_hinge_loss(x, y, w, b - h)) / (2 * h);
    if (!testing::near(gw, nw, kGradientRelTol) || !testing::near(gb, nb, kGradientRelTol)) {
      out.fail(fmt("gradient mismatch at (%g, %g): (%g, %g) vs (%g, %g)", w, b, gw, gb,
                   nw, nb));
    }
  }

  // Optimizer traces: the random fixture above plus intervals learned from a
  // synthetic corpus.
  std::vector<std::pair<std::vector<double>, std::vector<TargetInterval>>> fixtures{{x, y}};
  {
    std::vector<double> features;
    std::vector<TargetInterval> intervals;
    for (const CorpusEntry& entry : synthetic_corpus({20, 200, 4, 1})) {
      features.push_back(log_log_feature(entry.data.size()));
      intervals.push_back(target_interval(compute_error_curve(entry.data, entry.labels)));
    }
    fixtures.emplace_back(features, intervals);
  }
  int steps = 0;
  for (const auto& [features, intervals] : fixtures) {
    const LinearFit fit = fit_linear2(features, intervals);
    for (std::size_t i = 1; i < fit.loss_trace.size(); ++i, ++steps) {
      if (fit.loss_trace[i] > fit.loss_trace[i - 1]) {
        out.fail(fmt("loss increased at step %zu: %.17g -> %.17g", i,
                     fit.loss_trace[i - 1], fit.loss_trace[i]));
        break;
      }
    }
  }
  if (out.pass) {
    out.detail = fmt("BIC identities exact, 20 gradient points, %d descent steps", steps);
  }
  return out;
}

Outcome cv_pipeline() {
  Outcome out;
  const std::vector<CorpusEntry> corpus = synthetic_corpus({20, 200, 4, 1});
  const auto report_text = [&] {
    const CvResult result = run_cross_validation(corpus, {});
    std::ostringstream text;
    io::write_report(text, result.report, 17);
    io::write_roc(text, result.roc, 17);
    return std::pair{text.str(), result.report};
  };
  const auto [first_text, report] = report_text();
  const auto [second_text, unused] = report_text();
  if (first_text != second_text) out.fail("reports differ between runs");

  long lopart_rows = 0;
  long segannot_rows = 0;
  for (const ReportRow& row : report.rows) {
    if (row.algorithm == Algorithm::lopart) {
      ++lopart_rows;
      if (row.train.errors() != 0) {
        out.fail(row.sequence_id + " split " + std::to_string(row.split) + " " +
                 row.method + ": lopart train errors");
      }
    }
    if (row.algorithm == Algorithm::segannot) {
      ++segannot_rows;
      if (row.test.fp != 0) {
        out.fail(row.sequence_id + " split " + std::to_string(row.split) + " " +
                 row.method + ": segannot test fp");
      }
    }
  }
  if (out.pass) {
    out.detail = fmt("%zu rows (%ld lopart, %ld segannot), byte-identical",
                     report.rows.size(), lopart_rows, segannot_rows);
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle_equivalence", oracle_equivalence},
      {"zero_train_errors", zero_train_errors},
      {"no_label_equivalence", no_label_equivalence},
      {"infinite_penalty_contract", infinite_penalty_contract},
      {"candidate_set_fixture", candidate_fixture},
      {"opart_monotonicity", opart_monotonicity},
      {"timing_shape", timing_shape},
      {"penalty_learning", penalty_learning},
      {"cv_pipeline", cv_pipeline},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
