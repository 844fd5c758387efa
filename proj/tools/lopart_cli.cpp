// Command-line front end: solve, evaluate, learn, cv, bench, serve, simulate.
//
// Exit codes: 0 success, 1 usage, 2 input validation, 3 internal error.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lopart/cv.hpp"
#include "lopart/errors.hpp"
#include "lopart/io.hpp"
#include "lopart/metrics.hpp"
#include "lopart/penalty.hpp"
#include "lopart/service.hpp"
#include "lopart/simbench.hpp"
#include "lopart/solver.hpp"

#ifndef LOPART_DEFAULT_STATIC_DIR
#define LOPART_DEFAULT_STATIC_DIR ""
#endif

namespace {

using namespace lopart;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

// Writes to the file at `path`, or to stdout when it is empty.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  write(out);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(std::span<const Position> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

struct SolveArgs {
  std::string data;
  std::string labels;
  std::string penalty;
  std::string model;
  std::string algorithm = "lopart";
  std::string out;
  std::string changepoints_out;
  int precision = io::kDefaultPrecision;
};

double resolve_penalty(const SolveArgs& args, Position n) {
  if (!args.penalty.empty() && !args.model.empty()) {
    throw UsageError("give either --penalty or --model, not both");
  }
  if (!args.model.empty()) return predict_penalty(io::read_model(args.model), n);
  if (args.penalty.empty()) throw UsageError("--penalty or --model is required");
  return io::parse_penalty(args.penalty);
}

Segmentation run_solver(const SolveArgs& args, const DataSequence& seq,
                        LabelSet& labels) {
  const Algorithm algorithm = parse_algorithm(args.algorithm);
  if (algorithm == Algorithm::segannot) {
    throw UsageError("--algorithm must be opart or lopart");
  }
  if (algorithm == Algorithm::lopart && args.labels.empty()) {
    throw UsageError("--labels is required with --algorithm lopart");
  }
  labels = args.labels.empty() ? validate_labels({}, seq.size())
                               : io::read_labels(args.labels, seq.size());
  if (algorithm == Algorithm::opart && !args.labels.empty()) {
    std::cerr << "warning: opart ignores labels; " << args.labels
              << " is only used for validation\n";
  }
  return solve(seq, labels, resolve_penalty(args, seq.size()), algorithm);
}

void add_solve_options(CLI::App* cmd, SolveArgs& args) {
  cmd->add_option("--data", args.data, "Data CSV (one value per line)")
      ->required();
  cmd->add_option("--labels", args.labels, "Labels CSV (start,end,changes)");
  cmd->add_option("--penalty", args.penalty, "Non-negative penalty or \"inf\"");
  cmd->add_option("--model", args.model, "Penalty model file from `learn`");
  cmd->add_option("--algorithm", args.algorithm, "opart or lopart")
      ->capture_default_str();
  cmd->add_option("--precision", args.precision,
                  "Significant digits in CSV output")
      ->capture_default_str();
}

int cmd_solve(const SolveArgs& args) {
  const DataSequence seq = io::read_data(args.data);
  LabelSet labels;
  const Segmentation fit = run_solver(args, seq, labels);
  std::cout << "cost: " << io::format_number(fit.cost, args.precision)
            << (fit.infinite_penalty() ? " (loss only; penalty is inf)" : "")
            << '\n'
            << "changepoints: " << join(fit.changepoints) << '\n';
  emit(args.out, [&](std::ostream& out) {
    io::write_segments(out, fit, args.precision);
  });
  if (!args.changepoints_out.empty()) {
    emit(args.changepoints_out, [&](std::ostream& out) {
      out << "changepoint\n";
      for (const Position cp : fit.changepoints) out << cp << '\n';
    });
  }
  return 0;
}

int cmd_evaluate(const SolveArgs& args, const std::string& segments_path) {
  const DataSequence seq = io::read_data(args.data);
  if (args.labels.empty()) throw UsageError("--labels is required");
  LabelSet labels = io::read_labels(args.labels, seq.size());
  std::vector<Position> changepoints;
  if (!segments_path.empty()) {
    if (!args.penalty.empty() || !args.model.empty()) {
      throw UsageError("give either --segments or a penalty, not both");
    }
    changepoints = io::read_segments(segments_path, seq.size());
  } else {
    changepoints = run_solver(args, seq, labels).changepoints;
  }
  const auto outcomes = classify_labels(labels, changepoints);
  const ErrorCounts totals = total_errors(labels, changepoints);
  emit(args.out, [&](std::ostream& out) {
    io::write_evaluation(out, labels, outcomes);
  });
  std::ostream& summary = args.out.empty() ? std::cerr : std::cout;
  summary << "fp=" << totals.fp << " fn=" << totals.fn << " tp=" << totals.tp
          << " errors=" << totals.errors() << " labels=" << totals.labels
          << " positive=" << totals.positive_labels << '\n';
  return 0;
}

struct CorpusArgs {
  std::string corpus;
  std::uint64_t seed = 1;
  int sequences = 20;
  Position n = 200;
  int labels = 4;
};

std::vector<CorpusEntry> load_corpus(const CorpusArgs& args) {
  if (!args.corpus.empty()) return io::read_corpus(args.corpus);
  return synthetic_corpus({args.sequences, args.n, args.labels, args.seed});
}

void add_synthetic_options(CLI::App* cmd, CorpusArgs& args) {
  cmd->add_option("--sequences", args.sequences,
                  "Synthetic corpus: number of sequences")
      ->capture_default_str();
  cmd->add_option("--n", args.n, "Synthetic corpus: points per sequence")
      ->capture_default_str();
  cmd->add_option("--label-count", args.labels,
                  "Synthetic corpus: labels per sequence")
      ->capture_default_str();
}

int cmd_learn(const CorpusArgs& corpus_args, const std::string& methods,
              const std::string& out) {
  const auto names = split_list(methods);
  if (names.size() != 1) throw UsageError("learn takes exactly one --methods value");
  const PenaltyMethod method = parse_penalty_method(names.front());
  const auto corpus = load_corpus(corpus_args);

  PenaltyModel model{method, 0.0, 0.0};
  if (method != PenaltyMethod::bic0) {
    std::vector<ErrorCurve> curves;
    std::vector<double> features;
    std::vector<TargetInterval> intervals;
    for (const CorpusEntry& entry : corpus) {
      curves.push_back(compute_error_curve(entry.data, entry.labels, entry.id));
      features.push_back(log_log_feature(entry.data.size()));
      intervals.push_back(target_interval(curves.back()));
    }
    if (method == PenaltyMethod::constant1) {
      model = best_constant(curves);
    } else {
      const LinearFit fit = fit_linear2(features, intervals);
      if (fit.degenerate) {
        std::cerr << "warning: every target interval is unbounded; "
                     "keeping (w, b) = (1, 0)\n";
      } else if (!fit.converged) {
        std::cerr << "warning: gradient descent stopped after "
                  << fit.iterations << " iterations without converging\n";
      }
      model = fit.model;
    }
  }
  emit(out, [&](std::ostream& stream) { io::write_model(stream, model); });
  return 0;
}

int cmd_cv(const CorpusArgs& corpus_args, int k, const std::string& mode,
           const std::string& methods, const std::string& out,
           const std::string& roc_out, int precision) {
  const auto corpus = load_corpus(corpus_args);
  CvOptions options;
  options.k = k;
  options.mode = parse_fold_mode(mode);
  options.seed = corpus_args.seed;
  options.methods.clear();
  for (const std::string& name : split_list(methods)) {
    options.methods.push_back(parse_penalty_method(name));
  }
  const CvResult result = run_cross_validation(corpus, options);
  emit(out, [&](std::ostream& stream) {
    io::write_report(stream, result.report, precision);
  });
  if (!roc_out.empty()) {
    emit(roc_out, [&](std::ostream& stream) {
      io::write_roc(stream, result.roc, precision);
    });
  }
  for (const RocSummary& summary : result.roc) {
    std::cerr << "split " << summary.split << ' ' << to_string(summary.algorithm)
              << ' ' << to_string(summary.method) << " auc="
              << (summary.curve.auc ? io::format_number(*summary.curve.auc)
                                    : std::string("NA"))
              << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string n_values = "1000,10000";
  double density = 0.0;
  Position fixed_count = -1;
  Position width = 9;
  Position spacing = 10;
  int repeats = 5;
  std::uint64_t seed = 1;
  std::string algorithm = "both";
  std::string out;
  int precision = io::kDefaultPrecision;
};

int cmd_bench(const BenchArgs& args) {
  BenchConfig config;
  for (const std::string& item : split_list(args.n_values)) {
    Position n = 0;
    try {
      n = static_cast<Position>(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidInput("--n-values: '" + item + "' is not a number");
    }
    config.n_values.push_back(n);
  }
  if (args.fixed_count >= 0) {
    config.scheme = FixedCount{args.fixed_count, args.width, args.spacing};
  } else {
    config.scheme = Density{args.density};
  }
  config.repeats = args.repeats;
  config.seed = args.seed;
  if (args.algorithm == "both") {
    config.algorithms = {Algorithm::opart, Algorithm::lopart};
  } else {
    const Algorithm algorithm = parse_algorithm(args.algorithm);
    if (algorithm == Algorithm::segannot) {
      throw UsageError("--algorithm must be opart, lopart or both");
    }
    config.algorithms = {algorithm};
  }
  const auto rows = run_benchmark(config);
  emit(args.out, [&](std::ostream& out) {
    io::write_timings(out, rows, args.precision);
  });
  if (config.n_values.size() >= 3) {
    for (const Algorithm algorithm : config.algorithms) {
      std::cerr << to_string(algorithm) << " log-log slope: "
                << io::format_number(fit_slope(rows, algorithm), 4) << '\n';
    }
  }
  std::cerr << "note: FPOP is not part of this toolkit and is not timed\n";
  return 0;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string corpus;
  std::string static_dir = LOPART_DEFAULT_STATIC_DIR;
  std::string snapshot_dir;
  Position max_size = service::kDefaultMaxSize;
};

int cmd_serve(const ServeArgs& args) {
  service::SessionStore store(args.max_size);
  if (!args.snapshot_dir.empty() &&
      std::filesystem::is_directory(args.snapshot_dir)) {
    store.load(args.snapshot_dir);
  }
  if (!args.corpus.empty()) {
    for (const CorpusEntry& entry : io::read_corpus(args.corpus)) {
      const auto values = entry.data.values();
      store.create_with_id(entry.id, {values.begin(), values.end()});
      const auto labels = entry.labels.labels();
      store.put_labels(entry.id, {labels.begin(), labels.end()});
    }
  }
  service::Server server(store, {args.static_dir});
  const int port = server.bind(args.host, args.port);
  if (port < 0) {
    std::cerr << "error: cannot bind " << args.host << ':' << args.port << '\n';
    return kExitInternal;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  std::cerr << "listening on http://" << args.host << ':' << port << '\n';
  server.listen();
  g_interrupted = true;
  watcher.join();
  if (!args.snapshot_dir.empty()) store.save(args.snapshot_dir);
  return 0;
}

int cmd_simulate(const CorpusArgs& args, const std::string& out_dir) {
  const auto corpus = synthetic_corpus({args.sequences, args.n, args.labels, args.seed});
  io::write_corpus(out_dir, corpus);
  std::cerr << "wrote " << corpus.size() << " sequences to " << out_dir << '\n';
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Labeled optimal partitioning changepoint toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Segment one data sequence");
  add_solve_options(solve_cmd, solve_args);
  solve_cmd->add_option("--out", solve_args.out,
                        "Segments CSV path (stdout when omitted)");
  solve_cmd->add_option("--changepoints-out", solve_args.changepoints_out,
                        "Write changepoints, one per line");

  SolveArgs eval_args;
  std::string segments_path;
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "Classify labels against a segmentation or a fresh fit");
  add_solve_options(eval_cmd, eval_args);
  eval_cmd->add_option("--segments", segments_path, "Segments CSV to evaluate");
  eval_cmd->add_option("--out", eval_args.out,
                       "Evaluation CSV path (stdout when omitted)");

  CorpusArgs learn_corpus;
  std::string learn_methods = "linear2";
  std::string learn_out;
  auto* learn_cmd = app.add_subcommand("learn", "Fit a penalty model on a corpus");
  learn_cmd->add_option("--corpus", learn_corpus.corpus,
                        "Corpus directory (synthetic corpus when omitted)");
  learn_cmd->add_option("--methods", learn_methods, "bic0, constant1 or linear2")
      ->capture_default_str();
  learn_cmd->add_option("--seed", learn_corpus.seed, "Synthetic corpus seed")
      ->capture_default_str();
  add_synthetic_options(learn_cmd, learn_corpus);
  learn_cmd->add_option("--out", learn_out, "Model file (stdout when omitted)");

  CorpusArgs cv_corpus;
  int k = 2;
  std::string mode = "random";
  std::string cv_methods = "bic0,constant1,linear2";
  std::string cv_out;
  std::string roc_out;
  int cv_precision = io::kDefaultPrecision;
  auto* cv_cmd = app.add_subcommand("cv", "Cross-validation experiment");
  cv_cmd->add_option("--corpus", cv_corpus.corpus,
                     "Corpus directory (synthetic corpus when omitted)");
  cv_cmd->add_option("--k", k, "Number of folds")->capture_default_str();
  cv_cmd->add_option("--mode", mode, "random or sequential")->capture_default_str();
  cv_cmd->add_option("--seed", cv_corpus.seed, "Fold and synthetic corpus seed")
      ->capture_default_str();
  cv_cmd->add_option("--methods", cv_methods, "Comma-separated penalty methods")
      ->capture_default_str();
  add_synthetic_options(cv_cmd, cv_corpus);
  cv_cmd->add_option("--out", cv_out, "Report CSV (stdout when omitted)");
  cv_cmd->add_option("--roc-out", roc_out, "ROC points CSV");
  cv_cmd->add_option("--precision", cv_precision, "Significant digits")
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time OPART and LOPART");
  bench_cmd->add_option("--n-values", bench_args.n_values,
                        "Comma-separated sequence sizes")
      ->capture_default_str();
  bench_cmd->add_option("--density", bench_args.density,
                        "Positive labels per data point")
      ->capture_default_str();
  bench_cmd->add_option("--fixed-count", bench_args.fixed_count,
                        "Use this many positive labels instead of --density");
  bench_cmd->add_option("--label-width", bench_args.width,
                        "Width of fixed-count labels")
      ->capture_default_str();
  bench_cmd->add_option("--label-spacing", bench_args.spacing,
                        "Spacing of fixed-count labels")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_args.repeats, "Timed runs per size")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Data seed")->capture_default_str();
  bench_cmd->add_option("--algorithm", bench_args.algorithm,
                        "opart, lopart or both")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Timing CSV (stdout when omitted)");
  bench_cmd->add_option("--precision", bench_args.precision, "Significant digits")
      ->capture_default_str();

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the labeling HTTP service");
  serve_cmd->add_option("--host", serve_args.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port, "Port (0 picks a free one)")
      ->capture_default_str();
  serve_cmd->add_option("--corpus", serve_args.corpus,
                        "Preload sessions from a corpus directory");
  serve_cmd->add_option("--static", serve_args.static_dir, "UI asset directory");
  serve_cmd->add_option("--snapshot-dir", serve_args.snapshot_dir,
                        "Load sessions from and save them to this directory");
  serve_cmd->add_option("--max-size", serve_args.max_size,
                        "Largest accepted sequence")
      ->capture_default_str();

  CorpusArgs sim_args;
  std::string sim_out;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Write the seeded synthetic corpus to disk");
  sim_cmd->add_option("--out", sim_out, "Output directory")->required();
  sim_cmd->add_option("--seed", sim_args.seed, "Seed")->capture_default_str();
  add_synthetic_options(sim_cmd, sim_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args);
    if (*eval_cmd) return cmd_evaluate(eval_args, segments_path);
    if (*learn_cmd) return cmd_learn(learn_corpus, learn_methods, learn_out);
    if (*cv_cmd) {
      return cmd_cv(cv_corpus, k, mode, cv_methods, cv_out, roc_out, cv_precision);
    }
    if (*bench_cmd) return cmd_bench(bench_args);
    if (*serve_cmd) return cmd_serve(serve_args);
    if (*sim_cmd) return cmd_simulate(sim_args, sim_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
