#include "lopart/simbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lopart/errors.hpp"
#include "lopart/metrics.hpp"

namespace lopart {

namespace {

double quantile(std::vector<double> sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double time_solve(Algorithm algorithm, const DataSequence& seq,
                  const LabelSet& labels, double penalty, Segmentation& out) {
  const auto start = std::chrono::steady_clock::now();
  out = algorithm == Algorithm::opart ? opart(seq, penalty)
                                      : lopart(seq, labels, penalty);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

Position uniform(std::mt19937_64& rng, Position lo, Position hi) {
  return std::uniform_int_distribution<Position>(lo, hi)(rng);
}

}  // namespace

DataSequence simulate_normal(Position n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (double& x : values) x = normal(rng);
  return DataSequence(std::move(values));
}

LabelSet generate_labels(Position n, const LabelScheme& scheme) {
  std::vector<Label> raw;
  if (const auto* fixed = std::get_if<FixedCount>(&scheme)) {
    if (fixed->m < 0 || fixed->width < 1 || fixed->spacing < fixed->width) {
      throw InvalidInput("fixed label scheme needs m >= 0, width >= 1 and "
                         "spacing >= width");
    }
    if (fixed->m > 0 &&
        1 + (fixed->m - 1) * fixed->spacing + fixed->width > n) {
      throw InvalidInput(std::to_string(fixed->m) + " labels of width " +
                         std::to_string(fixed->width) + " every " +
                         std::to_string(fixed->spacing) +
                         " points do not fit in " + std::to_string(n));
    }
    for (Position k = 0; k < fixed->m; ++k) {
      const Position start = 1 + k * fixed->spacing;
      raw.push_back({start, start + fixed->width, 1});
    }
  } else {
    const double ratio = std::get<Density>(scheme).ratio;
    if (!(ratio >= 0.0) || ratio > 1.0) {
      throw InvalidInput("label density must lie in [0, 1]");
    }
    const auto m = static_cast<Position>(
        std::floor(ratio * static_cast<double>(n)));
    if (m > 0) {
      const Position spacing = n / m;
      const Position width = std::min<Position>(9, spacing - 1);
      if (width < 1) {
        throw InvalidInput("label density " + std::to_string(ratio) +
                           " leaves no room for labels of width >= 1");
      }
      for (Position k = 0; k < m; ++k) {
        const Position start = 1 + k * spacing;
        raw.push_back({start, start + width, 1});
      }
    }
  }
  return validate_labels(std::move(raw), n);
}

std::vector<TimingRow> run_benchmark(const BenchConfig& config) {
  if (config.repeats < 3) throw InvalidInput("repeats must be at least 3");
  if (config.n_values.empty()) throw InvalidInput("no n values to benchmark");
  std::vector<TimingRow> rows;
  for (const Position n : config.n_values) {
    const LabelSet labels = generate_labels(n, config.scheme);
    const auto m = static_cast<Position>(labels.size());
    const double penalty = std::log(static_cast<double>(std::max<Position>(n, 2)));

    std::vector<std::vector<double>> seconds(config.algorithms.size());
    Segmentation scratch;
    {
      const DataSequence warm = simulate_normal(n, config.seed);
      for (const Algorithm algorithm : config.algorithms) {
        time_solve(algorithm, warm, labels, penalty, scratch);
      }
    }
    for (int r = 0; r < config.repeats; ++r) {
      const DataSequence seq =
          simulate_normal(n, config.seed + static_cast<std::uint64_t>(r));
      std::vector<Segmentation> fits(config.algorithms.size());
      for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        seconds[a].push_back(
            time_solve(config.algorithms[a], seq, labels, penalty, fits[a]));
      }

      const Segmentation* opart_fit = nullptr;
      const Segmentation* lopart_fit = nullptr;
      for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        if (config.algorithms[a] == Algorithm::opart) opart_fit = &fits[a];
        if (config.algorithms[a] == Algorithm::lopart) lopart_fit = &fits[a];
      }
      if (lopart_fit && m > 0 &&
          total_errors(labels, lopart_fit->changepoints).errors() != 0) {
        throw std::logic_error("lopart violated a label at n=" +
                               std::to_string(n));
      }
      if (lopart_fit && opart_fit && m == 0 &&
          (lopart_fit->changepoints != opart_fit->changepoints ||
           lopart_fit->cost != opart_fit->cost)) {
        throw std::logic_error("lopart and opart disagree without labels at n=" +
                               std::to_string(n));
      }
    }
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      rows.push_back({config.algorithms[a], n, m, quantile(seconds[a], 0.5),
                      quantile(seconds[a], 0.25), quantile(seconds[a], 0.75)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const TimingRow& a, const TimingRow& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.n != b.n) return a.n < b.n;
    return a.m < b.m;
  });
  return rows;
}

double fit_slope(std::span<const TimingRow> rows, Algorithm algorithm) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const TimingRow& row : rows) {
    if (row.algorithm != algorithm) continue;
    if (row.n < 1 || !(row.median_seconds > 0.0)) {
      throw InvalidInput("timings need positive n and positive medians");
    }
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(row.median_seconds));
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) {
    throw InvalidInput("slope needs at least 3 distinct n for " +
                       std::string(to_string(algorithm)));
  }
  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i] / count;
    mean_y += ys[i] / count;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  return sxy / sxx;
}

std::vector<CorpusEntry> synthetic_corpus(const SyntheticCorpusOptions& options) {
  const int label_count = options.labels_per_sequence;
  if (options.sequences < 1 || label_count < 2) {
    throw InvalidInput("synthetic corpus needs >= 1 sequence and >= 2 labels");
  }
  const Position block = options.n / label_count;
  if (block < 20) {
    throw InvalidInput("synthetic corpus needs at least 20 points per label");
  }

  std::vector<CorpusEntry> corpus;
  for (int s = 0; s < options.sequences; ++s) {
    std::seed_seq seeds{options.seed, static_cast<std::uint64_t>(s)};
    std::mt19937_64 rng(seeds);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Half positive (rounded down, at least one), the rest negative.
    std::vector<int> kinds(static_cast<std::size_t>(label_count), 0);
    for (int k = 0; k < std::max(1, label_count / 2); ++k) kinds[k] = 1;
    std::shuffle(kinds.begin(), kinds.end(), rng);

    std::vector<double> mean_shift(static_cast<std::size_t>(options.n) + 1, 0.0);
    std::vector<std::pair<Position, double>> outliers;
    std::vector<Label> labels;
    auto add_change = [&](Position after, double jump) {
      for (Position i = after + 1; i <= options.n; ++i) mean_shift[i] += jump;
    };
    auto random_jump = [&] {
      const double size = 0.5 + 2.5 * unit(rng);
      return unit(rng) < 0.5 ? -size : size;
    };

    for (int b = 0; b < label_count; ++b) {
      const Position base = static_cast<Position>(b) * block;
      if (kinds[b] == 1) {
        const Position change = base + uniform(rng, 3 * block / 10, 7 * block / 10);
        const Position reach = std::max<Position>(2, block / 10);
        add_change(change, random_jump());
        labels.push_back({change - uniform(rng, 1, reach),
                          change + uniform(rng, 1, reach), 1});
      } else {
        const Position start = base + uniform(rng, block / 10, 3 * block / 10);
        const Position end =
            start + uniform(rng, std::max<Position>(2, 15 * block / 100),
                            4 * block / 10);
        labels.push_back({start, end, 0});
        if (unit(rng) < 0.5) {
          const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
          outliers.emplace_back(uniform(rng, start, end),
                                sign * (4.0 + 2.0 * unit(rng)));
        }
        if (unit(rng) < 0.5 && end + 2 <= base + block - 2) {
          add_change(uniform(rng, end + 2, base + block - 2), random_jump());
        }
      }
    }

    std::vector<double> values(static_cast<std::size_t>(options.n));
    for (Position i = 1; i <= options.n; ++i) {
      values[i - 1] = mean_shift[i] + noise(rng);
    }
    for (const auto& [position, size] : outliers) values[position - 1] += size;

    std::string id = "seq" + std::string(s < 10 ? "0" : "") + std::to_string(s);
    corpus.push_back({std::move(id), DataSequence(std::move(values)),
                      validate_labels(std::move(labels), options.n)});
  }
  return corpus;
}

}  // namespace lopart
