#include "lopart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ranges>
#include <stdexcept>

#include "lopart/candidates.hpp"
#include "lopart/errors.hpp"

namespace lopart {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_penalty(double penalty) {
  if (!std::isfinite(penalty) || penalty < 0.0) {
    throw InvalidInput("penalty must be finite and non-negative");
  }
}

DpState make_state(Position n, double penalty) {
  DpState state;
  state.cost.assign(n + 1, kInf);
  state.last_change.assign(n + 1, -1);
  state.last_mean.assign(n + 1, 0.0);
  state.cost[0] = -penalty;
  return state;
}

// W_t = min over tau of W_tau + penalty + L(tau+1, t). Candidates arrive in
// increasing order and only a strictly smaller cost replaces the incumbent,
// so ties resolve to the smallest tau.
template <typename Candidates>
void update_cost(const DataSequence& seq, const Candidates& candidates,
                 Position t, double penalty, DpState& state) {
  double best_cost = kInf;
  Position best_tau = -1;
  double best_mean = 0.0;
  for (const Position tau : candidates) {
    const SegmentFit fit = seq.fit(tau + 1, t);
    const double cost = state.cost[tau] + penalty + fit.loss;
    if (cost < best_cost) {
      best_cost = cost;
      best_tau = tau;
      best_mean = fit.mean;
    }
  }
  state.cost[t] = best_cost;
  state.last_change[t] = best_tau;
  state.last_mean[t] = best_mean;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::opart:
      return "opart";
    case Algorithm::lopart:
      return "lopart";
    case Algorithm::segannot:
      return "segannot";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "opart") return Algorithm::opart;
  if (name == "lopart") return Algorithm::lopart;
  if (name == "segannot") return Algorithm::segannot;
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

bool Segmentation::infinite_penalty() const { return std::isinf(penalty); }

std::vector<Segment> Segmentation::segments() const {
  std::vector<Segment> out;
  out.reserve(means.size());
  Position start = 1;
  for (std::size_t k = 0; k < means.size(); ++k) {
    const Position end = k < changepoints.size() ? changepoints[k] : n;
    out.push_back({start, end, means[k]});
    start = end + 1;
  }
  return out;
}

DpState opart_dp(const DataSequence& seq, double penalty) {
  require_finite_penalty(penalty);
  const Position n = seq.size();
  DpState state = make_state(n, penalty);
  for (Position t = 1; t <= n; ++t) {
    update_cost(seq, std::views::iota(Position{0}, t), t, penalty, state);
  }
  state.candidates.resize(static_cast<std::size_t>(n));
  std::iota(state.candidates.begin(), state.candidates.end(), Position{0});
  return state;
}

DpState lopart_dp(const DataSequence& seq, const LabelSet& labels,
                  double penalty) {
  require_finite_penalty(penalty);
  const Position n = seq.size();
  if (labels.n() != 0 && labels.n() != n) {
    throw InvalidInput("labels were validated for length " +
                       std::to_string(labels.n()) + " but the sequence has " +
                       std::to_string(n) + " points");
  }
  DpState state = make_state(n, penalty);
  CandidateSet candidates(labels);
  const auto& negative = labels.negative_region();
  auto next_negative = negative.begin();
  for (Position t = 1; t <= n; ++t) {
    candidates.advance(t);
    while (next_negative != negative.end() && *next_negative < t) {
      ++next_negative;
    }
    if (next_negative != negative.end() && *next_negative == t) continue;
    if (candidates.empty()) {
      throw std::logic_error("empty candidate set at t=" + std::to_string(t));
    }
    update_cost(seq, candidates.positions(), t, penalty, state);
  }
  const auto last = candidates.positions();
  state.candidates.assign(last.begin(), last.end());
  return state;
}

Segmentation decode(const DataSequence& seq, const DpState& state,
                    double penalty) {
  Segmentation out;
  out.n = seq.size();
  out.penalty = penalty;
  for (Position t = out.n; t > 0;) {
    const Position tau = state.last_change[t];
    if (tau < 0 || tau >= t) {
      throw std::logic_error("no optimal last change recorded at t=" +
                             std::to_string(t));
    }
    out.means.push_back(state.last_mean[t]);
    out.loss += seq.fit(tau + 1, t).loss;
    if (tau > 0) out.changepoints.push_back(tau);
    t = tau;
  }
  std::reverse(out.changepoints.begin(), out.changepoints.end());
  std::reverse(out.means.begin(), out.means.end());
  out.cost = state.cost[out.n];
  return out;
}

Segmentation opart(const DataSequence& seq, double penalty) {
  return decode(seq, opart_dp(seq, penalty), penalty);
}

Segmentation lopart(const DataSequence& seq, const LabelSet& labels,
                    double penalty) {
  return decode(seq, lopart_dp(seq, labels, penalty), penalty);
}

LabelSet positive_with_negative_complement(const LabelSet& labels) {
  const Position n = labels.n();
  std::vector<Label> raw;
  Position gap_start = 1;
  for (const Label& label : labels.labels()) {
    if (!label.positive()) continue;
    if (gap_start < label.start) raw.push_back({gap_start, label.start, 0});
    raw.push_back(label);
    gap_start = label.end;
  }
  if (gap_start < n) raw.push_back({gap_start, n, 0});
  return validate_labels(std::move(raw), n);
}

Segmentation lopart_infinite(const DataSequence& seq, const LabelSet& labels) {
  const Position n = seq.size();
  if (labels.n() != 0 && labels.n() != n) {
    throw InvalidInput("labels were validated for length " +
                       std::to_string(labels.n()) + " but the sequence has " +
                       std::to_string(n) + " points");
  }
  const LabelSet base = labels.empty() ? validate_labels({}, n) : labels;
  Segmentation out =
      decode(seq, lopart_dp(seq, positive_with_negative_complement(base), 0.0),
             0.0);
  out.penalty = kInf;
  out.cost = out.loss;
  return out;
}

Segmentation solve(const DataSequence& seq, const LabelSet& labels,
                   double penalty, Algorithm algorithm) {
  if (std::isnan(penalty) || penalty < 0.0) {
    throw InvalidInput("penalty must be non-negative or inf");
  }
  const bool infinite = std::isinf(penalty);
  switch (algorithm) {
    case Algorithm::opart:
      if (infinite) {
        const SegmentFit fit = seq.fit(1, seq.size());
        Segmentation out;
        out.n = seq.size();
        out.means = {fit.mean};
        out.loss = out.cost = fit.loss;
        out.penalty = kInf;
        return out;
      }
      return opart(seq, penalty);
    case Algorithm::lopart:
      return infinite ? lopart_infinite(seq, labels)
                      : lopart(seq, labels, penalty);
    case Algorithm::segannot:
      return lopart_infinite(seq, labels);
  }
  throw std::logic_error("unhandled algorithm");
}

double recompute_cost(const DataSequence& seq,
                      std::span<const Position> changepoints, double penalty) {
  double total = 0.0;
  Position start = 1;
  for (const Position cp : changepoints) {
    total += segment_loss(seq, start, cp).loss;
    start = cp + 1;
  }
  total += segment_loss(seq, start, seq.size()).loss;
  return total + penalty * static_cast<double>(changepoints.size());
}

}  // namespace lopart
