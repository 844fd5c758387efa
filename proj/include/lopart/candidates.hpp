#pragma once

#include <span>
#include <vector>

#include "lopart/labels.hpp"

namespace lopart {

// How T_t is derived from T_{t-1}.
enum class CandidateRule {
  keep,    // inside a label (or at the end of a negative one)
  reset,   // at the end of a positive label: {start_j, ..., t-1}
  append,  // elsewhere: T_{t-1} u {t-1}
};

struct CandidateStep {
  CandidateRule rule;
  Position reset_from = 0;  // start_j, meaningful for reset only
};

// Rule for position t given the label J_t = index of the last label starting
// before t (1-based, 0 = none). Only that label can contain t.
inline CandidateStep candidate_rule(const LabelSet& labels, std::size_t last_label,
                                    Position t) {
  if (last_label > 0) {
    const Label& label = labels[last_label - 1];
    if (t <= label.end) {
      if (label.positive() && t == label.end) {
        return {CandidateRule::reset, label.start};
      }
      return {CandidateRule::keep};
    }
  }
  return {CandidateRule::append};
}

// The admissible set T_t of last changepoints, advanced one position at a
// time. T_0 is empty.
class CandidateSet {
 public:
  explicit CandidateSet(const LabelSet& labels) : labels_(&labels) {}

  // Moves from T_{t-1} to T_t; t must be exactly one past the last call.
  void advance(Position t) {
    while (next_label_ < labels_->size() &&
           (*labels_)[next_label_].start < t) {
      ++next_label_;
    }
    apply(candidate_rule(*labels_, next_label_, t), t);
    t_ = t;
  }

  Position t() const { return t_; }
  std::span<const Position> positions() const { return positions_; }
  bool empty() const { return positions_.empty(); }

 private:
  void apply(const CandidateStep& step, Position t) {
    switch (step.rule) {
      case CandidateRule::keep:
        break;
      case CandidateRule::reset:
        positions_.clear();
        for (Position tau = step.reset_from; tau < t; ++tau) {
          positions_.push_back(tau);
        }
        break;
      case CandidateRule::append:
        positions_.push_back(t - 1);
        break;
    }
  }

  const LabelSet* labels_;
  std::vector<Position> positions_;
  std::size_t next_label_ = 0;
  Position t_ = 0;
};

// Stateless single step of the recursion: returns T_t from T_{t-1}.
std::vector<Position> candidate_set_update(std::vector<Position> prev,
                                           Position t, const LabelSet& labels);

}  // namespace lopart
