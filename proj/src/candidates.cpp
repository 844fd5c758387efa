#include "lopart/candidates.hpp"

namespace lopart {

std::vector<Position> candidate_set_update(std::vector<Position> prev,
                                           Position t, const LabelSet& labels) {
  const CandidateStep step =
      candidate_rule(labels, last_label_index(labels, t), t);
  switch (step.rule) {
    case CandidateRule::keep:
      return prev;
    case CandidateRule::reset: {
      std::vector<Position> reset;
      for (Position tau = step.reset_from; tau < t; ++tau) reset.push_back(tau);
      return reset;
    }
    case CandidateRule::append:
      prev.push_back(t - 1);
      return prev;
  }
  return prev;
}

}  // namespace lopart
