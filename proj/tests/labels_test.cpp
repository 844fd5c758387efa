#include <gtest/gtest.h>

#include <vector>

#include "lopart/errors.hpp"
#include "lopart/labels.hpp"

namespace lopart {
namespace {

TEST(ValidateLabels, SortsAndBuildsNegativeRegion) {
  const LabelSet set = validate_labels({{4, 7, 1}, {1, 2, 0}}, 10);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0], (Label{1, 2, 0}));
  EXPECT_EQ(set[1], (Label{4, 7, 1}));
  EXPECT_EQ(set.negative_region(), std::vector<Position>{1});
  EXPECT_TRUE(set.is_negative(1));
  EXPECT_FALSE(set.is_negative(2));
  EXPECT_EQ(set.positive_count(), 1u);
}

TEST(ValidateLabels, Empty) {
  const LabelSet set = validate_labels({}, 5);
  EXPECT_TRUE(set.empty());
  EXPECT_TRUE(set.negative_region().empty());
  EXPECT_EQ(set.n(), 5);
}

TEST(ValidateLabels, OverlapReportsOffendingIndex) {
  try {
    validate_labels({{1, 3, 1}, {2, 4, 0}}, 5);
    FAIL() << "overlap accepted";
  } catch (const InvalidInput& e) {
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 1u);
  }
}

TEST(ValidateLabels, SharedBoundaryIsAllowed) {
  const LabelSet set = validate_labels({{1, 3, 0}, {3, 6, 1}}, 6);
  EXPECT_EQ(set.negative_region(), (std::vector<Position>{1, 2}));
}

TEST(ValidateLabels, RejectsMalformedLabels) {
  EXPECT_THROW(validate_labels({{3, 3, 1}}, 5), InvalidInput);
  EXPECT_THROW(validate_labels({{4, 2, 1}}, 5), InvalidInput);
  EXPECT_THROW(validate_labels({{0, 2, 1}}, 5), InvalidInput);
  EXPECT_THROW(validate_labels({{2, 6, 1}}, 5), InvalidInput);
  EXPECT_THROW(validate_labels({{1, 2, 2}}, 5), InvalidInput);
  EXPECT_THROW(validate_labels({{1, 2, -1}}, 5), InvalidInput);
}

TEST(LastLabelIndex, Examples) {
  const LabelSet one = validate_labels({{4, 7, 1}}, 10);
  EXPECT_EQ(last_label_index(one, 3), 0u);
  EXPECT_EQ(last_label_index(one, 4), 0u);
  EXPECT_EQ(last_label_index(one, 5), 1u);
  const LabelSet two = validate_labels({{1, 2, 0}, {4, 7, 1}}, 10);
  EXPECT_EQ(last_label_index(two, 10), 2u);
}

TEST(CountChanges, Examples) {
  const std::vector<Position> cps{2, 4};
  EXPECT_EQ(count_changes(cps, 1, 5), 2);
  EXPECT_EQ(count_changes(cps, 2, 4), 1);
  EXPECT_EQ(count_changes(cps, 3, 3), 0);
  EXPECT_EQ(count_changes(cps, 4, 5), 1);
}

TEST(LabelSet, Subset) {
  const LabelSet set = validate_labels({{1, 2, 0}, {4, 7, 1}, {8, 9, 0}}, 10);
  const LabelSet odd = set.subset([](std::size_t j) { return j != 1; });
  ASSERT_EQ(odd.size(), 2u);
  EXPECT_EQ(odd[1], (Label{8, 9, 0}));
  EXPECT_EQ(odd.negative_region(), (std::vector<Position>{1, 8}));
}

}  // namespace
}  // namespace lopart
