#include <gtest/gtest.h>

#include <set>

#include "fairmab/arm_set.hpp"
#include "fairmab/errors.hpp"

namespace fairmab {
namespace {

TEST(ArmSet, ParsesOneBasedNotation) {
  const ArmSet s = ArmSet::parse("{1,3}");
  EXPECT_TRUE(s.contains(0));
  EXPECT_FALSE(s.contains(1));
  EXPECT_TRUE(s.contains(2));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_EQ(ArmSet::parse("{}").to_string(), "{}");
  EXPECT_EQ(ArmSet::parse(" { 2 , 1 } "), ArmSet::of({0, 1}));
}

TEST(ArmSet, RejectsMalformedText) {
  EXPECT_EQ(ArmSet::parse("1,2"), ArmSet::of({0, 1}));
  EXPECT_THROW(ArmSet::parse("{1,2"), InvalidConfig);
  EXPECT_THROW(ArmSet::parse("{1,1}"), InvalidConfig);
  EXPECT_THROW(ArmSet::parse("{0}"), InvalidConfig);
  EXPECT_THROW(ArmSet::parse("{1,x}"), InvalidConfig);
  EXPECT_THROW(ArmSet::parse("{65}"), InvalidConfig);
}

TEST(ArmSet, SubsetAndFit) {
  const ArmSet a = ArmSet::of({0, 2});
  EXPECT_TRUE(a.is_subset_of(ArmSet::all(3)));
  EXPECT_FALSE(ArmSet::all(3).is_subset_of(a));
  EXPECT_TRUE(a.fits(3));
  EXPECT_FALSE(a.fits(2));
  EXPECT_EQ(ArmSet::all(64).size(), 64u);
}

TEST(ArmSet, IndicatorAndMembers) {
  const ArmSet a = ArmSet::of({1, 3});
  EXPECT_EQ(a.indicator(5), (std::vector<std::uint8_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(a.members(), (std::vector<std::size_t>{1, 3}));
}

TEST(ArmSet, FeasibleSuperArmsListsEverySmallSubset) {
  const ArmSet z = ArmSet::of({0, 2, 3});
  const auto arms = feasible_super_arms(z, 2);
  // 1 empty + 3 singletons + 3 pairs
  EXPECT_EQ(arms.size(), 7u);
  std::set<ArmSet> unique(arms.begin(), arms.end());
  EXPECT_EQ(unique.size(), arms.size());
  for (ArmSet s : arms) {
    EXPECT_TRUE(s.is_subset_of(z));
    EXPECT_LE(s.size(), 2u);
  }
  EXPECT_EQ(feasible_super_arms(ArmSet{}, 3).size(), 1u);
}

TEST(ArmSet, CountSubsets) {
  EXPECT_EQ(count_subsets_up_to(3, 2), 7u);
  EXPECT_EQ(count_subsets_up_to(10, 6), 848u);
  EXPECT_EQ(count_subsets_up_to(4, 9), 16u);
}

}  // namespace
}  // namespace fairmab
