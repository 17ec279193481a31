#ifndef FAIRMAB_ARM_SET_HPP
#define FAIRMAB_ARM_SET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fairmab {

inline constexpr std::size_t kMaxArms = 64;

/// A subset of arms, stored as a bit mask. Arm indices are 0-based in code;
/// the textual form ("{1,3}") is 1-based.
class ArmSet {
 public:
  constexpr ArmSet() = default;

  static constexpr ArmSet from_mask(std::uint64_t mask) {
    ArmSet s;
    s.mask_ = mask;
    return s;
  }
  static ArmSet of(std::initializer_list<std::size_t> arms);
  /// {0, ..., n-1}
  static ArmSet all(std::size_t n);
  /// Parses "{1,3}" / "1,3" / "{}" (1-based).
  static ArmSet parse(std::string_view text);

  constexpr bool contains(std::size_t arm) const {
    return arm < kMaxArms && ((mask_ >> arm) & 1u) != 0;
  }
  void insert(std::size_t arm);
  constexpr void erase(std::size_t arm) {
    if (arm < kMaxArms) mask_ &= ~(std::uint64_t{1} << arm);
  }

  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint64_t mask() const { return mask_; }

  /// True when every member is below n.
  constexpr bool fits(std::size_t n) const {
    return n >= kMaxArms || (mask_ >> n) == 0;
  }
  constexpr bool is_subset_of(ArmSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  /// Members in increasing index order.
  std::vector<std::size_t> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
      f(static_cast<std::size_t>(std::countr_zero(rest)));
    }
  }

  /// Indicator vector d in {0,1}^n.
  std::vector<std::uint8_t> indicator(std::size_t n) const;

  std::string to_string() const;

  friend constexpr auto operator<=>(ArmSet, ArmSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// The played arms of a round. Kept as a set; `indicator` gives d(t).
using ActionVector = ArmSet;

/// All subsets of `available` with at most `max_size` members, ordered by
/// mask value (so the empty set comes first).
std::vector<ArmSet> feasible_super_arms(ArmSet available, std::size_t max_size);

/// Number of subsets of an n-element set with at most k members.
std::uint64_t count_subsets_up_to(std::size_t n, std::size_t k);

}  // namespace fairmab

template <>
struct std::hash<fairmab::ArmSet> {
  std::size_t operator()(fairmab::ArmSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};

#endif  // FAIRMAB_ARM_SET_HPP
