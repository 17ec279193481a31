#include "fairmab/arm_set.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

#include "fairmab/errors.hpp"

namespace fairmab {

ArmSet ArmSet::of(std::initializer_list<std::size_t> arms) {
  ArmSet s;
  for (std::size_t arm : arms) s.insert(arm);
  return s;
}

ArmSet ArmSet::all(std::size_t n) {
  if (n > kMaxArms) throw InvalidConfig("at most 64 arms are supported");
  return from_mask(n == kMaxArms ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

ArmSet ArmSet::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw InvalidConfig("unterminated arm set: " + std::string(text));
    text = trim(text.substr(1, text.size() - 2));
  }
  ArmSet s;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0 ||
        value > kMaxArms) {
      throw InvalidConfig("bad arm index '" + std::string(token) + "'");
    }
    if (s.contains(value - 1)) throw InvalidConfig("duplicate arm index " + std::string(token));
    s.insert(value - 1);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return s;
}

void ArmSet::insert(std::size_t arm) {
  if (arm >= kMaxArms) throw std::out_of_range("arm index out of range");
  mask_ |= std::uint64_t{1} << arm;
}

std::vector<std::size_t> ArmSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::vector<std::uint8_t> ArmSet::indicator(std::size_t n) const {
  std::vector<std::uint8_t> d(n, 0);
  for_each([&](std::size_t i) {
    if (i < n) d[i] = 1;
  });
  return d;
}

std::string ArmSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](std::size_t i) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  });
  out += '}';
  return out;
}

std::vector<ArmSet> feasible_super_arms(ArmSet available, std::size_t max_size) {
  // Submasks of `available` in increasing order: walk sub = (sub - z) & z
  // downward from z, then reverse.
  std::vector<ArmSet> out;
  const std::uint64_t z = available.mask();
  std::uint64_t sub = z;
  while (true) {
    if (static_cast<std::size_t>(std::popcount(sub)) <= max_size) {
      out.push_back(ArmSet::from_mask(sub));
    }
    if (sub == 0) break;
    sub = (sub - 1) & z;
  }
  return {out.rbegin(), out.rend()};
}

std::uint64_t count_subsets_up_to(std::size_t n, std::size_t k) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, j)
  for (std::size_t j = 0; j <= std::min(n, k); ++j) {
    total += binom;
    binom = binom * (n - j) / (j + 1);
  }
  return total;
}

}  // namespace fairmab
