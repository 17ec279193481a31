// Fixed set of small instances (N <= 2, m <= 2) with hand-derived cases
// followed by a parameter grid.
#ifndef FAIRMAB_TESTS_ORACLE_BATTERY_HPP
#define FAIRMAB_TESTS_ORACLE_BATTERY_HPP

#include <string>
#include <vector>

#include "fixtures.hpp"

namespace oracle_battery {

struct Case {
  std::string name;
  fairmab::EnvironmentConfig config;
};

inline std::vector<Case> cases() {
  using fixtures::make_config;
  std::vector<Case> out;
  out.push_back({"two-arm-derived", make_config(1, {0.9, 0.1}, {1, 1}, {0.2, 0.2}, {1, 1})});
  out.push_back({"single-arm", make_config(1, {0.6}, {1}, {0.5}, {1})});
  out.push_back({"two-arm-infeasible", make_config(1, {0.9, 0.1}, {1, 1}, {0.6, 0.6}, {1, 1})});
  out.push_back({"two-arm-boundary", make_config(1, {0.5, 0.5}, {1, 1}, {0.5, 0.5}, {1, 1})});
  out.push_back({"two-arm-both", make_config(2, {0.3, 0.8}, {1, 1}, {0.5, 0.5}, {1, 1})});

  const double means[] = {0.1, 0.55, 0.9};
  const double probs[] = {0.0, 0.35, 0.8, 1.0};
  const double targets[] = {0.05, 0.3, 0.45, 0.7};
  const double weights[] = {0.5, 1.0, 2.5};
  int id = 0;
  for (std::size_t m = 1; m <= 2; ++m) {
    for (double mu0 : means) {
      for (double p0 : probs) {
        for (double p1 : probs) {
          for (double r0 : targets) {
            const double mu1 = means[(id + 1) % 3];
            const double r1 = targets[(id / 3) % 4];
            const double w0 = weights[id % 3];
            const double w1 = weights[(id / 2) % 3];
            out.push_back({"grid-" + std::to_string(id),
                           make_config(m, {mu0, mu1}, {w0, w1}, {r0, r1}, {p0, p1})});
            ++id;
          }
        }
      }
    }
  }
  for (double mu : means) {
    for (double p : probs) {
      for (double r : targets) {
        out.push_back({"one-arm-" + std::to_string(id++), make_config(1, {mu}, {1.5}, {r}, {p})});
      }
    }
  }
  return out;
}

}  // namespace oracle_battery

#endif  // FAIRMAB_TESTS_ORACLE_BATTERY_HPP
