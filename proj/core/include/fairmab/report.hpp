#ifndef FAIRMAB_REPORT_HPP
#define FAIRMAB_REPORT_HPP

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fairmab/experiment.hpp"
#include "fairmab/metrics.hpp"
#include "fairmab/oracle.hpp"

namespace fairmab {

inline constexpr const char* kRegretHeader = "policy,eta,t,regret_mean,regret_stderr";
inline constexpr const char* kFractionsHeader = "policy,eta,arm,t,fraction";
inline constexpr const char* kQueuesHeader = "policy,eta,t,total_queue_mean";
inline constexpr const char* kPolicyTableHeader = "availability_set,super_arm,probability";

/// Shortest round-trip representation; identical input gives identical text.
std::string format_number(double value);

void write_regret_csv(std::ostream& out, const ExperimentResult& result);
void write_fractions_csv(std::ostream& out, const ExperimentResult& result);
void write_queues_csv(std::ostream& out, const ExperimentResult& result);
void write_policy_table_csv(std::ostream& out, const AOnlyPolicy& policy);
void write_trace_csv(std::ostream& out, const RunTrace& trace);
/// Final-horizon regret joined with per-arm fractions, one row per policy.
void write_compare_csv(std::ostream& out, const ExperimentResult& result,
                       std::span<const double> min_fractions);
std::string bound_report_json(const ExperimentResult& result);

/// Writes regret.csv (when R* is known), fractions.csv, queues.csv,
/// bounds.json and, if traces were kept, traces/<policy>_run<k>.csv.
/// Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> write_artifacts(const ExperimentResult& result,
                                                   const std::filesystem::path& dir);

}  // namespace fairmab

#endif  // FAIRMAB_REPORT_HPP
