#include "fairmab/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fairmab/errors.hpp"

namespace fairmab {

namespace {

std::string eta_field(const PolicySpec& p) {
  return p.kind == PolicyKind::kLfg ? format_number(p.eta) : std::string{};
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    out += keep ? c : '_';
  }
  return out;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{}", value); }

void write_regret_csv(std::ostream& out, const ExperimentResult& result) {
  out << kRegretHeader << '\n';
  for (const auto& pr : result.policies) {
    if (!pr.pseudo_regret) continue;
    for (const auto& point : pr.pseudo_regret->points) {
      out << csv_field(pr.policy.label) << ',' << eta_field(pr.policy) << ',' << point.t << ','
          << format_number(point.mean) << ',' << format_number(point.std_error) << '\n';
    }
  }
}

void write_fractions_csv(std::ostream& out, const ExperimentResult& result) {
  out << kFractionsHeader << '\n';
  for (const auto& pr : result.policies) {
    if (pr.fractions.empty()) continue;
    const std::size_t n = pr.fractions.front().mean.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& point : pr.fractions) {
        out << csv_field(pr.policy.label) << ',' << eta_field(pr.policy) << ',' << i + 1 << ','
            << point.t << ',' << format_number(point.mean[i]) << '\n';
      }
    }
  }
}

void write_queues_csv(std::ostream& out, const ExperimentResult& result) {
  out << kQueuesHeader << '\n';
  for (const auto& pr : result.policies) {
    for (const auto& point : pr.queues) {
      out << csv_field(pr.policy.label) << ',' << eta_field(pr.policy) << ',' << point.t << ','
          << format_number(point.mean) << '\n';
    }
  }
}

void write_policy_table_csv(std::ostream& out, const AOnlyPolicy& policy) {
  out << kPolicyTableHeader << '\n';
  for (const auto& [z, choices] : policy.table()) {
    for (const auto& c : choices) {
      out << csv_field(z.to_string()) << ',' << csv_field(c.arms.to_string()) << ','
          << format_number(c.probability) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  const std::size_t n = trace.n_arms();
  out << "t,available,action";
  for (std::size_t i = 1; i <= n; ++i) out << ",reward_" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",queue_" << i;
  out << '\n';
  for (std::size_t t = 0; t < trace.horizon(); ++t) {
    const ArmSet action = trace.action(t);
    out << t << ',' << csv_field(trace.available(t).to_string()) << ','
        << csv_field(action.to_string());
    for (std::size_t i = 0; i < n; ++i) {
      out << ',';
      if (action.contains(i)) out << format_number(trace.reward(t, i));
    }
    for (double q : trace.queues(t)) out << ',' << format_number(q);
    out << '\n';
  }
}

void write_compare_csv(std::ostream& out, const ExperimentResult& result,
                       std::span<const double> min_fractions) {
  const std::size_t n = min_fractions.size();
  out << "policy,eta,t,regret_mean,regret_stderr";
  for (std::size_t i = 1; i <= n; ++i) out << ",fraction_" << i;
  out << ",min_fraction_slack\n";
  for (const auto& pr : result.policies) {
    if (pr.fractions.empty()) continue;
    const FractionPoint& last = pr.fractions.back();
    out << csv_field(pr.policy.label) << ',' << eta_field(pr.policy) << ',' << last.t << ',';
    if (pr.pseudo_regret) {
      const auto& point = pr.pseudo_regret->points.back();
      out << format_number(point.mean) << ',' << format_number(point.std_error);
    } else {
      out << ',';
    }
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      out << ',' << format_number(last.mean[i]);
      slack = std::min(slack, last.mean[i] - min_fractions[i]);
    }
    out << ',' << format_number(slack) << '\n';
  }
}

std::string bound_report_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["optimal_reward"] = result.optimal_reward ? nlohmann::ordered_json(*result.optimal_reward)
                                              : nlohmann::ordered_json(nullptr);
  j["epsilon"] = result.epsilon ? nlohmann::ordered_json(*result.epsilon)
                                : nlohmann::ordered_json(nullptr);
  if (result.bounds) {
    const BoundReport& b = *result.bounds;
    j["beta1"] = b.beta1;
    j["beta2"] = b.beta2;
    auto stability = nlohmann::ordered_json::array();
    for (const auto& s : b.stability) {
      // B / eps is infinite when eps <= 0; JSON has no infinity.
      stability.push_back({{"eta", s.eta},
                           {"B", s.b},
                           {"bound", std::isfinite(s.bound) ? nlohmann::ordered_json(s.bound)
                                                            : nlohmann::ordered_json(nullptr)}});
    }
    j["stability"] = stability;
    auto regret = nlohmann::ordered_json::array();
    for (const auto& r : b.regret) {
      regret.push_back({{"eta", r.eta}, {"t", r.t}, {"value", r.regret_bound}});
    }
    j["regret_bound"] = regret;
  }
  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_artifacts(const ExperimentResult& result,
                                                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::filesystem::path& path, auto&& writer) {
    auto out = open_output(path);
    writer(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
    written.push_back(path);
  };
  if (result.optimal_reward) {
    emit(dir / "regret.csv", [&](std::ostream& o) { write_regret_csv(o, result); });
  }
  emit(dir / "fractions.csv", [&](std::ostream& o) { write_fractions_csv(o, result); });
  emit(dir / "queues.csv", [&](std::ostream& o) { write_queues_csv(o, result); });
  emit(dir / "bounds.json", [&](std::ostream& o) { o << bound_report_json(result); });

  for (const auto& pr : result.policies) {
    if (pr.traces.empty()) continue;
    const auto trace_dir = dir / "traces";
    std::filesystem::create_directories(trace_dir, ec);
    if (ec) throw IoError("cannot create " + trace_dir.string());
    for (std::size_t r = 0; r < pr.traces.size(); ++r) {
      emit(trace_dir / (file_stem(pr.policy.label) + "_run" + std::to_string(r) + ".csv"),
           [&](std::ostream& o) { write_trace_csv(o, pr.traces[r]); });
    }
  }
  return written;
}

}  // namespace fairmab
