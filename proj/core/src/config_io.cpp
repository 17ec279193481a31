#include "fairmab/config_io.hpp"

#include <fstream>
#include <string>

#include "fairmab/errors.hpp"

namespace fairmab {

using nlohmann::json;

namespace {

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidConfig(std::string("missing field '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array()) throw InvalidConfig(std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw InvalidConfig(std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t count_field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidConfig(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidConfig(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

ArmSet arm_list(const json& a) {
  if (!a.is_array()) throw InvalidConfig("'arms' must be an array of 1-based indices");
  ArmSet s;
  for (const auto& v : a) {
    if (!v.is_number_integer() || v.get<long long>() < 1 ||
        v.get<long long>() > static_cast<long long>(kMaxArms)) {
      throw InvalidConfig("arm indices are 1-based integers");
    }
    const auto arm = v.get<std::size_t>() - 1;
    if (s.contains(arm)) throw InvalidConfig("duplicate arm in availability set");
    s.insert(arm);
  }
  return s;
}

AvailabilityModel availability_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) {
    throw InvalidConfig("'availability' needs a 'type' (independent or categorical)");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "independent") return IndependentBernoulli{number_array(j, "p")};
  if (type == "categorical") {
    if (!j.contains("entries") || !j.at("entries").is_array()) {
      throw InvalidConfig("categorical availability needs an 'entries' array");
    }
    CategoricalAvailability model;
    for (const auto& e : j.at("entries")) {
      if (!e.contains("arms") || !e.contains("probability") || !e.at("probability").is_number()) {
        throw InvalidConfig("availability entries need 'arms' and 'probability'");
      }
      model.entries.emplace_back(arm_list(e.at("arms")), e.at("probability").get<double>());
    }
    return model;
  }
  throw InvalidConfig("unknown availability type '" + type + "'");
}

RewardModel reward_model_from_json(const json& j) {
  const std::string type = j.is_string() ? j.get<std::string>() : j.at("type").get<std::string>();
  if (type == "bernoulli") return BernoulliRewards{};
  if (type == "beta") {
    BetaRewards beta;
    if (j.is_object() && j.contains("concentration")) {
      beta.concentration = j.at("concentration").get<double>();
    }
    return beta;
  }
  throw InvalidConfig("unknown reward_model '" + type + "' (expected bernoulli or beta)");
}

PolicySpec policy_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidConfig("policy entries need a 'kind'");
  const PolicyKind kind = parse_policy_kind(j.at("kind").get<std::string>());
  PolicySpec spec;
  switch (kind) {
    case PolicyKind::kLfg:
      if (!j.contains("eta") || !j.at("eta").is_number()) {
        throw InvalidConfig("lfg policy needs a numeric 'eta'");
      }
      spec = PolicySpec::lfg(j.at("eta").get<double>());
      break;
    case PolicyKind::kLlrs: spec = PolicySpec::llrs(); break;
    case PolicyKind::kAOnlyPlayback: spec = PolicySpec::aonly_playback(); break;
    case PolicyKind::kEmptyAction: spec = PolicySpec::empty_action(); break;
  }
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  return spec;
}

}  // namespace

EnvironmentConfig environment_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InvalidConfig("config root must be an object");
    EnvironmentConfig env;
    env.n_arms = count_field(j, "n_arms");
    env.max_plays = count_field(j, "max_plays");
    env.means = number_array(j, "means");
    env.weights = j.contains("weights") ? number_array(j, "weights")
                                        : std::vector<double>(env.n_arms, 1.0);
    env.min_fractions = number_array(j, "min_fractions");
    if (!j.contains("availability")) throw InvalidConfig("missing field 'availability'");
    env.availability = availability_from_json(j.at("availability"));
    if (j.contains("reward_model")) env.reward_model = reward_model_from_json(j.at("reward_model"));
    env.validate();
    return env;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.what());
  }
}

json environment_to_json(const EnvironmentConfig& config) {
  json j;
  j["n_arms"] = config.n_arms;
  j["max_plays"] = config.max_plays;
  j["means"] = config.means;
  j["weights"] = config.weights;
  j["min_fractions"] = config.min_fractions;
  if (const auto* ind = std::get_if<IndependentBernoulli>(&config.availability)) {
    j["availability"] = {{"type", "independent"}, {"p", ind->p}};
  } else {
    json entries = json::array();
    for (const auto& [set, prob] : std::get<CategoricalAvailability>(config.availability).entries) {
      json arms = json::array();
      set.for_each([&](std::size_t i) { arms.push_back(i + 1); });
      entries.push_back({{"arms", arms}, {"probability", prob}});
    }
    j["availability"] = {{"type", "categorical"}, {"entries", entries}};
  }
  if (const auto* beta = std::get_if<BetaRewards>(&config.reward_model)) {
    j["reward_model"] = {{"type", "beta"}, {"concentration", beta->concentration}};
  } else if (std::holds_alternative<CustomRewards>(config.reward_model)) {
    j["reward_model"] = std::get<CustomRewards>(config.reward_model).name;
  } else {
    j["reward_model"] = "bernoulli";
  }
  return j;
}

ExperimentSpec experiment_from_json(const json& j, ExperimentSpec base) {
  try {
    if (j.contains("n_arms")) base.environment = environment_from_json(j);
    if (!j.contains("experiment")) return base;
    const json& e = j.at("experiment");
    if (e.contains("name")) base.name = e.at("name").get<std::string>();
    if (e.contains("horizon")) base.horizon = count_field(e, "horizon");
    if (e.contains("runs")) base.runs = count_field(e, "runs");
    if (e.contains("seed")) base.base_seed = e.at("seed").get<std::uint64_t>();
    if (e.contains("checkpoints")) {
      base.checkpoints.clear();
      for (const auto& t : e.at("checkpoints")) base.checkpoints.push_back(t.get<std::size_t>());
    }
    if (e.contains("policies")) {
      base.policies.clear();
      for (const auto& p : e.at("policies")) base.policies.push_back(policy_from_json(p));
    }
    return base;
  } catch (const json::exception& ex) {
    throw InvalidConfig(std::string("malformed experiment section: ") + ex.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidConfig("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace fairmab
