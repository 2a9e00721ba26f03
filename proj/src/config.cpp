//------------------------------------------------------------------------------
// rockrelax: Rockafellian relaxation toolkit for stochastic programs
// Copyright 2026 the rockrelax authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//------------------------------------------------------------------------------
#include "rockrelax/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace rockrelax {

namespace {

using nlohmann::json;

std::string join_problems(const std::vector<std::string>& problems) {
    std::string msg = "configuration has " + std::to_string(problems.size()) +
                      (problems.size() == 1 ? " problem:" : " problems:");
    for (const auto& p : problems) msg += "\n  - " + p;
    return msg;
}

bool known_schedule_tag(const std::string& tag, std::string* why) {
    static const char* kTags[] = {"inv-nu", "inv-sqrt-nu", "inv-log", "mi",
                                  "tv",     "bl",          "fm",      "kl",
                                  "mi-rate", "rate-s2",    "empirical"};
    for (const char* t : kTags)
        if (tag == t) return true;
    if (tag.rfind("power:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double q = std::stod(tag.substr(6), &used);
            if (used == tag.size() - 6 && std::isfinite(q) && q > 0.0) return true;
            *why = "the exponent in '" + tag + "' must be a positive number";
        } catch (const std::exception&) {
            *why = "the exponent in '" + tag + "' must be a positive number";
        }
        return false;
    }
    *why = "unknown schedule '" + tag +
           "'; expected inv-nu, inv-sqrt-nu, inv-log, mi, tv, bl, fm, kl, "
           "mi-rate, rate-s2, empirical, or power:<q>";
    return false;
}

// Integer field within [lo, hi]; reports (instead of throwing) on bad type.
template <typename T>
std::optional<T> take_int(const json& v, const char* key, long long lo,
                          long long hi, std::vector<std::string>& problems) {
    if (!v.is_number_integer() ||
        v.get<long long>() < lo || v.get<long long>() > hi) {
        problems.push_back(std::string("'") + key + "' must be an integer in [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return std::nullopt;
    }
    return static_cast<T>(v.get<long long>());
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ConfigError({std::string("not valid JSON: ") + ex.what()});
    }

    std::vector<std::string> problems;
    if (!j.is_object()) {
        throw ConfigError({"the configuration must be a JSON object"});
    }

    RunConfig cfg;
    bool has_distribution = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "preset") {
            if (!value.is_string()) {
                problems.push_back("'preset' must be a string");
                continue;
            }
            cfg.preset = value.get<std::string>();
        } else if (key == "horizon") {
            cfg.horizon = take_int<long>(value, "horizon", 5, 100000000, problems);
        } else if (key == "seed") {
            cfg.seed = take_int<std::uint64_t>(value, "seed", 0,
                                               std::numeric_limits<long long>::max(),
                                               problems);
        } else if (key == "alpha") {
            if (!value.is_number() || !(value.get<double>() >= 1.0) ||
                !std::isfinite(value.get<double>())) {
                problems.push_back("'alpha' must be a finite number >= 1");
                continue;
            }
            cfg.alpha = value.get<double>();
        } else if (key == "rounds") {
            cfg.rounds = take_int<int>(value, "rounds", 0, 20, problems);
        } else if (key == "schedule") {
            if (!value.is_string()) {
                problems.push_back("'schedule' must be a string");
                continue;
            }
            std::string why;
            if (!known_schedule_tag(value.get<std::string>(), &why)) {
                problems.push_back(why);
                continue;
            }
            cfg.schedule = value.get<std::string>();
        } else if (key == "penalty") {
            if (!value.is_string() || (value != "euclidean-power" &&
                                       value != "separable-power")) {
                problems.push_back(
                    "'penalty' must be \"euclidean-power\" or \"separable-power\"");
                continue;
            }
            cfg.penalty = value.get<std::string>();
        } else if (key == "out") {
            const bool ok = value.is_string() &&
                            (value.get<std::string>().ends_with(".json") ||
                             value.get<std::string>().ends_with(".csv"));
            if (!ok) {
                problems.push_back("'out' must be a path ending in .json or .csv");
                continue;
            }
            cfg.out = value.get<std::string>();
        } else if (key == "check") {
            if (!value.is_boolean()) {
                problems.push_back("'check' must be true or false");
                continue;
            }
            cfg.check = value.get<bool>();
        } else if (key == "distribution") {
            has_distribution = true;
        } else {
            problems.push_back("unknown key '" + key + "'");
        }
    }

    if (cfg.preset.empty()) {
        problems.push_back("a 'preset' is required");
    } else {
        const std::vector<std::string> names = preset_names();
        if (std::find(names.begin(), names.end(), cfg.preset) == names.end()) {
            std::string all;
            for (const auto& n : names) {
                if (!all.empty()) all += ", ";
                all += n;
            }
            problems.push_back("unknown preset '" + cfg.preset +
                               "'; available: " + all);
        }
    }
    if (has_distribution) {
        problems.push_back(
            "'distribution' conflicts with 'preset': presets define their own "
            "distributions (use a standalone distribution file instead)");
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    return cfg;
}

std::string serialize_run_config(const RunConfig& cfg) {
    json j = json::object();
    j["preset"] = cfg.preset;
    if (cfg.horizon) j["horizon"] = *cfg.horizon;
    if (cfg.seed) j["seed"] = *cfg.seed;
    if (cfg.alpha) j["alpha"] = *cfg.alpha;
    if (cfg.rounds) j["rounds"] = *cfg.rounds;
    if (cfg.schedule) j["schedule"] = *cfg.schedule;
    if (cfg.penalty) j["penalty"] = *cfg.penalty;
    if (cfg.out) j["out"] = *cfg.out;
    if (cfg.check) j["check"] = *cfg.check;
    return j.dump(2) + "\n";
}

PresetOptions to_options(const RunConfig& cfg) {
    PresetOptions opt;
    if (cfg.horizon) opt.horizon = *cfg.horizon;
    if (cfg.seed) opt.seed = *cfg.seed;
    if (cfg.alpha) opt.alpha = *cfg.alpha;
    if (cfg.rounds) opt.rounds = *cfg.rounds;
    if (cfg.schedule) opt.schedule = *cfg.schedule;
    if (cfg.penalty) opt.penalty = *cfg.penalty;
    return opt;
}

Distribution parse_distribution(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ConfigError({std::string("not valid JSON: ") + ex.what()});
    }
    std::vector<std::string> problems;
    if (!j.is_object()) {
        throw ConfigError({"a distribution must be a JSON object"});
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "atoms" && key != "weights" && key != "uniform") {
            problems.push_back("unknown key '" + key + "'");
        }
    }

    if (j.contains("uniform")) {
        if (j.contains("atoms") || j.contains("weights")) {
            problems.push_back("'uniform' conflicts with 'atoms'/'weights'");
        }
        const json& u = j["uniform"];
        if (!u.is_array() || u.size() != 2 || !u[0].is_number() ||
            !u[1].is_number() || !(u[0].get<double>() < u[1].get<double>())) {
            problems.push_back("'uniform' must be [lo, hi] with lo < hi");
        }
        if (!problems.empty()) throw ConfigError(std::move(problems));
        return Uniform1D{u[0].get<double>(), u[1].get<double>()};
    }

    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty()) {
        problems.push_back("'atoms' must be a nonempty array of points");
    }
    if (!j.contains("weights") || !j["weights"].is_array()) {
        problems.push_back("'weights' must be an array of numbers");
    }
    std::vector<std::vector<double>> atoms;
    std::vector<double> weights;
    if (problems.empty()) {
        for (const json& a : j["atoms"]) {
            if (!a.is_array() || a.empty()) {
                problems.push_back("each atom must be a nonempty array of numbers");
                break;
            }
            std::vector<double> pt;
            for (const json& c : a) {
                if (!c.is_number()) {
                    problems.push_back("atom coordinates must be numbers");
                    break;
                }
                pt.push_back(c.get<double>());
            }
            atoms.push_back(std::move(pt));
        }
        for (const json& w : j["weights"]) {
            if (!w.is_number()) {
                problems.push_back("'weights' must be an array of numbers");
                break;
            }
            weights.push_back(w.get<double>());
        }
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
    try {
        return make_discrete(std::move(atoms), std::move(weights));
    } catch (const std::invalid_argument& ex) {
        throw ConfigError({ex.what()});
    }
}

}  // namespace rockrelax
