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
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rockrelax/distributions.hpp"
#include "rockrelax/experiments.hpp"

namespace rockrelax {

/// Reports every problem found in a configuration at once, so a bad file
/// needs only one round trip to fix.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

  private:
    std::vector<std::string> problems_;
};

/// A solve configuration (JSON only).  Recognized keys:
///
///   preset    string, one of the registered study presets (required)
///   horizon   integer >= 5, largest approximation level
///   seed      integer >= 0, RNG seed for sampling presets
///   alpha     number >= 1, penalty exponent
///   rounds    integer >= 0, grid refinement rounds
///   schedule  string, a schedule tag (see run_preset)
///   penalty   "euclidean-power" | "separable-power"
///   out       string ending in ".json" or ".csv"
///   check     boolean: exit nonzero when a registered claim fails
///
/// Unknown keys are rejected by name.  A "distribution" key conflicts with
/// "preset" (presets define their own distributions) and is rejected; use
/// parse_distribution for standalone distribution files.
struct RunConfig {
    std::string preset;
    std::optional<long> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<int> rounds;
    std::optional<std::string> schedule;
    std::optional<std::string> penalty;
    std::optional<std::string> out;
    std::optional<bool> check;
};

/// Parse and validate; throws ConfigError carrying every problem found.
RunConfig parse_run_config(const std::string& text);

/// Canonical JSON for a config; parse(serialize(c)) reproduces c exactly.
std::string serialize_run_config(const RunConfig& cfg);

/// The PresetOptions a config selects (unset keys keep preset defaults).
PresetOptions to_options(const RunConfig& cfg);

/// Standalone distribution file, either
///   {"atoms": [[...], ...], "weights": [...]}   (finite support)
/// or
///   {"uniform": [lo, hi]}                        (uniform law on [lo, hi])
/// Throws ConfigError with every problem found.
Distribution parse_distribution(const std::string& text);

}  // namespace rockrelax
