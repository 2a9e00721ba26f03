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
#include <span>
#include <string>
#include <vector>

#include "rockrelax/chance.hpp"
#include "rockrelax/distributions.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/report.hpp"

namespace rockrelax {

/// Options shared by every study preset.  Zero / empty values select the
/// preset's own defaults.
struct PresetOptions {
    long horizon = 0;         // largest approximation index
    std::uint64_t seed = 1;   // only used by sampling presets
    double alpha = 0.0;       // penalty exponent
    int rounds = -1;          // grid refinement rounds
    std::string schedule;     // rule tag, see below
    std::string penalty;      // "euclidean-power" or "separable-power"
    bool with_claims = true;  // attach the preset's registered claims
};

/// Names accepted by run_preset (case-insensitive):
///   finite-i     two-atom support, infeasible plug-in, penalized value
///                with a closed form
///   finite-ii    two-atom support, plug-in stuck at value 1, penalized
///                problem converging to the true value 0
///   discrete-i   escaping atom; plain integrands vs an index-enlarged
///                indicator ("envelope" block)
///   discrete-ii  escaping atom with step costs; plug-in converges to the
///                wrong value, enlarged indicator repairs it
///   empirical-i  iid sampling of a uniform law, two-sided mean constraint
///   rate-s1      probabilistic constraint, exact-shortfall penalization,
///                observable convergence rate
///   rate-s2      probabilistic constraint, envelope-smoothed penalization
/// Schedule tags accepted in PresetOptions::schedule:
///   inv-nu | inv-sqrt-nu | inv-log | mi | tv | bl | fm | kl | mi-rate |
///   rate-s2 | empirical | power:<q>
std::vector<std::string> preset_names();

SolveReport run_preset(const std::string& name, const PresetOptions& opt = {});

/// Building blocks of a preset, for direct use with the model / metrics /
/// diagnostics APIs (the rate presets expose their composite form):
/// the problem, the true distribution, and the level-nu approximation.
/// All three throw std::invalid_argument for unknown names.
CompositeProblem preset_problem(const std::string& name);
Distribution preset_base(const std::string& name);
DiscreteDistribution preset_approximation(const std::string& name, long nu,
                                          std::uint64_t seed = 1);

/// The probabilistic-constraint form of the rate presets ("rate-s1",
/// "rate-s2"); throws std::invalid_argument for other names.
ChanceProblem preset_chance_problem(const std::string& name);

/// Evaluate the claims registered for the report's preset (tolerances are
/// pinned in the registry).  The second overload restricts evaluation to
/// the listed claim keys and raises std::invalid_argument for unknown keys.
std::vector<ClaimResult> compare_expected(const SolveReport& rep);
std::vector<ClaimResult> compare_expected(const SolveReport& rep,
                                          std::span<const std::string> keys);

}  // namespace rockrelax
