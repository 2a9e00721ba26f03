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

namespace rockrelax {

/// Parameter schedules tie the penalty scale (and, where used, the envelope
/// scale and a tolerance sequence) to a measured distance between the true
/// and the approximating distributions.  Each named rule matches one of the
/// convergence guarantees implemented in this library:
///
///   bl         lambda = theta = d^(2/5)                (bounded-Lipschitz)
///   fm         lambda = theta = d^(2/5)                (Fortet-Mourier)
///   mi / tv    lambda = d^(alpha/2)
///   kl         lambda = (2 d)^(alpha/4) via Pinsker's transform sqrt(2 d)
///   mi-rate    lambda = d^(alpha^2/(alpha+1)),  eps = d^(alpha/(alpha+1))
///   rate-s2    lambda = d^(alpha^2/(2 alpha+2)), theta = d^(1/2),
///              eps = d^(alpha/(2 alpha+2))
///   empirical  lambda = (log(nu+2)/nu)^(alpha/2)       (iid sampling)
///   power      lambda = d^q for a caller-chosen exponent q > 0
///   explicit   lambda = 1/nu, 1/sqrt(nu), or 1/log(nu+2)
struct Schedule {
    std::string proposition;  // rule tag, one of the names above
    double alpha = 1.0;
    double exponent = 0.0;    // only used by "power"
    std::vector<double> lambda;
    std::vector<double> theta;  // empty when the rule has no envelope scale
    std::vector<double> eps;    // empty when the rule has no tolerance
    bool floored = false;  // some distances were clamped at the 1e-300 floor
};

/// Verdict for one validation condition over the tail of a schedule.
struct ConditionVerdict {
    std::string name;
    std::string status;  // "pass", "fail", or "vacuous"
    double first = 0.0;  // first value of the monitored sequence
    double last = 0.0;   // last value of the monitored sequence
};

struct ValidationReport {
    std::size_t horizon = 0;
    std::vector<ConditionVerdict> conditions;
    bool all_ok() const;
};

// Distances below this floor are clamped before exponentiation so that a
// handful of exact-match rows cannot poison a whole schedule.
inline constexpr double kDistanceFloor = 1e-300;

Schedule schedule_bl(std::span<const double> d, double alpha);
Schedule schedule_fm(std::span<const double> d, double alpha);
Schedule schedule_mi(std::span<const double> d, double alpha);
Schedule schedule_tv(std::span<const double> d, double alpha);
Schedule schedule_kl(std::span<const double> kl, double alpha);
Schedule schedule_mi_rate(std::span<const double> d, double alpha);
Schedule schedule_rate_s2(std::span<const double> d, double alpha);
Schedule schedule_empirical(std::span<const long> nu, double alpha);
Schedule schedule_power(std::span<const double> d, double exponent, double alpha);

enum class ExplicitKind { inv_nu, inv_sqrt_nu, inv_log };
Schedule schedule_explicit(std::span<const long> nu, ExplicitKind kind,
                           double alpha);

/// Check the convergence conditions attached to the schedule's rule over
/// the tail (last 10 entries) of a horizon of at least 20:
///   * "tends to zero": tail nonincreasing and final value at most a tenth
///     of the initial value;
///   * ratio conditions combine lambda, theta, and d as the rule requires;
///   * "empirical" checks that lambda^(2/alpha) nu / loglog(nu+2) is
///     nondecreasing over the tail (its divergence is doubly-logarithmic,
///     far too slow for a tenfold-drop test).
/// Ratio conditions are "vacuous" when every distance sits at the floor.
/// Throws std::invalid_argument when the horizon is shorter than 20 or a
/// required companion sequence (d, nu) is missing or mis-sized.
ValidationReport validate_schedule(const Schedule& s,
                                   std::span<const double> d,
                                   std::span<const long> nu = {});

}  // namespace rockrelax
