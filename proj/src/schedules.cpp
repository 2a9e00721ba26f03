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
#include "rockrelax/schedules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rockrelax {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("schedule: alpha must be finite and >= 1");
    }
}

// Clamp distances at the floor; report whether any clamping happened.
std::vector<double> floor_distances(std::span<const double> d, bool* floored) {
    std::vector<double> out(d.begin(), d.end());
    for (double& v : out) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("schedule: distances must be finite and >= 0");
        }
        if (v < kDistanceFloor) {
            v = kDistanceFloor;
            *floored = true;
        }
    }
    return out;
}

double power_of(double base, double e) {
    if (e == 1.0) return base;
    if (e == 0.5) return std::sqrt(base);
    return std::pow(base, e);
}

std::vector<double> powers(const std::vector<double>& d, double e) {
    std::vector<double> out;
    out.reserve(d.size());
    for (double v : d) out.push_back(power_of(v, e));
    return out;
}

Schedule distance_power_schedule(std::span<const double> d, double alpha,
                                 const std::string& tag, double lambda_exp,
                                 double theta_exp = 0.0, double eps_exp = 0.0) {
    check_alpha(alpha);
    Schedule s;
    s.proposition = tag;
    s.alpha = alpha;
    const std::vector<double> dd = floor_distances(d, &s.floored);
    s.lambda = powers(dd, lambda_exp);
    if (theta_exp != 0.0) s.theta = powers(dd, theta_exp);
    if (eps_exp != 0.0) s.eps = powers(dd, eps_exp);
    return s;
}

}  // namespace

bool ValidationReport::all_ok() const {
    for (const auto& c : conditions) {
        if (c.status == "fail") return false;
    }
    return true;
}

Schedule schedule_bl(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "bl", 0.4, 0.4);
}

Schedule schedule_fm(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "fm", 0.4, 0.4);
}

Schedule schedule_mi(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "mi", alpha / 2.0);
}

Schedule schedule_tv(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "tv", alpha / 2.0);
}

Schedule schedule_kl(std::span<const double> kl, double alpha) {
    check_alpha(alpha);
    // Pinsker: total variation is at most sqrt(2 KL) (for the mass-2
    // convention used here, d_tv <= 2 sqrt(KL/2) = sqrt(2 KL)), so the
    // transformed sequence feeds the total-variation rule.
    std::vector<double> transformed;
    transformed.reserve(kl.size());
    for (double v : kl) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("schedule_kl: divergences must be >= 0");
        }
        transformed.push_back(std::isfinite(v)
                                  ? std::sqrt(2.0 * v)
                                  : std::numeric_limits<double>::infinity());
    }
    for (double v : transformed) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(
                "schedule_kl: infinite divergence (disjoint supports); use a "
                "support-robust metric such as bl or fm instead");
        }
    }
    Schedule s = distance_power_schedule(transformed, alpha, "kl", alpha / 2.0);
    return s;
}

Schedule schedule_mi_rate(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "mi-rate",
                                   alpha * alpha / (alpha + 1.0), 0.0,
                                   alpha / (alpha + 1.0));
}

Schedule schedule_rate_s2(std::span<const double> d, double alpha) {
    return distance_power_schedule(d, alpha, "rate-s2",
                                   alpha * alpha / (2.0 * alpha + 2.0), 0.5,
                                   alpha / (2.0 * alpha + 2.0));
}

Schedule schedule_empirical(std::span<const long> nu, double alpha) {
    check_alpha(alpha);
    Schedule s;
    s.proposition = "empirical";
    s.alpha = alpha;
    s.lambda.reserve(nu.size());
    for (long v : nu) {
        if (v < 1) throw std::invalid_argument("schedule_empirical: nu must be >= 1");
        const double n = static_cast<double>(v);
        s.lambda.push_back(power_of(std::log(n + 2.0) / n, alpha / 2.0));
    }
    return s;
}

Schedule schedule_power(std::span<const double> d, double exponent,
                        double alpha) {
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw std::invalid_argument("schedule_power: exponent must be finite and > 0");
    }
    Schedule s = distance_power_schedule(d, alpha, "power", exponent);
    s.exponent = exponent;
    return s;
}

Schedule schedule_explicit(std::span<const long> nu, ExplicitKind kind,
                           double alpha) {
    check_alpha(alpha);
    Schedule s;
    s.alpha = alpha;
    s.lambda.reserve(nu.size());
    for (long v : nu) {
        if (v < 1) throw std::invalid_argument("schedule_explicit: nu must be >= 1");
        const double n = static_cast<double>(v);
        switch (kind) {
            case ExplicitKind::inv_nu:
                s.proposition = "explicit-inv-nu";
                s.lambda.push_back(1.0 / n);
                break;
            case ExplicitKind::inv_sqrt_nu:
                s.proposition = "explicit-inv-sqrt-nu";
                s.lambda.push_back(1.0 / std::sqrt(n));
                break;
            case ExplicitKind::inv_log:
                s.proposition = "explicit-inv-log";
                s.lambda.push_back(1.0 / std::log(n + 2.0));
                break;
        }
    }
    return s;
}

namespace {

constexpr std::size_t kTail = 10;
constexpr std::size_t kMinHorizon = 20;

ConditionVerdict tends_to_zero(const std::string& name,
                               const std::vector<double>& seq) {
    ConditionVerdict v;
    v.name = name;
    v.first = seq.front();
    v.last = seq.back();
    bool ok = true;
    for (std::size_t k = seq.size() - kTail; k + 1 < seq.size(); ++k) {
        if (seq[k + 1] > seq[k]) ok = false;
    }
    if (!(seq.back() <= seq.front() / 10.0 * (1.0 + 1e-9))) ok = false;
    v.status = ok ? "pass" : "fail";
    return v;
}

ConditionVerdict tends_to_infinity(const std::string& name,
                                   const std::vector<double>& seq) {
    ConditionVerdict v;
    v.name = name;
    v.first = seq.front();
    v.last = seq.back();
    bool ok = true;
    for (std::size_t k = seq.size() - kTail; k + 1 < seq.size(); ++k) {
        if (seq[k + 1] < seq[k]) ok = false;
    }
    v.status = ok ? "pass" : "fail";
    return v;
}

bool all_at_floor(std::span<const double> d) {
    for (double v : d) {
        if (v > kDistanceFloor) return false;
    }
    return true;
}

}  // namespace

ValidationReport validate_schedule(const Schedule& s,
                                   std::span<const double> d,
                                   std::span<const long> nu) {
    ValidationReport rep;
    rep.horizon = s.lambda.size();
    if (rep.horizon < kMinHorizon) {
        throw std::invalid_argument(
            "validate_schedule: horizon must be at least 20 (tail rule uses "
            "the last 10 entries)");
    }

    const bool needs_d = s.proposition == "bl" || s.proposition == "fm" ||
                         s.proposition == "mi" || s.proposition == "tv" ||
                         s.proposition == "kl" || s.proposition == "mi-rate" ||
                         s.proposition == "rate-s2" || s.proposition == "power";
    if (needs_d && d.size() != rep.horizon) {
        throw std::invalid_argument(
            "validate_schedule: this rule needs one distance per row");
    }
    const bool needs_nu = s.proposition == "empirical";
    if (needs_nu && nu.size() != rep.horizon) {
        throw std::invalid_argument(
            "validate_schedule: the empirical rule needs one sample count per row");
    }

    rep.conditions.push_back(tends_to_zero("lambda -> 0", s.lambda));
    if (!s.theta.empty()) {
        rep.conditions.push_back(tends_to_zero("theta -> 0", s.theta));
    }
    if (!s.eps.empty()) {
        rep.conditions.push_back(tends_to_zero("eps -> 0", s.eps));
    }

    if (needs_d) {
        // Transform KL divergences the same way the factory did.
        std::vector<double> dd(d.begin(), d.end());
        if (s.proposition == "kl") {
            for (double& v : dd) v = std::sqrt(2.0 * v);
        }
        bool dummy = false;
        dd = floor_distances(dd, &dummy);
        ConditionVerdict v;
        const bool with_theta = !s.theta.empty();
        v.name = with_theta ? "(1/lambda) (d/theta)^alpha -> 0"
                            : "(1/lambda) d^alpha -> 0";
        if (all_at_floor(dd)) {
            v.status = "vacuous";
            v.first = v.last = 0.0;
        } else {
            std::vector<double> ratio(rep.horizon);
            for (std::size_t k = 0; k < rep.horizon; ++k) {
                const double base = with_theta ? dd[k] / s.theta[k] : dd[k];
                ratio[k] = std::pow(base, s.alpha) / s.lambda[k];
            }
            v = tends_to_zero(v.name, ratio);
        }
        rep.conditions.push_back(v);
    }

    if (needs_nu) {
        std::vector<double> lil(rep.horizon);
        for (std::size_t k = 0; k < rep.horizon; ++k) {
            const double n = static_cast<double>(nu[k]);
            lil[k] = std::pow(s.lambda[k], 2.0 / s.alpha) * n /
                     std::log(std::log(n + 2.0));
        }
        rep.conditions.push_back(
            tends_to_infinity("lambda^(2/alpha) nu / loglog(nu+2) -> inf", lil));
    }

    return rep;
}

}  // namespace rockrelax
