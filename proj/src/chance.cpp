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
#include "rockrelax/chance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rockrelax {

std::vector<double> chance_slacks(const ChanceProblem& cp,
                                  const Distribution& mu,
                                  std::span<const double> x) {
    std::vector<double> s;
    s.reserve(cp.constraints.size());
    for (const auto& c : cp.constraints) {
        s.push_back(prob_of_set(mu, c.H.at(x)) - c.b);
    }
    return s;
}

bool in_feasible_set(const ChanceProblem& cp, const Distribution& mu,
                     std::span<const double> x, std::span<const double> y) {
    if (y.size() != cp.constraints.size()) {
        throw std::invalid_argument("in_feasible_set: y must have one entry per constraint");
    }
    if (cp.g0 && !cp.g0(x).is_finite()) return false;
    const std::vector<double> s = chance_slacks(cp, mu, x);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < -y[i]) return false;
    }
    return true;
}

XReal chance_phi(const ChanceProblem& cp, const Distribution& mu,
                 std::span<const double> x) {
    const XReal base = cp.g0 ? cp.g0(x) : XReal(0.0);
    if (!base.is_finite()) return base;
    for (double s : chance_slacks(cp, mu, x)) {
        if (s < 0.0) return XReal::pos_inf();
    }
    return base;
}

double infeasibility_distance(const ChanceProblem& cp, const Distribution& mu,
                              std::span<const double> x) {
    if (cp.g0 && !cp.g0(x).is_finite()) {
        return std::numeric_limits<double>::infinity();
    }
    double sq = 0.0;
    for (double s : chance_slacks(cp, mu, x)) {
        const double shortfall = std::max(0.0, -s);
        sq += shortfall * shortfall;
    }
    return std::sqrt(sq);
}

XReal penalized_shortfall(const ChanceProblem& cp, const Distribution& mu,
                          const Penalty& penalty, std::span<const double> x) {
    const XReal base = cp.g0 ? cp.g0(x) : XReal(0.0);
    if (!base.is_finite()) return base;
    std::vector<double> v;
    v.reserve(cp.constraints.size());
    for (double s : chance_slacks(cp, mu, x)) v.push_back(std::max(0.0, -s));
    return base + XReal(penalty.eval(v));
}

std::vector<double> envelope_expectations(const ChanceProblem& cp,
                                          const Distribution& mu,
                                          const EnvelopeConfig& env,
                                          std::span<const double> x) {
    env.validate();
    std::vector<double> out;
    out.reserve(cp.constraints.size());
    for (const auto& c : cp.constraints) {
        const Region region = c.H.at(x);
        const auto integrand = [&](std::span<const double> xi) {
            return indicator_envelope_value(c.b, region, env, xi);
        };
        std::vector<double> brk;
        if (region.dim() == 1 && !region.empty()) {
            brk = region_breakpoints_1d(region);
            const double reach = std::pow(env.beta * env.theta, 1.0 / env.beta);
            const std::size_t n0 = brk.size();
            for (std::size_t k = 0; k < n0; ++k) {
                brk.push_back(brk[k] - reach);
                brk.push_back(brk[k] + reach);
            }
        }
        out.push_back(expectation(mu, integrand, brk));
    }
    return out;
}

XReal penalized_envelope(const ChanceProblem& cp, const Distribution& mu,
                         const Penalty& penalty, const EnvelopeConfig& env,
                         std::span<const double> x) {
    const XReal base = cp.g0 ? cp.g0(x) : XReal(0.0);
    if (!base.is_finite()) return base;
    std::vector<double> v = envelope_expectations(cp, mu, env, x);
    for (double& vi : v) vi = std::max(0.0, vi);
    return base + XReal(penalty.eval(v));
}

CompositeProblem to_composite(const ChanceProblem& cp) {
    CompositeProblem pb;
    pb.n = cp.n;
    pb.m = cp.constraints.size();
    pb.d = cp.d;
    pb.g0 = cp.g0;
    pb.h = OuterFunction::orthant(pb.m);
    pb.bound_M = cp.bound_m;
    for (const auto& c : cp.constraints) {
        pb.components.push_back(component_const_minus_indicator(c.b, c.H));
    }
    return pb;
}

}  // namespace rockrelax
