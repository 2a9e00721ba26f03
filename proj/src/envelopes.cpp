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
#include "rockrelax/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rockrelax {

void EnvelopeConfig::validate() const {
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("EnvelopeConfig: beta must be finite and >= 1");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("EnvelopeConfig: theta must be finite and > 0");
    }
}

namespace {

double norm2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

Component epi_regularize_discrete(const Component& g,
                                  DiscreteDistribution support,
                                  EnvelopeConfig cfg) {
    cfg.validate();
    if (support.size() == 0) {
        throw std::invalid_argument("epi_regularize_discrete: empty support");
    }
    auto atoms = std::make_shared<std::vector<std::vector<double>>>(support.atoms);
    auto inner = g.g;
    Component out;
    out.g = [atoms, inner, cfg](std::span<const double> xi,
                                std::span<const double> x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& zeta : *atoms) {
            if (zeta.size() != xi.size()) {
                throw std::invalid_argument(
                    "epi_regularize_discrete: dimension mismatch between xi and support");
            }
            const double cost =
                pow_abs(norm2(xi, zeta), cfg.beta) / (cfg.beta * cfg.theta);
            const double cand = inner(zeta, x) + cost;
            best = std::min(best, cand);
        }
        return best;
    };
    // Piecewise structure in xi is induced by the atoms themselves.
    out.breakpoints = [atoms](std::span<const double>) {
        std::vector<double> pts;
        for (const auto& zeta : *atoms) {
            if (zeta.size() == 1) pts.push_back(zeta[0]);
        }
        return pts;
    };
    return out;
}

double indicator_envelope_value(double b, const Region& region,
                                const EnvelopeConfig& cfg,
                                std::span<const double> xi) {
    // Empty region: the indicator never fires and the envelope is flat at b.
    if (region.empty()) return b;
    const double dist = region.distance(xi);
    const double cost = pow_abs(dist, cfg.beta) / (cfg.beta * cfg.theta);
    return b + std::min(0.0, cost - 1.0);
}

Component epi_regularize_indicator(double b, ParamSet K, EnvelopeConfig cfg) {
    cfg.validate();
    auto set = std::make_shared<ParamSet>(std::move(K));
    Component out;
    out.g = [b, set, cfg](std::span<const double> xi, std::span<const double> x) {
        return indicator_envelope_value(b, set->at(x), cfg, xi);
    };
    out.breakpoints = [set, cfg](std::span<const double> x) {
        std::vector<double> pts = region_breakpoints_1d(set->at(x));
        // The envelope kinks where the distance cost reaches the indicator
        // depth: dist = (beta * theta)^(1/beta).
        const double reach = std::pow(cfg.beta * cfg.theta, 1.0 / cfg.beta);
        std::vector<double> out_pts = pts;
        for (double p : pts) {
            out_pts.push_back(p - reach);
            out_pts.push_back(p + reach);
        }
        return out_pts;
    };
    return out;
}

double lipschitz_certificate(double beta, double theta, double bound_m) {
    if (!(beta >= 1.0) || !(theta > 0.0) || !(bound_m >= 0.0)) {
        throw std::invalid_argument("lipschitz_certificate: need beta >= 1, theta > 0, M >= 0");
    }
    const double lead = std::pow(3.0, beta - 1.0) / theta;
    const double inner = std::pow(2.0 * beta * bound_m * theta, (beta - 1.0) / beta);
    return lead * std::max(inner, 1.0);
}

}  // namespace rockrelax
