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

#include <vector>

#include "rockrelax/distributions.hpp"
#include "rockrelax/envelopes.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/sets.hpp"

namespace rockrelax {

/// One probabilistic constraint: require mu(H(x)) >= b.
struct ChanceConstraint {
    ParamSet H;
    double b = 0.5;
};

/// min g0(x)  subject to  mu(H_i(x)) >= b_i, i = 1..m.
///
/// Equivalently a composite problem with integrands g_i = b_i - 1_{H_i(x)}
/// and the nonpositive-orthant indicator outside the expectation.
struct ChanceProblem {
    std::size_t n = 1;  // decision dimension
    std::size_t d = 1;  // sample dimension
    std::function<XReal(std::span<const double>)> g0;
    std::vector<ChanceConstraint> constraints;
    double bound_m = 1.0;  // |g_i| bound used by envelope certificates
};

/// Per-constraint slacks mu(H_i(x)) - b_i; all >= 0 means feasible.
std::vector<double> chance_slacks(const ChanceProblem& cp,
                                  const Distribution& mu,
                                  std::span<const double> x);

/// True if x is feasible for the perturbed constraint set
/// mu(H_i(x)) >= b_i - y_i (y = 0 recovers the nominal feasible set).
bool in_feasible_set(const ChanceProblem& cp, const Distribution& mu,
                     std::span<const double> x, std::span<const double> y);

/// g0(x) + indicator of the chance constraints under mu.
XReal chance_phi(const ChanceProblem& cp, const Distribution& mu,
                 std::span<const double> x);

/// Exact distance from y = 0 to the perturbations that make x feasible:
/// the Euclidean norm of the positive parts of b_i - mu(H_i(x)).
/// +infinity outside dom g0.
double infeasibility_distance(const ChanceProblem& cp, const Distribution& mu,
                              std::span<const double> x);

/// Penalized plug-in objective with exact probability shortfalls:
///   g0(x) + penalty( (b - mu(H(x)))^+ ).
XReal penalized_shortfall(const ChanceProblem& cp, const Distribution& mu,
                          const Penalty& penalty, std::span<const double> x);

/// Expectations E_mu[g_i^env(., x)] of the envelope-smoothed indicators
///   g_i^env = b_i + min{0, dist(xi, H_i(x))^beta / (beta theta) - 1},
/// one entry per constraint.  Nonpositive entries certify (smoothed)
/// feasibility at x.
std::vector<double> envelope_expectations(const ChanceProblem& cp,
                                          const Distribution& mu,
                                          const EnvelopeConfig& env,
                                          std::span<const double> x);

/// Penalized plug-in objective with epigraphically smoothed indicators:
///   g0(x) + penalty( max{0, E_mu[g^env(., x)]} ).
XReal penalized_envelope(const ChanceProblem& cp, const Distribution& mu,
                         const Penalty& penalty, const EnvelopeConfig& env,
                         std::span<const double> x);

/// The composite-form equivalent (integrands + orthant indicator), suitable
/// for the Rockafellian machinery.
CompositeProblem to_composite(const ChanceProblem& cp);

}  // namespace rockrelax
