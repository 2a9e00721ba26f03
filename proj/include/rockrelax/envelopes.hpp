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

#include "rockrelax/distributions.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/sets.hpp"

namespace rockrelax {

/// Epigraphical regularization parameters:
///   g_env(xi, x) = inf over support points zeta of
///                  g(zeta, x) + ||xi - zeta||^beta / (beta * theta).
/// beta = 1 is the Pasch-Hausdorff (Lipschitz) envelope, beta = 2 the
/// Moreau envelope.  Both minorize g and increase as theta decreases.
struct EnvelopeConfig {
    double beta = 1.0;   // >= 1
    double theta = 1.0;  // > 0

    void validate() const;
};

/// Envelope of an arbitrary integrand over a finite support: the infimum is
/// an exact minimum over the atoms.
Component epi_regularize_discrete(const Component& g,
                                  DiscreteDistribution support,
                                  EnvelopeConfig cfg);

/// Envelope of the characteristic-form integrand g = b - 1_K over any
/// support containing K.  Closed form
///   b + min{ 0, dist(xi, K(x))^beta / (beta * theta) - 1 },
/// valid because the infimum splits over zeta in K (reaching b - 1 plus the
/// distance cost) and zeta = xi (reaching b).
Component epi_regularize_indicator(double b, ParamSet K, EnvelopeConfig cfg);

/// Pointwise value of the closed form above at a realized region.
double indicator_envelope_value(double b, const Region& region,
                                const EnvelopeConfig& cfg,
                                std::span<const double> xi);

/// Certified Lipschitz growth modulus: the envelope satisfies
///   |g_env(s, x) - g_env(t, x)| <= L * max{1, |s|, |t|}^(beta-1) * |s - t|
/// with L = (3^(beta-1) / theta) * max{ (2 beta M theta)^((beta-1)/beta), 1 }
/// whenever |g| <= M.
double lipschitz_certificate(double beta, double theta, double bound_m);

}  // namespace rockrelax
