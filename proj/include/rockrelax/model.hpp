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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rockrelax/distributions.hpp"
#include "rockrelax/sets.hpp"
#include "rockrelax/xreal.hpp"

namespace rockrelax {

/// Outer function h applied to the expectation vector.  All variants are
/// proper, lower semicontinuous, and componentwise nondecreasing.
struct OuterFunction {
    enum class Kind { orthant_indicator, linear, max_plus_power };

    Kind kind = Kind::orthant_indicator;
    std::size_t arity = 1;        // length of the expectation vector
    std::vector<double> weights;  // linear: nonnegative
    double alpha = 1.0;           // max_plus_power exponent, >= 1

    /// orthant_indicator: 0 if y <= 0 componentwise, else +inf.
    /// linear: <weights, y>.   max_plus_power: sum_i max{0, y_i}^alpha.
    XReal eval(std::span<const double> y) const;

    static OuterFunction orthant(std::size_t m);
    static OuterFunction linear(std::vector<double> weights);
    static OuterFunction max_plus_power(std::size_t m, double alpha);
};

/// One scalar integrand g_i(xi, x), with optional integration breakpoints in
/// xi (used by continuous quadrature so kinks never sit inside a panel).
struct Component {
    std::function<double(std::span<const double> xi, std::span<const double> x)> g;
    std::function<std::vector<double>(std::span<const double> x)> breakpoints;
};

/// Composite stochastic objective
///   phi(x)   = g0(x) + h(E_mu[G(xi, x)]),
/// together with its exact penalty relaxation in an extra variable u:
///   f(u, x)  = g0(x) + h(u + E_mu[G(xi, x)]) + (u == 0 ? 0 : +inf),
/// and the penalized approximations evaluated by the functions below.
struct CompositeProblem {
    std::size_t n = 1;  // decision dimension
    std::size_t m = 1;  // number of expectation components
    std::size_t d = 1;  // sample dimension

    std::function<XReal(std::span<const double> x)> g0;
    OuterFunction h;
    std::vector<Component> components;

    /// Declared uniform bound sup |g_i| over the support and decisions of
    /// interest (envelope certificates need it).
    double bound_M = 1.0;
};

/// Norm-power penalty (1 / (alpha * lambda)) * N(u)^alpha with
/// N = Euclidean norm (euclidean_power) or componentwise sum of powers
/// (separable_power: sum_i |u_i|^alpha / (alpha * lambda)).
struct Penalty {
    enum class Tag { euclidean_power, separable_power };
    Tag tag = Tag::euclidean_power;
    double alpha = 1.0;   // > 0
    double lambda = 1.0;  // > 0

    double eval(std::span<const double> u) const;
};

/// |t|^alpha with exact fast paths for alpha 1 and 2 (keeps closed-form
/// identities bit-exact instead of round-tripping through pow).
double pow_abs(double t, double alpha);

/// E_mu[g_i(., x)] for every component, under the given measure.
std::vector<double> component_expectations(const CompositeProblem& pb,
                                           const Distribution& mu,
                                           std::span<const double> x);

/// phi(x) under mu (also the plug-in phi^nu when called with mu^nu).
XReal eval_phi(const CompositeProblem& pb, const Distribution& mu,
               std::span<const double> x);

/// The exact Rockafellian f(u, x): the u = 0 slice reproduces phi.
XReal eval_rockafellian(const CompositeProblem& pb, const Distribution& mu,
                        std::span<const double> u, std::span<const double> x);

/// Approximating Rockafellian
///   f^nu(u, x) = g0(x) + h(u + E_mu_nu[G^nu(xi, x)]) + penalty(u).
/// `g_override` substitutes approximating integrands G^nu; empty means
/// G^nu = G.
XReal eval_approx_rockafellian(const CompositeProblem& pb,
                               const Distribution& mu_nu,
                               std::span<const Component> g_override,
                               const Penalty& penalty,
                               std::span<const double> u,
                               std::span<const double> x);

/// inf over u of eval_approx_rockafellian at fixed x.  Closed form when h is
/// the orthant indicator:
///   separable penalty:  g0(x) + (1/(alpha lambda)) sum_i max{0, v_i}^alpha
///   euclidean penalty:  g0(x) + (1/(alpha lambda)) || max(v, 0) ||_2^alpha
/// with v = E[G^nu(., x)]; the two coincide when m = 1 or alpha = 2.
/// Other outer functions fall back to a grid search over u in [-4, 4]^m
/// (documented approximation; m <= 2 only).
XReal partial_min_u(const CompositeProblem& pb, const Distribution& mu_nu,
                    std::span<const Component> g_override,
                    const Penalty& penalty, std::span<const double> x);

// ---- small catalog of reusable pieces ----

/// g0(x) = sum_j x_j^2.
std::function<XReal(std::span<const double>)> g0_quadratic();

/// g0(x) = c0 + <a, x> + indicator of the box [lo, hi].
std::function<XReal(std::span<const double>)> g0_affine_on_box(
    std::vector<double> a, double c0, std::vector<double> lo, std::vector<double> hi);

/// g0(x) = sum_k scale_k * 1_{S_k}(x_0)  (scaled indicator steps in the first
/// coordinate; sets realized at x via their own parameters are not needed
/// here, the steps are fixed 1-D regions).
std::function<XReal(std::span<const double>)> g0_step_sum(
    std::vector<double> scales, std::vector<Region> steps);

/// Finite endpoints of a 1-D region, used as integration breakpoints.
std::vector<double> region_breakpoints_1d(const Region& r);

/// g_i(xi, x) = b - 1_{K(x)}(xi) for a parametrized set K.
Component component_const_minus_indicator(double b, ParamSet K);

/// g(xi, x) = c0 + <a, xi>; affine in the sample, decision-free.
Component component_affine(std::vector<double> a, double c0);

}  // namespace rockrelax
