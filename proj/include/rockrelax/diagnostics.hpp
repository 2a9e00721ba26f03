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

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "rockrelax/chance.hpp"
#include "rockrelax/distributions.hpp"
#include "rockrelax/solvers.hpp"
#include "rockrelax/xreal.hpp"

namespace rockrelax {

/// Grid layout for the epigraphical-distance estimate: an axis-aligned box
/// sampled with `resolution` nodes per axis (1- or 2-dimensional).
struct EpiDistanceSpec {
    std::vector<std::array<double, 2>> box;
    int resolution = 201;
    double rho = 1.0;  // localization radius of the distance

    void validate() const;
};

using GridFunction = std::function<XReal(std::span<const double>)>;

/// Estimate of the localized epigraphical distance between f1 and f2.
///
/// A level eta certifies the distance when, for every grid point p with
/// ||p|| <= rho and f1(p) <= rho, the infimum of f2 over the grid points of
/// the Euclidean ball B(p, eta) is at most max{f1(p), -rho} + eta, and
/// symmetrically with the roles swapped.  The estimate is the smallest
/// certifying level on the dyadic ladder rho, rho/2, rho/4, ..., stopping
/// once the rung falls below the grid spacing (finer levels cannot be told
/// apart on the grid).  Certification is monotone in eta, so the ladder is
/// descended until the first failure.
///
/// Throws std::runtime_error when even the top rung eta = rho fails: the
/// grid is too coarse (or rho too small) to certify anything.
double epi_distance_estimate(const GridFunction& f1, const GridFunction& f2,
                             const EpiDistanceSpec& spec);

/// One-sided outer Minkowski content estimates
///   (mu(H(x) enlarged by eps) - mu(H(x))) / eps
/// for each eps in the ladder.  Bounded values across a decreasing ladder
/// indicate the boundary of H(x) carries no probability mass concentration.
std::vector<double> minkowski_content(const Distribution& mu, const ParamSet& H,
                                      std::span<const double> x,
                                      std::span<const double> eps_ladder);

struct ProbeResult {
    double kappa = 0.0;  // largest observed distance ratio
    std::size_t feasible_grid_points = 0;
    std::vector<double> ratios;  // one per sample; 0 for feasible samples
};

/// Empirical check of metric subregularity for the chance-constraint map:
/// for each sample point z, compare the distance from z to the feasible set
/// (measured against the feasible points of a reference grid) with the
/// exact norm of the probability shortfalls at z.  kappa is the largest
/// ratio; subregularity with modulus kappa holds on the sample when every
/// ratio is at most kappa.
///
/// Only the box and resolution of `grid` are used (its initial lattice).
/// Throws std::runtime_error when no grid point is feasible, and
/// std::invalid_argument when a sample leaves the domain of the objective.
ProbeResult subregularity_probe(const ChanceProblem& cp, const Distribution& mu,
                                std::span<const std::vector<double>> samples,
                                const GridSpec& grid);

struct RateFit {
    double slope = 0.0;      // q in  e ~ c * d^q
    double intercept = 0.0;  // log c
    double max_abs_residual = 0.0;  // in log space
    std::size_t n_used = 0;
};

/// Least-squares fit of log e against log d.  Pairs with nonpositive or
/// non-finite entries are dropped; fewer than three usable pairs raise
/// std::invalid_argument (no rate can be inferred).
RateFit rate_fit(std::span<const double> d, std::span<const double> e);

}  // namespace rockrelax
