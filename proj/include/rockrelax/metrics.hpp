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

#include <span>
#include <vector>

#include "rockrelax/distributions.hpp"
#include "rockrelax/model.hpp"

namespace rockrelax {

// Probability metrics between finitely supported measures.  Zero-weight
// atoms are trimmed before any linear program is assembled; the union
// support after trimming is capped at 400 atoms (the dense simplex behind
// BL/FM is not meant for more).

/// Total variation sum |p_k - q_k| over the union support; range [0, 2].
double total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Kullback-Leibler divergence sum p log(p/q); +inf when a charges an atom
/// that b does not.
double kl_divergence(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// 1-Wasserstein distance.  d = 1 uses the exact CDF-difference integral;
/// d >= 2 solves the transportation program exactly.
double wasserstein1(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Exact 1-Wasserstein distance between an atomic measure and a uniform law
/// (piecewise-linear CDF difference integrated segment by segment).
double wasserstein1(const DiscreteDistribution& a, const Uniform1D& b);

/// Bounded-Lipschitz distance: sup of integral differences over test
/// functions with |f| <= 1 and Lipschitz modulus 1, computed as an LP on the
/// union support.
double bounded_lipschitz(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Fortet-Mourier distance of order beta >= 1: test functions satisfy
/// |f(s) - f(t)| <= max{1, |s|, |t|}^(beta-1) |s - t|; beta = 1 recovers
/// the 1-Wasserstein distance.  Translation invariance lets the LP pin one
/// value f = 0.
double fortet_mourier(const DiscreteDistribution& a, const DiscreteDistribution& b,
                      double beta);

/// Problem-adapted discrepancy: max over the decision grid and components of
/// |E_mu1[g_i(., x)] - E_mu2[g_i(., x)]|.  A finite xgrid makes this a lower
/// bound for the full supremum; callers choose grids that hit the active
/// decisions.
double minimal_information(const CompositeProblem& pb, const Distribution& mu1,
                           const Distribution& mu2,
                           std::span<const std::vector<double>> xgrid);

}  // namespace rockrelax
