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
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rockrelax/sets.hpp"

namespace rockrelax {

/// Finitely supported probability measure on R^d.
/// Invariants (enforced by make_discrete): weights nonnegative and summing
/// to 1 within 1e-12, atoms pairwise distinct after merging coordinate-wise
/// duplicates (match within 1e-12 per coordinate merges, weights add).
struct DiscreteDistribution {
    std::vector<std::vector<double>> atoms;  // all of common dimension
    std::vector<double> weights;

    std::size_t size() const { return atoms.size(); }
    std::size_t dim() const { return atoms.empty() ? 0 : atoms.front().size(); }
};

/// Uniform law on the interval [lower, upper], lower < upper.
struct Uniform1D {
    double lower = 0.0;
    double upper = 1.0;
};

using Distribution = std::variant<DiscreteDistribution, Uniform1D>;

/// Validating constructor: merges duplicate atoms, normalizes weights.
/// Errors: empty atom list, any negative weight, zero total weight,
/// inconsistent atom dimensions.
DiscreteDistribution make_discrete(std::vector<std::vector<double>> atoms,
                                   std::vector<double> weights);

/// Copy with zero-weight atoms removed (metric routines call this first so
/// padded supports do not inflate the LP sizes).
DiscreteDistribution trim_zero_weights(const DiscreteDistribution& d);

/// Deterministic family { mu^nu } built from a base measure.  Every scheme
/// is a pure function of nu (and of (seed, stream) for iid_empirical), so
/// repeated realization is byte-identical.
struct PerturbationSequence {
    enum class Scheme { weight_shift, atom_escape, tv_bounded, iid_empirical };

    Scheme scheme = Scheme::weight_shift;
    DiscreteDistribution base;       // schemes on finite support
    Uniform1D continuous_base;       // iid_empirical may sample a continuous law
    bool base_is_continuous = false;

    // weight_shift: move shift(nu) = shift_coeff / (nu + shift_offset) of mass
    // from atom `shift_from` to atom `shift_to`.
    double shift_coeff = 1.0;
    double shift_offset = 1.0;
    std::size_t shift_from = 0;
    std::size_t shift_to = 1;

    // tv_bounded: mix p^nu = p + delta(nu) (target - p), delta as above;
    // total variation between p^nu and p is at most 2 delta(nu).
    std::vector<double> tv_target;

    // iid_empirical draws.
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
};

/// Realize mu^nu (nu >= 1).  Errors: a scheme producing a negative weight
/// reports the offending atom and value; atom_escape requires at least nu
/// atoms in the base support.
DiscreteDistribution perturb(const PerturbationSequence& seq, long nu);

/// Empirical measure: nu equally weighted iid draws from `base` using the
/// counter RNG at (seed, stream).  Draw k (0-based) is fixed forever, so the
/// first nu draws of a longer sample coincide with the shorter sample.
DiscreteDistribution empirical(const Distribution& base, long nu,
                               std::uint64_t seed, std::uint64_t stream = 0);

/// Probability mass of a region.  Atomic: membership sum (1e-12 tolerance).
/// Uniform1D: exact overlap length for boxes/unions of intervals; errors on
/// region kinds without a 1-D closed form.
double prob_of_set(const Distribution& dist, const Region& region);

/// Expectation of a scalar integrand.  Atomic: exact weighted sum, error if
/// the integrand is non-finite at an atom with positive weight.  Uniform1D:
/// adaptive Simpson quadrature split at the declared breakpoints, absolute
/// tolerance 1e-10.
double expectation(const Distribution& dist,
                   const std::function<double(std::span<const double>)>& f,
                   std::span<const double> breakpoints = {});

const DiscreteDistribution* as_discrete(const Distribution& d);
const Uniform1D* as_uniform(const Distribution& d);

}  // namespace rockrelax
