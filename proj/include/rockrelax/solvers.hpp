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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rockrelax/xreal.hpp"

namespace rockrelax {

/// Objective for the grid solver: extended-real valued, +inf encodes
/// constraint violation.  Must be deterministic; NaN results are rejected.
using GridFn = std::function<XReal(std::span<const double>)>;

/// Multiresolution lattice search over an axis-aligned box (dim <= 3).
///
/// Round 0 evaluates a full lattice with `resolution` points per axis.
/// Each later round keeps every cell whose best corner-or-center value ties
/// into the best ceil(keep * #candidates) cell scores (ties kept, so flat
/// minima are never split) and bisects it, evaluating the new lattice points.
/// A cell is a candidate only if some corner or its center is feasible.
struct GridSpec {
    std::vector<std::array<double, 2>> box;  // per-axis [lo, hi], lo < hi
    int resolution = 9;                      // points per axis, >= 3
    int rounds = 0;                          // bisection rounds, >= 0
    double keep = 0.25;                      // kept fraction per round, (0, 1]
    std::size_t max_cells = 20000;           // refinement work cap per round

    double initial_spacing(std::size_t axis) const;
    double final_spacing(std::size_t axis) const;
    void validate() const;                   // throws std::invalid_argument
};

/// Result of a grid minimization.
struct MinResult {
    XReal value = XReal::pos_inf();          // best value seen (any round)
    bool feasible_found = false;
    /// All evaluated points within value + 1e-12 * max(1, |value|),
    /// sorted lexicographically; truncated to 512 entries (bbox still
    /// covers every qualifying point).
    std::vector<std::vector<double>> representatives;
    /// Per-axis [min, max] over all qualifying points.
    std::vector<std::array<double, 2>> rep_bbox;
    /// True when a qualifying point lies within one final spacing of the
    /// box boundary, i.e. the minimizer may continue outside the box.
    bool box_clipped = false;
    /// Finest lattice spacing per axis (coordinate resolution of the result).
    std::vector<double> spacing;
    /// Running best value after each round (monotone nonincreasing).
    std::vector<double> round_values;
};

/// Deterministic minimization of fn over the spec lattice.  Evaluation is
/// parallelized across lattice points; results do not depend on the worker
/// count.  Throws if fn returns NaN.
MinResult grid_minimize(const GridFn& fn, const GridSpec& spec);

/// Points within eps of the best value over the same lattice sweep:
/// value <= v* + eps + 1e-12 * max(1, |v*|).  Same determinism contract.
MinResult near_argmin(const GridFn& fn, const GridSpec& spec, double eps);

}  // namespace rockrelax
