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

#include <limits>
#include <span>
#include <vector>

namespace rockrelax {

/// Scalar affine map of the decision vector: c0 + <cx, x>.
/// Used for set parameters that move with x (e.g. an interval endpoint x + 1/nu).
struct AffineScalar {
    double c0 = 0.0;
    std::vector<double> cx;  // empty means constant

    static AffineScalar constant(double c) { return AffineScalar{c, {}}; }
    /// c0 + coeff * x[j]
    static AffineScalar linear(double c0, double coeff, std::size_t j = 0) {
        std::vector<double> cx(j + 1, 0.0);
        cx[j] = coeff;
        return AffineScalar{c0, std::move(cx)};
    }

    double at(std::span<const double> x) const {
        double v = c0;
        for (std::size_t j = 0; j < cx.size(); ++j) v += cx[j] * x[j];
        return v;
    }
};

/// A concrete closed subset of R^d at a fixed decision x: box with optionally
/// unbounded sides, Euclidean ball, halfspace, or a finite union of those.
/// Membership uses a 1e-12 absolute tolerance; distances are exact closed forms.
struct Region {
    enum class Kind { box, ball, halfspace, finite_union };

    Kind kind = Kind::box;
    // box: per-axis [lo, hi]; +-inf endpoints encode halflines / full axes.
    std::vector<double> lo, hi;
    // ball: center and radius.
    std::vector<double> center;
    double radius = 0.0;
    // halfspace: { xi : <normal, xi> <= offset }.
    std::vector<double> normal;
    double offset = 0.0;
    // finite_union members.
    std::vector<Region> members;

    std::size_t dim() const;
    bool empty() const;
    bool contains(std::span<const double> xi, double tol = 1e-12) const;
    /// Euclidean distance from xi to the set; +inf when the set is empty.
    double distance(std::span<const double> xi) const;
    /// The set enlarged by a closed Euclidean ball of radius eps >= 0.
    Region enlarge(double eps) const;

    static Region interval(double lo, double hi);           // 1-D box
    static Region box(std::vector<double> lo, std::vector<double> hi);
    static Region ball(std::vector<double> center, double radius);
    static Region halfspace(std::vector<double> normal, double offset);
    static Region finite_union(std::vector<Region> members);
};

/// A set-valued map x => Region, built from the same primitives with
/// AffineScalar parameters in place of fixed endpoints.
struct ParamSet {
    enum class Kind { box, ball, halfspace, finite_union };

    Kind kind = Kind::box;
    std::vector<AffineScalar> lo, hi;      // box; +-inf constants allowed
    std::vector<AffineScalar> center;      // ball
    AffineScalar radius;                   // ball
    std::vector<double> normal;            // halfspace normal (fixed direction)
    AffineScalar offset;                   // halfspace offset
    std::vector<ParamSet> members;         // finite_union

    /// Realize the set at decision x.
    Region at(std::span<const double> x) const;

    static ParamSet interval(AffineScalar lo, AffineScalar hi);
    static ParamSet halfline_le(AffineScalar hi);   // (-inf, hi(x)]
    static ParamSet halfline_ge(AffineScalar lo);   // [lo(x), +inf)
    static ParamSet singleton(AffineScalar point);  // degenerate 1-D interval
    static ParamSet box2(AffineScalar lo0, AffineScalar hi0,
                         AffineScalar lo1, AffineScalar hi1);
    static ParamSet ball(std::vector<AffineScalar> center, AffineScalar radius);
    static ParamSet halfspace(std::vector<double> normal, AffineScalar offset);
    static ParamSet finite_union(std::vector<ParamSet> members);
};

inline double pos_inf() { return std::numeric_limits<double>::infinity(); }
inline double neg_inf() { return -std::numeric_limits<double>::infinity(); }

}  // namespace rockrelax
