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
#include "rockrelax/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "rockrelax/parallel.hpp"

namespace rockrelax {

void EpiDistanceSpec::validate() const {
    if (box.empty() || box.size() > 2) {
        throw std::invalid_argument(
            "EpiDistanceSpec: only 1- and 2-dimensional grids are supported");
    }
    for (const auto& [lo, hi] : box) {
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw std::invalid_argument("EpiDistanceSpec: box bounds must be finite with lo < hi");
        }
    }
    if (resolution < 3) {
        throw std::invalid_argument("EpiDistanceSpec: resolution must be at least 3");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("EpiDistanceSpec: rho must be finite and positive");
    }
}

namespace {

struct Lattice {
    std::size_t dim = 1;
    std::array<std::size_t, 2> size{1, 1};   // nodes per axis (axis1 = 1 in 1-D)
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> h{1.0, 1.0};

    double coord(std::size_t axis, std::size_t idx) const {
        return lo[axis] + h[axis] * static_cast<double>(idx);
    }
    std::size_t count() const { return size[0] * size[1]; }
};

Lattice make_lattice(const EpiDistanceSpec& spec) {
    Lattice lat;
    lat.dim = spec.box.size();
    for (std::size_t a = 0; a < lat.dim; ++a) {
        lat.size[a] = static_cast<std::size_t>(spec.resolution);
        lat.lo[a] = spec.box[a][0];
        lat.h[a] = (spec.box[a][1] - spec.box[a][0]) /
                   static_cast<double>(spec.resolution - 1);
    }
    return lat;
}

std::vector<double> evaluate_on_lattice(const GridFunction& f,
                                        const Lattice& lat) {
    std::vector<double> vals(lat.count());
    parallel_for(lat.count(), [&](std::size_t idx) {
        const std::size_t i = idx / lat.size[1];
        const std::size_t j = idx % lat.size[1];
        double pt[2] = {lat.coord(0, i), 0.0};
        if (lat.dim == 2) pt[1] = lat.coord(1, j);
        const XReal v = f(std::span<const double>(pt, lat.dim));
        vals[idx] = v.is_finite() ? v.value()
                    : (v.is_pos_inf() ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity());
    });
    return vals;
}

// Sliding minimum over each row of `vals` with window half-width w
// (indices j-w .. j+w clipped to the row).  Monotone-deque, O(n) per row.
std::vector<double> row_sliding_min(const std::vector<double>& vals,
                                    const Lattice& lat, std::size_t w) {
    const std::size_t rows = lat.size[0];
    const std::size_t cols = lat.size[1];
    std::vector<double> out(vals.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = vals.data() + i * cols;
        double* dst = out.data() + i * cols;
        std::deque<std::size_t> dq;  // indices with increasing values
        std::size_t pushed = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t hi = std::min(cols - 1, j + w);
            for (; pushed <= hi; ++pushed) {
                while (!dq.empty() && row[dq.back()] >= row[pushed]) dq.pop_back();
                dq.push_back(pushed);
            }
            while (dq.front() + w < j) dq.pop_front();
            dst[j] = row[dq.front()];
        }
    }
    return out;
}

// Pointwise infimum of `vals` over the Euclidean ball of radius eta around
// each lattice node (intersected with the lattice).
std::vector<double> ball_min(const std::vector<double>& vals,
                             const Lattice& lat, double eta) {
    const std::size_t rows = lat.size[0];
    const std::size_t cols = lat.size[1];
    if (lat.dim == 1) {
        const std::size_t w = static_cast<std::size_t>(
            std::floor(eta / lat.h[0] + 1e-12));
        Lattice rowlat = lat;
        rowlat.size = {1, rows};
        return row_sliding_min(vals, rowlat, w);
    }
    // Row half-widths per vertical offset di: dj so that
    // (di h0)^2 + (dj h1)^2 <= eta^2.
    const long r0 = static_cast<long>(std::floor(eta / lat.h[0] + 1e-12));
    std::vector<std::size_t> width(static_cast<std::size_t>(r0) + 1);
    for (long di = 0; di <= r0; ++di) {
        const double rem = eta * eta - (di * lat.h[0]) * (di * lat.h[0]);
        width[static_cast<std::size_t>(di)] = static_cast<std::size_t>(
            std::floor(std::sqrt(std::max(0.0, rem)) / lat.h[1] + 1e-12));
    }
    // One horizontal sliding-min plane per distinct width.
    std::vector<std::size_t> order(width.begin(), width.end());
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    std::vector<std::vector<double>> plane(order.size());
    parallel_for(order.size(), [&](std::size_t k) {
        plane[k] = row_sliding_min(vals, lat, order[k]);
    });
    auto plane_for = [&](std::size_t w) -> const std::vector<double>& {
        const std::size_t k = static_cast<std::size_t>(
            std::lower_bound(order.begin(), order.end(), w) - order.begin());
        return plane[k];
    };

    std::vector<double> out(vals.size(),
                            std::numeric_limits<double>::infinity());
    parallel_for(rows, [&](std::size_t i) {
        for (long di = -r0; di <= r0; ++di) {
            const long ii = static_cast<long>(i) + di;
            if (ii < 0 || ii >= static_cast<long>(rows)) continue;
            const std::vector<double>& src =
                plane_for(width[static_cast<std::size_t>(std::labs(di))]);
            const double* srow = src.data() + static_cast<std::size_t>(ii) * cols;
            double* drow = out.data() + i * cols;
            for (std::size_t j = 0; j < cols; ++j) {
                drow[j] = std::min(drow[j], srow[j]);
            }
        }
    });
    return out;
}

// One-sided certification at level eta: every grid point in
// B(0, rho) /\ lev_{<= rho} fa must see a point of fb's epigraph nearby.
bool one_sided_ok(const std::vector<double>& fa,
                  const std::vector<double>& fb_ballmin, const Lattice& lat,
                  double rho, double eta) {
    const std::size_t rows = lat.size[0];
    const std::size_t cols = lat.size[1];
    const double rho2 = rho * rho * (1.0 + 1e-12);
    for (std::size_t i = 0; i < rows; ++i) {
        const double c0 = lat.coord(0, i);
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t idx = i * cols + j;
            if (!(fa[idx] <= rho)) continue;
            const double c1 = (lat.dim == 2) ? lat.coord(1, j) : 0.0;
            if (c0 * c0 + c1 * c1 > rho2) continue;
            const double rhs = std::max(fa[idx], -rho) + eta;
            if (!(fb_ballmin[idx] <= rhs * (1.0 + 1e-12) + 1e-12)) return false;
        }
    }
    return true;
}

}  // namespace

double epi_distance_estimate(const GridFunction& f1, const GridFunction& f2,
                             const EpiDistanceSpec& spec) {
    spec.validate();
    const Lattice lat = make_lattice(spec);
    const double h_min = (lat.dim == 2) ? std::min(lat.h[0], lat.h[1]) : lat.h[0];

    const std::vector<double> v1 = evaluate_on_lattice(f1, lat);
    const std::vector<double> v2 = evaluate_on_lattice(f2, lat);

    // Dyadic ladder rho, rho/2, ... down to the grid spacing; rungs finer
    // than the grid cannot be certified or refuted.
    int depth = 0;
    while (spec.rho * std::ldexp(1.0, -depth) > h_min && depth < 60) ++depth;

    double certified = -1.0;
    for (int k = 0; k <= depth; ++k) {
        const double eta = spec.rho * std::ldexp(1.0, -k);
        const std::vector<double> b2 = ball_min(v2, lat, eta);
        const bool fwd = one_sided_ok(v1, b2, lat, spec.rho, eta);
        bool ok = fwd;
        if (ok) {
            const std::vector<double> b1 = ball_min(v1, lat, eta);
            ok = one_sided_ok(v2, b1, lat, spec.rho, eta);
        }
        if (!ok) break;
        certified = eta;
    }
    if (certified < 0.0) {
        throw std::runtime_error(
            "epi_distance_estimate: no rung certifies (grid too coarse or rho "
            "too small for these functions)");
    }
    return certified;
}

std::vector<double> minkowski_content(const Distribution& mu, const ParamSet& H,
                                      std::span<const double> x,
                                      std::span<const double> eps_ladder) {
    const Region base = H.at(x);
    const double p0 = prob_of_set(mu, base);
    std::vector<double> out;
    out.reserve(eps_ladder.size());
    for (double eps : eps_ladder) {
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw std::invalid_argument("minkowski_content: eps must be finite and positive");
        }
        const double pe = prob_of_set(mu, base.enlarge(eps));
        out.push_back((pe - p0) / eps);
    }
    return out;
}

ProbeResult subregularity_probe(const ChanceProblem& cp, const Distribution& mu,
                                std::span<const std::vector<double>> samples,
                                const GridSpec& grid) {
    grid.validate();
    if (grid.box.size() != cp.n) {
        throw std::invalid_argument("subregularity_probe: grid dimension must match the decision dimension");
    }
    const std::size_t res = static_cast<std::size_t>(grid.resolution);
    std::size_t total = 1;
    for (std::size_t a = 0; a < grid.box.size(); ++a) total *= res;

    const std::vector<double> zero(cp.constraints.size(), 0.0);
    std::vector<std::vector<double>> feasible;
    std::vector<double> pt(grid.box.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = grid.box.size(); a-- > 0;) {
            const std::size_t idx = rem % res;
            rem /= res;
            const double h =
                (grid.box[a][1] - grid.box[a][0]) / static_cast<double>(res - 1);
            pt[a] = grid.box[a][0] + h * static_cast<double>(idx);
        }
        if (in_feasible_set(cp, mu, pt, zero)) feasible.push_back(pt);
    }
    if (feasible.empty()) {
        throw std::runtime_error(
            "subregularity_probe: no feasible point on the probe grid");
    }

    ProbeResult result;
    result.feasible_grid_points = feasible.size();
    result.ratios.reserve(samples.size());
    for (const auto& z : samples) {
        if (z.size() != cp.n) {
            throw std::invalid_argument("subregularity_probe: sample dimension mismatch");
        }
        if (cp.g0 && !cp.g0(z).is_finite()) {
            throw std::invalid_argument(
                "subregularity_probe: sample outside the objective domain");
        }
        if (in_feasible_set(cp, mu, z, zero)) {
            result.ratios.push_back(0.0);
            continue;
        }
        double num = std::numeric_limits<double>::infinity();
        for (const auto& p : feasible) {
            double sq = 0.0;
            for (std::size_t a = 0; a < p.size(); ++a) {
                const double dd = p[a] - z[a];
                sq += dd * dd;
            }
            num = std::min(num, std::sqrt(sq));
        }
        const double den = infeasibility_distance(cp, mu, z);
        const double ratio = num / den;
        result.ratios.push_back(ratio);
        result.kappa = std::max(result.kappa, ratio);
    }
    return result;
}

RateFit rate_fit(std::span<const double> d, std::span<const double> e) {
    if (d.size() != e.size()) {
        throw std::invalid_argument("rate_fit: d and e must have equal length");
    }
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] > 0.0 && e[k] > 0.0 && std::isfinite(d[k]) && std::isfinite(e[k])) {
            lx.push_back(std::log(d[k]));
            ly.push_back(std::log(e[k]));
        }
    }
    RateFit fit;
    fit.n_used = lx.size();
    if (fit.n_used < 3) {
        throw std::invalid_argument(
            "rate_fit: fewer than 3 usable (positive, finite) pairs");
    }
    const double n = static_cast<double>(fit.n_used);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sx += lx[k];
        sy += ly[k];
        sxx += lx[k] * lx[k];
        sxy += lx[k] * ly[k];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("rate_fit: distances are all equal; slope undefined");
    }
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        fit.max_abs_residual =
            std::max(fit.max_abs_residual,
                     std::abs(ly[k] - fit.intercept - fit.slope * lx[k]));
    }
    return fit;
}

}  // namespace rockrelax
