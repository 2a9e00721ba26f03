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
#include "rockrelax/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "rockrelax/parallel.hpp"
#include "rockrelax/sets.hpp"

namespace rockrelax {

double GridSpec::initial_spacing(std::size_t axis) const {
    return (box[axis][1] - box[axis][0]) / static_cast<double>(resolution - 1);
}

double GridSpec::final_spacing(std::size_t axis) const {
    return std::ldexp(initial_spacing(axis), -rounds);
}

void GridSpec::validate() const {
    if (box.empty() || box.size() > 3)
        throw std::invalid_argument("GridSpec: dimension must be 1..3");
    for (const auto& [lo, hi] : box)
        if (!(lo < hi))
            throw std::invalid_argument("GridSpec: box needs lo < hi per axis");
    if (resolution < 3)
        throw std::invalid_argument("GridSpec: resolution must be >= 3");
    if (rounds < 0)
        throw std::invalid_argument("GridSpec: rounds must be >= 0");
    if (!(keep > 0.0 && keep <= 1.0))
        throw std::invalid_argument("GridSpec: keep must be in (0, 1]");
    if (max_cells == 0)
        throw std::invalid_argument("GridSpec: max_cells must be positive");
}

namespace {

// Lattice nodes are addressed by integer multi-indices in units of the
// FINEST spacing h0 / 2^rounds.  A level-L index i maps to global index
// i << (rounds - L), so node identity is exact across levels and the
// coordinate lo + g * h_final is computed one way everywhere.
using Key = std::array<std::int64_t, 3>;

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::int64_t v : k) {
            h ^= static_cast<std::uint64_t>(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct Cell {
    Key base{};    // lowest-corner node in global units
    double score = 0.0;
};

struct Sweep {
    const GridFn& fn;
    const GridSpec& spec;
    std::size_t dim;
    int rounds;
    std::vector<double> h_final;                       // per-axis finest spacing
    std::unordered_map<Key, double, KeyHash> values;   // node -> objective
    std::vector<std::pair<Key, double>> eval_log;      // insertion order
    double best = std::numeric_limits<double>::infinity();

    explicit Sweep(const GridFn& f, const GridSpec& s)
        : fn(f), spec(s), dim(s.box.size()), rounds(s.rounds) {
        h_final.resize(dim);
        for (std::size_t a = 0; a < dim; ++a) h_final[a] = s.final_spacing(a);
    }

    std::vector<double> coords(const Key& k) const {
        std::vector<double> x(dim);
        for (std::size_t a = 0; a < dim; ++a)
            x[a] = spec.box[a][0] + static_cast<double>(k[a]) * h_final[a];
        return x;
    }

    // Evaluate any not-yet-seen keys; deterministic regardless of workers.
    void evaluate(std::vector<Key> keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<Key> fresh;
        fresh.reserve(keys.size());
        for (const Key& k : keys)
            if (!values.count(k)) fresh.push_back(k);
        std::vector<double> out(fresh.size());
        parallel_for(fresh.size(), [&](std::size_t i) {
            out[i] = fn(coords(fresh[i])).value();
        });
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            values.emplace(fresh[i], out[i]);
            eval_log.emplace_back(fresh[i], out[i]);
            if (out[i] < best) best = out[i];
        }
    }

    double value_at(const Key& k) const { return values.at(k); }
};

}  // namespace

static MinResult run_sweep(const GridFn& fn, const GridSpec& spec, double eps) {
    spec.validate();
    const std::size_t dim = spec.box.size();
    const int rounds = spec.rounds;
    const std::int64_t segments = spec.resolution - 1;
    const std::int64_t unit0 = std::int64_t{1} << rounds;  // level-0 stride

    Sweep sw(fn, spec);

    // Round 0: the full coarse lattice.
    {
        std::vector<Key> keys;
        std::int64_t count = 1;
        std::vector<std::int64_t> extent(dim, segments + 1);
        for (std::size_t a = 0; a < dim; ++a) count *= extent[a];
        keys.reserve(static_cast<std::size_t>(count));
        for (std::int64_t flat = 0; flat < count; ++flat) {
            Key k{};
            std::int64_t rem = flat;
            for (std::size_t a = 0; a < dim; ++a) {
                k[a] = (rem % extent[a]) * unit0;
                rem /= extent[a];
            }
            keys.push_back(k);
        }
        sw.evaluate(std::move(keys));
    }

    MinResult res;
    res.round_values.push_back(sw.best);

    // Current cells at level 0.
    std::vector<Cell> cells;
    {
        std::int64_t count = 1;
        for (std::size_t a = 0; a < dim; ++a) count *= segments;
        cells.reserve(static_cast<std::size_t>(count));
        for (std::int64_t flat = 0; flat < count; ++flat) {
            Cell c;
            std::int64_t rem = flat;
            for (std::size_t a = 0; a < dim; ++a) {
                c.base[a] = (rem % segments) * unit0;
                rem /= segments;
            }
            cells.push_back(c);
        }
    }

    std::int64_t stride = unit0;  // current cell edge in global units
    for (int r = 1; r <= rounds; ++r) {
        const std::int64_t half = stride / 2;

        // Score every cell by its best corner or center; centers live on the
        // next lattice level and may be new.
        std::vector<Key> centers;
        centers.reserve(cells.size());
        for (const Cell& c : cells) {
            Key mid = c.base;
            for (std::size_t a = 0; a < dim; ++a) mid[a] += half;
            centers.push_back(mid);
        }
        sw.evaluate(centers);

        std::vector<Cell> candidates;
        candidates.reserve(cells.size());
        for (Cell c : cells) {
            double s = std::numeric_limits<double>::infinity();
            const std::size_t ncorner = std::size_t{1} << dim;
            for (std::size_t mask = 0; mask < ncorner; ++mask) {
                Key corner = c.base;
                for (std::size_t a = 0; a < dim; ++a)
                    if (mask & (std::size_t{1} << a)) corner[a] += stride;
                s = std::min(s, sw.value_at(corner));
            }
            Key mid = c.base;
            for (std::size_t a = 0; a < dim; ++a) mid[a] += half;
            s = std::min(s, sw.value_at(mid));
            if (std::isfinite(s)) {
                c.score = s;
                candidates.push_back(c);
            }
        }
        if (candidates.empty()) break;  // nothing feasible anywhere near

        std::sort(candidates.begin(), candidates.end(), [](const Cell& a, const Cell& b) {
            if (a.score != b.score) return a.score < b.score;
            return a.base < b.base;
        });
        std::size_t n_keep = static_cast<std::size_t>(
            std::ceil(spec.keep * static_cast<double>(candidates.size())));
        if (n_keep == 0) n_keep = 1;
        if (n_keep > candidates.size()) n_keep = candidates.size();
        double cutoff = candidates[n_keep - 1].score;
        std::size_t kept = n_keep;
        while (kept < candidates.size() && candidates[kept].score <= cutoff) ++kept;
        if (kept > spec.max_cells) kept = spec.max_cells;  // deterministic cap

        // Bisect the kept cells; children corners are the refined lattice.
        std::vector<Cell> next;
        next.reserve(kept * (std::size_t{1} << dim));
        std::vector<Key> fresh;
        for (std::size_t ci = 0; ci < kept; ++ci) {
            const Cell& c = candidates[ci];
            const std::size_t nchild = std::size_t{1} << dim;
            for (std::size_t mask = 0; mask < nchild; ++mask) {
                Cell child;
                child.base = c.base;
                for (std::size_t a = 0; a < dim; ++a)
                    if (mask & (std::size_t{1} << a)) child.base[a] += half;
                next.push_back(child);
                const std::size_t ncorner = std::size_t{1} << dim;
                for (std::size_t m2 = 0; m2 < ncorner; ++m2) {
                    Key corner = child.base;
                    for (std::size_t a = 0; a < dim; ++a)
                        if (m2 & (std::size_t{1} << a)) corner[a] += half;
                    fresh.push_back(corner);
                }
            }
        }
        sw.evaluate(std::move(fresh));
        res.round_values.push_back(sw.best);

        // Dedup children shared between adjacent kept cells.
        std::sort(next.begin(), next.end(),
                  [](const Cell& a, const Cell& b) { return a.base < b.base; });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const Cell& a, const Cell& b) { return a.base == b.base; }),
                   next.end());
        cells = std::move(next);
        stride = half;
    }

    // Collect the result from the full evaluation log.
    if (!std::isfinite(sw.best)) {
        res.value = XReal::pos_inf();
        res.feasible_found = false;
        res.spacing = sw.h_final;
        return res;
    }
    res.value = XReal(sw.best);
    res.feasible_found = true;
    res.spacing = sw.h_final;

    const double rep_tol = 1e-12 * std::max(1.0, std::abs(sw.best));
    const double threshold = sw.best + eps + rep_tol;
    std::vector<Key> qualifying;
    for (const auto& [k, v] : sw.eval_log)
        if (v <= threshold) qualifying.push_back(k);
    std::sort(qualifying.begin(), qualifying.end());

    res.rep_bbox.assign(dim, std::array<double, 2>{pos_inf(), neg_inf()});
    const std::int64_t g_lo_clip = 1;
    for (const Key& k : qualifying) {
        std::vector<double> x = sw.coords(k);
        for (std::size_t a = 0; a < dim; ++a) {
            res.rep_bbox[a][0] = std::min(res.rep_bbox[a][0], x[a]);
            res.rep_bbox[a][1] = std::max(res.rep_bbox[a][1], x[a]);
            std::int64_t g_hi = segments * unit0;
            if (k[a] <= g_lo_clip || k[a] >= g_hi - 1) res.box_clipped = true;
        }
        if (res.representatives.size() < 512) res.representatives.push_back(std::move(x));
    }
    return res;
}

MinResult grid_minimize(const GridFn& fn, const GridSpec& spec) {
    return run_sweep(fn, spec, 0.0);
}

MinResult near_argmin(const GridFn& fn, const GridSpec& spec, double eps) {
    if (eps < 0.0) throw std::invalid_argument("near_argmin: eps must be >= 0");
    return run_sweep(fn, spec, eps);
}

}  // namespace rockrelax
