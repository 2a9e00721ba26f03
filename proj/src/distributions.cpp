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
#include "rockrelax/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rockrelax/rng.hpp"

namespace rockrelax {

namespace {

constexpr double kMergeTol = 1e-12;

bool atoms_match(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(a[j] - b[j]) > kMergeTol) return false;
    return true;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

const DiscreteDistribution* as_discrete(const Distribution& d) {
    return std::get_if<DiscreteDistribution>(&d);
}

const Uniform1D* as_uniform(const Distribution& d) {
    return std::get_if<Uniform1D>(&d);
}

DiscreteDistribution make_discrete(std::vector<std::vector<double>> atoms,
                                   std::vector<double> weights) {
    if (atoms.empty())
        throw std::invalid_argument("make_discrete: empty atom list");
    if (atoms.size() != weights.size())
        throw std::invalid_argument("make_discrete: atoms/weights size mismatch");
    const std::size_t d = atoms.front().size();
    for (const auto& a : atoms)
        if (a.size() != d)
            throw std::invalid_argument("make_discrete: inconsistent atom dimension");
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0.0))
            throw std::invalid_argument("make_discrete: negative weight at atom " +
                                        std::to_string(k));
    }
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0)
        throw std::invalid_argument("make_discrete: zero total weight");

    // Sort atoms lexicographically, then merge adjacent near-duplicates.
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (atoms_match(atoms[i], atoms[j])) return i < j;  // keep stable
        return lex_less(atoms[i], atoms[j]);
    });

    DiscreteDistribution out;
    for (std::size_t idx : order) {
        if (!out.atoms.empty() && atoms_match(out.atoms.back(), atoms[idx])) {
            out.weights.back() += weights[idx];
        } else {
            out.atoms.push_back(atoms[idx]);
            out.weights.push_back(weights[idx]);
        }
    }
    for (double& w : out.weights) w /= total;
    return out;
}

DiscreteDistribution trim_zero_weights(const DiscreteDistribution& d) {
    DiscreteDistribution out;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d.weights[k] > 0.0) {
            out.atoms.push_back(d.atoms[k]);
            out.weights.push_back(d.weights[k]);
        }
    }
    if (out.atoms.empty())
        throw std::invalid_argument("trim_zero_weights: all weights zero");
    return out;
}

DiscreteDistribution perturb(const PerturbationSequence& seq, long nu) {
    if (nu < 1) throw std::invalid_argument("perturb: nu must be >= 1");
    using Scheme = PerturbationSequence::Scheme;

    if (seq.scheme == Scheme::iid_empirical) {
        if (seq.base_is_continuous)
            return empirical(seq.continuous_base, nu, seq.seed, seq.stream);
        return empirical(seq.base, nu, seq.seed, seq.stream);
    }

    const DiscreteDistribution& base = seq.base;
    if (base.size() == 0) throw std::invalid_argument("perturb: empty base");

    switch (seq.scheme) {
        case Scheme::weight_shift: {
            if (seq.shift_from >= base.size() || seq.shift_to >= base.size())
                throw std::invalid_argument("perturb: shift atom index out of range");
            double delta = seq.shift_coeff / (static_cast<double>(nu) + seq.shift_offset);
            std::vector<double> w = base.weights;
            w[seq.shift_from] -= delta;
            w[seq.shift_to] += delta;
            if (w[seq.shift_from] < 0.0)
                throw std::invalid_argument(
                    "perturb: weight-shift drives atom " + std::to_string(seq.shift_from) +
                    " negative (" + std::to_string(w[seq.shift_from]) + ") at nu=" +
                    std::to_string(nu));
            DiscreteDistribution out = base;
            out.weights = std::move(w);
            return out;
        }
        case Scheme::atom_escape: {
            // All mass sits on atom #(nu-1); requires enough support atoms.
            if (static_cast<std::size_t>(nu) > base.size())
                throw std::invalid_argument(
                    "perturb: atom-escape needs at least nu atoms, have " +
                    std::to_string(base.size()));
            DiscreteDistribution out = base;
            std::fill(out.weights.begin(), out.weights.end(), 0.0);
            out.weights[static_cast<std::size_t>(nu - 1)] = 1.0;
            return out;
        }
        case Scheme::tv_bounded: {
            if (seq.tv_target.size() != base.size())
                throw std::invalid_argument("perturb: tv target size mismatch");
            double delta = seq.shift_coeff / (static_cast<double>(nu) + seq.shift_offset);
            if (delta < 0.0 || delta > 1.0)
                throw std::invalid_argument("perturb: tv mixing weight outside [0,1]");
            DiscreteDistribution out = base;
            for (std::size_t k = 0; k < base.size(); ++k)
                out.weights[k] = base.weights[k] + delta * (seq.tv_target[k] - base.weights[k]);
            return out;
        }
        case Scheme::iid_empirical:
            break;  // handled above
    }
    throw std::logic_error("perturb: unreachable");
}

DiscreteDistribution empirical(const Distribution& base, long nu,
                               std::uint64_t seed, std::uint64_t stream) {
    if (nu < 1) throw std::invalid_argument("empirical: nu must be >= 1");
    CounterRng rng(seed, stream);
    std::vector<std::vector<double>> atoms;
    atoms.reserve(static_cast<std::size_t>(nu));

    if (const Uniform1D* u = as_uniform(base)) {
        for (long k = 0; k < nu; ++k) {
            // On the canonical (-1,1) interval use the exact 2u-1 form so the
            // draw stream is stable against refactors of lo + (hi-lo) u.
            double v = (u->lower == -1.0 && u->upper == 1.0)
                           ? rng.uniform_pm1(static_cast<std::uint64_t>(k))
                           : rng.uniform(static_cast<std::uint64_t>(k), u->lower, u->upper);
            atoms.push_back({v});
        }
    } else {
        const DiscreteDistribution& d = *as_discrete(base);
        std::vector<double> cdf(d.size());
        std::partial_sum(d.weights.begin(), d.weights.end(), cdf.begin());
        for (long k = 0; k < nu; ++k) {
            double t = rng.u01(static_cast<std::uint64_t>(k));
            std::size_t idx = static_cast<std::size_t>(
                std::lower_bound(cdf.begin(), cdf.end(), t) - cdf.begin());
            if (idx >= d.size()) idx = d.size() - 1;
            atoms.push_back(d.atoms[idx]);
        }
    }
    std::vector<double> w(atoms.size(), 1.0 / static_cast<double>(nu));
    return make_discrete(std::move(atoms), std::move(w));
}

namespace {

// Exact overlap length of [a,b] (possibly unbounded) with [lo,hi].
double overlap_len(double a, double b, double lo, double hi) {
    double l = std::max(a, lo), r = std::min(b, hi);
    return std::max(0.0, r - l);
}

// Total length of the union of [a_i,b_i] clipped to [lo,hi].
double union_overlap_len(const Region& region, double lo, double hi) {
    std::vector<std::pair<double, double>> ivs;
    std::function<void(const Region&)> collect = [&](const Region& r) {
        if (r.empty()) return;
        switch (r.kind) {
            case Region::Kind::box:
                if (r.lo.size() != 1)
                    throw std::invalid_argument("prob_of_set: Uniform1D needs 1-D sets");
                ivs.emplace_back(r.lo[0], r.hi[0]);
                return;
            case Region::Kind::ball:
                if (r.center.size() != 1)
                    throw std::invalid_argument("prob_of_set: Uniform1D needs 1-D sets");
                ivs.emplace_back(r.center[0] - r.radius, r.center[0] + r.radius);
                return;
            case Region::Kind::halfspace: {
                if (r.normal.size() != 1 || r.normal[0] == 0.0)
                    throw std::invalid_argument("prob_of_set: bad 1-D halfspace");
                double bnd = r.offset / r.normal[0];
                if (r.normal[0] > 0.0) ivs.emplace_back(neg_inf(), bnd);
                else ivs.emplace_back(bnd, pos_inf());
                return;
            }
            case Region::Kind::finite_union:
                for (const Region& m : r.members) collect(m);
                return;
        }
    };
    collect(region);
    if (ivs.empty()) return 0.0;
    std::sort(ivs.begin(), ivs.end());
    double total = 0.0, cur_lo = ivs[0].first, cur_hi = ivs[0].second;
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        if (ivs[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, ivs[i].second);
        } else {
            total += overlap_len(cur_lo, cur_hi, lo, hi);
            cur_lo = ivs[i].first;
            cur_hi = ivs[i].second;
        }
    }
    total += overlap_len(cur_lo, cur_hi, lo, hi);
    return total;
}

double simpson_rule(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw std::domain_error("expectation: non-finite integrand");
    double left = simpson_rule(a, m, fa, flm, fm);
    double right = simpson_rule(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double prob_of_set(const Distribution& dist, const Region& region) {
    if (const DiscreteDistribution* d = as_discrete(dist)) {
        if (region.empty()) return 0.0;
        double p = 0.0;
        for (std::size_t k = 0; k < d->size(); ++k)
            if (region.contains(d->atoms[k])) p += d->weights[k];
        return p;
    }
    const Uniform1D& u = std::get<Uniform1D>(dist);
    if (region.empty()) return 0.0;
    return union_overlap_len(region, u.lower, u.upper) / (u.upper - u.lower);
}

double expectation(const Distribution& dist,
                   const std::function<double(std::span<const double>)>& f,
                   std::span<const double> breakpoints) {
    if (const DiscreteDistribution* d = as_discrete(dist)) {
        double s = 0.0;
        for (std::size_t k = 0; k < d->size(); ++k) {
            if (d->weights[k] == 0.0) continue;
            double v = f(d->atoms[k]);
            if (!std::isfinite(v))
                throw std::domain_error(
                    "expectation: non-finite integrand at atom " + std::to_string(k));
            s += d->weights[k] * v;
        }
        return s;
    }
    const Uniform1D& u = std::get<Uniform1D>(dist);
    auto f1 = [&f](double t) {
        double xi[1] = {t};
        return f(std::span<const double>(xi, 1));
    };
    // Segment at declared breakpoints so kinks are never interior to a panel.
    std::vector<double> knots{u.lower, u.upper};
    for (double b : breakpoints)
        if (b > u.lower && b < u.upper) knots.push_back(b);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    const double total_len = u.upper - u.lower;
    const double tol = 1e-10;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = f1(a), fb = f1(b), fm = f1(0.5 * (a + b));
        if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
            throw std::domain_error("expectation: non-finite integrand");
        double whole = simpson_rule(a, b, fa, fm, fb);
        integral += adaptive_simpson(f1, a, b, fa, fm, fb, whole,
                                     tol * (b - a) / total_len, 48);
    }
    return integral / total_len;
}

}  // namespace rockrelax
