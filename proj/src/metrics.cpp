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
#include "rockrelax/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rockrelax/lp.hpp"

namespace rockrelax {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr std::size_t kAtomCap = 400;

struct UnionSupport {
    std::vector<std::vector<double>> atoms;
    std::vector<double> p, q;  // weights of a and b on the union
};

bool atoms_match(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(a[j] - b[j]) > kMergeTol) return false;
    return true;
}

// Merged support of two trimmed measures, with aligned weight vectors.
UnionSupport union_support(const DiscreteDistribution& a_in,
                           const DiscreteDistribution& b_in) {
    DiscreteDistribution a = trim_zero_weights(a_in);
    DiscreteDistribution b = trim_zero_weights(b_in);
    if (a.dim() != b.dim())
        throw std::invalid_argument("metrics: dimension mismatch");

    struct Tagged {
        const std::vector<double>* atom;
        double wp, wq;
    };
    std::vector<Tagged> all;
    all.reserve(a.size() + b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        all.push_back({&a.atoms[k], a.weights[k], 0.0});
    for (std::size_t k = 0; k < b.size(); ++k)
        all.push_back({&b.atoms[k], 0.0, b.weights[k]});
    std::stable_sort(all.begin(), all.end(), [](const Tagged& s, const Tagged& t) {
        return std::lexicographical_compare(s.atom->begin(), s.atom->end(),
                                            t.atom->begin(), t.atom->end());
    });

    UnionSupport u;
    for (const Tagged& t : all) {
        if (!u.atoms.empty() && atoms_match(u.atoms.back(), *t.atom)) {
            u.p.back() += t.wp;
            u.q.back() += t.wq;
        } else {
            u.atoms.push_back(*t.atom);
            u.p.push_back(t.wp);
            u.q.push_back(t.wq);
        }
    }
    if (u.atoms.size() > kAtomCap)
        throw std::invalid_argument("metrics: union support exceeds " +
                                    std::to_string(kAtomCap) + " atoms");
    return u;
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

double euclid_norm(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

}  // namespace

double total_variation(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    UnionSupport u = union_support(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < u.atoms.size(); ++k) s += std::abs(u.p[k] - u.q[k]);
    return s;
}

double kl_divergence(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    UnionSupport u = union_support(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < u.atoms.size(); ++k) {
        if (u.p[k] == 0.0) continue;
        if (u.q[k] == 0.0) return pos_inf();
        s += u.p[k] * std::log(u.p[k] / u.q[k]);
    }
    return std::max(0.0, s);  // clip FP noise on identical inputs
}

double wasserstein1(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    UnionSupport u = union_support(a, b);
    if (u.atoms.empty()) return 0.0;
    const std::size_t d = u.atoms.front().size();

    if (d == 1) {
        // Union atoms are sorted; integrate |F_a - F_b| between them.
        double total = 0.0, fa = 0.0, fb = 0.0;
        for (std::size_t k = 0; k + 1 < u.atoms.size(); ++k) {
            fa += u.p[k];
            fb += u.q[k];
            total += std::abs(fa - fb) * (u.atoms[k + 1][0] - u.atoms[k][0]);
        }
        return total;
    }

    // Exact transportation program on the (trimmed) bipartite supports.
    DiscreteDistribution at = trim_zero_weights(a);
    DiscreteDistribution bt = trim_zero_weights(b);
    std::vector<std::vector<double>> cost(at.size(), std::vector<double>(bt.size()));
    for (std::size_t i = 0; i < at.size(); ++i)
        for (std::size_t j = 0; j < bt.size(); ++j)
            cost[i][j] = euclid(at.atoms[i], bt.atoms[j]);
    return transport_min_cost(at.weights, bt.weights, cost);
}

double wasserstein1(const DiscreteDistribution& a_in, const Uniform1D& u) {
    DiscreteDistribution a = trim_zero_weights(a_in);
    if (a.dim() != 1)
        throw std::invalid_argument("wasserstein1: mixed form needs 1-D atoms");
    if (!(u.lower < u.upper))
        throw std::invalid_argument("wasserstein1: degenerate uniform interval");

    // Breakpoints: sorted atoms plus the interval ends.  Between breakpoints
    // F_atomic is constant and F_uniform is linear, so |F_a - F_u| integrates
    // in closed form (split once at the sign change).  One sweep keeps the
    // atomic CDF as a running prefix sum.
    std::vector<std::pair<double, double>> aw(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) aw[k] = {a.atoms[k][0], a.weights[k]};
    std::sort(aw.begin(), aw.end());

    std::vector<double> pts;
    pts.reserve(aw.size() + 2);
    for (const auto& [coord, w] : aw) pts.push_back(coord);
    pts.push_back(u.lower);
    pts.push_back(u.upper);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto f_uniform = [&](double t) {
        if (t <= u.lower) return 0.0;
        if (t >= u.upper) return 1.0;
        return (t - u.lower) / (u.upper - u.lower);
    };

    double total = 0.0, cum = 0.0;
    std::size_t ai = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        while (ai < aw.size() && aw[ai].first <= lo) cum += aw[ai++].second;
        double ga = cum - f_uniform(lo);  // value at the left end
        double gb = cum - f_uniform(hi);  // atomic CDF is flat on (lo, hi)
        double len = hi - lo;
        if (len <= 0.0) continue;
        if (ga == 0.0 && gb == 0.0) continue;
        if (ga * gb >= 0.0) {
            total += 0.5 * std::abs(ga + gb) * len;  // trapezoid, single sign
        } else {
            double root = len * ga / (ga - gb);      // linear sign change
            total += 0.5 * std::abs(ga) * root + 0.5 * std::abs(gb) * (len - root);
        }
    }
    return total;
}

double bounded_lipschitz(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    UnionSupport u = union_support(a, b);
    const std::size_t s = u.atoms.size();
    if (s <= 1) return 0.0;

    // Test function values f_k in [-1, 1] with |f_j - f_k| <= dist(j, k);
    // substitute y = f + 1 in [0, 2] (the objective shift cancels since the
    // weights both sum to one).
    std::vector<double> c(s);
    for (std::size_t k = 0; k < s; ++k) c[k] = u.p[k] - u.q[k];

    std::vector<LpRow> rows;
    rows.reserve(s + s * (s - 1));
    for (std::size_t k = 0; k < s; ++k) {
        LpRow r;
        r.a.assign(s, 0.0);
        r.a[k] = 1.0;
        r.b = 2.0;
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t k = 0; k < s; ++k) {
            if (j == k) continue;
            LpRow r;
            r.a.assign(s, 0.0);
            r.a[j] = 1.0;
            r.a[k] = -1.0;
            r.b = euclid(u.atoms[j], u.atoms[k]);
            rows.push_back(std::move(r));
        }
    }
    LpResult res = simplex_maximize(c, rows);
    if (res.status != LpResult::Status::optimal)
        throw std::logic_error("bounded_lipschitz: LP failed");
    return std::max(0.0, res.value);
}

double fortet_mourier(const DiscreteDistribution& a, const DiscreteDistribution& b,
                      double beta) {
    if (beta < 1.0)
        throw std::invalid_argument("fortet_mourier: beta must be >= 1");
    UnionSupport u = union_support(a, b);
    const std::size_t s = u.atoms.size();
    if (s <= 1) return 0.0;

    auto weight = [&](std::size_t j, std::size_t k) {
        double m = std::max({1.0, euclid_norm(u.atoms[j]), euclid_norm(u.atoms[k])});
        return pow_abs(m, beta - 1.0) * euclid(u.atoms[j], u.atoms[k]);
    };

    // Objective is shift invariant (weights sum to one on both sides), so pin
    // f_0 = 0 and substitute y_k = f_k + W_{0k} >= 0 for k >= 1.
    std::vector<double> c(s - 1);
    double const_shift = 0.0;
    for (std::size_t k = 1; k < s; ++k) {
        double ck = u.p[k] - u.q[k];
        c[k - 1] = ck;
        const_shift -= ck * weight(0, k);
    }

    std::vector<LpRow> rows;
    for (std::size_t k = 1; k < s; ++k) {
        LpRow r;
        r.a.assign(s - 1, 0.0);
        r.a[k - 1] = 1.0;
        r.b = 2.0 * weight(0, k);
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 1; j < s; ++j) {
        for (std::size_t k = 1; k < s; ++k) {
            if (j == k) continue;
            LpRow r;
            r.a.assign(s - 1, 0.0);
            r.a[j - 1] = 1.0;
            r.a[k - 1] = -1.0;
            r.b = weight(j, k) + weight(0, j) - weight(0, k);
            rows.push_back(std::move(r));
        }
    }
    LpResult res = simplex_maximize(c, rows);
    if (res.status != LpResult::Status::optimal)
        throw std::logic_error("fortet_mourier: LP failed");
    return std::max(0.0, res.value + const_shift);
}

double minimal_information(const CompositeProblem& pb, const Distribution& mu1,
                           const Distribution& mu2,
                           std::span<const std::vector<double>> xgrid) {
    if (xgrid.empty())
        throw std::invalid_argument("minimal_information: empty decision grid");
    double best = 0.0;
    for (const std::vector<double>& x : xgrid) {
        std::vector<double> e1 = component_expectations(pb, mu1, x);
        std::vector<double> e2 = component_expectations(pb, mu2, x);
        for (std::size_t i = 0; i < e1.size(); ++i)
            best = std::max(best, std::abs(e1[i] - e2[i]));
    }
    return best;
}

}  // namespace rockrelax
