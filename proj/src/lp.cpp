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
#include "rockrelax/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rockrelax {

namespace {

constexpr double kTol = 1e-9;

// Dense simplex tableau over the standard form
//   maximize c.x   s.t.  A x + s = b,  x, s >= 0,
// after every row has been scaled to b >= 0.  Equality rows and rows that
// started with negative b carry an artificial variable; phase 1 drives the
// artificials to zero, phase 2 optimizes c.  Bland's rule (lowest eligible
// index enters, lowest-index tie-break on the ratio test) guarantees
// termination on degenerate programs.
struct Tableau {
    std::size_t m, n_total;
    std::vector<std::vector<double>> a;  // m rows, n_total cols
    std::vector<double> b;
    std::vector<std::size_t> basis;      // column basic in each row

    bool pivot(std::size_t row, std::size_t col) {
        double piv = a[row][col];
        if (std::abs(piv) < kTol) return false;
        double inv = 1.0 / piv;
        for (double& v : a[row]) v *= inv;
        b[row] *= inv;
        a[row][col] = 1.0;  // clamp the pivot exactly
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row) continue;
            double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n_total; ++j) a[r][j] -= f * a[row][j];
            b[r] -= f * b[row];
            a[r][col] = 0.0;
        }
        basis[row] = col;
        return true;
    }

    // Bland primal iterations for objective coefficients `obj` (maximize).
    // Returns false if unbounded.
    bool optimize(const std::vector<double>& obj, const std::vector<bool>& usable) {
        for (;;) {
            // Reduced costs r_j = obj_j - obj_B . B^{-1} A_j, computed densely.
            std::size_t enter = n_total;
            for (std::size_t j = 0; j < n_total; ++j) {
                if (!usable[j]) continue;
                double rj = obj[j];
                for (std::size_t r = 0; r < m; ++r) {
                    double ob = obj[basis[r]];
                    if (ob != 0.0) rj -= ob * a[r][j];
                }
                if (rj > kTol) { enter = j; break; }  // Bland: first eligible
            }
            if (enter == n_total) return true;  // optimal

            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m; ++r) {
                if (a[r][enter] > kTol) {
                    double ratio = b[r] / a[r][enter];
                    if (ratio < best_ratio - kTol ||
                        (ratio < best_ratio + kTol && (leave == m || basis[r] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == m) return false;  // unbounded direction
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult simplex_maximize(const std::vector<double>& c,
                          const std::vector<LpRow>& rows) {
    const std::size_t n = c.size();
    const std::size_t m = rows.size();
    for (const LpRow& r : rows)
        if (r.a.size() != n)
            throw std::invalid_argument("simplex_maximize: row width mismatch");

    // Column layout: [ structural n | slacks (LE rows) | artificials ].
    std::size_t n_slack = 0;
    for (const LpRow& r : rows)
        if (r.sense == LpRow::Sense::le) ++n_slack;

    // A LE row with b >= 0 starts basic on its slack; everything else needs
    // an artificial.
    std::vector<bool> needs_artificial(m, false);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        bool neg = rows[i].b < 0.0;
        if (rows[i].sense == LpRow::Sense::eq || neg) {
            needs_artificial[i] = true;
            ++n_art;
        }
    }

    Tableau t;
    t.m = m;
    t.n_total = n + n_slack + n_art;
    t.a.assign(m, std::vector<double>(t.n_total, 0.0));
    t.b.assign(m, 0.0);
    t.basis.assign(m, 0);

    std::size_t slack_at = n, art_at = n + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        double sgn = rows[i].b < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sgn * rows[i].a[j];
        t.b[i] = sgn * rows[i].b;
        if (rows[i].sense == LpRow::Sense::le) {
            t.a[i][slack_at] = sgn;  // negated slack if the row was flipped
            if (!needs_artificial[i]) t.basis[i] = slack_at;
            ++slack_at;
        }
        if (needs_artificial[i]) {
            t.a[i][art_at] = 1.0;
            t.basis[i] = art_at;
            ++art_at;
        }
    }

    std::vector<bool> usable(t.n_total, true);

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials).
        std::vector<double> obj1(t.n_total, 0.0);
        for (std::size_t j = n + n_slack; j < t.n_total; ++j) obj1[j] = -1.0;
        if (!t.optimize(obj1, usable))
            throw std::logic_error("simplex: phase 1 unbounded");
        double art_sum = 0.0;
        for (std::size_t r = 0; r < m; ++r)
            if (t.basis[r] >= n + n_slack) art_sum += t.b[r];
        if (art_sum > 1e-7) {
            LpResult res;
            res.status = LpResult::Status::infeasible;
            return res;
        }
        // Kick residual (degenerate) artificials out of the basis when a
        // structural pivot exists; rows with no pivot are redundant.
        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis[r] < n + n_slack) continue;
            for (std::size_t j = 0; j < n + n_slack; ++j) {
                if (std::abs(t.a[r][j]) > kTol) {
                    t.pivot(r, j);
                    break;
                }
            }
        }
        for (std::size_t j = n + n_slack; j < t.n_total; ++j) usable[j] = false;
    }

    // Phase 2.
    std::vector<double> obj2(t.n_total, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj2[j] = c[j];
    LpResult res;
    if (!t.optimize(obj2, usable)) {
        res.status = LpResult::Status::unbounded;
        return res;
    }
    res.status = LpResult::Status::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (t.basis[r] < n) res.x[t.basis[r]] = t.b[r];
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

double transport_min_cost(const std::vector<double>& p,
                          const std::vector<double>& q,
                          const std::vector<std::vector<double>>& cost) {
    const std::size_t s1 = p.size(), s2 = q.size();
    if (cost.size() != s1)
        throw std::invalid_argument("transport_min_cost: cost rows mismatch");
    for (const auto& row : cost)
        if (row.size() != s2)
            throw std::invalid_argument("transport_min_cost: cost cols mismatch");
    double sp = 0.0, sq = 0.0;
    for (double v : p) sp += v;
    for (double v : q) sq += v;
    if (std::abs(sp - sq) > 1e-9)
        throw std::invalid_argument("transport_min_cost: mass mismatch");

    // Variables pi_{ij} flattened row-major; minimize cost <=> maximize -cost.
    const std::size_t nv = s1 * s2;
    std::vector<double> c(nv);
    for (std::size_t i = 0; i < s1; ++i)
        for (std::size_t j = 0; j < s2; ++j) c[i * s2 + j] = -cost[i][j];

    std::vector<LpRow> rows;
    rows.reserve(s1 + s2);
    for (std::size_t i = 0; i < s1; ++i) {
        LpRow r;
        r.a.assign(nv, 0.0);
        for (std::size_t j = 0; j < s2; ++j) r.a[i * s2 + j] = 1.0;
        r.b = p[i];
        r.sense = LpRow::Sense::eq;
        rows.push_back(std::move(r));
    }
    // Leave out the final (redundant) demand row to keep the basis clean.
    for (std::size_t j = 0; j + 1 < s2; ++j) {
        LpRow r;
        r.a.assign(nv, 0.0);
        for (std::size_t i = 0; i < s1; ++i) r.a[i * s2 + j] = 1.0;
        r.b = q[j];
        r.sense = LpRow::Sense::eq;
        rows.push_back(std::move(r));
    }

    LpResult res = simplex_maximize(c, rows);
    if (res.status != LpResult::Status::optimal)
        throw std::logic_error("transport_min_cost: solver failed");
    return -res.value;
}

}  // namespace rockrelax
