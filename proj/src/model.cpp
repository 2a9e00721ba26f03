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
#include "rockrelax/model.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "rockrelax/solvers.hpp"

namespace rockrelax {

double pow_abs(double t, double alpha) {
    double a = std::abs(t);
    if (alpha == 1.0) return a;
    if (alpha == 2.0) return a * a;
    return std::pow(a, alpha);
}

// ============================ OuterFunction ================================

XReal OuterFunction::eval(std::span<const double> y) const {
    if (y.size() != arity)
        throw std::invalid_argument("OuterFunction: arity mismatch");
    switch (kind) {
        case Kind::orthant_indicator:
            for (double v : y)
                if (v > 0.0) return XReal::pos_inf();
            return XReal(0.0);
        case Kind::linear: {
            double s = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) s += weights[i] * y[i];
            return XReal(s);
        }
        case Kind::max_plus_power: {
            double s = 0.0;
            for (double v : y)
                if (v > 0.0) s += pow_abs(v, alpha);
            return XReal(s);
        }
    }
    throw std::logic_error("OuterFunction: unreachable");
}

OuterFunction OuterFunction::orthant(std::size_t m) {
    OuterFunction h;
    h.kind = Kind::orthant_indicator;
    h.arity = m;
    return h;
}

OuterFunction OuterFunction::linear(std::vector<double> weights) {
    for (double w : weights)
        if (w < 0.0)
            throw std::invalid_argument("OuterFunction::linear: weights must be >= 0");
    OuterFunction h;
    h.kind = Kind::linear;
    h.arity = weights.size();
    h.weights = std::move(weights);
    return h;
}

OuterFunction OuterFunction::max_plus_power(std::size_t m, double alpha) {
    if (alpha < 1.0)
        throw std::invalid_argument("OuterFunction::max_plus_power: alpha must be >= 1");
    OuterFunction h;
    h.kind = Kind::max_plus_power;
    h.arity = m;
    h.alpha = alpha;
    return h;
}

// ============================== Penalty ====================================

double Penalty::eval(std::span<const double> u) const {
    if (!(alpha > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("Penalty: alpha and lambda must be positive");
    switch (tag) {
        case Tag::euclidean_power: {
            double s = 0.0;
            for (double v : u) s += v * v;
            double nrm = std::sqrt(s);
            return pow_abs(nrm, alpha) / (alpha * lambda);
        }
        case Tag::separable_power: {
            double s = 0.0;
            for (double v : u) s += pow_abs(v, alpha);
            return s / (alpha * lambda);
        }
    }
    throw std::logic_error("Penalty: unreachable");
}

// =========================== evaluation maps ===============================

std::vector<double> component_expectations(const CompositeProblem& pb,
                                           const Distribution& mu,
                                           std::span<const double> x) {
    std::vector<double> e(pb.components.size());
    for (std::size_t i = 0; i < pb.components.size(); ++i) {
        const Component& c = pb.components[i];
        std::vector<double> brk;
        if (c.breakpoints) brk = c.breakpoints(x);
        e[i] = expectation(
            mu, [&](std::span<const double> xi) { return c.g(xi, x); }, brk);
    }
    return e;
}

static std::vector<double> component_expectations_over(
    std::span<const Component> comps, const Distribution& mu,
    std::span<const double> x) {
    std::vector<double> e(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        std::vector<double> brk;
        if (comps[i].breakpoints) brk = comps[i].breakpoints(x);
        e[i] = expectation(
            mu, [&](std::span<const double> xi) { return comps[i].g(xi, x); }, brk);
    }
    return e;
}

XReal eval_phi(const CompositeProblem& pb, const Distribution& mu,
               std::span<const double> x) {
    XReal base = pb.g0(x);
    if (base.is_pos_inf()) return base;  // skip the integrals outside dom g0
    std::vector<double> e = component_expectations(pb, mu, x);
    return base + pb.h.eval(e);
}

XReal eval_rockafellian(const CompositeProblem& pb, const Distribution& mu,
                        std::span<const double> u, std::span<const double> x) {
    if (u.size() != pb.m)
        throw std::invalid_argument("eval_rockafellian: u dimension mismatch");
    for (double v : u)
        if (v != 0.0) return XReal::pos_inf();
    return eval_phi(pb, mu, x);
}

XReal eval_approx_rockafellian(const CompositeProblem& pb,
                               const Distribution& mu_nu,
                               std::span<const Component> g_override,
                               const Penalty& penalty,
                               std::span<const double> u,
                               std::span<const double> x) {
    if (u.size() != pb.m)
        throw std::invalid_argument("eval_approx_rockafellian: u dimension mismatch");
    XReal base = pb.g0(x);
    if (base.is_pos_inf()) return base;
    std::span<const Component> comps =
        g_override.empty() ? std::span<const Component>(pb.components) : g_override;
    std::vector<double> e = component_expectations_over(comps, mu_nu, x);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += u[i];
    XReal shifted = pb.h.eval(e);
    if (shifted.is_pos_inf()) return shifted;
    return base + shifted + XReal(penalty.eval(u));
}

XReal partial_min_u(const CompositeProblem& pb, const Distribution& mu_nu,
                    std::span<const Component> g_override,
                    const Penalty& penalty, std::span<const double> x) {
    XReal base = pb.g0(x);
    if (base.is_pos_inf()) return base;
    std::span<const Component> comps =
        g_override.empty() ? std::span<const Component>(pb.components) : g_override;

    if (pb.h.kind == OuterFunction::Kind::orthant_indicator) {
        // argmin u is -max(v, 0): shrink each violated component to the
        // boundary, leave satisfied ones at zero.
        std::vector<double> v = component_expectations_over(comps, mu_nu, x);
        double pen = 0.0;
        switch (penalty.tag) {
            case Penalty::Tag::separable_power: {
                double s = 0.0;
                for (double vi : v)
                    if (vi > 0.0) s += pow_abs(vi, penalty.alpha);
                pen = s / (penalty.alpha * penalty.lambda);
                break;
            }
            case Penalty::Tag::euclidean_power: {
                double s = 0.0;
                for (double vi : v)
                    if (vi > 0.0) s += vi * vi;
                pen = pow_abs(std::sqrt(s), penalty.alpha) /
                      (penalty.alpha * penalty.lambda);
                break;
            }
        }
        return base + XReal(pen);
    }

    // Documented fallback: grid search over u in [-4, 4]^m.
    if (pb.m > 2)
        throw std::invalid_argument("partial_min_u: grid fallback supports m <= 2");
    GridSpec gs;
    gs.box.assign(pb.m, {-4.0, 4.0});
    gs.resolution = 17;
    gs.rounds = 10;
    gs.keep = 0.25;
    std::vector<double> xv(x.begin(), x.end());
    MinResult r = grid_minimize(
        [&](std::span<const double> u) {
            return eval_approx_rockafellian(pb, mu_nu, comps, penalty, u, xv);
        },
        gs);
    return r.value;
}

// ============================== catalog ====================================

std::function<XReal(std::span<const double>)> g0_quadratic() {
    return [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return XReal(s);
    };
}

std::function<XReal(std::span<const double>)> g0_affine_on_box(
    std::vector<double> a, double c0, std::vector<double> lo, std::vector<double> hi) {
    return [a = std::move(a), c0, lo = std::move(lo), hi = std::move(hi)](
               std::span<const double> x) {
        for (std::size_t j = 0; j < lo.size(); ++j)
            if (x[j] < lo[j] || x[j] > hi[j]) return XReal::pos_inf();
        double s = c0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
        return XReal(s);
    };
}

std::function<XReal(std::span<const double>)> g0_step_sum(
    std::vector<double> scales, std::vector<Region> steps) {
    if (scales.size() != steps.size())
        throw std::invalid_argument("g0_step_sum: scales/steps size mismatch");
    return [scales = std::move(scales), steps = std::move(steps)](
               std::span<const double> x) {
        double s = 0.0;
        std::span<const double> x0 = x.subspan(0, 1);
        for (std::size_t k = 0; k < steps.size(); ++k)
            if (steps[k].contains(x0, 0.0)) s += scales[k];
        return XReal(s);
    };
}

namespace {

// 1-D integration breakpoints of an indicator region: its finite endpoints.
void collect_breakpoints_1d(const Region& r, std::vector<double>& out) {
    switch (r.kind) {
        case Region::Kind::box:
            if (std::isfinite(r.lo[0])) out.push_back(r.lo[0]);
            if (std::isfinite(r.hi[0])) out.push_back(r.hi[0]);
            return;
        case Region::Kind::ball:
            out.push_back(r.center[0] - r.radius);
            out.push_back(r.center[0] + r.radius);
            return;
        case Region::Kind::halfspace:
            if (r.normal[0] != 0.0) out.push_back(r.offset / r.normal[0]);
            return;
        case Region::Kind::finite_union:
            for (const Region& m : r.members) collect_breakpoints_1d(m, out);
            return;
    }
}

}  // namespace

std::vector<double> region_breakpoints_1d(const Region& r) {
    std::vector<double> out;
    if (r.dim() == 1 && !r.empty()) collect_breakpoints_1d(r, out);
    return out;
}

Component component_const_minus_indicator(double b, ParamSet K) {
    Component c;
    auto set = std::make_shared<ParamSet>(std::move(K));
    c.g = [b, set](std::span<const double> xi, std::span<const double> x) {
        return b - (set->at(x).contains(xi) ? 1.0 : 0.0);
    };
    c.breakpoints = [set](std::span<const double> x) {
        return region_breakpoints_1d(set->at(x));
    };
    return c;
}

Component component_affine(std::vector<double> a, double c0) {
    Component c;
    c.g = [a = std::move(a), c0](std::span<const double> xi,
                                 std::span<const double>) {
        double s = c0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * xi[j];
        return s;
    };
    return c;
}

}  // namespace rockrelax
