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
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rockrelax/distributions.hpp"
#include "rockrelax/experiments.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/rng.hpp"
#include "rockrelax/sets.hpp"
#include "rockrelax/xreal.hpp"

using rockrelax::Component;
using rockrelax::component_affine;
using rockrelax::component_expectations;
using rockrelax::CompositeProblem;
using rockrelax::CounterRng;
using rockrelax::Distribution;
using rockrelax::eval_approx_rockafellian;
using rockrelax::eval_phi;
using rockrelax::eval_rockafellian;
using rockrelax::make_discrete;
using rockrelax::OuterFunction;
using rockrelax::partial_min_u;
using rockrelax::Penalty;
using rockrelax::pow_abs;
using rockrelax::preset_approximation;
using rockrelax::preset_base;
using rockrelax::preset_problem;
using rockrelax::Region;
using rockrelax::XReal;

namespace {
Penalty separable(double alpha, double lambda) {
    return Penalty{Penalty::Tag::separable_power, alpha, lambda};
}
Penalty euclidean(double alpha, double lambda) {
    return Penalty{Penalty::Tag::euclidean_power, alpha, lambda};
}
const std::vector<Component> kNoOverride;
}  // namespace

TEST_SUITE("model") {

TEST_CASE("pow_abs agrees with pow and keeps integer exponents exact") {
    CHECK(pow_abs(-3.5, 1.0) == 3.5);
    CHECK(pow_abs(-3.5, 2.0) == 3.5 * 3.5);
    CHECK(pow_abs(0.0, 1.0) == 0.0);
    CHECK(pow_abs(2.0, 1.7) == std::pow(2.0, 1.7));
    CHECK(pow_abs(-2.0, 1.7) == std::pow(2.0, 1.7));
}

TEST_CASE("outer functions evaluate their three shapes") {
    OuterFunction orth = OuterFunction::orthant(2);
    CHECK(orth.eval(std::vector<double>{0.0, -5.0}).value() == 0.0);
    CHECK(orth.eval(std::vector<double>{-1e-9, 0.0}).value() == 0.0);
    // The feasibility test is strict: any positive component is a violation.
    CHECK(orth.eval(std::vector<double>{1e-13, 0.0}).is_pos_inf());

    OuterFunction lin = OuterFunction::linear({2.0, 0.5});
    CHECK(lin.eval(std::vector<double>{1.0, 4.0}).value() == 4.0);

    OuterFunction mpp = OuterFunction::max_plus_power(2, 2.0);
    CHECK(mpp.eval(std::vector<double>{1.5, -2.0}).value() == 2.25);
    CHECK(mpp.eval(std::vector<double>{-1.0, -2.0}).value() == 0.0);
}

TEST_CASE("penalty tags coincide in one dimension and at exponent two") {
    CounterRng rng(88, 0);
    for (std::uint64_t k = 0; k < 30; ++k) {
        double u1 = rng.uniform(3 * k, -2.0, 2.0);
        std::vector<double> u{u1};
        CHECK(euclidean(1.5, 0.7).eval(u) == separable(1.5, 0.7).eval(u));

        std::vector<double> u2{u1, rng.uniform(3 * k + 1, -2.0, 2.0)};
        CHECK(euclidean(2.0, 0.3).eval(u2) ==
              doctest::Approx(separable(2.0, 0.3).eval(u2)).epsilon(1e-14));
    }
    // alpha = 1 in one dimension: |u| / lambda.
    CHECK(separable(1.0, 0.25).eval(std::vector<double>{-0.5}) == 2.0);
}

TEST_CASE("composite objective has closed-form values on the presets") {
    CompositeProblem fin1 = preset_problem("finite-i");
    Distribution base1 = preset_base("finite-i");
    std::vector<double> x{0.3};
    XReal v = eval_phi(fin1, base1, x);
    REQUIRE(v.is_finite());
    CHECK(v.value() == 0.3 * 0.3);

    CompositeProblem fin2 = preset_problem("finite-ii");
    Distribution base2 = preset_base("finite-ii");
    // No support atom matches x = 0.5, so the mean constraint is violated.
    CHECK(eval_phi(fin2, base2, std::vector<double>{0.5}).is_pos_inf());
    CHECK(eval_phi(fin2, base2, std::vector<double>{1.0}).value() == 1.0);

    CompositeProblem d2 = preset_problem("discrete-ii");
    Distribution based2 = preset_base("discrete-ii");
    CHECK(eval_phi(d2, based2, std::vector<double>{1.0}).value() == -1.0);
}

TEST_CASE("the exact relaxation agrees with the objective on its u=0 slice") {
    for (const char* name : {"finite-i", "finite-ii", "discrete-i", "discrete-ii"}) {
        CompositeProblem pb = preset_problem(name);
        Distribution mu = preset_base(name);
        std::vector<double> zero(pb.m, 0.0);
        CounterRng rng(7, 0);
        for (std::uint64_t k = 0; k < 100; ++k) {
            std::vector<double> x{rng.uniform(k, -2.0, 2.0)};
            XReal a = eval_rockafellian(pb, mu, zero, x);
            XReal b = eval_phi(pb, mu, x);
            CHECK(a == b);
        }
        // Any nonzero shift leaves the exact relaxation's domain.
        std::vector<double> tiny(pb.m, 0.0);
        tiny[0] = 1e-13;
        CHECK(eval_rockafellian(pb, mu, tiny, std::vector<double>{1.0}).is_pos_inf());
    }
    CompositeProblem fin1 = preset_problem("finite-i");
    CHECK(eval_rockafellian(fin1, preset_base("finite-i"), std::vector<double>{0.0},
                            std::vector<double>{0.0})
              .value() == 0.0);
}

TEST_CASE("the penalized relaxation hits its hand-computed values") {
    CompositeProblem d1 = preset_problem("discrete-i");
    std::vector<double> u{-0.5}, x{0.0};
    for (long nu : {2L, 5L, 17L}) {
        Distribution approx = preset_approximation("discrete-i", nu);
        XReal v = eval_approx_rockafellian(d1, approx, kNoOverride,
                                           separable(1.0, 0.25), u, x);
        CHECK(v.value() == 2.0);
    }

    CompositeProblem d2 = preset_problem("discrete-ii");
    Distribution a3 = preset_approximation("discrete-ii", 3);
    XReal w = eval_approx_rockafellian(d2, a3, kNoOverride, separable(1.0, 0.25),
                                       std::vector<double>{0.0},
                                       std::vector<double>{1.5});
    CHECK(w.value() == -0.5);

    // At u = 0 the penalty vanishes: the value is the plug-in objective.
    CompositeProblem fin1 = preset_problem("finite-i");
    CounterRng rng(21, 0);
    for (std::uint64_t k = 0; k < 40; ++k) {
        std::vector<double> xr{rng.uniform(k, -1.5, 1.5)};
        Distribution ap = preset_approximation("finite-i", 4);
        XReal lhs = eval_approx_rockafellian(fin1, ap, kNoOverride,
                                             euclidean(2.0, 0.5),
                                             std::vector<double>{0.0}, xr);
        CHECK(lhs == eval_phi(fin1, ap, xr));
    }
}

TEST_CASE("partial minimization has the documented closed form") {
    CompositeProblem fin1 = preset_problem("finite-i");
    std::vector<double> x{0.0};
    for (long nu : {1L, 3L, 7L}) {
        Distribution approx = preset_approximation("finite-i", nu);
        double delta = 1.0 / (static_cast<double>(nu) + 1.0);
        for (double lambda : {0.25, 0.5, 1.0}) {
            XReal v = partial_min_u(fin1, approx, kNoOverride,
                                    separable(1.0, lambda), x);
            CHECK(v.value() == delta / lambda);
        }
    }

    // Nonpositive expectations need no shift at all: the value is g0.
    Distribution base = preset_base("finite-i");
    XReal v0 = partial_min_u(fin1, base, kNoOverride, separable(1.0, 0.5),
                             std::vector<double>{0.3});
    CHECK(v0.value() == 0.3 * 0.3);
}

TEST_CASE("partial minimization lower-bounds every explicit shift") {
    CounterRng rng(2025, 0);
    for (int rep = 0; rep < 25; ++rep) {
        CounterRng inst = rng.child(static_cast<std::uint64_t>(rep));
        std::size_t m = 1 + static_cast<std::size_t>(inst.u01(500) * 2.0);  // 1 or 2
        CompositeProblem pb;
        pb.n = 1;
        pb.m = m;
        pb.d = 1;
        pb.g0 = rockrelax::g0_quadratic();
        pb.h = OuterFunction::orthant(m);
        for (std::size_t i = 0; i < m; ++i)
            pb.components.push_back(component_affine(
                {inst.uniform(600 + i, -1.0, 1.0)}, inst.uniform(700 + i, -0.5, 0.5)));

        Distribution mu = make_discrete(
            {{inst.uniform(800, -1.0, 1.0)}, {inst.uniform(801, -1.0, 1.0)}},
            {0.5, 0.5});
        std::vector<double> x{inst.uniform(900, -1.0, 1.0)};
        double alpha = 1.0 + 2.0 * inst.u01(901);
        double lambda = 0.2 + inst.u01(902);

        for (Penalty pen : {separable(alpha, lambda), euclidean(alpha, lambda)}) {
            XReal best = partial_min_u(pb, mu, kNoOverride, pen, x);
            REQUIRE(best.is_finite());

            // The optimal shift cancels exactly the positive expectations.
            std::vector<double> v = component_expectations(pb, mu, x);
            std::vector<double> ustar(m);
            for (std::size_t i = 0; i < m; ++i) ustar[i] = -std::max(v[i], 0.0);
            XReal at_star =
                eval_approx_rockafellian(pb, mu, kNoOverride, pen, ustar, x);
            CHECK(best.value() == doctest::Approx(at_star.value()).epsilon(1e-12));

            for (std::uint64_t k = 0; k < 50; ++k) {
                std::vector<double> u(m);
                for (std::size_t i = 0; i < m; ++i)
                    u[i] = inst.uniform(1000 + 10 * k + i, -2.0, 2.0);
                XReal f = eval_approx_rockafellian(pb, mu, kNoOverride, pen, u, x);
                if (f.is_finite()) CHECK(f.value() >= best.value() - 1e-12);
            }
        }
    }
}

TEST_CASE("partial minimization is monotone in the penalty scale") {
    CompositeProblem fin1 = preset_problem("finite-i");
    Distribution approx = preset_approximation("finite-i", 2);
    std::vector<double> x{0.4};
    double prev = rockrelax::pos_inf();
    for (double lambda : {0.1, 0.2, 0.5, 1.0, 4.0}) {
        XReal v = partial_min_u(fin1, approx, kNoOverride, separable(1.5, lambda), x);
        CHECK(v.value() <= prev + 1e-15);
        prev = v.value();
    }
}

TEST_CASE("non-indicator outer functions fall back to a grid search") {
    CompositeProblem pb;
    pb.n = 1;
    pb.m = 1;
    pb.d = 1;
    pb.g0 = rockrelax::g0_quadratic();
    pb.h = OuterFunction::linear({1.0});
    pb.components.push_back(component_affine({0.0}, 0.25));  // E = 0.25 always

    Distribution mu = make_discrete({{0.0}}, {1.0});
    std::vector<double> x{0.0};
    // minimize (u + 1/4) + u^2 / (2 lambda): optimum u = -lambda,
    // value 1/4 - lambda/2.
    for (double lambda : {0.5, 1.0, 2.0}) {
        XReal v = partial_min_u(pb, mu, kNoOverride, euclidean(2.0, lambda), x);
        CHECK(v.value() == doctest::Approx(0.25 - 0.5 * lambda).epsilon(1e-6));
    }
}

TEST_CASE("catalog pieces evaluate their defining formulas") {
    auto g0 = rockrelax::g0_affine_on_box({1.0}, 0.5, {0.0}, {2.0});
    CHECK(g0(std::vector<double>{1.0}).value() == 1.5);
    CHECK(g0(std::vector<double>{3.0}).is_pos_inf());
    CHECK(g0(std::vector<double>{0.0}).value() == 0.5);

    auto steps = rockrelax::g0_step_sum(
        {-1.0, -0.5}, {Region::halfspace({1.0}, 1.0), Region::halfspace({-1.0}, -1.5)});
    CHECK(steps(std::vector<double>{0.5}).value() == -1.0);
    CHECK(steps(std::vector<double>{2.0}).value() == -0.5);
    CHECK(steps(std::vector<double>{1.2}).value() == 0.0);

    CHECK(rockrelax::region_breakpoints_1d(Region::interval(0.0, 1.0)) ==
          std::vector<double>{0.0, 1.0});
    CHECK(rockrelax::region_breakpoints_1d(
              Region::box({rockrelax::neg_inf()}, {2.0})) ==
          std::vector<double>{2.0});

    Component c = component_affine({2.0}, -1.0);
    CHECK(c.g(std::vector<double>{3.0}, std::vector<double>{99.0}) == 5.0);
}

}  // TEST_SUITE
