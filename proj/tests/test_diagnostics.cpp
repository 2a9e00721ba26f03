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
#include <stdexcept>
#include <vector>

#include "rockrelax/chance.hpp"
#include "rockrelax/diagnostics.hpp"
#include "rockrelax/distributions.hpp"
#include "rockrelax/experiments.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/sets.hpp"
#include "rockrelax/solvers.hpp"
#include "rockrelax/xreal.hpp"

using namespace rockrelax;

namespace {

EpiDistanceSpec spec1d(double lo, double hi, int res, double rho) {
    EpiDistanceSpec s;
    s.box = {{lo, hi}};
    s.resolution = res;
    s.rho = rho;
    return s;
}

GridFunction constant_fn(double c) {
    return [c](std::span<const double>) { return XReal(c); };
}

/// min x on the box [-5, 5] subject to mu((-inf, x]) >= 1/2.  With mu the
/// fair coin on {0, 1}, the feasible region is x >= 0.
ChanceProblem threshold_problem() {
    ChanceProblem cp;
    cp.n = 1;
    cp.d = 1;
    cp.g0 = g0_affine_on_box({1.0}, 0.0, {-5.0}, {5.0});
    cp.constraints.push_back(
        {ParamSet::halfline_le(AffineScalar::linear(0.0, 1.0, 0)), 0.5});
    return cp;
}

Distribution coin01() {
    return make_discrete({{0.0}, {1.0}}, {0.5, 0.5});
}

GridSpec probe_grid() {
    GridSpec g;
    g.box = {{0.0, 2.0}};
    g.resolution = 41;
    return g;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("grid specs reject degenerate boxes, resolutions, and radii") {
    CHECK_NOTHROW(spec1d(0.0, 1.0, 11, 1.0).validate());

    EpiDistanceSpec s;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // empty box
    s.box = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // 3-D unsupported
    CHECK_THROWS_AS(spec1d(1.0, 1.0, 11, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec1d(0.0, pos_inf(), 11, 1.0).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(spec1d(0.0, 1.0, 2, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec1d(0.0, 1.0, 11, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec1d(0.0, 1.0, 11, -1.0).validate(), std::invalid_argument);
}

TEST_CASE("identical functions certify all the way down to the grid spacing") {
    GridFunction f = [](std::span<const double> p) { return XReal(p[0] * p[0]); };
    // Spacing 0.1: the ladder 1, 1/2, 1/4, 1/8, 1/16 stops at the first rung
    // at or below the spacing, and every rung certifies.
    double est = epi_distance_estimate(f, f, spec1d(0.0, 1.0, 11, 1.0));
    CHECK(est == std::ldexp(1.0, -4));
}

TEST_CASE("a vertical shift is measured exactly on the dyadic ladder") {
    EpiDistanceSpec spec = spec1d(-1.0, 1.0, 41, 1.0);
    CHECK(epi_distance_estimate(constant_fn(0.0), constant_fn(0.25), spec) == 0.25);
    CHECK(epi_distance_estimate(constant_fn(0.25), constant_fn(0.0), spec) == 0.25);
    // 0.3 sits between rungs; the estimate lands on the next rung above.
    CHECK(epi_distance_estimate(constant_fn(0.0), constant_fn(0.3), spec) == 0.5);
}

TEST_CASE("disagreement beyond the localization radius is invisible") {
    EpiDistanceSpec spec = spec1d(-2.0, 2.0, 81, 1.0);
    GridFunction flat = constant_fn(0.0);
    GridFunction spiked = [](std::span<const double> p) {
        return XReal(std::abs(p[0]) <= 1.2 ? 0.0 : 10.0);
    };
    double same = epi_distance_estimate(flat, flat, spec);
    CHECK(epi_distance_estimate(flat, spiked, spec) == same);
    CHECK(same == std::ldexp(1.0, -5));
}

TEST_CASE("an uncertifiable pair raises instead of reporting a number") {
    GridFunction unreachable = [](std::span<const double>) {
        return XReal::pos_inf();
    };
    CHECK_THROWS_WITH_AS(
        epi_distance_estimate(constant_fn(0.0), unreachable,
                              spec1d(-1.0, 1.0, 21, 1.0)),
        doctest::Contains("no rung certifies"), std::runtime_error);
}

TEST_CASE("the two-point perturbation preset halves its epigraphical gap") {
    const CompositeProblem pb = preset_problem("finite-i");
    const Distribution base = preset_base("finite-i");

    EpiDistanceSpec spec;
    spec.box = {{-2.0, 2.0}, {-2.0, 2.0}};
    spec.resolution = 201;
    spec.rho = 2.0;

    auto estimate = [&](long nu) {
        const Distribution approx{preset_approximation("finite-i", nu)};
        Penalty pen;
        pen.tag = Penalty::Tag::euclidean_power;
        pen.alpha = 3.0;
        pen.lambda = std::pow(static_cast<double>(nu) + 1.0, -2.25);
        const GridFunction f_true = [&](std::span<const double> p) {
            return eval_rockafellian(pb, base, p.subspan(0, 1), p.subspan(1));
        };
        const GridFunction f_nu = [&](std::span<const double> p) {
            return eval_approx_rockafellian(pb, approx, {}, pen, p.subspan(0, 1),
                                            p.subspan(1));
        };
        return epi_distance_estimate(f_true, f_nu, spec);
    };

    CHECK(estimate(5) == 0.5);
    CHECK(estimate(20) == 0.25);
}

TEST_CASE("a diffuse boundary has unit outer content at every scale") {
    Distribution mu{Uniform1D{-1.0, 1.0}};
    ParamSet H = ParamSet::interval(AffineScalar::constant(-0.5),
                                    AffineScalar::constant(0.5));
    std::vector<double> ladder;
    for (int k = 3; k <= 12; ++k) ladder.push_back(std::ldexp(1.0, -k));

    std::vector<double> x{0.0};
    std::vector<double> content = minkowski_content(mu, H, x, ladder);
    REQUIRE(content.size() == ladder.size());
    for (double c : content) CHECK(c == 1.0);

    std::vector<double> bad{0.25, 0.0};
    CHECK_THROWS_AS(minkowski_content(mu, H, x, bad), std::invalid_argument);
    std::vector<double> neg{-0.25};
    CHECK_THROWS_AS(minkowski_content(mu, H, x, neg), std::invalid_argument);
    std::vector<double> inf_eps{pos_inf()};
    CHECK_THROWS_AS(minkowski_content(mu, H, x, inf_eps), std::invalid_argument);
}

TEST_CASE("an atom just outside the set spikes the content estimate") {
    Distribution mu = coin01();
    // [-1, 1 - 2^-6] captures the atom at 0 but not the one at 1.
    ParamSet H = ParamSet::interval(AffineScalar::constant(-1.0),
                                    AffineScalar::constant(1.0 - 0.015625));
    std::vector<double> x{0.0};

    std::vector<double> narrow{0.0078125};  // enlargement misses the atom
    CHECK(minkowski_content(mu, H, x, narrow)[0] == 0.0);
    std::vector<double> wide{0.03125};  // enlargement swallows the atom
    CHECK(minkowski_content(mu, H, x, wide)[0] == 0.5 / 0.03125);
}

TEST_CASE("the distance ratio at an infeasible sample is exact") {
    ChanceProblem cp = threshold_problem();
    Distribution mu = coin01();

    std::vector<std::vector<double>> samples{{0.5}, {-0.25}, {-1.0}};
    ProbeResult res = subregularity_probe(cp, mu, samples, probe_grid());

    // Every node of the 41-point grid on [0, 2] satisfies the constraint.
    CHECK(res.feasible_grid_points == 41);
    REQUIRE(res.ratios.size() == 3);
    CHECK(res.ratios[0] == 0.0);  // feasible sample
    // P(xi <= z) = 0 below the first atom, so the shortfall is exactly 1/2,
    // while the nearest feasible grid point is the origin.
    CHECK(res.ratios[1] == 0.25 / 0.5);
    CHECK(res.ratios[2] == 1.0 / 0.5);
    CHECK(res.kappa == 2.0);
}

TEST_CASE("probe inputs are validated before any distances are measured") {
    ChanceProblem cp = threshold_problem();
    Distribution mu = coin01();
    std::vector<std::vector<double>> samples{{-1.0}};

    GridSpec planar = probe_grid();
    planar.box.push_back({0.0, 1.0});
    CHECK_THROWS_AS(subregularity_probe(cp, mu, samples, planar),
                    std::invalid_argument);

    std::vector<std::vector<double>> wide{{0.5, 0.5}};
    CHECK_THROWS_AS(subregularity_probe(cp, mu, wide, probe_grid()),
                    std::invalid_argument);

    // A sample outside the objective's box cannot be scored.
    ChanceProblem boxed = threshold_problem();
    boxed.g0 = g0_affine_on_box({1.0}, 0.0, {0.0}, {2.0});
    CHECK_THROWS_WITH_AS(subregularity_probe(boxed, mu, samples, probe_grid()),
                         doctest::Contains("objective domain"),
                         std::invalid_argument);

    // An unattainable probability level empties the probe grid.
    ChanceProblem impossible = threshold_problem();
    impossible.constraints[0].b = 1.5;
    CHECK_THROWS_WITH_AS(subregularity_probe(impossible, mu, samples, probe_grid()),
                         doctest::Contains("no feasible point"),
                         std::runtime_error);
}

TEST_CASE("planted power laws are recovered with tiny residuals") {
    std::vector<double> d;
    for (int k = 0; k < 8; ++k) d.push_back(std::ldexp(1.0, -k));

    for (double q : {0.25, 0.5, 1.0}) {
        std::vector<double> e;
        for (double dk : d) e.push_back(3.0 * std::pow(dk, q));
        RateFit fit = rate_fit(d, e);
        CHECK(fit.n_used == 8);
        CHECK(fit.slope == doctest::Approx(q).epsilon(1e-12));
        CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(fit.max_abs_residual <= 1e-12);
    }

    std::vector<double> flat_e(d.size(), 2.0);
    CHECK(std::abs(rate_fit(d, flat_e).slope) <= 1e-12);
}

TEST_CASE("junk pairs are dropped and hopeless fits raise") {
    std::vector<double> d{1.0, 0.5, 0.25, 0.0, -1.0, pos_inf(), 0.125};
    std::vector<double> e{1.0, 0.5, 0.25, 1.0, 1.0, 1.0, std::nan("")};
    RateFit fit = rate_fit(d, e);
    CHECK(fit.n_used == 3);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> d2{1.0, 0.5};
    std::vector<double> e2{1.0, 1.0};
    CHECK_THROWS_WITH_AS(rate_fit(d2, e2), doctest::Contains("fewer than 3"),
                         std::invalid_argument);
    std::vector<double> d3{1.0, 0.0, 0.25, 0.125};
    std::vector<double> e3{1.0, 1.0, -2.0, 1.0};
    CHECK_THROWS_AS(rate_fit(d3, e3), std::invalid_argument);  // 2 usable

    std::vector<double> same{1.0, 1.0, 1.0};
    std::vector<double> e4{1.0, 2.0, 3.0};
    CHECK_THROWS_WITH_AS(rate_fit(same, e4), doctest::Contains("all equal"),
                         std::invalid_argument);

    std::vector<double> short_d{1.0, 0.5};
    CHECK_THROWS_AS(rate_fit(short_d, e4), std::invalid_argument);  // lengths
}

}  // TEST_SUITE
