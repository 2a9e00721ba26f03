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

#include "rockrelax/distributions.hpp"
#include "rockrelax/experiments.hpp"
#include "rockrelax/lp.hpp"
#include "rockrelax/metrics.hpp"
#include "rockrelax/rng.hpp"
#include "rockrelax/sets.hpp"

using rockrelax::bounded_lipschitz;
using rockrelax::CounterRng;
using rockrelax::DiscreteDistribution;
using rockrelax::Distribution;
using rockrelax::fortet_mourier;
using rockrelax::kl_divergence;
using rockrelax::LpResult;
using rockrelax::LpRow;
using rockrelax::make_discrete;
using rockrelax::minimal_information;
using rockrelax::pos_inf;
using rockrelax::simplex_maximize;
using rockrelax::total_variation;
using rockrelax::transport_min_cost;
using rockrelax::Uniform1D;
using rockrelax::wasserstein1;

namespace {

DiscreteDistribution delta(std::vector<double> atom) {
    return make_discrete({std::move(atom)}, {1.0});
}

DiscreteDistribution coin() { return make_discrete({{0.0}, {1.0}}, {0.5, 0.5}); }

/// Random measure with `n` atoms in [-2,2]^dim and positive weights.
DiscreteDistribution random_measure(const CounterRng& rng, std::size_t n,
                                    std::size_t dim) {
    std::vector<std::vector<double>> atoms(n, std::vector<double>(dim));
    std::vector<double> w(n);
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) atoms[i][j] = rng.uniform(k++, -2.0, 2.0);
        w[i] = rng.u01(k++) + 0.05;
    }
    return make_discrete(std::move(atoms), std::move(w));
}

/// Independent bounded-Lipschitz encoding: substitute g = f + 1 so the test
/// function lives in [0, 2] and the program fits the nonnegative-variable
/// simplex directly.  Because p and q have equal mass, the shift does not
/// change the objective.
double bl_reencoded(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    std::vector<std::vector<double>> support;
    std::vector<double> signedw;
    auto upsert = [&](const std::vector<double>& atom, double w) {
        for (std::size_t k = 0; k < support.size(); ++k) {
            bool same = true;
            for (std::size_t j = 0; j < atom.size(); ++j)
                if (std::abs(support[k][j] - atom[j]) > 1e-12) { same = false; break; }
            if (same) { signedw[k] += w; return; }
        }
        support.push_back(atom);
        signedw.push_back(w);
    };
    for (std::size_t k = 0; k < p.size(); ++k) upsert(p.atoms[k], p.weights[k]);
    for (std::size_t k = 0; k < q.size(); ++k) upsert(q.atoms[k], -q.weights[k]);

    const std::size_t n = support.size();
    std::vector<LpRow> rows;
    for (std::size_t k = 0; k < n; ++k) {
        LpRow cap;
        cap.a.assign(n, 0.0);
        cap.a[k] = 1.0;
        cap.b = 2.0;
        rows.push_back(std::move(cap));
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            double dist = 0.0;
            for (std::size_t j = 0; j < support[k].size(); ++j) {
                double t = support[k][j] - support[l][j];
                dist += t * t;
            }
            dist = std::sqrt(dist);
            LpRow fwd, bwd;
            fwd.a.assign(n, 0.0);
            fwd.a[k] = 1.0;
            fwd.a[l] = -1.0;
            fwd.b = dist;
            bwd.a.assign(n, 0.0);
            bwd.a[k] = -1.0;
            bwd.a[l] = 1.0;
            bwd.b = dist;
            rows.push_back(std::move(fwd));
            rows.push_back(std::move(bwd));
        }
    }
    LpResult res = simplex_maximize(signedw, rows);
    REQUIRE(res.status == LpResult::Status::optimal);
    return res.value;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("total variation on hand-checked pairs") {
    CHECK(total_variation(coin(), delta({1.0})) == 1.0);
    CHECK(total_variation(coin(), coin()) == 0.0);
    CHECK(total_variation(delta({0.0}), delta({1.0})) == 2.0);
    // Padding atoms with zero weight change nothing.
    DiscreteDistribution padded = make_discrete({{0.0}, {1.0}, {7.0}}, {0.5, 0.5, 0.0});
    CHECK(total_variation(padded, delta({1.0})) == 1.0);
}

TEST_CASE("kl divergence on hand-checked pairs") {
    CHECK(kl_divergence(coin(), coin()) == 0.0);
    DiscreteDistribution skew = make_discrete({{0.0}, {1.0}}, {0.25, 0.75});
    double want = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
    CHECK(kl_divergence(coin(), skew) == doctest::Approx(want).epsilon(1e-12));
    // Support violations blow up in one direction only.
    CHECK(kl_divergence(delta({0.0}), delta({1.0})) == pos_inf());
    CHECK(kl_divergence(coin(), delta({0.0})) == pos_inf());
    CHECK(kl_divergence(delta({0.0}), coin()) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("wasserstein distance on hand-checked pairs") {
    CHECK(wasserstein1(delta({0.0}), delta({1.0})) == 1.0);
    CHECK(wasserstein1(coin(), delta({0.0})) == 0.5);
    CHECK(wasserstein1(coin(), coin()) == 0.0);
    CHECK(wasserstein1(delta({0.0, 0.0}), delta({3.0, 4.0})) ==
          doctest::Approx(5.0).epsilon(1e-9));

    CounterRng rng(99, 0);
    for (std::uint64_t k = 0; k < 20; ++k) {
        double s = rng.uniform(2 * k, -5.0, 5.0);
        double t = rng.uniform(2 * k + 1, -5.0, 5.0);
        CHECK(wasserstein1(delta({s}), delta({t})) ==
              doctest::Approx(std::abs(s - t)).epsilon(1e-12));
    }
}

TEST_CASE("one-dimensional wasserstein agrees with the transport program") {
    CounterRng rng(4242, 0);
    for (int rep = 0; rep < 40; ++rep) {
        CounterRng inst = rng.child(static_cast<std::uint64_t>(rep));
        DiscreteDistribution p = random_measure(inst.child(0), 4, 1);
        DiscreteDistribution q = random_measure(inst.child(1), 5, 1);
        std::vector<std::vector<double>> cost(p.size(), std::vector<double>(q.size()));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j)
                cost[i][j] = std::abs(p.atoms[i][0] - q.atoms[j][0]);
        CHECK(wasserstein1(p, q) ==
              doctest::Approx(transport_min_cost(p.weights, q.weights, cost))
                  .epsilon(1e-9));
    }
}

TEST_CASE("wasserstein against a uniform law integrates the cdf gap") {
    Uniform1D u{-1.0, 1.0};
    CHECK(wasserstein1(delta({0.0}), u) == doctest::Approx(0.5).epsilon(1e-12));
    // nu equal cells sampled at their right edges miss by exactly 1/nu.
    for (long nu : {4L, 16L, 64L}) {
        DiscreteDistribution grid = rockrelax::preset_approximation("rate-s2", nu);
        CHECK(wasserstein1(grid, u) ==
              doctest::Approx(1.0 / static_cast<double>(nu)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(wasserstein1(delta({0.0, 0.0}), u), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein1(delta({0.0}), Uniform1D{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("bounded-lipschitz distance on hand-checked pairs") {
    CHECK(bounded_lipschitz(delta({1.25}), delta({1.0})) ==
          doctest::Approx(0.25).epsilon(1e-9));
    CHECK(bounded_lipschitz(delta({0.0}), delta({5.0})) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(bounded_lipschitz(delta({0.0, 0.0}), delta({3.0, 4.0})) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(bounded_lipschitz(delta({0.0, 0.0}), delta({0.3, 0.4})) ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(bounded_lipschitz(coin(), coin()) == 0.0);
}

TEST_CASE("an independent encoding reproduces the bounded-lipschitz value") {
    CounterRng rng(777, 0);
    for (int rep = 0; rep < 15; ++rep) {
        CounterRng inst = rng.child(static_cast<std::uint64_t>(rep));
        DiscreteDistribution p = random_measure(inst.child(0), 3, 1);
        DiscreteDistribution q = random_measure(inst.child(1), 4, 1);
        CHECK(bounded_lipschitz(p, q) ==
              doctest::Approx(bl_reencoded(p, q)).epsilon(1e-9));
    }
}

TEST_CASE("fortet-mourier distance on hand-checked pairs") {
    CHECK(fortet_mourier(delta({2.0}), delta({3.0}), 2.0) ==
          doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fortet_mourier(coin(), coin(), 2.0) == 0.0);
    CHECK_THROWS_AS(fortet_mourier(coin(), delta({0.0}), 0.5), std::invalid_argument);
}

TEST_CASE("metric inequalities hold on randomized instances") {
    CounterRng rng(12345, 0);
    for (int rep = 0; rep < 200; ++rep) {
        CounterRng inst = rng.child(static_cast<std::uint64_t>(rep));
        std::size_t np = 3 + static_cast<std::size_t>(inst.uniform(1000, 0.0, 4.0));
        std::size_t nq = 3 + static_cast<std::size_t>(inst.uniform(1001, 0.0, 4.0));
        std::size_t nr = 3 + static_cast<std::size_t>(inst.uniform(1002, 0.0, 4.0));
        DiscreteDistribution p = random_measure(inst.child(0), np, 2);
        DiscreteDistribution q = random_measure(inst.child(1), nq, 2);
        DiscreteDistribution r = random_measure(inst.child(2), nr, 2);

        double tv_pq = total_variation(p, q);
        double w_pq = wasserstein1(p, q);
        double bl_pq = bounded_lipschitz(p, q);
        double fm_pq = fortet_mourier(p, q, 1.0);
        double fm2_pq = fortet_mourier(p, q, 2.0);

        // Symmetry.
        CHECK(tv_pq == doctest::Approx(total_variation(q, p)).epsilon(1e-12));
        CHECK(w_pq == doctest::Approx(wasserstein1(q, p)).epsilon(1e-9));
        CHECK(bl_pq == doctest::Approx(bounded_lipschitz(q, p)).epsilon(1e-9));
        CHECK(fm2_pq == doctest::Approx(fortet_mourier(q, p, 2.0)).epsilon(1e-9));

        // Triangle inequality.
        CHECK(tv_pq <= total_variation(p, r) + total_variation(r, q) + 1e-9);
        CHECK(w_pq <= wasserstein1(p, r) + wasserstein1(r, q) + 1e-9);
        CHECK(bl_pq <= bounded_lipschitz(p, r) + bounded_lipschitz(r, q) + 1e-9);
        CHECK(fm2_pq <=
              fortet_mourier(p, r, 2.0) + fortet_mourier(r, q, 2.0) + 1e-9);

        // Orderings: the bounded-Lipschitz class is the smallest, first-order
        // Fortet-Mourier is the Wasserstein class.
        CHECK(bl_pq <= w_pq + 1e-9);
        CHECK(std::abs(w_pq - fm_pq) <= 1e-9);
        CHECK(bl_pq <= tv_pq + 1e-9);
        CHECK(bl_pq <= 2.0 + 1e-12);
        CHECK(fm2_pq + 1e-9 >= fm_pq);  // larger class, larger supremum

        // Identity of indiscernibles, cheap direction.
        CHECK(total_variation(p, p) == 0.0);
        CHECK(wasserstein1(p, p) == doctest::Approx(0.0).scale(1.0));
        CHECK(bounded_lipschitz(p, p) == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("pinsker bound ties total variation to kl divergence") {
    CounterRng rng(5150, 0);
    for (int rep = 0; rep < 60; ++rep) {
        CounterRng inst = rng.child(static_cast<std::uint64_t>(rep));
        std::vector<std::vector<double>> atoms{{-1.0}, {0.0}, {1.0}, {2.5}};
        std::vector<double> wp(4), wq(4);
        for (std::size_t k = 0; k < 4; ++k) {
            wp[k] = inst.u01(2 * k) + 0.05;
            wq[k] = inst.u01(2 * k + 1) + 0.05;
        }
        DiscreteDistribution p = make_discrete(atoms, wp);
        DiscreteDistribution q = make_discrete(atoms, wq);
        double kl = kl_divergence(p, q);
        REQUIRE(std::isfinite(kl));
        CHECK(kl >= -1e-15);
        CHECK(total_variation(p, q) <= std::sqrt(2.0 * kl) + 1e-9);
    }
}

TEST_CASE("problem-adapted discrepancy matches the known perturbation size") {
    rockrelax::CompositeProblem pb = rockrelax::preset_problem("finite-i");
    Distribution base = rockrelax::preset_base("finite-i");
    std::vector<std::vector<double>> xgrid{{0.0}, {1.0}, {-0.5}};

    for (long nu : {1L, 3L, 7L}) {
        Distribution approx = rockrelax::preset_approximation("finite-i", nu);
        double want = 1.0 / (static_cast<double>(nu) + 1.0);
        CHECK(minimal_information(pb, base, approx, xgrid) == want);
        // Symmetric in its two measures.
        CHECK(minimal_information(pb, approx, base, xgrid) == want);
    }
    CHECK(minimal_information(pb, base, base, xgrid) == 0.0);
    CHECK_THROWS_AS(minimal_information(pb, base, base, {}), std::invalid_argument);
}

TEST_CASE("oversized union supports are rejected") {
    auto shifted_atoms = [](int n, double offset) {
        std::vector<std::vector<double>> a;
        for (int k = 0; k < n; ++k) a.push_back({static_cast<double>(k) + offset});
        return a;
    };
    // 200 + 200 disjoint atoms fill the cap exactly and still evaluate.
    DiscreteDistribution p200 =
        make_discrete(shifted_atoms(200, 0.0), std::vector<double>(200, 1.0));
    DiscreteDistribution q200 =
        make_discrete(shifted_atoms(200, 0.5), std::vector<double>(200, 1.0));
    CHECK(total_variation(p200, q200) == doctest::Approx(2.0).epsilon(1e-12));

    DiscreteDistribution p250 =
        make_discrete(shifted_atoms(250, 0.0), std::vector<double>(250, 1.0));
    DiscreteDistribution q250 =
        make_discrete(shifted_atoms(250, 0.5), std::vector<double>(250, 1.0));
    CHECK_THROWS_WITH_AS(bounded_lipschitz(p250, q250),
                         doctest::Contains("union support exceeds"),
                         std::invalid_argument);
    CHECK_THROWS_AS(total_variation(p250, q250), std::invalid_argument);
    CHECK_THROWS_AS(total_variation(delta({0.0}), delta({0.0, 0.0})),
                    std::invalid_argument);
}

}  // TEST_SUITE
