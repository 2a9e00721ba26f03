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

#include <string>
#include <vector>

namespace rockrelax {

/// One linear constraint a.x (<= or =) b over nonnegative variables.
struct LpRow {
    enum class Sense { le, eq };
    std::vector<double> a;
    double b = 0.0;
    Sense sense = Sense::le;
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    double value = 0.0;          // objective at the optimum
    std::vector<double> x;       // primal solution (empty unless optimal)
};

/// maximize c.x subject to the rows and x >= 0.  Dense two-phase primal
/// simplex with Bland's rule (anti-cycling); intended for the small dense
/// programs behind the probability metrics, not for large-scale use.
LpResult simplex_maximize(const std::vector<double>& c,
                          const std::vector<LpRow>& rows);

/// Minimum-cost transportation plan between weight vectors p (supplies) and
/// q (demands) under the given cost matrix (size p x q).  Both must sum to
/// the same total within 1e-9.
double transport_min_cost(const std::vector<double>& p,
                          const std::vector<double>& q,
                          const std::vector<std::vector<double>>& cost);

}  // namespace rockrelax
