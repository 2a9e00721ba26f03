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

#include <cstdint>
#include <string>
#include <vector>

namespace rockrelax {

/// One approximation level of a study.  Distances that do not apply to a
/// row (for example atomic-vs-continuous comparisons without a closed form)
/// are stored as NaN and serialized as "nan".
struct ReportRow {
    long nu = 0;
    double d_tv = 0.0;
    double d_w1 = 0.0;
    double d_bl = 0.0;
    double d_fm = 0.0;
    double d_mi = 0.0;
    double lambda = 0.0;
    double theta = 0.0;  // NaN when the run has no envelope scale
    double inf_plugin = 0.0;
    double inf_f = 0.0;
    std::vector<double> u_rep;                // residual part of the minimizer
    std::vector<std::vector<double>> x_reps;  // decision parts of near-minimizers
    double dist_ref = 0.0;         // distance from the first representative
                                   // to the reference solution set
    double worst_violation = 0.0;  // most negative true-constraint slack at
                                   // the representative (0 when feasible)
    double eta_proxy = 0.0;        // solution-error proxy for this row
    // The fields below are JSON-only; the CSV keeps the fixed column set.
    std::vector<std::vector<double>> plugin_x_reps;  // plug-in near-minimizers
    std::vector<double> rep_bbox_lo, rep_bbox_hi;    // bbox of near-minimizers
    bool box_clipped = false;  // near-minimizers touch the search box boundary
};

struct RunBlock {
    std::string variant;  // "plain", "envelope", ...
    std::vector<ReportRow> rows;
};

struct ClaimResult {
    std::string key;
    bool pass = false;
    std::string detail;
};

struct SolveReport {
    int schema = 1;
    std::string preset;
    std::uint64_t seed = 0;
    long horizon = 0;
    double alpha = 1.0;
    std::string penalty;   // "euclidean-power" or "separable-power"
    std::string schedule;  // rule tag from the schedule module
    double grid_spacing = 0.0;  // finest lattice spacing of the solve grid
    std::string notes;
    std::vector<RunBlock> runs;
    std::vector<ClaimResult> claims;
    bool has_fit = false;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
    std::string fit_note;
};

/// JSON serialization (schema 1).  Non-finite numbers are encoded as the
/// strings "inf", "-inf", "nan" since JSON has no literals for them.
std::string report_to_json(const SolveReport& rep);

/// CSV serialization: "# key=value" metadata lines, one "# variant=..."
/// marker per block, a fixed header, then one row per approximation level
/// with %.17g numbers ("inf"/"-inf"/"nan" for non-finite values).
/// Vector cells join coordinates with '|' and points with ';'.
std::string report_to_csv(const SolveReport& rep);

/// Write atomically (temp file in the same directory, then rename).  The
/// format follows the file extension: ".json" or ".csv".
void write_report(const SolveReport& rep, const std::string& path);

}  // namespace rockrelax
