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
#include "rockrelax/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rockrelax {

namespace {

std::string num17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json json_point(const std::vector<double>& p) {
    nlohmann::json a = nlohmann::json::array();
    for (double v : p) a.push_back(json_number(v));
    return a;
}

nlohmann::json json_points(const std::vector<std::vector<double>>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : ps) a.push_back(json_point(p));
    return a;
}

std::string csv_point(const std::vector<double>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '|';
        s += num17(p[i]);
    }
    return s;
}

std::string csv_points(const std::vector<std::vector<double>>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ';';
        s += csv_point(ps[i]);
    }
    return s;
}

}  // namespace

std::string report_to_json(const SolveReport& rep) {
    nlohmann::json j;
    j["schema"] = rep.schema;
    j["preset"] = rep.preset;
    j["seed"] = rep.seed;
    j["horizon"] = rep.horizon;
    j["alpha"] = json_number(rep.alpha);
    j["penalty"] = rep.penalty;
    j["schedule"] = rep.schedule;
    j["grid_spacing"] = json_number(rep.grid_spacing);
    j["notes"] = rep.notes;
    j["runs"] = nlohmann::json::array();
    for (const auto& block : rep.runs) {
        nlohmann::json b;
        b["variant"] = block.variant;
        b["rows"] = nlohmann::json::array();
        for (const auto& r : block.rows) {
            nlohmann::json row;
            row["nu"] = r.nu;
            row["d_tv"] = json_number(r.d_tv);
            row["d_w1"] = json_number(r.d_w1);
            row["d_bl"] = json_number(r.d_bl);
            row["d_fm"] = json_number(r.d_fm);
            row["d_mi"] = json_number(r.d_mi);
            row["lambda"] = json_number(r.lambda);
            row["theta"] = json_number(r.theta);
            row["inf_plugin"] = json_number(r.inf_plugin);
            row["inf_f"] = json_number(r.inf_f);
            row["u_rep"] = json_point(r.u_rep);
            row["x_reps"] = json_points(r.x_reps);
            row["dist_ref"] = json_number(r.dist_ref);
            row["worst_violation"] = json_number(r.worst_violation);
            row["eta_proxy"] = json_number(r.eta_proxy);
            row["plugin_x_reps"] = json_points(r.plugin_x_reps);
            row["rep_bbox_lo"] = json_point(r.rep_bbox_lo);
            row["rep_bbox_hi"] = json_point(r.rep_bbox_hi);
            row["box_clipped"] = r.box_clipped;
            b["rows"].push_back(std::move(row));
        }
        j["runs"].push_back(std::move(b));
    }
    if (!rep.claims.empty()) {
        j["claims"] = nlohmann::json::array();
        for (const auto& c : rep.claims) {
            j["claims"].push_back(
                {{"key", c.key}, {"pass", c.pass}, {"detail", c.detail}});
        }
    }
    if (rep.has_fit) {
        j["fit"] = {{"slope", json_number(rep.fit_slope)},
                    {"intercept", json_number(rep.fit_intercept)},
                    {"note", rep.fit_note}};
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const SolveReport& rep) {
    std::ostringstream out;
    out << "# schema=" << rep.schema << "\n";
    out << "# preset=" << rep.preset << "\n";
    out << "# seed=" << rep.seed << "\n";
    out << "# horizon=" << rep.horizon << "\n";
    out << "# alpha=" << num17(rep.alpha) << "\n";
    out << "# penalty=" << rep.penalty << "\n";
    out << "# schedule=" << rep.schedule << "\n";
    out << "# grid_spacing=" << num17(rep.grid_spacing) << "\n";
    if (!rep.notes.empty()) out << "# notes=" << rep.notes << "\n";
    if (rep.has_fit) {
        out << "# fit_slope=" << num17(rep.fit_slope)
            << " fit_intercept=" << num17(rep.fit_intercept) << "\n";
    }
    for (const auto& c : rep.claims) {
        out << "# claim " << c.key << "=" << (c.pass ? "pass" : "fail");
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
    }
    out << "nu,d_tv,d_w1,d_bl,d_fm,d_mi,lambda,theta,inf_plugin,inf_f,"
           "u_rep,x_reps,dist_ref,worst_violation,eta_proxy\n";
    for (const auto& block : rep.runs) {
        out << "# variant=" << block.variant << "\n";
        for (const auto& r : block.rows) {
            out << r.nu << ',' << num17(r.d_tv) << ',' << num17(r.d_w1) << ','
                << num17(r.d_bl) << ',' << num17(r.d_fm) << ',' << num17(r.d_mi)
                << ',' << num17(r.lambda) << ',' << num17(r.theta) << ','
                << num17(r.inf_plugin) << ',' << num17(r.inf_f) << ','
                << csv_point(r.u_rep) << ',' << csv_points(r.x_reps) << ','
                << num17(r.dist_ref) << ',' << num17(r.worst_violation) << ','
                << num17(r.eta_proxy) << "\n";
        }
    }
    return out.str();
}

void write_report(const SolveReport& rep, const std::string& path) {
    std::string body;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        body = report_to_json(rep);
    } else if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        body = report_to_csv(rep);
    } else {
        throw std::invalid_argument(
            "write_report: path must end in .json or .csv, got '" + path + "'");
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("write_report: cannot open '" + tmp + "'");
        f << body;
        if (!f.good()) throw std::runtime_error("write_report: write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("write_report: rename to '" + path + "' failed");
    }
}

}  // namespace rockrelax
