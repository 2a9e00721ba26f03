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
//
// Command-line front end.  Exit codes: 0 success, 1 a requested comparison
// or validation failed (or a computation could not certify a result), 2 a
// usage or configuration error.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rockrelax/config.hpp"
#include "rockrelax/diagnostics.hpp"
#include "rockrelax/experiments.hpp"
#include "rockrelax/metrics.hpp"
#include "rockrelax/model.hpp"
#include "rockrelax/report.hpp"
#include "rockrelax/schedules.hpp"

namespace {

using namespace rockrelax;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot open '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError({std::string(what) + ": '" + tok +
                               "' is not a number"});
        }
    }
    if (out.empty()) throw ConfigError({std::string(what) + " is empty"});
    return out;
}

std::vector<long> parse_csv_longs(const std::string& text, const char* what) {
    std::vector<long> out;
    for (double v : parse_csv_doubles(text, what)) out.push_back(static_cast<long>(v));
    return out;
}

// Points are ';'-separated, coordinates within a point ','-separated.
std::vector<std::vector<double>> parse_points(const std::string& text,
                                              const char* what) {
    std::vector<std::vector<double>> out;
    std::stringstream ss(text);
    std::string pt;
    while (std::getline(ss, pt, ';')) out.push_back(parse_csv_doubles(pt, what));
    if (out.empty()) throw ConfigError({std::string(what) + " is empty"});
    return out;
}

// Shared tail of every report-producing command.
int emit_report(const SolveReport& rep, const std::string& out, bool check) {
    bool all_ok = true;
    for (const auto& c : rep.claims) all_ok = all_ok && c.pass;
    if (!out.empty()) {
        write_report(rep, out);
        for (const auto& c : rep.claims) {
            std::printf("[%s] %s: %s\n", c.pass ? "ok" : "FAIL", c.key.c_str(),
                        c.detail.c_str());
        }
        std::printf("wrote %s\n", out.c_str());
    } else {
        std::fputs(report_to_json(rep).c_str(), stdout);
    }
    return (check && !all_ok) ? 1 : 0;
}

// Options shared by run-example and rate.
struct RunArgs {
    long horizon = 0;
    std::uint64_t seed = 1;
    double alpha = 0.0;
    int rounds = -1;
    std::string schedule;
    std::string penalty;
    std::string out;
    bool check = false;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--horizon", a.horizon, "largest approximation level");
    cmd->add_option("--seed", a.seed, "RNG seed for sampling presets");
    cmd->add_option("--alpha", a.alpha, "penalty exponent (>= 1)")
        ->check(CLI::Range(1.0, 64.0));
    cmd->add_option("--rounds", a.rounds, "grid refinement rounds")
        ->check(CLI::Range(0, 20));
    cmd->add_option("--schedule", a.schedule,
                    "schedule tag (inv-nu, inv-sqrt-nu, inv-log, mi, tv, bl, "
                    "fm, kl, mi-rate, rate-s2, empirical, power:<q>)");
    cmd->add_option("--penalty", a.penalty,
                    "euclidean-power or separable-power");
    cmd->add_option("--out", a.out, "write the report to this .json or .csv path");
    cmd->add_flag("--check", a.check,
                  "exit nonzero when a registered claim fails");
}

PresetOptions to_preset_options(const RunArgs& a) {
    PresetOptions opt;
    opt.horizon = a.horizon;
    opt.seed = a.seed;
    opt.alpha = a.alpha;
    opt.rounds = a.rounds;
    opt.schedule = a.schedule;
    opt.penalty = a.penalty;
    return opt;
}

Distribution load_distribution(const std::string& path) {
    return parse_distribution(read_file(path));
}

int cmd_metrics(const std::string& kind, const std::string& a_path,
                const std::string& b_path, double beta,
                const std::string& preset, const std::string& xgrid) {
    const Distribution a = load_distribution(a_path);
    const Distribution b = load_distribution(b_path);
    const DiscreteDistribution* da = as_discrete(a);
    const DiscreteDistribution* db = as_discrete(b);

    double v = 0.0;
    if (kind == "mi") {
        if (preset.empty() || xgrid.empty()) {
            throw ConfigError(
                {"--kind mi needs --preset (for the integrands) and --xgrid"});
        }
        v = minimal_information(preset_problem(preset), a, b,
                                parse_points(xgrid, "--xgrid"));
    } else if (kind == "w1") {
        if (da && db) {
            v = wasserstein1(*da, *db);
        } else if (da && as_uniform(b)) {
            v = wasserstein1(*da, *as_uniform(b));
        } else if (db && as_uniform(a)) {
            v = wasserstein1(*db, *as_uniform(a));
        } else {
            throw ConfigError(
                {"--kind w1 needs at least one finite-support distribution"});
        }
    } else {
        if (!da || !db) {
            throw ConfigError({"--kind " + kind +
                               " needs two finite-support distributions"});
        }
        if (kind == "tv") v = total_variation(*da, *db);
        else if (kind == "bl") v = bounded_lipschitz(*da, *db);
        else if (kind == "fm") v = fortet_mourier(*da, *db, beta);
        else v = kl_divergence(*da, *db);  // "kl"
    }
    std::printf("%.17g\n", v);
    return 0;
}

int cmd_epi_dist(const std::string& preset, long nu, double alpha, double lam,
                 const std::string& penalty, std::uint64_t seed,
                 std::pair<double, double> box, int resolution, double rho) {
    const CompositeProblem pb = preset_problem(preset);
    const Distribution base = preset_base(preset);
    const Distribution approx{preset_approximation(preset, nu, seed)};
    Penalty pen;
    pen.tag = penalty == "separable-power" ? Penalty::Tag::separable_power
                                           : Penalty::Tag::euclidean_power;
    pen.alpha = alpha;
    pen.lambda = lam;

    EpiDistanceSpec spec;
    spec.box.assign(pb.m + pb.n, {box.first, box.second});
    spec.resolution = resolution;
    spec.rho = rho;

    const std::size_t m = pb.m;
    const GridFunction f_true = [&](std::span<const double> p) {
        return eval_rockafellian(pb, base, p.subspan(0, m), p.subspan(m));
    };
    const GridFunction f_nu = [&](std::span<const double> p) {
        return eval_approx_rockafellian(pb, approx, {}, pen, p.subspan(0, m),
                                        p.subspan(m));
    };
    std::printf("%.17g\n", epi_distance_estimate(f_true, f_nu, spec));
    return 0;
}

int cmd_content(const std::string& preset, long nu, std::uint64_t seed,
                std::size_t constraint, double x, const std::string& eps_text) {
    const ChanceProblem cp = preset_chance_problem(preset);
    if (constraint >= cp.constraints.size()) {
        throw ConfigError({"--constraint out of range: the preset has " +
                           std::to_string(cp.constraints.size()) +
                           " constraint(s)"});
    }
    const Distribution mu =
        nu > 0 ? Distribution{preset_approximation(preset, nu, seed)}
               : preset_base(preset);
    const std::vector<double> eps = parse_csv_doubles(eps_text, "--eps");
    const std::vector<double> xv{x};
    const std::vector<double> vals =
        minkowski_content(mu, cp.constraints[constraint].H, xv, eps);
    for (std::size_t k = 0; k < vals.size(); ++k) {
        std::printf("eps=%.17g content=%.17g\n", eps[k], vals[k]);
    }
    return 0;
}

int cmd_probe_kappa(const std::string& preset, long nu, std::uint64_t seed,
                    const std::string& samples_text,
                    std::pair<double, double> box, int resolution) {
    const ChanceProblem cp = preset_chance_problem(preset);
    const Distribution mu =
        nu > 0 ? Distribution{preset_approximation(preset, nu, seed)}
               : preset_base(preset);
    GridSpec grid;
    grid.box.assign(cp.n, {box.first, box.second});
    grid.resolution = resolution;
    const std::vector<std::vector<double>> samples =
        parse_points(samples_text, "--samples");
    const ProbeResult pr = subregularity_probe(cp, mu, samples, grid);
    for (std::size_t k = 0; k < pr.ratios.size(); ++k) {
        std::printf("sample %zu: ratio %.17g\n", k, pr.ratios[k]);
    }
    std::printf("kappa %.17g (%zu feasible grid points)\n", pr.kappa,
                pr.feasible_grid_points);
    return 0;
}

int cmd_validate_schedule(const std::string& tag, double alpha,
                          const std::string& d_text,
                          const std::string& nus_text) {
    std::vector<double> d;
    std::vector<long> nus;
    if (!d_text.empty()) d = parse_csv_doubles(d_text, "--d");
    if (!nus_text.empty()) nus = parse_csv_longs(nus_text, "--nus");

    Schedule s;
    if (tag == "inv-nu" || tag == "inv-sqrt-nu" || tag == "inv-log" ||
        tag == "empirical") {
        if (nus.empty())
            throw ConfigError({"schedule '" + tag + "' needs --nus"});
        if (tag == "empirical") s = schedule_empirical(nus, alpha);
        else if (tag == "inv-nu") s = schedule_explicit(nus, ExplicitKind::inv_nu, alpha);
        else if (tag == "inv-sqrt-nu") s = schedule_explicit(nus, ExplicitKind::inv_sqrt_nu, alpha);
        else s = schedule_explicit(nus, ExplicitKind::inv_log, alpha);
    } else {
        if (d.empty()) throw ConfigError({"schedule '" + tag + "' needs --d"});
        if (tag == "bl") s = schedule_bl(d, alpha);
        else if (tag == "fm") s = schedule_fm(d, alpha);
        else if (tag == "mi") s = schedule_mi(d, alpha);
        else if (tag == "tv") s = schedule_tv(d, alpha);
        else if (tag == "kl") s = schedule_kl(d, alpha);
        else if (tag == "mi-rate") s = schedule_mi_rate(d, alpha);
        else if (tag == "rate-s2") s = schedule_rate_s2(d, alpha);
        else if (tag.rfind("power:", 0) == 0) {
            s = schedule_power(d, std::stod(tag.substr(6)), alpha);
        } else {
            throw ConfigError({"unknown schedule '" + tag + "'"});
        }
    }

    const ValidationReport rep = validate_schedule(s, d, nus);
    for (const auto& c : rep.conditions) {
        std::printf("[%s] %s: first %.6g, last %.6g\n",
                    c.status == "pass" ? "ok"
                                       : (c.status == "vacuous" ? "vacuous" : "FAIL"),
                    c.name.c_str(), c.first, c.last);
    }
    std::printf("%s over horizon %zu\n",
                rep.all_ok() ? "schedule conditions hold" : "schedule conditions FAIL",
                rep.horizon);
    return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rockrelax: penalized relaxations of expectation-constrained and "
        "probabilistically constrained problems under changing distributions"};
    app.require_subcommand(1);

    // run-example ------------------------------------------------------------
    auto* run = app.add_subcommand(
        "run-example", "Run a study preset over its approximation levels");
    std::string run_preset_name;
    run->add_option("preset", run_preset_name, "preset name (see --help-all)")
        ->required();
    RunArgs run_args;
    add_run_options(run, run_args);

    // solve ------------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Run a study from a JSON config");
    std::string config_path;
    solve->add_option("--config", config_path, "path to the JSON configuration")
        ->required();

    // metrics ----------------------------------------------------------------
    auto* met = app.add_subcommand(
        "metrics", "Distance between two distribution files");
    std::string met_kind, met_a, met_b, met_preset, met_xgrid;
    double met_beta = 2.0;
    met->add_option("--kind", met_kind, "tv | w1 | bl | fm | mi | kl")
        ->required()
        ->check(CLI::IsMember({"tv", "w1", "bl", "fm", "mi", "kl"}));
    met->add_option("--a", met_a, "first distribution file")->required();
    met->add_option("--b", met_b, "second distribution file")->required();
    met->add_option("--beta", met_beta, "growth order for --kind fm (>= 1)")
        ->check(CLI::Range(1.0, 16.0));
    met->add_option("--preset", met_preset,
                    "preset whose integrands define --kind mi");
    met->add_option("--xgrid", met_xgrid,
                    "decision grid for --kind mi: points ';'-separated, "
                    "coordinates ','-separated");

    // rate -------------------------------------------------------------------
    auto* rate = app.add_subcommand(
        "rate", "Run a convergence-rate study (probabilistic constraints)");
    std::string rate_setting;
    rate->add_option("--setting", rate_setting, "s1 (exact shortfalls) or s2 "
                                                "(envelope smoothing)")
        ->required()
        ->check(CLI::IsMember({"s1", "s2"}));
    RunArgs rate_args;
    add_run_options(rate, rate_args);

    // epi-dist ---------------------------------------------------------------
    auto* epi = app.add_subcommand(
        "epi-dist", "Grid-certified epigraphical distance between the exact "
                    "and the penalized objective of a preset");
    std::string epi_preset, epi_penalty = "euclidean-power";
    long epi_nu = 0;
    double epi_alpha = 1.0, epi_lam = 0.0, epi_rho = 2.0;
    std::uint64_t epi_seed = 1;
    std::pair<double, double> epi_box{-2.0, 2.0};
    int epi_res = 201;
    epi->add_option("--preset", epi_preset, "preset name")->required();
    epi->add_option("--nu", epi_nu, "approximation level")->required()
        ->check(CLI::PositiveNumber);
    epi->add_option("--alpha", epi_alpha, "penalty exponent")
        ->check(CLI::Range(1.0, 64.0));
    epi->add_option("--lam", epi_lam, "penalty scale lambda (> 0)")
        ->required()
        ->check(CLI::PositiveNumber);
    epi->add_option("--penalty", epi_penalty,
                    "euclidean-power or separable-power")
        ->check(CLI::IsMember({"euclidean-power", "separable-power"}));
    epi->add_option("--seed", epi_seed, "RNG seed for sampling presets");
    epi->add_option("--box", epi_box, "per-axis bounds of the (u, x) grid");
    epi->add_option("--resolution", epi_res, "grid nodes per axis")
        ->check(CLI::Range(3, 4001));
    epi->add_option("--rho", epi_rho, "localization radius")
        ->check(CLI::PositiveNumber);

    // content ----------------------------------------------------------------
    auto* con = app.add_subcommand(
        "content", "Outer Minkowski content estimates of a constraint set "
                   "boundary under the preset's distribution");
    std::string con_preset, con_eps = "0.5,0.25,0.125,0.0625";
    long con_nu = 0;
    std::uint64_t con_seed = 1;
    std::size_t con_idx = 0;
    double con_x = 0.0;
    con->add_option("--preset", con_preset, "rate-s1 or rate-s2")->required();
    con->add_option("--x", con_x, "decision at which the set is realized")
        ->required();
    con->add_option("--nu", con_nu,
                    "approximation level (0 = true distribution)");
    con->add_option("--seed", con_seed, "RNG seed for sampling presets");
    con->add_option("--constraint", con_idx, "constraint index");
    con->add_option("--eps", con_eps, "comma-separated enlargement ladder");

    // probe-kappa ------------------------------------------------------------
    auto* probe = app.add_subcommand(
        "probe-kappa", "Empirical metric-subregularity modulus of the "
                       "probabilistic constraint map");
    std::string probe_preset, probe_samples;
    long probe_nu = 0;
    std::uint64_t probe_seed = 1;
    std::pair<double, double> probe_box{0.0, 2.0};
    int probe_res = 41;
    probe->add_option("--preset", probe_preset, "rate-s1 or rate-s2")->required();
    probe->add_option("--samples", probe_samples,
                      "sample decisions: points ';'-separated, coordinates "
                      "','-separated")
        ->required();
    probe->add_option("--nu", probe_nu,
                      "approximation level (0 = true distribution)");
    probe->add_option("--seed", probe_seed, "RNG seed for sampling presets");
    probe->add_option("--box", probe_box, "bounds of the reference grid");
    probe->add_option("--resolution", probe_res, "reference grid nodes per axis")
        ->check(CLI::Range(3, 100001));

    // validate-schedule -------------------------------------------------------
    auto* val = app.add_subcommand(
        "validate-schedule", "Check the convergence conditions of a schedule "
                             "over explicit distances or levels");
    std::string val_tag, val_d, val_nus;
    double val_alpha = 1.0;
    val->add_option("--schedule", val_tag, "schedule tag")->required();
    val->add_option("--alpha", val_alpha, "penalty exponent")
        ->check(CLI::Range(1.0, 64.0));
    val->add_option("--d", val_d, "comma-separated distance column");
    val->add_option("--nus", val_nus, "comma-separated approximation levels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the parse error to stderr
        return 2;
    }

    try {
        if (run->parsed()) {
            return emit_report(
                run_preset(run_preset_name, to_preset_options(run_args)),
                run_args.out, run_args.check);
        }
        if (solve->parsed()) {
            const RunConfig cfg = parse_run_config(read_file(config_path));
            return emit_report(run_preset(cfg.preset, to_options(cfg)),
                               cfg.out.value_or(""), cfg.check.value_or(false));
        }
        if (met->parsed()) {
            return cmd_metrics(met_kind, met_a, met_b, met_beta, met_preset,
                               met_xgrid);
        }
        if (rate->parsed()) {
            return emit_report(
                run_preset("rate-" + rate_setting, to_preset_options(rate_args)),
                rate_args.out, rate_args.check);
        }
        if (epi->parsed()) {
            return cmd_epi_dist(epi_preset, epi_nu, epi_alpha, epi_lam,
                                epi_penalty, epi_seed, epi_box, epi_res, epi_rho);
        }
        if (con->parsed()) {
            return cmd_content(con_preset, con_nu, con_seed, con_idx, con_x,
                               con_eps);
        }
        if (probe->parsed()) {
            return cmd_probe_kappa(probe_preset, probe_nu, probe_seed,
                                   probe_samples, probe_box, probe_res);
        }
        if (val->parsed()) {
            return cmd_validate_schedule(val_tag, val_alpha, val_d, val_nus);
        }
    } catch (const ConfigError& ex) {
        std::fprintf(stderr, "%s\n", ex.what());
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
