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
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "rockrelax/config.hpp"
#include "rockrelax/distributions.hpp"

using namespace rockrelax;

namespace {

struct CmdResult {
    int status = -1;
    std::string output;  // stdout and stderr interleaved
};

std::string cli_path() {
    const char* exe = std::getenv("ROCKRELAX_CLI_PATH");
    REQUIRE_MESSAGE(exe != nullptr, "ROCKRELAX_CLI_PATH must point at the CLI");
    return exe;
}

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" +
                      cli_path() + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
        res.output.append(buf, n);
        if (n < sizeof buf) break;
    }
    const int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
    const std::filesystem::path p = temp_file(name);
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << content;
    REQUIRE(f.good());
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string quoted(const std::filesystem::path& p) {
    return "\"" + p.string() + "\"";
}

}  // namespace

TEST_SUITE("config_cli") {

TEST_CASE("a minimal config parses and keeps preset defaults") {
    RunConfig cfg = parse_run_config(R"({"preset": "finite-i"})");
    CHECK(cfg.preset == "finite-i");
    CHECK(!cfg.horizon);
    CHECK(!cfg.seed);
    CHECK(!cfg.alpha);
    CHECK(!cfg.rounds);
    CHECK(!cfg.schedule);
    CHECK(!cfg.penalty);
    CHECK(!cfg.out);
    CHECK(!cfg.check);

    PresetOptions opt = to_options(cfg);
    CHECK(opt.horizon == 0);
    CHECK(opt.seed == 1);
    CHECK(opt.alpha == 0.0);
    CHECK(opt.rounds == -1);
    CHECK(opt.schedule.empty());
    CHECK(opt.with_claims);
}

TEST_CASE("every recognized key lands in the options") {
    RunConfig cfg = parse_run_config(R"({
        "preset": "empirical-i", "horizon": 64, "seed": 9, "alpha": 2.5,
        "rounds": 0, "schedule": "empirical", "penalty": "separable-power",
        "out": "r.csv", "check": true
    })");
    CHECK(cfg.horizon == 64);
    CHECK(cfg.seed == 9);
    CHECK(cfg.alpha == 2.5);
    CHECK(cfg.rounds == 0);
    CHECK(cfg.schedule == "empirical");
    CHECK(cfg.penalty == "separable-power");
    CHECK(cfg.out == "r.csv");
    CHECK(cfg.check == true);

    PresetOptions opt = to_options(cfg);
    CHECK(opt.horizon == 64);
    CHECK(opt.seed == 9);
    CHECK(opt.alpha == 2.5);
    CHECK(opt.rounds == 0);  // an explicit zero overrides the -1 default
    CHECK(opt.schedule == "empirical");
    CHECK(opt.penalty == "separable-power");
}

TEST_CASE("serialization round-trips a config exactly") {
    for (const char* text :
         {R"({"preset": "finite-i"})",
          R"({"preset": "rate-s2", "horizon": 32, "alpha": 3.0,
              "schedule": "power:0.1", "check": false})",
          R"({"preset": "empirical-i", "seed": 12345, "rounds": 7,
              "penalty": "euclidean-power", "out": "a.json"})"}) {
        CAPTURE(text);
        RunConfig cfg = parse_run_config(text);
        RunConfig again = parse_run_config(serialize_run_config(cfg));
        CHECK(again.preset == cfg.preset);
        CHECK(again.horizon == cfg.horizon);
        CHECK(again.seed == cfg.seed);
        CHECK(again.alpha == cfg.alpha);
        CHECK(again.rounds == cfg.rounds);
        CHECK(again.schedule == cfg.schedule);
        CHECK(again.penalty == cfg.penalty);
        CHECK(again.out == cfg.out);
        CHECK(again.check == cfg.check);
    }
}

TEST_CASE("every problem in a config is reported in one throw") {
    const std::string text = R"({
        "preset": "nope", "horizon": 1, "alpha": 0.5, "rounds": 99,
        "penalty": "bogus", "out": "x.txt", "check": "yes", "junk": 1
    })";
    try {
        parse_run_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(ex.problems().size() == 8);
        const std::string what = ex.what();
        CHECK(what.find("configuration has 8 problems") != std::string::npos);
        CHECK(what.find("unknown preset 'nope'") != std::string::npos);
        CHECK(what.find("'alpha' must be") != std::string::npos);
        CHECK(what.find("unknown key 'junk'") != std::string::npos);
        CHECK(what.find("'out' must be a path ending in .json or .csv") !=
              std::string::npos);
    }
}

TEST_CASE("structural config errors are rejected with clear messages") {
    CHECK_THROWS_WITH_AS(parse_run_config("{oops"),
                         doctest::Contains("not valid JSON"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config("[1, 2]"),
                         doctest::Contains("must be a JSON object"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_run_config("{}"),
                         doctest::Contains("'preset' is required"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_run_config(
            R"({"preset": "finite-i", "distribution": {"uniform": [0, 1]}})"),
        doctest::Contains("conflicts with 'preset'"), ConfigError);
}

TEST_CASE("schedule tags are validated inside configs") {
    CHECK(parse_run_config(R"({"preset": "finite-i", "schedule": "mi"})")
              .schedule == "mi");
    CHECK(parse_run_config(R"({"preset": "finite-i", "schedule": "power:0.5"})")
              .schedule == "power:0.5");
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"preset": "finite-i", "schedule": "power:0"})"),
        doctest::Contains("must be a positive number"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"preset": "finite-i", "schedule": "power:x"})"),
        doctest::Contains("must be a positive number"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_run_config(R"({"preset": "finite-i", "schedule": "zeta"})"),
        doctest::Contains("unknown schedule"), ConfigError);
}

TEST_CASE("distribution files cover finite support and uniform laws") {
    Distribution d = parse_distribution(
        R"({"atoms": [[1.0], [0.0]], "weights": [0.25, 0.75]})");
    const DiscreteDistribution* da = as_discrete(d);
    REQUIRE(da != nullptr);
    REQUIRE(da->size() == 2);
    CHECK(da->atoms[0][0] == 0.0);  // sorted on parse
    CHECK(da->weights[0] == 0.75);

    Distribution u = parse_distribution(R"({"uniform": [2.0, 5.0]})");
    const Uniform1D* uu = as_uniform(u);
    REQUIRE(uu != nullptr);
    CHECK(uu->lower == 2.0);
    CHECK(uu->upper == 5.0);

    CHECK_THROWS_WITH_AS(parse_distribution(R"({"uniform": [5, 2]})"),
                         doctest::Contains("lo < hi"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_distribution(
            R"({"uniform": [0, 1], "atoms": [[0]], "weights": [1]})"),
        doctest::Contains("conflicts"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_distribution(R"({"atoms": [[0]], "weights": [1], "junk": 2})"),
        doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_distribution(R"({"atoms": [["a"]], "weights": [1]})"),
        doctest::Contains("numbers"), ConfigError);
    CHECK_THROWS_AS(parse_distribution(R"({"atoms": [[0]], "weights": [0]})"),
                    ConfigError);  // degenerate weights from the constructor
    CHECK_THROWS_AS(parse_distribution("{}"), ConfigError);
}

TEST_CASE("cli: usage errors exit 2, help exits 0") {
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("--help").output.find("rockrelax") != std::string::npos);
    CHECK(run_cli("").status == 2);  // a subcommand is required
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("run-example finite-i --alpha 0.5").status == 2);  // below 1

    CmdResult bad = run_cli("run-example nope");
    CHECK(bad.status == 2);
    CHECK(bad.output.find("unknown preset") != std::string::npos);
}

TEST_CASE("cli: run-example emits a parseable report and honors --check") {
    CmdResult ok = run_cli("run-example finite-i --horizon 8");
    REQUIRE(ok.status == 0);
    nlohmann::json j = nlohmann::json::parse(ok.output);
    CHECK(j["preset"] == "finite-i");
    CHECK(j["runs"][0]["rows"].size() == 8);

    CHECK(run_cli("run-example finite-i --horizon 8 --check").status == 0);
    // Too short a horizon to converge: claims fail, --check turns that into 1.
    CmdResult fail = run_cli("run-example finite-ii --horizon 8 --check");
    CHECK(fail.status == 1);
    CHECK(run_cli("run-example finite-ii --horizon 8").status == 0);
}

TEST_CASE("cli: solve reads configs, writes reports, propagates check") {
    const std::filesystem::path out = temp_file("rockrelax_cli_solve.json");
    std::filesystem::remove(out);
    const std::filesystem::path cfg = write_temp(
        "rockrelax_cli_cfg.json",
        std::string(R"({"preset": "finite-i", "horizon": 8, "check": true,)") +
            R"( "out": ")" + out.string() + R"("})");

    CmdResult res = run_cli("solve --config " + quoted(cfg));
    REQUIRE(res.status == 0);
    CHECK(res.output.find("wrote ") != std::string::npos);
    CHECK(res.output.find("[ok] plugin-infeasible") != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["preset"] == "finite-i");

    const std::filesystem::path failing = write_temp(
        "rockrelax_cli_cfg_fail.json",
        R"({"preset": "finite-ii", "horizon": 8, "check": true})");
    CHECK(run_cli("solve --config " + quoted(failing)).status == 1);

    const std::filesystem::path invalid =
        write_temp("rockrelax_cli_cfg_bad.json", "{oops");
    CmdResult bad = run_cli("solve --config " + quoted(invalid));
    CHECK(bad.status == 2);
    CHECK(bad.output.find("not valid JSON") != std::string::npos);

    CHECK(run_cli("solve --config /nonexistent/rockrelax.json").status == 2);

    std::filesystem::remove(out);
    std::filesystem::remove(cfg);
    std::filesystem::remove(failing);
    std::filesystem::remove(invalid);
}

TEST_CASE("cli: metrics computes distances between distribution files") {
    const std::filesystem::path fa =
        write_temp("rockrelax_cli_da.json", R"({"atoms": [[0]], "weights": [1]})");
    const std::filesystem::path fb =
        write_temp("rockrelax_cli_db.json", R"({"atoms": [[1]], "weights": [1]})");

    CmdResult w1 = run_cli("metrics --kind w1 --a " + quoted(fa) + " --b " +
                           quoted(fb));
    REQUIRE(w1.status == 0);
    CHECK(std::stod(w1.output) == 1.0);

    CmdResult tv = run_cli("metrics --kind tv --a " + quoted(fa) + " --b " +
                           quoted(fb));
    REQUIRE(tv.status == 0);
    CHECK(std::stod(tv.output) == 2.0);

    // Support violation makes the divergence infinite; it prints as "inf".
    const std::filesystem::path fc = write_temp(
        "rockrelax_cli_dc.json", R"({"atoms": [[0], [1]], "weights": [0.5, 0.5]})");
    CmdResult kl = run_cli("metrics --kind kl --a " + quoted(fc) + " --b " +
                           quoted(fa));
    REQUIRE(kl.status == 0);
    CHECK(kl.output.find("inf") != std::string::npos);

    // The problem-adapted distance needs its integrands and a decision grid.
    CmdResult miss = run_cli("metrics --kind mi --a " + quoted(fa) + " --b " +
                             quoted(fb));
    CHECK(miss.status == 2);
    CHECK(miss.output.find("--xgrid") != std::string::npos);
    CmdResult mi = run_cli("metrics --kind mi --a " + quoted(fa) + " --b " +
                           quoted(fb) + " --preset finite-i --xgrid 0");
    CHECK(mi.status == 0);

    CHECK(run_cli("metrics --kind w1 --a /nope.json --b " + quoted(fb)).status ==
          2);

    std::filesystem::remove(fa);
    std::filesystem::remove(fb);
    std::filesystem::remove(fc);
}

TEST_CASE("cli: rate study reports the fitted exponent") {
    CmdResult res = run_cli("rate --setting s1 --horizon 16");
    REQUIRE(res.status == 0);
    nlohmann::json j = nlohmann::json::parse(res.output);
    CHECK(j["preset"] == "rate-s1");
    REQUIRE(j.contains("fit"));
    CHECK(std::abs(j["fit"]["slope"].get<double>() - 0.5) <= 1e-9);

    CHECK(run_cli("rate --setting s3").status == 2);  // not s1/s2
}

TEST_CASE("cli: epi-dist reproduces the certified library estimate") {
    char lam[40];
    std::snprintf(lam, sizeof lam, "%.17g", std::pow(6.0, -2.25));
    CmdResult res = run_cli(std::string("epi-dist --preset finite-i --nu 5 "
                                        "--alpha 3 --lam ") + lam);
    REQUIRE(res.status == 0);
    CHECK(std::stod(res.output) == 0.5);
}

TEST_CASE("cli: content prints the boundary estimates of the rate preset") {
    // The smoothed setting keeps the uniform base law: density 1/2 along the
    // halfline boundary gives unit-free content exactly 1/2 at every scale.
    CmdResult res =
        run_cli("content --preset rate-s2 --x 0.25 --eps 0.125,0.0625");
    REQUIRE(res.status == 0);
    CHECK(res.output.find("eps=0.125 content=0.5") != std::string::npos);
    CHECK(res.output.find("eps=0.0625 content=0.5") != std::string::npos);

    // The observable-rate setting concentrates on two atoms; no mass sits
    // near the boundary until the enlargement reaches the far atom.
    CmdResult atoms =
        run_cli("content --preset rate-s1 --x 0.5 --eps 0.5,0.25");
    REQUIRE(atoms.status == 0);
    CHECK(atoms.output.find("eps=0.5 content=1") != std::string::npos);
    CHECK(atoms.output.find("eps=0.25 content=0") != std::string::npos);
}

TEST_CASE("cli: probe-kappa scores samples against the reference grid") {
    CmdResult res = run_cli("probe-kappa --preset rate-s1 --samples \"0.5;1\"");
    REQUIRE(res.status == 0);
    CHECK(res.output.find("kappa 0 (41 feasible grid points)") !=
          std::string::npos);

    // Outside the objective's box the probe refuses to score.
    CmdResult out = run_cli("probe-kappa --preset rate-s1 --samples=-1");
    CHECK(out.status == 2);
    CHECK(out.output.find("objective domain") != std::string::npos);
}

TEST_CASE("cli: validate-schedule distinguishes pass, fail, and misuse") {
    std::string nus;
    for (int k = 1; k <= 24; ++k) nus += (k > 1 ? "," : "") + std::to_string(k);
    CmdResult ok = run_cli("validate-schedule --schedule inv-nu --nus " + nus);
    REQUIRE(ok.status == 0);
    CHECK(ok.output.find("schedule conditions hold") != std::string::npos);

    std::string d;
    for (int k = 1; k <= 21; ++k) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", 1.0 / k);
        d += (k > 1 ? "," : "") + std::string(buf);
    }
    // lambda = d with alpha = 1 keeps the compensation ratio pinned at 1.
    CmdResult fail = run_cli(
        "validate-schedule --schedule power:1 --alpha 1 --d " + d);
    CHECK(fail.status == 1);
    CHECK(fail.output.find("schedule conditions FAIL") != std::string::npos);

    CmdResult misuse = run_cli("validate-schedule --schedule mi --nus " + nus);
    CHECK(misuse.status == 2);
    CHECK(misuse.output.find("needs --d") != std::string::npos);
}

TEST_CASE("cli: reports are byte-identical across worker counts") {
    const std::filesystem::path f1 = temp_file("rockrelax_cli_w1.json");
    const std::filesystem::path f7 = temp_file("rockrelax_cli_w7.json");
    const std::string args = "run-example empirical-i --horizon 64 --seed 3 --out ";

    CHECK(run_cli(args + quoted(f1), "ROCKRELAX_WORKERS=1").status == 0);
    CHECK(run_cli(args + quoted(f7), "ROCKRELAX_WORKERS=7").status == 0);
    const std::string a = slurp(f1);
    CHECK(!a.empty());
    CHECK(a == slurp(f7));

    std::filesystem::remove(f1);
    std::filesystem::remove(f7);
}

}  // TEST_SUITE
