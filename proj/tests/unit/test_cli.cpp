#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wzborel/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = wzborel::cli::dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

int count_lines(const std::string &s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path scratch_dir()
{
    auto p = std::filesystem::temp_directory_path() / "wzborel_cli_test";
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("exponents prints exact rationals")
{
    auto r = run({"exponents", "--k", "1", "--sign", "-"});
    CHECK(r.code == 0);
    CHECK(r.out == "-5/3\n");
    CHECK(r.err.empty());
    CHECK(run({"exponents", "--k", "4", "--sign", "+"}).out == "2\n");
    const auto j = json::parse(run({"exponents", "--k", "2", "--sign", "-", "--out", "json"}).out);
    CHECK(j["exponent"] == "-2/3");
    CHECK(j["coefficient"] == "-9/10*f_2");
}

TEST_CASE("gamma coefficients")
{
    auto r = run({"gamma", "--order", "2", "--model", "full", "--out", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,coeff\n0,0\n1,1\n2,-2\n");
    const auto j = json::parse(run({"gamma", "--order", "4", "--model", "full"}).out);
    CHECK(j["coefficients"][4]["coeff"] == "-160+16*z3");
    CHECK(j["order"] == 4);
    CHECK(j["source"] == "physical::sd_solve");
    // keys are sorted
    const std::string text = run({"gamma", "--order", "2"}).out;
    CHECK(text.find("\"coefficients\"") < text.find("\"model\""));
    CHECK(text.find("\"model\"") < text.find("\"order\""));
    // the models agree through a^2 and part at a^3
    for (const auto &[model, c3] : std::vector<std::pair<std::string, std::string>>{{"approx", "14"}, {"ode", "12"}}) {
        const auto k = json::parse(run({"gamma", "--order", "3", "--model", model}).out);
        CHECK(k["coefficients"][2]["coeff"] == "-2");
        CHECK(k["coefficients"][3]["coeff"] == c3);
    }
}

TEST_CASE("ray CSV has one row per node")
{
    auto r = run({"ray", "--to", "40,35", "--steps", "6000"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 6002);
    CHECK(r.out.rfind("index,arclength,re_xi,im_xi,re_gamma,im_gamma,re_g,im_g\n", 0) == 0);
    const auto j = json::parse(run({"ray", "--to", "4,3", "--steps", "100", "--out", "json"}).out);
    CHECK(j["steps"] == 100);
    CHECK(j["bounded"] == true);
}

TEST_CASE("exit codes")
{
    auto bad_flag = run({"gamma", "--bogus"});
    CHECK(bad_flag.code == 2);
    CHECK(bad_flag.out.empty());
    CHECK(!bad_flag.err.empty());
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"gamma", "--model", "other"}).code == 2);
    CHECK(run({"exponents", "--k", "1"}).code == 2);
    CHECK(run({"ray", "--to", "1;2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    auto cap = run({"gamma", "--order", "40", "--model", "full"});
    CHECK(cap.code == 1);
    CHECK(cap.out.empty());
    CHECK(run({"ray", "--to=-1,0", "--steps", "300"}).code == 1);
    CHECK(run({"ratios", "--series", "F", "--model", "full"}).code == 1);
}

TEST_CASE("mellin coefficients")
{
    const auto j = json::parse(run({"mellin", "--order", "3"}).out);
    bool found = false;
    for (const auto &t : j["coefficients"]) {
        if (t["m"] == 2 && t["n"] == 1) {
            CHECK(t["coeff"] == "-3+2*z3");
            found = true;
        }
    }
    CHECK(found);
    CHECK(j["coefficients"].size() == 10);
    CHECK(!j.contains("convention"));
    const auto s = json::parse(run({"mellin", "--order", "4", "--subtract", "1"}).out);
    CHECK(s["subtracted_poles"] == 1);
    CHECK(s.contains("convention"));
    CHECK(run({"mellin", "--order", "2", "--out", "csv"}).out.rfind("m,n,coeff\n0,0,1\n", 0) == 0);
}

TEST_CASE("analysis subcommands")
{
    const auto s = json::parse(run({"singularities", "--model", "ode", "--order", "200"}).out);
    CHECK(s["alternating"] == true);
    CHECK(s["location"]["re"].get<double>() == doctest::Approx(-1.0 / 3.0).epsilon(0.01));
    const auto w = json::parse(run({"singularities", "--model", "ode", "--order", "200", "--window", "60,120"}).out);
    CHECK(w["window"] == json::array({60, 120}));

    const auto ratios = run({"ratios", "--model", "approx", "--series", "F", "--law", "-(3n+5)", "--order", "40",
                             "--out", "csv"});
    CHECK(ratios.code == 0);
    CHECK(ratios.out.rfind("n,ratio,predicted,deviation,gap\n", 0) == 0);

    const auto weights = json::parse(run({"weights", "--order", "10"}).out);
    CHECK(weights["drops"] == json::array({1, 2, 4}));
    CHECK(weights["odd_zeta_only"] == true);
}

TEST_CASE("config file, environment and output files")
{
    const auto dir = scratch_dir();
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# comment\norder = 3\nmodel = ode\nout = csv\n";
    }
    auto r = run({"gamma", "--config", cfg.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "n,coeff\n0,0\n1,1\n2,-2\n3,12\n");
    CHECK(run({"gamma", "--config", cfg.string(), "--order", "1"}).out == "n,coeff\n0,0\n1,1\n");

    const auto bad = dir / "bad.cfg";
    {
        std::ofstream f(bad);
        f << "colour = blue\n";
    }
    CHECK(run({"gamma", "--config", bad.string()}).code == 2);

    ::setenv("WZBOREL_OUTPUT_DIR", dir.string().c_str(), 1);
    std::filesystem::remove(dir / "g.csv");
    auto w = run({"gamma", "--order", "2", "--out", "csv", "--file", "g.csv"});
    ::unsetenv("WZBOREL_OUTPUT_DIR");
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    std::ifstream in(dir / "g.csv");
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == "n,coeff\n0,0\n1,1\n2,-2\n");
    CHECK(run({"gamma", "--output-dir", (dir / "missing" / "deeper").string(), "--file", "x.json"}).code == 1);
}

TEST_CASE("report")
{
    int code = -1;
    const auto doc = wzborel::cli::report(wzborel::cli::RunConfig{}, code);
    (void)doc;
    wzborel::cli::RunConfig cfg;
    cfg.order = 8;
    cfg.ray_steps = 200;
    cfg.ratio_order = 60;
    const auto a = wzborel::cli::report(cfg, code);
    CHECK(code == 0);
    for (const std::string section : {"gamma", "ratios", "singularities", "weights", "ray", "invariants"}) {
        INFO(section);
        REQUIRE(a.contains(section));
        CHECK(a[section]["status"] == "ok");
        const bool has_source = a[section].contains("source") || section == "invariants";
        CHECK(has_source);
        const bool has_resolution = a[section].contains("order") || a[section].contains("steps")
                                    || a[section].contains("gamma_order");
        CHECK(has_resolution);
    }
    for (const auto &c : a["invariants"]["checks"]) {
        CHECK(c["passed"] == true);
        CHECK(c.contains("source"));
    }
    CHECK(a["header"]["defaults"]["order"] == 12);
    CHECK(a["header"]["config"]["order"] == 8);
    const auto b = wzborel::cli::report(cfg, code);
    CHECK(a.dump() == b.dump());

    // a failing section is recorded and reflected in the exit code
    cfg.ray_to = {-1.0, 0.0};
    cfg.ray_steps = 300;
    const auto c = wzborel::cli::report(cfg, code);
    CHECK(code == 1);
    CHECK(c["ray"]["status"] == "error");
    CHECK(c["gamma"]["status"] == "ok");
}

TEST_CASE("full-order report through the executable")
{
    const std::string cmd = std::string(WZBOREL_EXE) + " report --order 30 --steps 400 2>/dev/null";
    FILE *pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
        out.append(buf, n);
    }
    const int status = ::pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    const auto j = json::parse(out);
    CHECK(j["gamma"]["order"] == 30);
    CHECK(j["gamma"]["coefficients"].size() == 31);
    for (const auto &c : j["invariants"]["checks"]) {
        CHECK(c["passed"] == true);
    }
}
