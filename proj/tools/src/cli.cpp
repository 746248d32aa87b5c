#include "wzborel/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <locale>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "wzborel/borel.hpp"
#include "wzborel/error.hpp"
#include "wzborel/mellin.hpp"
#include "wzborel/physical.hpp"
#include "wzborel/rayquad.hpp"
#include "wzborel/singular.hpp"

namespace wzborel::cli {

using nlohmann::json;

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

int parse_int(const std::string &key, const std::string &v)
{
    try {
        std::size_t pos = 0;
        const int r = std::stoi(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return r;
    } catch (const std::exception &) {
        throw DomainError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_double(const std::string &key, const std::string &v)
{
    std::istringstream in(v);
    in.imbue(std::locale::classic());
    double r = 0.0;
    in >> r;
    if (in.fail() || !in.eof()) {
        throw DomainError("'" + key + "': expected a number, got '" + v + "'");
    }
    return r;
}

std::pair<double, double> parse_pair(const std::string &key, const std::string &v)
{
    const auto comma = v.find(',');
    if (comma == std::string::npos) {
        throw DomainError("'" + key + "': expected two comma-separated values, got '" + v + "'");
    }
    return {parse_double(key, v.substr(0, comma)), parse_double(key, v.substr(comma + 1))};
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// Plain coefficients of the chosen model, exact text plus numeric value.
struct SeriesData {
    std::string source;
    std::vector<std::string> text;
    std::vector<double> value;
    std::vector<json> terms; // zeta content, full model only
    std::optional<FormalSeries<Rational>> rational;
};

SeriesData gamma_series(Model model, int order, int threads)
{
    SeriesData d;
    if (model == Model::Full) {
        d.source = "physical::sd_solve";
        const auto g = physical::sd_solve(order, {threads});
        for (int n = 0; n <= g.order(); ++n) {
            d.text.push_back(g[n].str());
            d.value.push_back(to_double(g[n]));
            d.terms.push_back(to_json(g[n]));
        }
        return d;
    }
    FormalSeries<Rational> g;
    if (model == Model::Approx) {
        d.source = "physical::approx_solve";
        g = physical::approx_solve(order).gamma;
    } else {
        d.source = "physical::ode_reference";
        g = physical::ode_reference(order);
    }
    for (int n = 0; n <= g.order(); ++n) {
        d.text.push_back(g[n].str());
        d.value.push_back(g[n].to_double());
    }
    d.rational = g;
    return d;
}

SeriesData approx_component(const std::string &which, int order)
{
    const auto sol = physical::approx_solve(order);
    const FormalSeries<Rational> *s = nullptr;
    if (which == "F") {
        s = &sol.F;
    } else if (which == "L") {
        s = &sol.L;
    } else {
        s = &sol.gamma;
    }
    SeriesData d;
    d.source = "physical::approx_solve";
    for (int n = 0; n <= s->order(); ++n) {
        d.text.push_back((*s)[n].str());
        d.value.push_back((*s)[n].to_double());
    }
    d.rational = *s;
    return d;
}

std::vector<physical::RatioRow> ratios_of(const SeriesData &d, const physical::AffineLaw &law)
{
    return d.rational ? physical::ratio_table(*d.rational, law) : physical::ratio_table(d.value, law);
}

json ratio_rows_json(const std::vector<physical::RatioRow> &rows)
{
    json arr = json::array();
    for (const auto &r : rows) {
        json j{{"n", r.n}, {"predicted", r.predicted}, {"gap", r.gap}};
        if (!r.gap) {
            j["ratio"] = r.ratio;
            j["deviation"] = r.deviation;
        }
        arr.push_back(j);
    }
    return arr;
}

singular::SingularityReport singularities_of(Model model, int order, int threads,
                                             std::optional<std::pair<int, int>> window)
{
    if (model == Model::Full) {
        const auto b = borel::borel_map(physical::sd_solve(order, {threads}));
        std::vector<double> v;
        for (int n = 0; n <= b.order(); ++n) {
            v.push_back(to_double(b[n]));
        }
        return singular::domb_sykes(v, window);
    }
    const auto g = model == Model::Approx ? physical::approx_solve(order).gamma : physical::ode_reference(order);
    return singular::domb_sykes(borel::borel_map(g).series(), window);
}

json singularity_json(const singular::SingularityReport &r, Model model, int order)
{
    return json{{"source", "singular::domb_sykes"},
                {"model", to_string(model)},
                {"order", order},
                {"plane", "borel"},
                {"window", {r.n_min, r.n_max}},
                {"location", complex_json(r.location)},
                {"exponent", r.exponent},
                {"alternating", r.alternating},
                {"nearest", r.alternating ? "negative axis" : "positive axis"},
                {"residuals", r.residuals}};
}

json weight_json(const singular::WeightAudit &a, int order)
{
    json rows = json::array();
    for (const auto &r : a.rows) {
        rows.push_back(json{{"p", r.p}, {"w", r.w.str()}, {"drop", r.drop}});
    }
    return json{{"source", "singular::weight_audit"},
                {"gamma_order", order},
                {"indexing", "borel coefficients c_p = [B gamma]_p"},
                {"rows", rows},
                {"drops", a.drops},
                {"odd_zeta_only", a.odd_zeta_only}};
}

json ray_stats_json(const rayquad::Ray &ray, const rayquad::RaySolution &sol)
{
    const auto st = rayquad::boundedness(sol);
    return json{{"source", "rayquad::solve_ray"},
                {"endpoint", complex_json(ray.endpoint)},
                {"steps", ray.steps},
                {"h", complex_json(sol.h)},
                {"scheme", sol.scheme},
                {"max_corrector_iterations", sol.max_corrector_iterations},
                {"global_max", st.global_max},
                {"argmax", st.argmax},
                {"head_max", st.head_max},
                {"tail_max", st.tail_max},
                {"bounded", st.bounded},
                {"final", {{"gamma", complex_json(sol.samples.back().gamma)}, {"g", complex_json(sol.samples.back().g)}}}};
}

// Writes to the named file under the output directory, or to `out` when no file is given.
class Sink {
public:
    Sink(const RunConfig &cfg, const std::string &file, std::ostream &out) : out_(&out)
    {
        if (file.empty()) {
            return;
        }
        std::filesystem::path p(file);
        if (p.is_relative()) {
            p = std::filesystem::path(cfg.output_dir) / p;
        }
        file_ = std::make_unique<std::ofstream>(p);
        if (!*file_) {
            throw DomainError("cannot write " + p.string());
        }
        file_->imbue(std::locale::classic());
        out_ = file_.get();
    }
    std::ostream &stream() { return *out_; }

private:
    std::ostream *out_;
    std::unique_ptr<std::ofstream> file_;
};

std::string find_config_arg(const std::vector<std::string> &args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return {};
}

} // namespace

Model parse_model(const std::string &s)
{
    if (s == "full") {
        return Model::Full;
    }
    if (s == "approx") {
        return Model::Approx;
    }
    if (s == "ode") {
        return Model::Ode;
    }
    throw DomainError("unknown model '" + s + "' (full, approx, ode)");
}

std::string to_string(Model m)
{
    switch (m) {
    case Model::Full:
        return "full";
    case Model::Approx:
        return "approx";
    case Model::Ode:
        return "ode";
    }
    return "full";
}

Format parse_format(const std::string &s)
{
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    throw DomainError("unknown output format '" + s + "' (csv, json)");
}

std::map<std::string, std::string> read_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot read config file " + path);
    }
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(RunConfig &cfg, const std::map<std::string, std::string> &kv)
{
    for (const auto &[k, v] : kv) {
        if (k == "order") {
            cfg.order = parse_int(k, v);
        } else if (k == "model") {
            cfg.model = parse_model(v);
        } else if (k == "out" || k == "format") {
            cfg.format = parse_format(v);
        } else if (k == "output_dir") {
            cfg.output_dir = v;
        } else if (k == "ray_to" || k == "to") {
            const auto [re, im] = parse_pair(k, v);
            cfg.ray_to = {re, im};
        } else if (k == "ray_steps" || k == "steps") {
            cfg.ray_steps = parse_int(k, v);
        } else if (k == "ray_delta" || k == "delta") {
            cfg.ray_delta = parse_double(k, v);
        } else if (k == "taylor_boot") {
            cfg.taylor_boot = parse_int(k, v);
        } else if (k == "ratio_order") {
            cfg.ratio_order = parse_int(k, v);
        } else if (k == "window") {
            const auto [a, b] = parse_pair(k, v);
            cfg.window = std::pair<int, int>{static_cast<int>(a), static_cast<int>(b)};
        } else if (k == "law") {
            cfg.law = v;
        } else if (k == "seed") {
            cfg.seed = static_cast<unsigned long>(parse_int(k, v));
        } else if (k == "threads") {
            cfg.threads = parse_int(k, v);
        } else {
            throw DomainError("unknown config key '" + k + "'");
        }
    }
}

json report(const RunConfig &cfg, int &exit_code)
{
    exit_code = 0;
    const RunConfig defaults;
    json doc;
    doc["header"] = json{
        {"tool", "wzborel"},
        {"defaults",
         {{"order", defaults.order},
          {"model", to_string(defaults.model)},
          {"ray_to", complex_json(defaults.ray_to)},
          {"ray_steps", defaults.ray_steps},
          {"ray_delta", defaults.ray_delta},
          {"ratio_order", defaults.ratio_order},
          {"window", "(N/2, N)"},
          {"seed", defaults.seed},
          {"threads", defaults.threads}}},
        {"config",
         {{"order", cfg.order},
          {"model", to_string(cfg.model)},
          {"ray_to", complex_json(cfg.ray_to)},
          {"ray_steps", cfg.ray_steps},
          {"ray_delta", cfg.ray_delta},
          {"ratio_order", cfg.ratio_order},
          {"seed", cfg.seed},
          {"threads", cfg.threads}}}};

    const auto section = [&](const std::string &name, const std::function<json()> &body) {
        try {
            json s = body();
            s["status"] = "ok";
            doc[name] = std::move(s);
        } catch (const std::exception &e) {
            doc[name] = json{{"status", "error"}, {"message", e.what()}};
            exit_code = std::max(exit_code, 1);
        }
    };

    std::optional<FormalSeries<ZetaPoly>> full_cache;
    const auto full_gamma = [&](int n) -> const FormalSeries<ZetaPoly> & {
        if (!full_cache || full_cache->order() != n) {
            full_cache = physical::sd_solve(n, {cfg.threads});
        }
        return *full_cache;
    };

    section("gamma", [&] {
        const auto d = gamma_series(cfg.model, cfg.order, cfg.threads);
        return json{{"source", d.source}, {"model", to_string(cfg.model)}, {"order", cfg.order},
                    {"coefficients", d.text}};
    });
    section("ratios", [&] {
        json out{{"source", "physical::ratio_table"}, {"order", cfg.ratio_order}};
        const auto ode = gamma_series(Model::Ode, cfg.ratio_order, cfg.threads);
        out["ode_gamma"] = json{{"law", "-(3n+2)"},
                                {"rows", ratio_rows_json(ratios_of(ode, physical::AffineLaw::parse("-(3n+2)")))}};
        out["approx_F"] = json{{"law", "-(3n+5)"},
                               {"rows", ratio_rows_json(ratios_of(approx_component("F", cfg.ratio_order),
                                                                  physical::AffineLaw::parse("-(3n+5)")))}};
        out["approx_L"] = json{{"law", "3n"},
                               {"rows", ratio_rows_json(ratios_of(approx_component("L", cfg.ratio_order),
                                                                  physical::AffineLaw::parse("3n")))}};
        return out;
    });
    section("singularities", [&] {
        return singularity_json(singularities_of(Model::Ode, cfg.ratio_order, cfg.threads, cfg.window), Model::Ode,
                                cfg.ratio_order);
    });
    section("weights", [&] {
        const int n = std::max(2, cfg.order);
        return weight_json(singular::weight_audit(full_gamma(n)), n);
    });
    section("ray", [&] {
        const rayquad::Ray ray{cfg.ray_to, cfg.ray_steps, cfg.ray_delta};
        return ray_stats_json(ray, rayquad::solve_ray(ray, {cfg.taylor_boot}));
    });
    section("invariants", [&] {
        json checks = json::array();
        const auto add = [&](const std::string &name, const std::string &source, bool ok) {
            checks.push_back(json{{"name", name}, {"source", source}, {"passed", ok}});
            if (!ok) {
                exit_code = std::max(exit_code, 1);
            }
        };
        const int n = std::max(2, cfg.order);
        const auto h = mellin::h_taylor(n - 1);
        add("kernel symmetry h_{m,n} = h_{n,m}", "mellin::h_taylor", h.is_symmetric());
        const auto &g = full_gamma(n);
        add("gamma is a fixed point of the Schwinger-Dyson map", "physical::sd_rhs", physical::sd_rhs(g, h) == g);
        const auto ap = physical::approx_solve(n);
        const auto od = physical::ode_reference(n);
        add("full, approx and ode agree through a^2", "physical",
            g[1] == ZetaPoly(ap.gamma[1]) && g[2] == ZetaPoly(ap.gamma[2]) && od[1] == ap.gamma[1]
                && od[2] == ap.gamma[2]);
        add("three-equation L equals 2 L_1", "physical::lk_tower",
            physical::lk_tower(1, ap.gamma, n, physical::Normalization::ThreeEquation) == ap.L);
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<int> dist(-9, 9);
        bool morphism = true;
        for (int trial = 0; trial < 20; ++trial) {
            FormalSeries<Rational> f(12);
            FormalSeries<Rational> k(12);
            for (int i = 1; i <= 12; ++i) {
                f[i] = Rational(dist(rng), 1 + std::abs(dist(rng)));
                k[i] = Rational(dist(rng), 1 + std::abs(dist(rng)));
            }
            const auto lhs = borel::borel_map(f * k);
            const auto rhs = borel::borel_convolve(borel::borel_map(f), borel::borel_map(k));
            morphism = morphism && lhs.series().truncated(rhs.order()) == rhs.series().truncated(lhs.order());
        }
        add("Borel transform maps products to convolutions (20 seeded trials)", "borel::borel_convolve", morphism);
        return json{{"order", n}, {"seed", cfg.seed}, {"checks", checks}};
    });
    return doc;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    try {
        if (const char *env = std::getenv("WZBOREL_OUTPUT_DIR"); env && *env) {
            cfg.output_dir = env;
        }
        if (const auto path = find_config_arg(args); !path.empty()) {
            apply_config(cfg, read_config_file(path));
        }
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Borel-plane toolkit for the Wess-Zumino anomalous dimension", "wzborel"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--threads", cfg.threads, "worker threads for deterministic parallel paths")
        ->check(CLI::PositiveNumber);
    app.add_option("--output-dir", cfg.output_dir, "directory for --file outputs (env WZBOREL_OUTPUT_DIR)");

    std::string model = to_string(cfg.model);
    std::string format = cfg.format == Format::Csv ? "csv" : "json";
    std::string file;
    const auto model_opt = [&](CLI::App *sub) {
        sub->add_option("--model", model, "full, approx or ode")->check(CLI::IsMember({"full", "approx", "ode"}));
    };
    const auto format_opt = [&](CLI::App *sub) {
        sub->add_option("--out", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--file", file, "write to this file (relative to the output directory)");
    };

    auto *gamma = app.add_subcommand("gamma", "coefficients of the anomalous dimension");
    gamma->add_option("--order", cfg.order, "truncation order N")->check(CLI::PositiveNumber);
    model_opt(gamma);
    format_opt(gamma);

    int subtract = 0;
    auto *mellin_cmd = app.add_subcommand("mellin", "Taylor coefficients of the Mellin kernel");
    mellin_cmd->add_option("--order", cfg.order, "total degree")->check(CLI::NonNegativeNumber);
    mellin_cmd->add_option("--subtract", subtract, "number of IR pole pairs to subtract")
        ->check(CLI::NonNegativeNumber);
    format_opt(mellin_cmd);

    int k = 1;
    std::string sign;
    std::string text_format = "text";
    auto *exps = app.add_subcommand("exponents", "singularity exponents at xi = +-k/3");
    exps->add_option("--k", k, "singularity index")->required()->check(CLI::PositiveNumber);
    exps->add_option("--sign", sign, "+ or -")->required()->check(CLI::IsMember({"+", "-"}));
    exps->add_option("--out", text_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string window_text;
    auto *sing = app.add_subcommand("singularities", "ratio-method singularity estimate on the Borel image");
    sing->add_option("--order", cfg.order, "truncation order N")->check(CLI::PositiveNumber);
    sing->add_option("--window", window_text, "fit window nMin,nMax (default N/2,N)");
    model_opt(sing);
    format_opt(sing);

    std::string series_name = "gamma";
    auto *ratios = app.add_subcommand("ratios", "coefficient ratios against an affine law");
    ratios->add_option("--order", cfg.order, "truncation order N")->check(CLI::PositiveNumber);
    ratios->add_option("--law", cfg.law, "affine law, e.g. \"-(3n+2)\"");
    ratios->add_option("--series", series_name, "gamma, F or L (F and L need --model approx)")
        ->check(CLI::IsMember({"gamma", "F", "L"}));
    model_opt(ratios);
    format_opt(ratios);

    auto *weights = app.add_subcommand("weights", "zeta-weight audit of the Borel coefficients");
    weights->add_option("--order", cfg.order, "highest Borel index p")->check(CLI::NonNegativeNumber);
    format_opt(weights);

    std::string to_text;
    auto *ray = app.add_subcommand("ray", "march the Borel-plane system along a ray");
    ray->add_option("--to", to_text, "endpoint RE,IM");
    ray->add_option("--steps", cfg.ray_steps, "even step count")->check(CLI::PositiveNumber);
    ray->add_option("--delta", cfg.ray_delta, "guard distance");
    ray->add_option("--taylor-boot", cfg.taylor_boot, "start from the exact series to this order");
    std::string ray_format = "csv";
    ray->add_option("--out", ray_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    ray->add_option("--file", file, "write to this file (relative to the output directory)");

    auto *rep = app.add_subcommand("report", "JSON summary of all modules");
    rep->add_option("--order", cfg.order, "truncation order for exact series")->check(CLI::PositiveNumber);
    rep->add_option("--steps", cfg.ray_steps, "ray step count")->check(CLI::PositiveNumber);
    rep->add_option("--file", file, "write to this file (relative to the output directory)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        cfg.model = parse_model(model);
        cfg.format = parse_format(format);
        if (!to_text.empty()) {
            const auto [re, im] = parse_pair("--to", to_text);
            cfg.ray_to = {re, im};
        }
        if (!window_text.empty()) {
            const auto [a, b] = parse_pair("--window", window_text);
            cfg.window = std::pair<int, int>{static_cast<int>(a), static_cast<int>(b)};
        }
    } catch (const DomainError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gamma->parsed()) {
            const auto d = gamma_series(cfg.model, cfg.order, cfg.threads);
            Sink sink(cfg, file, out);
            auto &os = sink.stream();
            if (cfg.format == Format::Csv) {
                os << "n,coeff\n";
                for (std::size_t n = 0; n < d.text.size(); ++n) {
                    os << n << ',' << d.text[n] << '\n';
                }
            } else {
                json arr = json::array();
                for (std::size_t n = 0; n < d.text.size(); ++n) {
                    json j{{"n", n}, {"coeff", d.text[n]}, {"value", d.value[n]}};
                    if (!d.terms.empty()) {
                        j["terms"] = d.terms[n];
                    }
                    arr.push_back(j);
                }
                os << json{{"source", d.source}, {"model", to_string(cfg.model)}, {"order", cfg.order},
                           {"coefficients", arr}}
                          .dump(2)
                   << '\n';
            }
        } else if (mellin_cmd->parsed()) {
            const auto sub = mellin::h_subtracted(subtract, cfg.order);
            Sink sink(cfg, file, out);
            auto &os = sink.stream();
            if (cfg.format == Format::Csv) {
                os << "m,n,coeff\n";
                for (int d = 0; d <= cfg.order; ++d) {
                    for (int m = 0; m <= d; ++m) {
                        os << m << ',' << d - m << ',' << sub.series.at(m, d - m).str() << '\n';
                    }
                }
            } else {
                json arr = json::array();
                for (int d = 0; d <= cfg.order; ++d) {
                    for (int m = 0; m <= d; ++m) {
                        arr.push_back(json{{"m", m}, {"n", d - m}, {"coeff", sub.series.at(m, d - m).str()}});
                    }
                }
                json doc{{"source", subtract > 0 ? "mellin::h_subtracted" : "mellin::h_taylor"},
                         {"order", cfg.order},
                         {"subtracted_poles", subtract},
                         {"coefficients", arr}};
                if (subtract > 0) {
                    doc["convention"] = sub.convention;
                }
                os << doc.dump(2) << '\n';
            }
        } else if (exps->parsed()) {
            const Rational e = sign == "+" ? singular::exponent_positive(k) : singular::exponent_negative(k);
            if (text_format == "json") {
                json doc{{"k", k}, {"sign", sign}, {"exponent", e.str()},
                         {"source", sign == "+" ? "singular::exponent_positive" : "singular::exponent_negative"}};
                if (sign == "-") {
                    doc["coefficient"] = singular::coeff_relation_negative(k).str();
                }
                out << doc.dump(2) << '\n';
            } else {
                out << e.str() << '\n';
            }
        } else if (sing->parsed()) {
            const auto r = singularities_of(cfg.model, cfg.order, cfg.threads, cfg.window);
            Sink sink(cfg, file, out);
            auto &os = sink.stream();
            if (cfg.format == Format::Csv) {
                os << "n,residual\n";
                for (std::size_t i = 0; i < r.residuals.size(); ++i) {
                    os << r.n_min + static_cast<int>(i) << ',' << fmt(r.residuals[i]) << '\n';
                }
            } else {
                os << singularity_json(r, cfg.model, cfg.order).dump(2) << '\n';
            }
        } else if (ratios->parsed()) {
            if (series_name != "gamma" && cfg.model != Model::Approx) {
                throw DomainError("series " + series_name + " exists only for --model approx");
            }
            const auto law = physical::AffineLaw::parse(cfg.law);
            const auto d = series_name == "gamma" ? gamma_series(cfg.model, cfg.order, cfg.threads)
                                                  : approx_component(series_name, cfg.order);
            const auto rows = ratios_of(d, law);
            Sink sink(cfg, file, out);
            auto &os = sink.stream();
            if (cfg.format == Format::Csv) {
                os << "n,ratio,predicted,deviation,gap\n";
                for (const auto &r : rows) {
                    os << r.n << ',' << (r.gap ? "" : fmt(r.ratio)) << ',' << fmt(r.predicted) << ','
                       << (r.gap ? "" : fmt(r.deviation)) << ',' << (r.gap ? 1 : 0) << '\n';
                }
            } else {
                os << json{{"source", "physical::ratio_table"}, {"model", to_string(cfg.model)},
                           {"series", series_name}, {"order", cfg.order}, {"law", cfg.law},
                           {"rows", ratio_rows_json(rows)}}
                          .dump(2)
                   << '\n';
            }
        } else if (weights->parsed()) {
            const auto audit = singular::weight_audit(physical::sd_solve(cfg.order + 1, {cfg.threads}));
            Sink sink(cfg, file, out);
            auto &os = sink.stream();
            if (cfg.format == Format::Csv) {
                os << "p,w,drop\n";
                for (const auto &r : audit.rows) {
                    os << r.p << ',' << r.w.str() << ',' << (r.drop ? 1 : 0) << '\n';
                }
            } else {
                os << weight_json(audit, cfg.order + 1).dump(2) << '\n';
            }
        } else if (ray->parsed()) {
            const rayquad::Ray r{cfg.ray_to, cfg.ray_steps, cfg.ray_delta};
            const auto sol = rayquad::solve_ray(r, {cfg.taylor_boot});
            Sink sink(cfg, file, out);
            if (ray_format == "csv") {
                rayquad::write_csv(sol, sink.stream());
            } else {
                sink.stream() << ray_stats_json(r, sol).dump(2) << '\n';
            }
        } else if (rep->parsed()) {
            int code = 0;
            const auto doc = report(cfg, code);
            Sink sink(cfg, file, out);
            sink.stream() << doc.dump(2) << '\n';
            return code;
        }
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace wzborel::cli
