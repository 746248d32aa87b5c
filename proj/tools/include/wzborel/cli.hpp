#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace wzborel::cli {

enum class Model { Full, Approx, Ode };
enum class Format { Csv, Json };

/// Settings shared by all subcommands. Precedence: command line, then the
/// key=value config file, then WZBOREL_OUTPUT_DIR (output_dir only), then these defaults.
struct RunConfig {
    int order = 12;
    Model model = Model::Full;
    Format format = Format::Json;
    std::string output_dir = ".";
    std::complex<double> ray_to{40.0, 35.0};
    int ray_steps = 2000;
    double ray_delta = 1e-3;
    int taylor_boot = 0;
    int ratio_order = 200;
    std::optional<std::pair<int, int>> window;
    std::string law = "-(3n+2)";
    unsigned long seed = 20130405UL;
    int threads = 1;
};

Model parse_model(const std::string &s);
std::string to_string(Model m);
Format parse_format(const std::string &s);

/// key=value lines; '#' starts a comment. Throws DomainError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string &path);
/// Applies recognised keys; throws DomainError on unknown keys or bad values.
void apply_config(RunConfig &cfg, const std::map<std::string, std::string> &kv);

/// Runs one subcommand. Exit codes: 0 success, 1 domain or numerical failure, 2 usage error.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// JSON summary of all module outputs for the configuration. `exit_code` receives
/// the worst per-section status.
nlohmann::json report(const RunConfig &cfg, int &exit_code);

} // namespace wzborel::cli
