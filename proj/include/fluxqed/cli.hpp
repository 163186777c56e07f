#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fluxqed/model.hpp"

namespace fluxqed::cli {

enum class Command { Eig, Evolve, Trace, Optimize, Sweep, Fig4 };
enum class OutputFormat { Csv, Json };

struct AxisSpec {
    double min = 0.05;
    double max = 3.0;
    int n = 60;
};

struct GridSpec {
    AxisSpec g;
    AxisSpec gprime;
};

/// "gmin:gmax:n,gpmin:gpmax:n"
GridSpec parse_grid(const std::string& text);

/// Values as given on the command line or in a config file, before defaults.
struct RawInputs {
    std::optional<std::string> command;
    std::optional<double> g, gprime, g1, g2, omega1, omega2;
    std::optional<double> t, t_max;
    std::optional<int> n_steps;
    std::optional<std::vector<int>> threshold_exp;
    std::optional<std::string> grid, out, format;
    std::optional<bool> require_feasible;
    std::optional<unsigned> workers;

    /// Fields set in `over` replace ours.
    void merge(const RawInputs& over);
};

/// Parses a JSON config file's text. Unknown keys and malformed values are
/// rejected with a ValidationError whose message starts with "line N:".
RawInputs parse_config_text(const std::string& text);

struct RunConfig {
    Command command = Command::Eig;
    CouplingParams params;
    double t = 0;
    double t_max = 200.0;
    int n_steps = 4001;
    std::vector<int> threshold_exponents;
    GridSpec grid;
    std::optional<std::string> output_path;
    std::optional<OutputFormat> output_format;
    bool require_feasible = false;
    unsigned workers = 0;
};

/// Applies defaults and validates. Throws ValidationError.
RunConfig resolve(const RawInputs& raw);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// Executes a resolved configuration. Human output and machine output (when no
/// --out is given but --format is) go to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fluxqed::cli
