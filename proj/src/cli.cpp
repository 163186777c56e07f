#include "fluxqed/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxqed/dynamics.hpp"
#include "fluxqed/errors.hpp"
#include "fluxqed/io.hpp"
#include "fluxqed/measurement.hpp"
#include "fluxqed/optimize.hpp"

namespace fluxqed::cli {
namespace {

using nlohmann::json;

constexpr const char* kUnitBanner = "# units: couplings and energies in Omega, times in 1/Omega";

const std::map<std::string, Command> kCommands = {
    {"eig", Command::Eig},         {"evolve", Command::Evolve}, {"trace", Command::Trace},
    {"optimize", Command::Optimize}, {"sweep", Command::Sweep},   {"fig4", Command::Fig4}};

std::string num(double v) { return format_number(v); }

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

int line_of_key(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 1 : line_of_offset(text, pos);
}

AxisSpec parse_axis(const std::string& text) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) || a.empty() ||
        b.empty() || c.empty())
        throw ValidationError("grid axis must look like min:max:n, got '" + text + "'");
    AxisSpec axis;
    try {
        std::size_t used = 0;
        axis.min = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        axis.max = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        axis.n = std::stoi(c, &used);
        if (used != c.size()) throw std::invalid_argument(c);
    } catch (const std::logic_error&) {
        throw ValidationError("grid axis must look like min:max:n, got '" + text + "'");
    }
    linspace(axis.min, axis.max, axis.n);
    return axis;
}

json amplitudes_json(const StateVector& s) {
    json arr = json::array();
    for (Eigen::Index k = 0; k < s.dim(); ++k) {
        arr.push_back({{"label", to_string(s.basis()[static_cast<std::size_t>(k)])},
                       {"re", s.amplitudes()(k).real()},
                       {"im", s.amplitudes()(k).imag()}});
    }
    return arr;
}

void print_state(std::ostream& out, const char* name, const StateVector& s) {
    out << name << ":\n";
    for (Eigen::Index k = 0; k < s.dim(); ++k) {
        out << "  " << to_string(s.basis()[static_cast<std::size_t>(k)]) << "  " << num(s.amplitudes()(k).real())
            << (s.amplitudes()(k).imag() < 0 ? " - " : " + ") << num(std::abs(s.amplitudes()(k).imag()))
            << "i\n";
    }
}

// Machine output goes to the configured path (plus suffix), or to `out` when
// only a format was requested.
template <typename Writer>
void emit(const RunConfig& config, std::ostream& out, const std::string& suffix, Writer&& writer) {
    if (config.output_path) {
        const std::string path = *config.output_path + suffix;
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        writer(file);
        file.flush();
        if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
    } else {
        writer(out);
    }
}

bool machine_output(const RunConfig& config) { return config.output_path || config.output_format; }

OutputFormat format_of(const RunConfig& config) { return config.output_format.value_or(OutputFormat::Csv); }

json envelope(const char* command) { return json{{"schema_version", kSchemaVersion}, {"command", command}}; }

int run_eig(const RunConfig& config, std::ostream& out) {
    const CouplingParams& p = config.params;
    const EigenSystem<double> eig = hermitian_eig(build_h_full(p));
    std::optional<std::array<double, 6>> analytic;
    if (p.is_symmetric()) analytic = analytic_eigenvalues(p);
    double max_diff = 0.0;
    if (analytic)
        for (int k = 0; k < 6; ++k) max_diff = std::max(max_diff, std::abs((*analytic)[k] - eig.eigenvalues(k)));

    std::optional<StateVector> dark, entangled;
    try {
        dark = dark_state(p);
    } catch (const ValidationError&) {
    }
    try {
        entangled = entangled_state_general(p);
    } catch (const ValidationError&) {
    }

    if (!machine_output(config) || config.output_path) {
        out << kUnitBanner << '\n';
        out << "params: g1=" << num(p.g1) << " g2=" << num(p.g2) << " omega1=" << num(p.omega1)
            << " omega2=" << num(p.omega2) << " gprime=" << num(p.g_prime) << '\n';
        if (analytic) {
            out << "analytic:";
            for (double v : *analytic) out << ' ' << num(v);
            out << '\n';
        } else {
            out << "analytic: n/a (requires g1 == g2 and omega1 == omega2)\n";
        }
        out << "numeric:";
        for (Eigen::Index k = 0; k < eig.dim(); ++k) out << ' ' << num(eig.eigenvalues(k));
        out << '\n';
        if (analytic) out << "max_abs_difference: " << num(max_diff) << '\n';
        if (dark) print_state(out, "dark_state", *dark);
        if (entangled) print_state(out, "entangled_state_G", *entangled);
    }
    if (!machine_output(config)) return kExitOk;

    emit(config, out, "", [&](std::ostream& os) {
        if (format_of(config) == OutputFormat::Csv) {
            os << "index,analytic,numeric\n";
            for (int k = 0; k < 6; ++k)
                os << k << ',' << (analytic ? num((*analytic)[k]) : "") << ',' << num(eig.eigenvalues(k)) << '\n';
        } else {
            json j = envelope("eig");
            j["params"] = p;
            j["analytic"] = analytic ? json(*analytic) : json(nullptr);
            std::vector<double> numeric(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.dim());
            j["numeric"] = numeric;
            j["max_abs_difference"] = analytic ? json(max_diff) : json(nullptr);
            j["dark_state"] = dark ? amplitudes_json(*dark) : json(nullptr);
            j["entangled_state"] = entangled ? amplitudes_json(*entangled) : json(nullptr);
            os << j.dump(2) << '\n';
        }
    });
    return kExitOk;
}

int run_evolve(const RunConfig& config, std::ostream& out) {
    const CouplingParams& p = config.params;
    const StateVector psi = evolve(p, config.t);
    const Amplitudes a = amplitudes(psi);
    const Probabilities pr = probabilities(a);
    const double p_g = outcome_probability(psi, AuxLevel::Ground);
    const double p_e = outcome_probability(psi, AuxLevel::Excited);
    std::optional<double> fid;
    if (p_g >= kUnreachableProbability) {
        const MeasurementOutcome m = postselect(psi, AuxLevel::Ground);
        fid = fidelity(m.collapsed, target_on(m.collapsed));
    }

    if (!machine_output(config) || config.output_path) {
        out << kUnitBanner << '\n';
        out << "t: " << num(config.t) << '\n';
        print_state(out, "state", psi);
        out << "P1 P2 P3 P4: " << num(pr.p1) << ' ' << num(pr.p2) << ' ' << num(pr.p3) << ' ' << num(pr.p4)
            << '\n';
        out << "p(aux=g): " << num(p_g) << "  p(aux=e): " << num(p_e) << '\n';
        out << "fidelity(collapsed | aux=g, |C>|0>_c): " << (fid ? num(*fid) : "n/a") << '\n';
        out << "antisymmetric_population: " << num(antisymmetric_population(psi)) << '\n';
    }
    if (!machine_output(config)) return kExitOk;

    emit(config, out, "", [&](std::ostream& os) {
        if (format_of(config) == OutputFormat::Csv) {
            os << "t,P1,P2,P3,P4,sum,p_g,p_e,fidelity_C\n";
            os << num(config.t) << ',' << num(pr.p1) << ',' << num(pr.p2) << ',' << num(pr.p3) << ','
               << num(pr.p4) << ',' << num(pr.sum()) << ',' << num(p_g) << ',' << num(p_e) << ','
               << (fid ? num(*fid) : "") << '\n';
        } else {
            json j = envelope("evolve");
            j["params"] = p;
            j["t"] = config.t;
            j["state"] = amplitudes_json(psi);
            j["probabilities"] = pr;
            j["p_g"] = p_g;
            j["p_e"] = p_e;
            j["fidelity_C"] = fid ? json(*fid) : json(nullptr);
            os << j.dump(2) << '\n';
        }
    });
    return kExitOk;
}

int run_trace(const RunConfig& config, std::ostream& out) {
    const EvolutionTrace tr = trace(config.params, config.t_max, config.n_steps);
    if (!machine_output(config)) {
        out << kUnitBanner << '\n';
        csv::write_trace(out, tr);
        return kExitOk;
    }
    if (config.output_path)
        out << kUnitBanner << "\nwrote " << tr.times.size() << " rows to " << *config.output_path << '\n';
    emit(config, out, "", [&](std::ostream& os) {
        if (format_of(config) == OutputFormat::Csv) {
            csv::write_trace(os, tr);
        } else {
            json j = envelope("trace");
            j["trace"] = tr;
            os << j.dump() << '\n';
        }
    });
    return kExitOk;
}

int run_optimize(const RunConfig& config, std::ostream& out) {
    const int j = config.threshold_exponents.front();
    const OptimizeResult r = find_t0(config.params, std::pow(10.0, -j), config.t_max);
    if (!machine_output(config) || config.output_path) {
        out << kUnitBanner << '\n';
        out << "threshold: P1+P2 <= 1e-" << j << '\n';
        out << "feasible: " << (r.feasible ? "yes" : "no") << '\n';
        out << "t0: " << num(r.t0) << '\n';
        out << "p1p2: " << num(r.p1p2) << '\n';
        out << "p3: " << num(r.p3) << '\n';
        out << "p4: " << num(r.p4) << '\n';
        out << "pi/gprime: " << num(r.pi_over_gprime) << "  |t0 - pi/gprime|: "
            << num(std::abs(r.t0 - r.pi_over_gprime)) << '\n';
        out << "pi/(2 gprime): " << num(r.pi_over_2gprime) << "  |t0 - pi/(2 gprime)|: "
            << num(std::abs(r.t0 - r.pi_over_2gprime)) << '\n';
    }
    if (machine_output(config)) {
        emit(config, out, "", [&](std::ostream& os) {
            if (format_of(config) == OutputFormat::Csv) {
                csv::write_optimize(os, r, j);
            } else {
                json doc = envelope("optimize");
                doc["threshold_exponent"] = j;
                doc["result"] = r;
                os << doc.dump(2) << '\n';
            }
        });
    }
    return (config.require_feasible && !r.feasible) ? kExitInfeasible : kExitOk;
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    SweepOptions options;
    options.t_max = config.t_max;
    options.workers = config.workers;
    options.progress = [&err](std::size_t done, std::size_t total) {
        if (done % 1000 == 0 || done == total) err << "sweep: " << done << "/" << total << " cells\n";
    };
    const auto g_values = linspace(config.grid.g.min, config.grid.g.max, config.grid.g.n);
    const auto gp_values = linspace(config.grid.gprime.min, config.grid.gprime.max, config.grid.gprime.n);
    const auto grids = sweep(g_values, gp_values, config.threshold_exponents, options);

    if (!machine_output(config) || config.output_path) {
        out << kUnitBanner << '\n';
        out << "grid: " << g_values.size() << " x " << gp_values.size() << ", t_max " << num(config.t_max) << '\n';
        for (const auto& grid : grids) {
            const OptimizeResult* best = nullptr;
            for (const auto& c : grid.cells)
                if (c.feasible && (!best || c.p3 > best->p3)) best = &c;
            out << "j=" << grid.threshold_exponent << ": feasible " << grid.feasible_count() << "/"
                << grid.cells.size();
            if (best)
                out << ", best P3 " << num(best->p3) << " at g=" << num(best->params.g1)
                    << " gprime=" << num(best->params.g_prime) << " t0=" << num(best->t0);
            out << '\n';
        }
    }
    if (machine_output(config)) {
        emit(config, out, "", [&](std::ostream& os) {
            if (format_of(config) == OutputFormat::Csv) {
                csv::write_sweep(os, grids);
            } else {
                json j = envelope("sweep");
                j["t_max"] = config.t_max;
                j["grids"] = grids;
                os << j.dump() << '\n';
            }
        });
    }
    return kExitOk;
}

int run_fig4(const RunConfig& config, std::ostream& out) {
    const auto triples = reference_pairs();
    const double threshold = std::pow(10.0, -config.threshold_exponents.front());
    const auto panels = emit_fig4_traces({triples.begin(), triples.end()}, config.t_max, config.n_steps, threshold);

    if (!machine_output(config) || config.output_path) {
        out << kUnitBanner << '\n';
        for (std::size_t i = 0; i < panels.size(); ++i) {
            const auto& a = panels[i].annotation;
            out << "triple " << i << ": g=" << num(a.result.params.g1) << " gprime=" << num(a.result.params.g_prime)
                << " P3(0)=" << num(panels[i].trace.rows.front().p3) << " feasible=" << (a.result.feasible ? 1 : 0)
                << " t0=" << num(a.result.t0) << " P3(t0)=" << num(a.result.p3) << " p1p2=" << num(a.result.p1p2)
                << " |t0-pi/g'|=" << num(a.distance_pi_over_gprime)
                << " |t0-pi/(2g')|=" << num(a.distance_pi_over_2gprime) << '\n';
        }
    }
    if (machine_output(config)) {
        if (format_of(config) == OutputFormat::Csv) {
            emit(config, out, "", [&](std::ostream& os) { csv::write_fig4_traces(os, panels); });
            if (!config.output_path) out << '\n';
            emit(config, out, config.output_path ? ".annotations.csv" : "",
                 [&](std::ostream& os) { csv::write_fig4_annotations(os, panels); });
        } else {
            emit(config, out, "", [&](std::ostream& os) {
                json j = envelope("fig4");
                j["threshold"] = threshold;
                j["panels"] = json::array();
                for (const auto& panel : panels)
                    j["panels"].push_back({{"trace", panel.trace}, {"annotation", panel.annotation}});
                os << j.dump() << '\n';
            });
        }
    }
    return kExitOk;
}

constexpr const char* kFooter = R"(Output columns (CSV, header always emitted):
  eig       index,analytic,numeric
  evolve    t,P1,P2,P3,P4,sum,p_g,p_e,fidelity_C
  trace     t,P1,P2,P3,P4,sum
  optimize  g,gprime,j,threshold,feasible,t0,p1p2,p3,p4,pi_over_gprime,pi_over_2gprime,
            abs_t0_minus_pi_over_gprime,abs_t0_minus_pi_over_2gprime
  sweep     g,gprime,j,feasible,t0,p3,p1p2   (rows ordered by j, then g, then gprime)
  fig4      triple,g,gprime,t,P1,P2,P3,P4,sum  plus PATH.annotations.csv:
            triple,g,gprime,threshold,feasible,t0,p1p2,p3,p4,pi_over_gprime,pi_over_2gprime,
            abs_t0_minus_pi_over_gprime,abs_t0_minus_pi_over_2gprime,nearest_peak_t,nearest_peak_p3
P1..P4 are the populations of |00>|1>_c|g>, |D>|0>_c|g>, |C>|0>_c|g>, |00>|0>_c|e>.
All couplings in units of Omega, times in units of 1/Omega.
Exit codes: 0 success, 1 usage/validation error, 2 infeasible with --require-feasible.)";

}  // namespace

GridSpec parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ValidationError("grid must look like gmin:gmax:n,gpmin:gpmax:n, got '" + text + "'");
    return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
}

void RawInputs::merge(const RawInputs& over) {
    auto take = [](auto& mine, const auto& theirs) {
        if (theirs) mine = theirs;
    };
    take(command, over.command);
    take(g, over.g);
    take(gprime, over.gprime);
    take(g1, over.g1);
    take(g2, over.g2);
    take(omega1, over.omega1);
    take(omega2, over.omega2);
    take(t, over.t);
    take(t_max, over.t_max);
    take(n_steps, over.n_steps);
    take(threshold_exp, over.threshold_exp);
    take(grid, over.grid);
    take(out, over.out);
    take(format, over.format);
    take(require_feasible, over.require_feasible);
    take(workers, over.workers);
}

RawInputs parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "line " << line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1) << ": " << e.what();
        throw ValidationError(os.str());
    }
    if (!doc.is_object()) throw ValidationError("line 1: config must be a JSON object");

    RawInputs raw;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "command") raw.command = value.get<std::string>();
            else if (key == "g") raw.g = value.get<double>();
            else if (key == "gprime") raw.gprime = value.get<double>();
            else if (key == "g1") raw.g1 = value.get<double>();
            else if (key == "g2") raw.g2 = value.get<double>();
            else if (key == "omega1") raw.omega1 = value.get<double>();
            else if (key == "omega2") raw.omega2 = value.get<double>();
            else if (key == "t") raw.t = value.get<double>();
            else if (key == "t_max") raw.t_max = value.get<double>();
            else if (key == "n_steps") raw.n_steps = value.get<int>();
            else if (key == "threshold_exp") {
                raw.threshold_exp = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
            } else if (key == "grid") raw.grid = value.get<std::string>();
            else if (key == "out") raw.out = value.get<std::string>();
            else if (key == "format") raw.format = value.get<std::string>();
            else if (key == "require_feasible") raw.require_feasible = value.get<bool>();
            else if (key == "workers") raw.workers = value.get<unsigned>();
            else {
                std::ostringstream os;
                os << "line " << line_of_key(text, key) << ": unknown config key '" << key << "'";
                throw ValidationError(os.str());
            }
        } catch (const json::exception& e) {
            std::ostringstream os;
            os << "line " << line_of_key(text, key) << ": bad value for '" << key << "': " << e.what();
            throw ValidationError(os.str());
        }
    }
    return raw;
}

RunConfig resolve(const RawInputs& raw) {
    RunConfig config;
    if (!raw.command) throw ValidationError("no command given (eig, evolve, trace, optimize, sweep, fig4)");
    const auto it = kCommands.find(*raw.command);
    if (it == kCommands.end()) throw ValidationError("unknown command '" + *raw.command + "'");
    config.command = it->second;

    const bool needs_params = config.command == Command::Eig || config.command == Command::Evolve ||
                              config.command == Command::Trace || config.command == Command::Optimize;
    if (needs_params) {
        const auto g1 = raw.g1 ? raw.g1 : raw.g;
        const auto g2 = raw.g2 ? raw.g2 : raw.g;
        if (!g1 || !g2) throw ValidationError("missing coupling: give --g, or both --g1 and --g2");
        if (!raw.gprime) throw ValidationError("missing coupling: --gprime is required");
        config.params = {*g1, *g2, raw.omega1.value_or(1.0), raw.omega2.value_or(1.0), *raw.gprime};
        config.params.validate();
        if (config.command != Command::Eig && !config.params.is_symmetric())
            throw ValidationError("evolve/trace/optimize require identical SQUIDs (g1 == g2, omega1 == omega2)");
    }

    if (config.command == Command::Evolve) {
        if (!raw.t) throw ValidationError("evolve needs --t");
        if (!std::isfinite(*raw.t) || *raw.t < 0.0) throw ValidationError("--t must be finite and >= 0");
        config.t = *raw.t;
    }

    config.t_max = raw.t_max.value_or(200.0);
    if (!std::isfinite(config.t_max) || config.t_max <= 0.0) throw ValidationError("--t-max must be > 0");
    config.n_steps = raw.n_steps.value_or(kDefaultTraceSteps);
    if (config.n_steps < 2) throw ValidationError("--n-steps must be >= 2");

    if (raw.threshold_exp) config.threshold_exponents = *raw.threshold_exp;
    else if (config.command == Command::Sweep) config.threshold_exponents = {1, 2, 3, 4, 5, 6};
    else config.threshold_exponents = {6};
    if (config.threshold_exponents.empty()) throw ValidationError("--threshold-exp needs a value");
    for (int j : config.threshold_exponents)
        if (j < 1 || j > 15) throw ValidationError("--threshold-exp must lie in 1..15");
    if ((config.command == Command::Optimize || config.command == Command::Fig4) &&
        config.threshold_exponents.size() != 1)
        throw ValidationError("optimize and fig4 take exactly one --threshold-exp");

    if (raw.grid) config.grid = parse_grid(*raw.grid);
    config.output_path = raw.out;
    if (raw.format) {
        if (*raw.format == "csv") config.output_format = OutputFormat::Csv;
        else if (*raw.format == "json") config.output_format = OutputFormat::Json;
        else throw ValidationError("--format must be csv or json, got '" + *raw.format + "'");
    }
    config.require_feasible = raw.require_feasible.value_or(false);
    config.workers = raw.workers.value_or(0);
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case Command::Eig: return run_eig(config, out);
        case Command::Evolve: return run_evolve(config, out);
        case Command::Trace: return run_trace(config, out);
        case Command::Optimize: return run_optimize(config, out);
        case Command::Sweep: return run_sweep(config, out, err);
        case Command::Fig4: return run_fig4(config, out);
    }
    return kExitUsage;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dark-state entanglement of two flux qubits probed by an auxiliary SQUID", "fluxqed"};
    app.footer(kFooter);
    app.require_subcommand(0, 1);

    RawInputs flags;
    double g = 0, gprime = 0, g1 = 0, g2 = 0, omega1 = 0, omega2 = 0, t = 0, t_max = 0;
    int n_steps = 0;
    std::vector<int> exps;
    std::string grid, out_path, format, config_path;
    unsigned workers = 0;

    auto* o_g = app.add_option("--g", g, "SQUID-cavity coupling g1 = g2 = g (Omega units)");
    auto* o_gp = app.add_option("--gprime", gprime, "auxiliary SQUID-cavity coupling g' (Omega units)");
    auto* o_g1 = app.add_option("--g1", g1, "SQUID I cavity coupling (general parameters)");
    auto* o_g2 = app.add_option("--g2", g2, "SQUID II cavity coupling (general parameters)");
    auto* o_w1 = app.add_option("--omega1", omega1, "SQUID I drive coupling (default 1)");
    auto* o_w2 = app.add_option("--omega2", omega2, "SQUID II drive coupling (default 1)");
    auto* o_t = app.add_option("--t", t, "evolution time for 'evolve' (1/Omega units)");
    auto* o_tmax = app.add_option("--t-max", t_max, "time window (default 200)");
    auto* o_steps = app.add_option("--n-steps", n_steps, "trace grid points incl. endpoints (default 4001)");
    auto* o_exp = app.add_option("--threshold-exp", exps, "j in P1+P2 <= 10^-j (repeatable)");
    o_exp->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    auto* o_grid = app.add_option("--grid", grid, "sweep grid gmin:gmax:n,gpmin:gpmax:n (default 0.05:3:60,0.05:3:60)");
    auto* o_out = app.add_option("--out", out_path, "write machine-readable output to PATH");
    auto* o_fmt = app.add_option("--format", format, "csv (default) or json");
    auto* o_req = app.add_flag("--require-feasible", "exit 2 if optimize finds no feasible t0");
    auto* o_workers = app.add_option("--workers", workers, "sweep worker threads (0 = hardware)");
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    for (const auto& [name, cmd] : kCommands) {
        (void)cmd;
        app.add_subcommand(name, "run the '" + name + "' command")->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto set = [](auto& target, CLI::Option* opt, const auto& value) {
        if (opt->count() > 0) target = value;
    };
    set(flags.g, o_g, g);
    set(flags.gprime, o_gp, gprime);
    set(flags.g1, o_g1, g1);
    set(flags.g2, o_g2, g2);
    set(flags.omega1, o_w1, omega1);
    set(flags.omega2, o_w2, omega2);
    set(flags.t, o_t, t);
    set(flags.t_max, o_tmax, t_max);
    set(flags.n_steps, o_steps, n_steps);
    set(flags.threshold_exp, o_exp, exps);
    set(flags.grid, o_grid, grid);
    set(flags.out, o_out, out_path);
    set(flags.format, o_fmt, format);
    if (o_req->count() > 0) flags.require_feasible = true;
    set(flags.workers, o_workers, workers);
    for (auto* sub : app.get_subcommands()) flags.command = sub->get_name();

    try {
        RawInputs raw;
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw ValidationError("line 0: cannot read config file '" + config_path + "'");
            std::stringstream buffer;
            buffer << file.rdbuf();
            try {
                raw = parse_config_text(buffer.str());
            } catch (const ValidationError& e) {
                throw ValidationError(config_path + ":" + e.what());
            }
        }
        raw.merge(flags);
        return run(resolve(raw), out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fluxqed::cli
