#include <gtest/gtest.h>

#include <bit>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fluxqed/cli.hpp"
#include "fluxqed/io.hpp"

using namespace fluxqed;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::main(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("fluxqed_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Json, ParamsAndProbabilitiesRoundTrip) {
    const CouplingParams p{0.1, 0.2, 0.3, 0.4, 0.5};
    EXPECT_EQ(json(p).get<CouplingParams>(), p);
    const Probabilities pr{0.125, 0.25, 0.5, 0.125};
    const json j = pr;
    EXPECT_TRUE(j.is_array());
    EXPECT_EQ(j.get<Probabilities>(), pr);
}

TEST(Json, OptimizeResultWithInfiniteReferences) {
    const OptimizeResult r = find_t0(CouplingParams::symmetric(1.0, 0.0), 0.5, 10.0);
    const json j = r;
    EXPECT_TRUE(j.at("pi_over_gprime").is_null());
    EXPECT_EQ(j.get<OptimizeResult>(), r);
    const OptimizeResult s = find_t0(CouplingParams::symmetric(0.6, 1.37), 1e-6);
    EXPECT_EQ(json::parse(json(s).dump()).get<OptimizeResult>(), s);
}

TEST(Json, TraceAndSweepRoundTrip) {
    const EvolutionTrace tr = trace(CouplingParams::symmetric(0.6, 1.37), 5.0, 11);
    const EvolutionTrace back = json::parse(json(tr).dump()).get<EvolutionTrace>();
    EXPECT_EQ(back.params, tr.params);
    EXPECT_EQ(back.times, tr.times);
    EXPECT_EQ(back.rows, tr.rows);

    const auto grids = sweep({0.5, 1.0}, {1.0}, {2}, {20.0, {}, 1, {}});
    const SweepGrid g = json::parse(json(grids[0]).dump()).get<SweepGrid>();
    EXPECT_EQ(g.g_values, grids[0].g_values);
    EXPECT_EQ(g.threshold_exponent, 2);
    EXPECT_EQ(g.cells, grids[0].cells);
}

TEST(Csv, NumbersRoundTripBitExactly) {
    for (double v : {0.1, 1.0 / 3.0, 16.100717519150656, 4.0430695141892805e-07, 1e-300, -2.5, 0.0}) {
        const std::string text = format_number(v);
        double back = 0;
        std::from_chars(text.data(), text.data() + text.size(), back);
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back), std::bit_cast<std::uint64_t>(v)) << text;
    }
    EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Csv, TraceLayout) {
    std::ostringstream os;
    csv::write_trace(os, trace(CouplingParams::symmetric(0.5, 1.0), 1.0, 3));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, csv::kTraceHeader);
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
        ++rows;
    }
    EXPECT_EQ(rows, 3);
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
}

TEST(Grid, Parse) {
    const cli::GridSpec g = cli::parse_grid("0.1:3:30,0.2:2.5:10");
    EXPECT_EQ(g.g.min, 0.1);
    EXPECT_EQ(g.g.max, 3.0);
    EXPECT_EQ(g.g.n, 30);
    EXPECT_EQ(g.gprime.n, 10);
    EXPECT_THROW(cli::parse_grid("0.1:3:30"), ValidationError);
    EXPECT_THROW(cli::parse_grid("0.1:3:x,1:2:3"), ValidationError);
    EXPECT_THROW(cli::parse_grid("0.1:3:0,1:2:3"), ValidationError);
}

TEST(Cli, EigReportsClosedFormAndNumericSpectrum) {
    const CliRun r = run_cli({"eig", "--g", "1", "--gprime", "1", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
    EXPECT_EQ(j.at("command"), "eig");
    EXPECT_NEAR(j.at("numeric")[5].get<double>(), 1.9318516525781366, 1e-14);
    EXPECT_LE(j.at("max_abs_difference").get<double>(), 1e-12);
}

TEST(Cli, HumanOutputStartsWithUnits) {
    const CliRun r = run_cli({"eig", "--g", "1", "--gprime", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("# units:", 0), 0u);
}

TEST(Cli, TraceWithoutAuxCouplingIsFlat) {
    const CliRun r = run_cli({"trace", "--g", "0.5", "--gprime", "0", "--t-max", "1", "--n-steps", "3",
                              "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    const EvolutionTrace tr = j.at("trace").get<EvolutionTrace>();
    ASSERT_EQ(tr.rows.size(), 3u);
    for (const auto& row : tr.rows) EXPECT_NEAR(row.p3, 1.0 / 3.0, 1e-12);
}

TEST(Cli, OptimizeExitCodes) {
    EXPECT_EQ(run_cli({"optimize", "--g", "0.6", "--gprime", "1.37", "--require-feasible"}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({"optimize", "--g", "0.25", "--gprime", "1.89", "--require-feasible"}).code,
              cli::kExitInfeasible);
    EXPECT_EQ(run_cli({"optimize", "--g", "0.25", "--gprime", "1.89"}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({"optimize", "--g", "0.6", "--gprime", "1.37", "--threshold-exp", "3", "--threshold-exp",
                       "4"}).code,
              cli::kExitUsage);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({"eig", "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"eig"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"evolve", "--g", "1", "--gprime", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"evolve", "--g1", "1", "--g2", "2", "--gprime", "1", "--t", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"eig", "--g", "-1", "--gprime", "1"}).code, cli::kExitUsage);
    const CliRun r = run_cli({"sweep", "--threshold-exp", "0"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ConfigErrorsNameTheLine) {
    const auto path = temp_path("bad.json");
    std::ofstream(path) << "{\n  \"g\": 1,\n  \"bogus\": 2\n}\n";
    const CliRun r = run_cli({"eig", "--config", path.string()});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_THROW(cli::parse_config_text("{\"g\": \"x\"}"), ValidationError);
    std::filesystem::remove(path);
}

TEST(Cli, FlagsOverrideConfig) {
    const auto path = temp_path("good.json");
    std::ofstream(path) << "{\"g\": 0.25, \"gprime\": 1.89}\n";
    const CliRun r = run_cli({"optimize", "--config", path.string(), "--g", "0.6", "--gprime", "1.37",
                              "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const OptimizeResult res = json::parse(r.out).at("result").get<OptimizeResult>();
    EXPECT_EQ(res.params, CouplingParams::symmetric(0.6, 1.37));
    EXPECT_TRUE(res.feasible);
    std::filesystem::remove(path);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"sweep", "--grid", "0.5:1:2,1:2:2", "--threshold-exp", "3", "--format",
                                        "csv", "--workers", "3"};
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind(csv::kSweepHeader, 0), 0u);
}

TEST(Cli, WritesToFileAndReportsFailure) {
    const auto path = temp_path("trace.csv");
    const CliRun ok = run_cli({"trace", "--g", "1", "--gprime", "1", "--t-max", "2", "--n-steps", "5", "--out",
                               path.string(), "--format", "csv"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(slurp(path).rfind(csv::kTraceHeader, 0), 0u);
    std::filesystem::remove(path);

    const CliRun bad = run_cli({"trace", "--g", "1", "--gprime", "1", "--out", "/nonexistent/dir/x.csv",
                                "--format", "csv"});
    EXPECT_EQ(bad.code, cli::kExitUsage);
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, ResolveAppliesDefaults) {
    cli::RawInputs raw;
    raw.command = "sweep";
    const cli::RunConfig c = cli::resolve(raw);
    EXPECT_EQ(c.command, cli::Command::Sweep);
    EXPECT_EQ(c.threshold_exponents, (std::vector<int>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(c.grid.g.n, 60);
    raw.command = "optimize";
    raw.g = 1;
    raw.gprime = 1;
    EXPECT_EQ(cli::resolve(raw).threshold_exponents, std::vector<int>{6});
}
