// Command-line front end: loads a scenario file, runs single-level scheme
// comparisons, rate-level sweeps, or source selection, and emits results to
// stdout or a file. Exit codes: 0 success, 1 usage, 2 invalid scenario,
// 3 infeasible instance.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ds2d/ds2d.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_levels(const std::string& spec) {
    std::vector<int> levels;
    auto parse_one = [](const std::string& tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("cannot parse level '" + tok + "'");
        }
        if (used != tok.size()) throw UsageError("cannot parse level '" + tok + "'");
        if (v < ds2d::kMinRateLevel || v > ds2d::kMaxRateLevel) {
            throw UsageError("level " + tok + " not in range 1..15");
        }
        return v;
    };

    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_one(spec.substr(0, dots));
        const int hi = parse_one(spec.substr(dots + 2));
        if (hi < lo) throw UsageError("empty level range '" + spec + "'");
        for (int l = lo; l <= hi; ++l) levels.push_back(l);
        return levels;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) levels.push_back(parse_one(tok));
    if (levels.empty()) throw UsageError("no levels given");
    return levels;
}

std::vector<ds2d::Scheme> parse_schemes(const std::string& spec) {
    std::vector<ds2d::Scheme> schemes;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "d2d") {
            schemes.push_back(ds2d::Scheme::d2d_single);
        } else if (tok == "multihoming") {
            schemes.push_back(ds2d::Scheme::multihoming);
        } else if (tok == "optimal") {
            schemes.push_back(ds2d::Scheme::ds2d_optimal);
        } else if (tok == "random") {
            schemes.push_back(ds2d::Scheme::ds2d_random);
        } else {
            throw UsageError("unknown scheme '" + tok +
                             "' (expected d2d, multihoming, optimal, random)");
        }
    }
    if (schemes.empty()) throw UsageError("no schemes given");
    return schemes;
}

// Either stdout or a file, written in one piece so failures leave no
// partial output behind.
void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file " + out_path);
    out << content;
}

ds2d::VariedLink default_varied_link(const ds2d::Scenario& scenario) {
    // By convention the swept link is the first source's lowest-index
    // interface that the sink shares.
    const auto& source = scenario.sources.front();
    std::optional<int> iface;
    for (const auto& ir : source.interfaces) {
        if (scenario.sink.has_interface(ir.interface_index) &&
            (!iface || ir.interface_index < *iface)) {
            iface = ir.interface_index;
        }
    }
    if (!iface) {
        throw ds2d::InfeasibleError("source " + source.id +
                                    " shares no data interface with the sink");
    }
    return {source.id, *iface};
}

int cmd_sweep(const std::string& scenario_path, const std::string& levels_spec,
              const std::string& schemes_spec, std::uint64_t mc_draws,
              std::optional<std::uint64_t> seed, const std::string& format,
              const std::string& out_path) {
    if (format != "csv" && format != "structured") {
        throw UsageError("unknown format '" + format + "' (expected csv or structured)");
    }
    ds2d::Scenario scenario = ds2d::load_scenario(scenario_path);
    if (seed) scenario.economics.random_seed = *seed;

    const auto sweep =
        ds2d::sweep_rate_levels(scenario, default_varied_link(scenario),
                                parse_levels(levels_spec), parse_schemes(schemes_spec), mc_draws);
    const ds2d::SweepMeta meta{scenario.id, ds2d::scenario_hash_hex(scenario)};
    write_output(format == "csv" ? ds2d::to_csv(sweep, meta)
                                 : ds2d::to_structured_json(sweep, meta),
                 out_path);
    return 0;
}

int cmd_compare(const std::string& scenario_path, int level, const std::string& schemes_spec,
                std::uint64_t mc_draws, std::optional<std::uint64_t> seed,
                const std::string& out_path) {
    ds2d::Scenario scenario = ds2d::load_scenario(scenario_path);
    if (seed) scenario.economics.random_seed = *seed;

    const auto sweep = ds2d::sweep_rate_levels(scenario, default_varied_link(scenario), {level},
                                               parse_schemes(schemes_spec), mc_draws);
    std::ostringstream out;
    out << "scenario " << scenario.id << "  level " << level << "  seed "
        << scenario.economics.random_seed << "\n\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-12s %12s %8s %11s %10s %9s %11s %10s\n", "scheme",
                  "ftl_s", "gain", "energy_wh", "cost_usd", "co2_lb", "batt_life_h", "completes");
    out << line;
    for (const auto& row : sweep.rows) {
        std::snprintf(line, sizeof(line), "%-12s %12.2f %8.3f %11.4f %10.4f %9.4f %11.2f %10s\n",
                      std::string(ds2d::scheme_name(row.scheme)).c_str(), row.ftl_s,
                      row.gain_vs_d2d, row.green.energy_wh, row.green.annual_cost_usd,
                      row.green.annual_co2_lb, row.green.battery_life_h,
                      row.green.completes_on_full_charge ? "yes" : "no");
        out << line;
        if (row.expected_random_ftl_s) {
            std::snprintf(line, sizeof(line), "%-12s %12.2f  (closed-form expectation)\n",
                          "  random E[t]", *row.expected_random_ftl_s);
            out << line;
        }
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_select(const std::string& scenario_path, const std::string& out_path) {
    const ds2d::Scenario scenario = ds2d::load_scenario(scenario_path);
    const ds2d::Assignment chosen = ds2d::select_sources(scenario);

    std::ostringstream out;
    out << "scenario " << scenario.id << "\nassignment:\n";
    for (const auto& p : chosen.pairs) {
        out << "  " << p.source_id << " -> interface " << p.interface_index << " ("
            << ds2d::format_sig12(ds2d::pair_rate_kbps(scenario, p)) << " kbps)\n";
    }
    out << "objective aggregate_rate_kbps = " << ds2d::format_sig12(chosen.objective_value)
        << "\n";
    out << "exact = "
        << (ds2d::within_enumeration_guard(scenario) ? "yes (exhaustive enumeration)"
                                                     : "no (greedy, instance above guard)")
        << "\n";
    write_output(out.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-source device-to-device transfer simulator and green analytics"};
    app.set_version_flag("--version",
                         std::string(ds2d::kToolName) + " " + std::string(ds2d::kToolVersion));
    app.require_subcommand(1);

    std::string scenario_path;
    std::string levels_spec = "1..10";
    std::string schemes_spec = "d2d,multihoming,optimal,random";
    std::string format = "csv";
    std::string out_path;
    std::uint64_t mc_draws = 2000;
    int level = 1;
    std::optional<std::uint64_t> seed;

    auto* sweep = app.add_subcommand("sweep", "Sweep rate levels and emit one row per (level, scheme)");
    sweep->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    sweep->add_option("--levels", levels_spec, "Levels, e.g. 1..10 or 1,3,5");
    sweep->add_option("--schemes", schemes_spec, "Comma list of d2d,multihoming,optimal,random");
    sweep->add_option("--mc-draws", mc_draws, "Monte Carlo draws for the random scheme");
    sweep->add_option("--seed", seed, "Override the scenario random seed");
    sweep->add_option("--format", format, "csv or structured");
    sweep->add_option("--out", out_path, "Output file (default stdout)");

    auto* compare = app.add_subcommand("compare", "Compare schemes at a single rate level");
    compare->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    compare->add_option("--level", level, "Rate level")
        ->check(CLI::Range(ds2d::kMinRateLevel, ds2d::kMaxRateLevel));
    compare->add_option("--schemes", schemes_spec, "Comma list of d2d,multihoming,optimal,random");
    compare->add_option("--mc-draws", mc_draws, "Monte Carlo draws for the random scheme");
    compare->add_option("--seed", seed, "Override the scenario random seed");
    compare->add_option("--out", out_path, "Output file (default stdout)");

    auto* select = app.add_subcommand("select", "Choose source devices and interfaces");
    select->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    select->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            return cmd_sweep(scenario_path, levels_spec, schemes_spec, mc_draws, seed, format,
                             out_path);
        }
        if (compare->parsed()) {
            return cmd_compare(scenario_path, level, schemes_spec, mc_draws, seed, out_path);
        }
        return cmd_select(scenario_path, out_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ds2d::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ds2d::InfeasibleError& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
