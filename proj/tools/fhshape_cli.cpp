// fhshape — fronthaul dimensioning and capacity-adaptation simulator.
//
// Subcommands:
//   rate      print fronthaul rates and access capacity for a scenario
//   simulate  replay an attenuation trace and write run artifacts
//   sweep     tabulate CR vs SBT access capacity over a capacity range
//   synth     generate a synthetic rain-event attenuation trace

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fhshape/adaptation.hpp"
#include "fhshape/report_io.hpp"
#include "fhshape/scenario.hpp"
#include "fhshape/sim_engine.hpp"
#include "fhshape/trace_io.hpp"

namespace {

// Exit codes: 0 ok, 2 bad configuration, 3 bad trace data, 4 I/O failure,
// 1 anything else.
constexpr int kExitConfig = 2;
constexpr int kExitTrace = 3;
constexpr int kExitIo = 4;

struct RateArgs {
    std::string config_path;
};

struct SimulateArgs {
    std::string config_path;
    std::string trace_path;
    std::string out_dir = "out";
    std::string strategy_override;
    double step_override = 0.0;
};

struct SweepArgs {
    std::string config_path;
    double from_bps = 0.0;
    double to_bps = 30e9;
    double step_bps = 0.1e9;
    std::string out_path;
};

struct SynthArgs {
    std::string out_path = "trace.csv";
    double duration_s = 86400.0;
    double step_s = 1.0;
    double event_start_s = 32400.0; // 09:00
    double event_duration_s = 3600.0;
    double peak_mm_h = 34.0;
    std::string shape = "triangular";
    double k_coeff = 1.5;
    double alpha_coeff = 0.74;
    double gas_db_per_km = 3.0;
};

long long bps(double rate) { return std::llround(rate); }

void apply_strategy_override(fhshape::ScenarioConfig& scenario, const std::string& name) {
    if (name.empty()) return;
    if (name == "none") {
        scenario.strategy.kind = fhshape::StrategyKind::None;
    } else if (name == "cr") {
        scenario.strategy.kind = fhshape::StrategyKind::CellReconfiguration;
        if (scenario.strategy.legal_pairs.empty()) {
            scenario.strategy.legal_pairs = fhshape::halving_legal_pairs(scenario.cell);
        }
    } else if (name == "sbt") {
        scenario.strategy.kind = fhshape::StrategyKind::SchedulerThrottling;
    } else {
        throw fhshape::ConfigError("--strategy must be one of none, cr, sbt");
    }
    scenario.validate();
}

int cmd_rate(const RateArgs& args) {
    const fhshape::LoadedScenario loaded = fhshape::load_scenario(args.config_path);
    const fhshape::ScenarioConfig& s = loaded.scenario;
    const fhshape::RateBreakdown breakdown =
        fhshape::total_fh_rate(s.cell, s.split, s.beamformer);
    const double access = fhshape::access_capacity(s.cell);

    std::printf("radio access:       %s (%lld bps)\n",
                fhshape::format_gbps(breakdown.radio_access_bps).c_str(),
                bps(breakdown.radio_access_bps));
    std::printf("beamformer control: %s (%lld bps)\n",
                fhshape::format_gbps(breakdown.bf_control_bps).c_str(),
                bps(breakdown.bf_control_bps));
    std::printf("total fronthaul:    %s (%lld bps)\n",
                fhshape::format_gbps(breakdown.total_bps).c_str(), bps(breakdown.total_bps));
    std::printf("access capacity:    %s (%lld bps)\n", fhshape::format_gbps(access).c_str(),
                bps(access));
    return 0;
}

int cmd_simulate(const SimulateArgs& args) {
    fhshape::LoadedScenario loaded = fhshape::load_scenario(args.config_path);
    apply_strategy_override(loaded.scenario, args.strategy_override);
    if (args.step_override > 0.0) loaded.trace_schema.resample_step_s = args.step_override;

    std::string trace_path = args.trace_path;
    if (trace_path.empty()) trace_path = loaded.scenario.trace_path;
    if (trace_path.empty()) {
        throw fhshape::ConfigError("no trace given (pass one or set \"trace\" in the config)");
    }

    const fhshape::Trace trace = fhshape::load_trace(trace_path, loaded.trace_schema);
    const fhshape::SimulationReport report = fhshape::run_scenario(loaded.scenario, trace);
    const fhshape::RunArtifacts artifacts =
        fhshape::write_run_artifacts(args.out_dir, loaded.scenario, trace, report);

    std::printf("%s: %zu steps, outage %.4f%%, mean access %s, artifacts in %s\n",
                fhshape::to_string(loaded.scenario.strategy.kind).c_str(),
                report.decisions.size(), report.outage_fraction * 100.0,
                fhshape::format_gbps(report.mean_access_bps).c_str(), args.out_dir.c_str());
    return 0;
}

int cmd_sweep(const SweepArgs& args) {
    const fhshape::LoadedScenario loaded = fhshape::load_scenario(args.config_path);
    const fhshape::ScenarioConfig& s = loaded.scenario;
    if (!(args.step_bps > 0.0)) throw fhshape::ConfigError("sweep step must be > 0");
    if (args.to_bps < args.from_bps) {
        throw fhshape::ConfigError("sweep range is inverted (--to is below --from)");
    }

    fhshape::LegalConfigSet legal{s.cell, s.strategy.legal_pairs};
    if (legal.pairs.empty()) legal.pairs = fhshape::halving_legal_pairs(s.cell);
    legal.validate();

    std::ostringstream out;
    out << "capacity_bps,cr_access_bps,sbt_access_bps\n";
    char buf[96];
    const auto steps =
        static_cast<long long>(std::floor((args.to_bps - args.from_bps) / args.step_bps + 1e-9));
    for (long long i = 0; i <= steps; ++i) {
        const double capacity = args.from_bps + static_cast<double>(i) * args.step_bps;
        const fhshape::AdaptationDecision cr =
            fhshape::cr_decide(legal, s.split, s.beamformer, capacity, std::nullopt, 0.0, 0.0);
        const fhshape::AdaptationDecision sbt = fhshape::sbt_decide(
            s.cell, s.split, s.beamformer, capacity, s.strategy.extended_mode, 0.0);
        std::snprintf(buf, sizeof buf, "%lld,%lld,%lld\n", bps(capacity),
                      bps(cr.outage ? 0.0 : cr.access_capacity_bps),
                      bps(sbt.outage ? 0.0 : sbt.access_capacity_bps));
        out << buf;
    }

    if (args.out_path.empty()) {
        std::cout << out.str();
    } else {
        const std::string tmp = args.out_path + ".tmp";
        {
            std::ofstream file(tmp);
            if (!file) throw fhshape::IoError("cannot write '" + tmp + "'");
            file << out.str();
            if (!file.good()) throw fhshape::IoError("write failed for '" + tmp + "'");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, args.out_path, ec);
        if (ec) throw fhshape::IoError("cannot move '" + tmp + "' into place: " + ec.message());
    }
    return 0;
}

int cmd_synth(const SynthArgs& args) {
    fhshape::RampShape shape = fhshape::RampShape::Triangular;
    if (args.shape == "trapezoidal") shape = fhshape::RampShape::Trapezoidal;
    else if (args.shape != "triangular") {
        throw fhshape::ConfigError("--shape must be triangular or trapezoidal");
    }

    const fhshape::Trace trace = fhshape::synth_day_trace(
        args.duration_s, args.event_start_s, args.event_duration_s, args.peak_mm_h, shape,
        args.k_coeff, args.alpha_coeff, args.gas_db_per_km, args.step_s);
    fhshape::save_trace(args.out_path, trace);
    std::printf("wrote %zu samples to %s\n", trace.samples.size(), args.out_path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"C-RAN fronthaul dimensioning and capacity-adaptation simulator"};
    app.require_subcommand(1);

    RateArgs rate_args;
    CLI::App* rate = app.add_subcommand("rate", "Print fronthaul rates and access capacity");
    rate->add_option("config", rate_args.config_path, "scenario JSON")->required();

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Replay a trace under a strategy");
    simulate->add_option("config", sim_args.config_path, "scenario JSON")->required();
    simulate->add_option("trace", sim_args.trace_path, "attenuation trace CSV");
    simulate->add_option("-o,--out", sim_args.out_dir, "output directory");
    simulate->add_option("--strategy", sim_args.strategy_override, "override: none|cr|sbt");
    simulate->add_option("--step", sim_args.step_override, "resample step override, seconds");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate CR/SBT access over capacities");
    sweep->add_option("config", sweep_args.config_path, "scenario JSON")->required();
    sweep->add_option("--from", sweep_args.from_bps, "first capacity, bps");
    sweep->add_option("--to", sweep_args.to_bps, "last capacity, bps");
    sweep->add_option("--step", sweep_args.step_bps, "capacity step, bps");
    sweep->add_option("-o,--out", sweep_args.out_path, "output CSV (stdout when omitted)");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic attenuation trace");
    synth->add_option("-o,--out", synth_args.out_path, "output CSV path");
    synth->add_option("--duration", synth_args.duration_s, "trace duration, seconds");
    synth->add_option("--step", synth_args.step_s, "sample step, seconds");
    synth->add_option("--event-start", synth_args.event_start_s, "event start, seconds");
    synth->add_option("--event-duration", synth_args.event_duration_s, "event length, seconds");
    synth->add_option("--peak", synth_args.peak_mm_h, "peak rain rate, mm/h");
    synth->add_option("--shape", synth_args.shape, "triangular|trapezoidal");
    synth->add_option("--k", synth_args.k_coeff, "rain power-law k");
    synth->add_option("--alpha", synth_args.alpha_coeff, "rain power-law alpha");
    synth->add_option("--gas", synth_args.gas_db_per_km, "gas attenuation, dB/km");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed()) return cmd_rate(rate_args);
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (synth->parsed()) return cmd_synth(synth_args);
    } catch (const fhshape::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fhshape::ParseError& e) {
        std::cerr << "trace error: " << e.what() << "\n";
        return kExitTrace;
    } catch (const fhshape::ValidationError& e) {
        std::cerr << "trace error: " << e.what() << "\n";
        return kExitTrace;
    } catch (const fhshape::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
