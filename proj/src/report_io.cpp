#include "fhshape/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fhshape {

namespace {

using ordered_json = nlohmann::ordered_json;

long long as_bps(double rate) { return std::llround(rate); }

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.good()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

ordered_json strategy_metadata(const StrategyConfig& strategy) {
    ordered_json j;
    j["kind"] = to_string(strategy.kind);
    switch (strategy.kind) {
    case StrategyKind::CellReconfiguration: {
        j["dwell_s"] = strategy.dwell_s;
        ordered_json pairs = ordered_json::array();
        for (const auto& [rb, layers] : strategy.legal_pairs) {
            pairs.push_back(ordered_json::array({rb, layers}));
        }
        j["legal_set"] = pairs;
        break;
    }
    case StrategyKind::SchedulerThrottling:
        j["extended_mode"] = strategy.extended_mode;
        break;
    case StrategyKind::None:
        break;
    }
    return j;
}

} // namespace

std::string summary_json_text(const ScenarioConfig& scenario, const Trace& trace,
                              const SimulationReport& report) {
    ordered_json j;
    j["strategy"] = strategy_metadata(scenario.strategy);
    j["samples"] = trace.samples.size();
    j["step_s"] = trace.step_s;
    j["outage_fraction"] = report.outage_fraction;
    j["mean_access_bps"] = report.mean_access_bps;
    j["mean_utilization"] = report.mean_utilization;
    j["min_nonoutage_required_bps"] = as_bps(report.min_nonoutage_required_bps);
    ordered_json availability = ordered_json::array();
    for (const AvailabilityEntry& entry : report.availability) {
        ordered_json row;
        row["required_bps"] = as_bps(entry.required_bps);
        row["fraction"] = entry.fraction;
        availability.push_back(row);
    }
    j["availability"] = availability;
    return j.dump(2) + "\n";
}

void write_timeseries_csv(std::ostream& out, const SimulationReport& report) {
    out << "t,capacity_bps,required_bps,access_bps,active_rb,active_layers,outage\n";
    char buf[192];
    for (const AdaptationDecision& d : report.decisions) {
        std::snprintf(buf, sizeof buf, "%.3f,%lld,%lld,%lld,%d,%d,%d\n", d.t,
                      as_bps(d.capacity_bps), as_bps(d.required_fh_bps),
                      as_bps(d.access_capacity_bps), d.active.active_rb, d.active.active_layers,
                      d.outage ? 1 : 0);
        out << buf;
    }
}

void write_decisions_csv(std::ostream& out, const SimulationReport& report) {
    out << "t,strategy,full_rb,full_layers,active_rb,active_layers,"
           "required_fh_bps,access_capacity_bps,capacity_bps,outage,reconfigured\n";
    char buf[256];
    for (const AdaptationDecision& d : report.decisions) {
        std::snprintf(buf, sizeof buf, "%.3f,%s,%d,%d,%d,%d,%lld,%lld,%lld,%d,%d\n", d.t,
                      to_string(d.strategy).c_str(), d.full_rb, d.full_layers, d.active.active_rb,
                      d.active.active_layers, as_bps(d.required_fh_bps),
                      as_bps(d.access_capacity_bps), as_bps(d.capacity_bps), d.outage ? 1 : 0,
                      d.reconfigured ? 1 : 0);
        out << buf;
    }
}

RunArtifacts write_run_artifacts(const std::string& out_dir, const ScenarioConfig& scenario,
                                 const Trace& trace, const SimulationReport& report) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    RunArtifacts artifacts;
    artifacts.summary_json = (std::filesystem::path(out_dir) / "summary.json").string();
    artifacts.timeseries_csv = (std::filesystem::path(out_dir) / "timeseries.csv").string();
    artifacts.decisions_csv = (std::filesystem::path(out_dir) / "decisions.csv").string();

    write_atomic(artifacts.summary_json, summary_json_text(scenario, trace, report));
    {
        std::ostringstream ts;
        write_timeseries_csv(ts, report);
        write_atomic(artifacts.timeseries_csv, ts.str());
    }
    {
        std::ostringstream ds;
        write_decisions_csv(ds, report);
        write_atomic(artifacts.decisions_csv, ds.str());
    }
    return artifacts;
}

std::string format_gbps(double bps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f Gbps", bps / 1e9);
    return buf;
}

} // namespace fhshape
