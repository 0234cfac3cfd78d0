#pragma once

#include <iosfwd>
#include <string>

#include "fhshape/sim_engine.hpp"

namespace fhshape {

/// Paths of the files one simulation run leaves behind.
struct RunArtifacts {
    std::string summary_json;
    std::string timeseries_csv;
    std::string decisions_csv;
};

/// Serialized summary document (availability table, means, outage
/// fraction, strategy metadata). Stable key order and formatting.
std::string summary_json_text(const ScenarioConfig& scenario, const Trace& trace,
                              const SimulationReport& report);

/// Per-step CSV: t,capacity_bps,required_bps,access_bps,active_rb,active_layers,outage.
void write_timeseries_csv(std::ostream& out, const SimulationReport& report);

/// Full decision log as CSV.
void write_decisions_csv(std::ostream& out, const SimulationReport& report);

/// Writes summary.json, timeseries.csv and decisions.csv under out_dir
/// (created if missing). Each file is written to a temporary name and
/// renamed into place, so a failed run leaves no partial artifact.
RunArtifacts write_run_artifacts(const std::string& out_dir, const ScenarioConfig& scenario,
                                 const Trace& trace, const SimulationReport& report);

/// Rate formatted in Gbps with two decimals, e.g. "23.28 Gbps".
std::string format_gbps(double bps);

} // namespace fhshape
