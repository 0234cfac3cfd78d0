#pragma once

#include <string>

#include "fhshape/sim_engine.hpp"
#include "fhshape/trace_io.hpp"

namespace fhshape {

/// A scenario document plus the trace-ingestion options it carries.
struct LoadedScenario {
    ScenarioConfig scenario;
    TraceSchema trace_schema;
};

/// Parses a scenario JSON document (sections cell / split / beamformer /
/// link / strategy, plus optional trace and trace_options). Missing
/// sections fall back to the documented defaults; the result is fully
/// validated. Throws ConfigError with the offending key or invariant.
LoadedScenario parse_scenario(const std::string& json_text);

/// parse_scenario on a file; throws IoError when the file cannot be read.
LoadedScenario load_scenario(const std::string& path);

/// Resource blocks available for a channel bandwidth at a subcarrier
/// spacing, per the FR2 transmission-bandwidth tables. Throws ConfigError
/// for combinations outside the table.
int fr2_rb_count(double bw_mhz, double scs_khz);

} // namespace fhshape
