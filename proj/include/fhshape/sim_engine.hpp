#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fhshape/adaptation.hpp"
#include "fhshape/link_channel.hpp"
#include "fhshape/rate_model.hpp"
#include "fhshape/trace_io.hpp"

namespace fhshape {

/// Parameters of the selected adaptation strategy.
struct StrategyConfig {
    StrategyKind kind = StrategyKind::None;
    double dwell_s = 300.0;                      ///< cell reconfiguration only
    std::vector<std::pair<int, int>> legal_pairs; ///< cell reconfiguration only
    bool extended_mode = false;                  ///< scheduler throttling only

    void validate(const CellConfig& cell) const;
};

/// Everything one simulation run needs: the cell under test, its split
/// and beamformer, the fronthaul link model and the adaptation strategy.
/// `trace_path` is an optional pointer to the attenuation trace to
/// replay; the CLI resolves it when no trace is passed explicitly.
struct ScenarioConfig {
    CellConfig cell;
    SplitChain split;
    BeamformerConfig beamformer;
    FronthaulLink link;
    StrategyConfig strategy;
    std::string trace_path;

    void validate() const;
};

/// Fraction of the run spent at one achieved fronthaul rate level
/// (required_bps == 0 collects the outage steps).
struct AvailabilityEntry {
    double required_bps = 0.0;
    double fraction = 0.0;
};

struct SimulationReport {
    std::vector<AdaptationDecision> decisions;  ///< one per trace sample
    std::vector<AvailabilityEntry> availability; ///< sorted by rate, descending
    std::vector<double> utilization;            ///< active share of the grid per step
    double outage_fraction = 0.0;
    double mean_access_bps = 0.0;               ///< outage steps count as zero
    double min_nonoutage_required_bps = 0.0;    ///< 0 when every step is an outage
    double mean_utilization = 0.0;
};

/// Replays the trace sample by sample: derives the instantaneous link
/// capacity, applies the strategy, and aggregates the decision log into
/// availability and utilization statistics. Deterministic for a given
/// scenario and trace. Throws ValidationError for an empty trace.
SimulationReport run_scenario(const ScenarioConfig& scenario, const Trace& trace);

/// One comparison row per strategy, produced by run_scenario on the
/// identical trace.
struct StrategySummary {
    StrategyKind kind = StrategyKind::None;
    double mean_access_bps = 0.0;
    double min_access_bps = 0.0; ///< over non-outage steps; 0 when always out
    double outage_fraction = 0.0;
    long reconfigurations = 0;   ///< steps whose active state differs from the previous
};

/// Runs every strategy on the same scenario and trace. Requires at least
/// two strategies.
std::vector<StrategySummary> compare_strategies(const ScenarioConfig& scenario, const Trace& trace,
                                                const std::vector<StrategyConfig>& strategies);

/// Instantaneous link capacity for one trace sample, honoring the
/// trace's attenuation units (total-path values are converted to
/// specific attenuation over the link distance).
LinkMode trace_link_mode(const FronthaulLink& link, const AttenuationSample& sample,
                         AttenUnits units);

} // namespace fhshape
