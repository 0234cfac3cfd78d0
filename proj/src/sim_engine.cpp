#include "fhshape/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fhshape {

void StrategyConfig::validate(const CellConfig& cell) const {
    switch (kind) {
    case StrategyKind::None:
    case StrategyKind::SchedulerThrottling:
        break;
    case StrategyKind::CellReconfiguration: {
        if (dwell_s < 0.0) throw ConfigError("strategy.dwell_s must be >= 0");
        LegalConfigSet set{cell, legal_pairs};
        set.validate();
        break;
    }
    }
}

void ScenarioConfig::validate() const {
    cell.validate();
    split.validate();
    beamformer.validate();
    link.validate();
    strategy.validate(cell);
}

LinkMode trace_link_mode(const FronthaulLink& link, const AttenuationSample& sample,
                         AttenUnits units) {
    AttenuationSample specific = sample;
    if (units == AttenUnits::TotalPathDb) {
        specific.rain_db_per_km = sample.rain_db_per_km / link.distance_km;
        specific.gas_db_per_km = sample.gas_db_per_km / link.distance_km;
    }
    return select_link_mode(link, specific);
}

SimulationReport run_scenario(const ScenarioConfig& scenario, const Trace& trace) {
    scenario.validate();
    if (trace.samples.empty()) throw ValidationError("trace has no samples");

    const LegalConfigSet legal{scenario.cell, scenario.strategy.legal_pairs};

    SimulationReport report;
    report.decisions.reserve(trace.samples.size());
    report.utilization.reserve(trace.samples.size());

    std::optional<AdaptationDecision> prev;
    for (const AttenuationSample& sample : trace.samples) {
        const LinkMode mode = trace_link_mode(scenario.link, sample, trace.units);

        AdaptationDecision d;
        switch (scenario.strategy.kind) {
        case StrategyKind::None:
            d = none_decide(scenario.cell, scenario.split, scenario.beamformer, mode.capacity_bps,
                            sample.t);
            break;
        case StrategyKind::CellReconfiguration:
            d = cr_decide(legal, scenario.split, scenario.beamformer, mode.capacity_bps, prev,
                          scenario.strategy.dwell_s, sample.t);
            break;
        case StrategyKind::SchedulerThrottling:
            d = sbt_decide(scenario.cell, scenario.split, scenario.beamformer, mode.capacity_bps,
                           scenario.strategy.extended_mode, sample.t);
            break;
        }
        prev = d;
        report.utilization.push_back(d.utilization());
        report.decisions.push_back(std::move(d));
    }

    const auto n = static_cast<double>(report.decisions.size());

    // Availability: time share per achieved rate level. Outage steps are
    // collected under level 0; keys are rounded to whole bps so equal
    // levels group reliably.
    std::map<long long, long long> level_counts;
    long long outage_steps = 0;
    double access_sum = 0.0;
    double util_sum = 0.0;
    double min_required = std::numeric_limits<double>::infinity();
    for (const AdaptationDecision& d : report.decisions) {
        if (d.outage) {
            ++outage_steps;
            ++level_counts[0];
        } else {
            ++level_counts[std::llround(d.required_fh_bps)];
            min_required = std::min(min_required, d.required_fh_bps);
        }
        access_sum += d.access_capacity_bps;
    }
    for (double u : report.utilization) util_sum += u;

    for (auto it = level_counts.rbegin(); it != level_counts.rend(); ++it) {
        report.availability.push_back(
            AvailabilityEntry{static_cast<double>(it->first), static_cast<double>(it->second) / n});
    }
    report.outage_fraction = static_cast<double>(outage_steps) / n;
    report.mean_access_bps = access_sum / n;
    report.mean_utilization = util_sum / n;
    report.min_nonoutage_required_bps = std::isfinite(min_required) ? min_required : 0.0;
    return report;
}

std::vector<StrategySummary> compare_strategies(const ScenarioConfig& scenario, const Trace& trace,
                                                const std::vector<StrategyConfig>& strategies) {
    if (strategies.size() < 2) {
        throw ConfigError("compare_strategies needs at least two strategies");
    }

    std::vector<StrategySummary> rows;
    rows.reserve(strategies.size());
    for (const StrategyConfig& strategy : strategies) {
        ScenarioConfig variant = scenario;
        variant.strategy = strategy;
        const SimulationReport report = run_scenario(variant, trace);

        StrategySummary row;
        row.kind = strategy.kind;
        row.mean_access_bps = report.mean_access_bps;
        row.outage_fraction = report.outage_fraction;
        double min_access = std::numeric_limits<double>::infinity();
        const AdaptationDecision* last = nullptr;
        for (const AdaptationDecision& d : report.decisions) {
            if (!d.outage) min_access = std::min(min_access, d.access_capacity_bps);
            if (last && !(d.active == last->active)) ++row.reconfigurations;
            last = &d;
        }
        row.min_access_bps = std::isfinite(min_access) ? min_access : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fhshape
