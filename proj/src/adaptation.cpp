#include "fhshape/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fhshape {

namespace {

constexpr double kNeverReconfigured = -std::numeric_limits<double>::infinity();

// Rates of one cell split into the part that scales with the active share
// of the resource grid and the part that does not. Radio traffic and
// digital beamforming weights follow the scheduled resources; analog
// phase-shifter control is per antenna element and stays constant.
struct ScalableRates {
    double radio_full = 0.0;
    double bf_scaled_full = 0.0;
    double bf_fixed = 0.0;
    long long full_units = 0; // n_rb * n_mimo

    double required(long long active_units) const {
        const double share =
            full_units > 0 ? static_cast<double>(active_units) / static_cast<double>(full_units)
                           : 0.0;
        return radio_full * share + (bf_fixed + bf_scaled_full * share);
    }
};

ScalableRates split_rates(const CellConfig& cfg, const SplitChain& chain,
                          const BeamformerConfig& bf) {
    ScalableRates rates;
    const RateBreakdown full = total_fh_rate(cfg, chain, bf);
    rates.radio_full = full.radio_access_bps;
    rates.full_units = static_cast<long long>(cfg.n_rb) * cfg.n_mimo;
    switch (bf.kind) {
    case BeamformerKind::Analog:
        rates.bf_fixed = full.bf_control_bps;
        break;
    case BeamformerKind::Digital:
        rates.bf_scaled_full = full.bf_control_bps;
        break;
    case BeamformerKind::Hybrid: {
        BeamformerConfig part = bf;
        part.kind = BeamformerKind::Analog;
        rates.bf_fixed = bf_control_rate(part, cfg);
        part.kind = BeamformerKind::Digital;
        rates.bf_scaled_full = bf_control_rate(part, cfg);
        break;
    }
    }
    return rates;
}

// Largest active_rb in [0, n_rb] with required <= capacity for a fixed
// layer count, or -1 when even zero does not fit. Closed-form estimate
// plus a local adjustment so boundaries match exhaustive enumeration.
int max_active_rb(const ScalableRates& rates, int n_rb, int layers, double capacity_bps) {
    const auto units = [&](int r) { return static_cast<long long>(r) * layers; };
    if (rates.required(0) > capacity_bps) return -1;
    if (n_rb == 0 || layers == 0) return 0;

    const double per_rb =
        (rates.radio_full + rates.bf_scaled_full) *
        (static_cast<double>(layers) / static_cast<double>(rates.full_units));
    int r = n_rb;
    if (per_rb > 0.0) {
        const double estimate = std::floor((capacity_bps - rates.bf_fixed) / per_rb);
        r = static_cast<int>(std::clamp(estimate, 0.0, static_cast<double>(n_rb)));
    }
    while (r > 0 && rates.required(units(r)) > capacity_bps) --r;
    while (r < n_rb && rates.required(units(r + 1)) <= capacity_bps) ++r;
    return r;
}

double scaled_access(double access_full, const ScalableRates& rates, long long active_units) {
    if (rates.full_units <= 0) return 0.0;
    return access_full * (static_cast<double>(active_units) / static_cast<double>(rates.full_units));
}

struct CrCandidate {
    std::pair<int, int> pair;
    double required = 0.0;
    double access = 0.0;
};

// Higher access wins; ties keep more layers (preserving spatial-stream
// hardware state), then more resource blocks.
bool cr_better(const CrCandidate& a, const CrCandidate& b) {
    if (a.access != b.access) return a.access > b.access;
    if (a.pair.second != b.pair.second) return a.pair.second > b.pair.second;
    return a.pair.first > b.pair.first;
}

} // namespace

std::string to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::None: return "none";
    case StrategyKind::CellReconfiguration: return "cr";
    case StrategyKind::SchedulerThrottling: return "sbt";
    }
    return "unknown";
}

void LegalConfigSet::validate() const {
    base.validate();
    if (pairs.empty()) throw ConfigError("strategy.legal_set must not be empty");
    int max_rb = 0, max_layers = 0;
    for (const auto& [rb, layers] : pairs) {
        if (rb < 0 || layers < 0) throw ConfigError("strategy.legal_set entries must be >= 0");
        max_rb = std::max(max_rb, rb);
        max_layers = std::max(max_layers, layers);
    }
    const bool has_full = std::find(pairs.begin(), pairs.end(),
                                    std::make_pair(max_rb, max_layers)) != pairs.end();
    if (!has_full) {
        throw ConfigError("strategy.legal_set must contain the full configuration (" +
                          std::to_string(max_rb) + ", " + std::to_string(max_layers) + ")");
    }
}

CellConfig LegalConfigSet::materialize(int n_rb, int n_mimo) const {
    CellConfig cfg = base;
    cfg.n_rb = n_rb;
    cfg.n_mimo = n_mimo;
    if (base.uplink) {
        auto ul = std::make_shared<CellConfig>(*base.uplink);
        ul->n_rb = n_rb;
        ul->n_mimo = n_mimo;
        cfg.uplink = std::move(ul);
    }
    return cfg;
}

std::pair<int, int> LegalConfigSet::full_pair() const {
    int max_rb = 0, max_layers = 0;
    for (const auto& [rb, layers] : pairs) {
        max_rb = std::max(max_rb, rb);
        max_layers = std::max(max_layers, layers);
    }
    return {max_rb, max_layers};
}

double AdaptationDecision::utilization() const {
    const long long denom = static_cast<long long>(full_rb) * full_layers;
    if (denom <= 0) return 0.0;
    return static_cast<double>(static_cast<long long>(active.active_rb) * active.active_layers) /
           static_cast<double>(denom);
}

AdaptationDecision cr_decide(const LegalConfigSet& set, const SplitChain& chain,
                             const BeamformerConfig& bf, double capacity_bps,
                             const std::optional<AdaptationDecision>& prev, double dwell_s,
                             double t) {
    const auto [full_rb, full_layers] = set.full_pair();

    // Digital beamforming weights are per frequency element, so their
    // stream follows the reconfigured bandwidth.
    const auto bf_for = [&](int rb) {
        BeamformerConfig adjusted = bf;
        if (bf.kind != BeamformerKind::Analog && set.base.n_rb > 0) {
            adjusted.n_fe = static_cast<int>(std::llround(
                static_cast<double>(bf.n_fe) * rb / static_cast<double>(set.base.n_rb)));
        }
        return adjusted;
    };
    const auto candidate_for = [&](std::pair<int, int> pair) {
        const CellConfig cfg = set.materialize(pair.first, pair.second);
        CrCandidate cand;
        cand.pair = pair;
        cand.required = total_fh_rate(cfg, chain, bf_for(pair.first)).total_bps;
        cand.access = access_capacity(cfg);
        return cand;
    };

    std::optional<CrCandidate> best;
    double min_required = std::numeric_limits<double>::infinity();
    for (const auto& pair : set.pairs) {
        const CrCandidate cand = candidate_for(pair);
        min_required = std::min(min_required, cand.required);
        if (cand.required > capacity_bps) continue;
        if (!best || cr_better(cand, *best)) best = cand;
    }

    AdaptationDecision d;
    d.t = t;
    d.strategy = StrategyKind::CellReconfiguration;
    d.full_rb = full_rb;
    d.full_layers = full_layers;
    d.capacity_bps = capacity_bps;

    const auto choose = [&](const CrCandidate& cand, bool reconfigured, double clock) {
        d.active = ThrottleState{cand.pair.first, cand.pair.second};
        d.required_fh_bps = cand.required;
        d.access_capacity_bps = cand.access;
        d.outage = d.access_capacity_bps == 0.0;
        d.reconfigured = reconfigured;
        d.last_reconfig_t = clock;
    };
    const auto choose_outage = [&](bool reconfigured, double clock) {
        d.active = ThrottleState{0, 0};
        d.required_fh_bps = min_required;
        d.access_capacity_bps = 0.0;
        d.outage = true;
        d.reconfigured = reconfigured;
        d.last_reconfig_t = clock;
    };

    if (!prev) {
        // The cell starts from its full configuration; anything else
        // already counts as a reconfiguration.
        if (best) {
            const bool changed = best->pair != std::make_pair(full_rb, full_layers);
            choose(*best, changed, changed ? t : kNeverReconfigured);
        } else {
            choose_outage(true, t);
        }
        return d;
    }

    const bool within_dwell = t - prev->last_reconfig_t < dwell_s;
    if (prev->outage) {
        if (!within_dwell && best) {
            choose(*best, true, t);
        } else {
            choose_outage(false, prev->last_reconfig_t);
        }
        return d;
    }

    const CrCandidate held = candidate_for({prev->active.active_rb, prev->active.active_layers});
    if (held.required <= capacity_bps) {
        if (!within_dwell && best && best->pair != held.pair) {
            choose(*best, true, t);
        } else {
            choose(held, false, prev->last_reconfig_t);
        }
    } else if (best) {
        choose(*best, true, t); // forced downgrade, exempt from dwell
    } else {
        choose_outage(true, t);
    }
    return d;
}

AdaptationDecision sbt_decide(const CellConfig& cfg, const SplitChain& chain,
                              const BeamformerConfig& bf, double capacity_bps, bool extended_mode,
                              double t) {
    const ScalableRates rates = split_rates(cfg, chain, bf);
    const double access_full = access_capacity(cfg);

    std::optional<ThrottleState> best;
    const int r_default = max_active_rb(rates, cfg.n_rb, cfg.n_mimo, capacity_bps);
    if (r_default >= 0) best = ThrottleState{r_default, cfg.n_mimo};
    if (extended_mode && best) {
        // A reduced layer count can fit a finer-grained resource budget.
        long long best_units =
            static_cast<long long>(best->active_rb) * best->active_layers;
        for (int layers = cfg.n_mimo - 1; layers >= 0; --layers) {
            const int r = max_active_rb(rates, cfg.n_rb, layers, capacity_bps);
            if (r < 0) continue;
            const long long units = static_cast<long long>(r) * layers;
            if (units > best_units) {
                best = ThrottleState{r, layers};
                best_units = units;
            }
        }
    }

    AdaptationDecision d;
    d.t = t;
    d.strategy = StrategyKind::SchedulerThrottling;
    d.full_rb = cfg.n_rb;
    d.full_layers = cfg.n_mimo;
    d.capacity_bps = capacity_bps;
    if (best) {
        const long long units = static_cast<long long>(best->active_rb) * best->active_layers;
        d.active = *best;
        d.required_fh_bps = rates.required(units);
        d.access_capacity_bps = scaled_access(access_full, rates, units);
    } else {
        d.active = ThrottleState{0, 0};
        d.required_fh_bps = rates.required(0); // smallest sustainable rate, still unmet
        d.access_capacity_bps = 0.0;
    }
    d.outage = d.access_capacity_bps == 0.0;
    return d;
}

std::optional<ThrottleState> sbt_oracle(const CellConfig& cfg, const SplitChain& chain,
                                        const BeamformerConfig& bf, double capacity_bps,
                                        bool extended_mode) {
    const ScalableRates rates = split_rates(cfg, chain, bf);

    std::optional<ThrottleState> best;
    long long best_units = -1;
    const auto consider = [&](int r, int layers) {
        const long long units = static_cast<long long>(r) * layers;
        if (rates.required(units) > capacity_bps) return;
        const bool better =
            units > best_units ||
            (units == best_units && best &&
             (layers > best->active_layers ||
              (layers == best->active_layers && r > best->active_rb)));
        if (!best || better) {
            best = ThrottleState{r, layers};
            best_units = units;
        }
    };

    if (extended_mode) {
        for (int layers = 0; layers <= cfg.n_mimo; ++layers)
            for (int r = 0; r <= cfg.n_rb; ++r) consider(r, layers);
    } else {
        for (int r = 0; r <= cfg.n_rb; ++r) consider(r, cfg.n_mimo);
    }
    return best;
}

std::vector<std::pair<int, int>> halving_legal_pairs(const CellConfig& cfg) {
    std::vector<std::pair<int, int>> pairs;
    for (int rb = cfg.n_rb; rb >= 1; rb /= 2) {
        pairs.emplace_back(rb, cfg.n_mimo);
    }
    if (pairs.empty()) pairs.emplace_back(cfg.n_rb, cfg.n_mimo);
    return pairs;
}

AdaptationDecision none_decide(const CellConfig& cfg, const SplitChain& chain,
                               const BeamformerConfig& bf, double capacity_bps, double t) {
    const RateBreakdown full = total_fh_rate(cfg, chain, bf);

    AdaptationDecision d;
    d.t = t;
    d.strategy = StrategyKind::None;
    d.full_rb = cfg.n_rb;
    d.full_layers = cfg.n_mimo;
    d.capacity_bps = capacity_bps;
    d.required_fh_bps = full.total_bps;
    if (full.total_bps <= capacity_bps) {
        d.active = ThrottleState{cfg.n_rb, cfg.n_mimo};
        d.access_capacity_bps = access_capacity(cfg);
    } else {
        d.active = ThrottleState{0, 0};
        d.access_capacity_bps = 0.0;
    }
    d.outage = d.access_capacity_bps == 0.0;
    return d;
}

} // namespace fhshape
