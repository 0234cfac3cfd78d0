#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fhshape/rate_model.hpp"

namespace fhshape {

enum class StrategyKind { None, CellReconfiguration, SchedulerThrottling };

std::string to_string(StrategyKind kind);

/// The discrete configurations a cell may switch between at runtime:
/// (n_rb, n_mimo) pairs over a base template that supplies every other
/// parameter. Reconfiguration applies the pair to both link directions
/// when the base carries an uplink config.
struct LegalConfigSet {
    CellConfig base;
    std::vector<std::pair<int, int>> pairs; ///< (n_rb, n_mimo)

    void validate() const;
    CellConfig materialize(int n_rb, int n_mimo) const;
    std::pair<int, int> full_pair() const; ///< (max n_rb, max n_mimo)
};

/// Share of the resource grid the scheduler may allocate.
struct ThrottleState {
    int active_rb = 0;
    int active_layers = 0;

    friend bool operator==(const ThrottleState&, const ThrottleState&) = default;
};

/// Per-timestep outcome of an adaptation strategy. `active` holds the
/// chosen (n_rb, n_mimo) for cell reconfiguration and the throttle state
/// for scheduler throttling; (0, 0) in outage. `last_reconfig_t` carries
/// the reconfiguration clock between steps for the dwell rule.
struct AdaptationDecision {
    double t = 0.0;
    StrategyKind strategy = StrategyKind::None;
    int full_rb = 0;
    int full_layers = 0;
    ThrottleState active;
    double required_fh_bps = 0.0;
    double access_capacity_bps = 0.0;
    double capacity_bps = 0.0;
    bool outage = false;
    bool reconfigured = false;
    double last_reconfig_t = 0.0;

    double utilization() const;
};

/// Cell Reconfiguration: among legal configurations whose total fronthaul
/// rate fits capacity_bps, picks the one maximizing access capacity
/// (ties: keep more layers, then more resource blocks). Within dwell_s of
/// the last reconfiguration the previous configuration is retained unless
/// it no longer fits, in which case it is downgraded immediately. When no
/// configuration fits, the decision is an outage and reports the smallest
/// sustainable rate as required.
AdaptationDecision cr_decide(const LegalConfigSet& set, const SplitChain& chain,
                             const BeamformerConfig& bf, double capacity_bps,
                             const std::optional<AdaptationDecision>& prev, double dwell_s,
                             double t);

/// Scheduler-Based Throttling: keeps the cell configuration and instead
/// caps the schedulable resource blocks. Radio traffic and digital
/// beamforming control scale with the active share of the grid; analog
/// phase-shifter control does not. Default mode keeps all layers active;
/// extended mode may also deactivate layers. Picks the feasible state of
/// maximum access capacity.
AdaptationDecision sbt_decide(const CellConfig& cfg, const SplitChain& chain,
                              const BeamformerConfig& bf, double capacity_bps,
                              bool extended_mode = false, double t = 0.0);

/// Brute-force reference for sbt_decide: enumerates every active_rb (and
/// in extended mode every (active_rb, active_layers) pair) and returns
/// the feasible maximizer of access capacity, or nullopt when even the
/// all-off state does not fit.
std::optional<ThrottleState> sbt_oracle(const CellConfig& cfg, const SplitChain& chain,
                                        const BeamformerConfig& bf, double capacity_bps,
                                        bool extended_mode = false);

/// Baseline without adaptation: the full cell runs whenever its total
/// rate fits and drops entirely otherwise.
AdaptationDecision none_decide(const CellConfig& cfg, const SplitChain& chain,
                               const BeamformerConfig& bf, double capacity_bps, double t);

/// Default legal set when none is configured: a bandwidth-halving ladder
/// (n_rb, n_rb/2, n_rb/4, ...) with all layers kept active.
std::vector<std::pair<int, int>> halving_legal_pairs(const CellConfig& cfg);

} // namespace fhshape
