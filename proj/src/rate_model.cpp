#include "fhshape/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fhshape {

namespace {

bool is_supported_qm(int q_m) {
    return q_m == 2 || q_m == 4 || q_m == 6 || q_m == 8 || q_m == 10;
}

// Payload factor of the QAM modulation block: Q_M bits in, one IQ sample
// (n_iq bits) out.
double modulation_factor(const CellConfig& cfg) {
    return static_cast<double>(cfg.n_iq) / static_cast<double>(cfg.q_m);
}

double refresh_period(const BeamformerConfig& bf, const CellConfig& cfg) {
    return bf.switch_period_s > 0.0 ? bf.switch_period_s : cfg.t_s;
}

double analog_part(const BeamformerConfig& bf, double period_s) {
    return static_cast<double>(bf.n_ant) * static_cast<double>(bf.b_ps) / period_s;
}

double digital_part(const BeamformerConfig& bf, const CellConfig& cfg, double period_s) {
    return static_cast<double>(bf.n_fe) * static_cast<double>(cfg.n_mimo) *
           static_cast<double>(bf.n_rfc) * static_cast<double>(bf.b_w) / period_s;
}

// Duplex-combined radio-access rate for one split chain.
double radio_access_rate(const CellConfig& cfg, const SplitChain& chain) {
    const double dl = fh_rate_generic(cfg, chain);
    if (cfg.duplex == DuplexMode::Fdd) {
        if (!cfg.uplink) {
            throw ConfigError("cell.duplex is FDD but no uplink config is set");
        }
        return dl + fh_rate_generic(*cfg.uplink, chain);
    }
    if (cfg.uplink) {
        return std::max(dl, fh_rate_generic(*cfg.uplink, chain));
    }
    return dl;
}

} // namespace

void CellConfig::validate() const {
    if (n_rb < 0) throw ConfigError("cell.n_rb must be >= 0 (got " + std::to_string(n_rb) + ")");
    if (n_sc < 1) throw ConfigError("cell.n_sc must be >= 1 (got " + std::to_string(n_sc) + ")");
    if (n_mimo < 0) throw ConfigError("cell.n_mimo must be >= 0 (got " + std::to_string(n_mimo) + ")");
    if (!is_supported_qm(q_m)) {
        throw ConfigError("cell.q_m must be one of {2,4,6,8,10} (got " + std::to_string(q_m) + ")");
    }
    if (n_iq < q_m) {
        throw ConfigError("cell.n_iq must be >= q_m (got n_iq=" + std::to_string(n_iq) +
                          ", q_m=" + std::to_string(q_m) + ")");
    }
    if (!(t_s > 0.0)) throw ConfigError("cell.t_s must be > 0");
    if (scs_khz > 0.0) {
        const double derived = symbol_duration(scs_khz);
        if (std::abs(t_s - derived) > 1e-9 * derived) {
            throw ConfigError("cell.t_s is inconsistent with cell.scs_khz (expected " +
                              std::to_string(derived) + " s)");
        }
    }
    if (!(r_max > 0.0 && r_max <= 1.0)) throw ConfigError("cell.r_max must be in (0, 1]");
    if (!(oh >= 0.0 && oh < 1.0)) throw ConfigError("cell.oh must be in [0, 1)");
    if (duplex == DuplexMode::Tdd && !(f_tdd_dl > 0.0 && f_tdd_dl <= 1.0)) {
        throw ConfigError("cell.f_tdd_dl must be in (0, 1]");
    }
    if (duplex == DuplexMode::Fdd && !uplink) {
        throw ConfigError("cell.duplex is FDD but no uplink config is set");
    }
    if (uplink) {
        if (uplink->uplink) throw ConfigError("cell.uplink must not itself carry an uplink config");
        uplink->validate();
    }
}

void SplitChain::validate() const {
    if (!(coding_factor >= 1.0)) throw ConfigError("split.coding_factor must be >= 1");
    if (!(f_rm > 0.0)) throw ConfigError("split.f_rm must be > 0");
    if (!(f_ofdm >= 1.0)) throw ConfigError("split.f_ofdm must be >= 1");
}

void BeamformerConfig::validate() const {
    if (n_ant < 0 || b_ps < 0 || n_fe < 0 || n_rfc < 0 || b_w < 0) {
        throw ConfigError("beamformer counts must be >= 0");
    }
    const bool needs_analog = kind == BeamformerKind::Analog || kind == BeamformerKind::Hybrid;
    const bool needs_digital = kind == BeamformerKind::Digital || kind == BeamformerKind::Hybrid;
    if (needs_analog && (n_ant < 1 || b_ps < 1)) {
        throw ConfigError("analog beamforming requires n_ant >= 1 and b_ps >= 1");
    }
    if (needs_digital && (n_fe < 1 || n_rfc < 1 || b_w < 1)) {
        throw ConfigError("digital beamforming requires n_fe, n_rfc and b_w >= 1");
    }
    if (switch_period_s < 0.0) throw ConfigError("beamformer.switch_period_s must be >= 0");
}

double symbol_duration(double scs_khz) {
    int mu = -1;
    if (scs_khz == 15.0) mu = 0;
    else if (scs_khz == 30.0) mu = 1;
    else if (scs_khz == 60.0) mu = 2;
    else if (scs_khz == 120.0) mu = 3;
    else if (scs_khz == 240.0) mu = 4;
    if (mu < 0) {
        throw ConfigError("unsupported subcarrier spacing " + std::to_string(scs_khz) +
                          " kHz (expected one of 15, 30, 60, 120, 240)");
    }
    const double slot_s = 1e-3 / static_cast<double>(1 << mu);
    return slot_s / 14.0; // 14 symbols per slot, normal cyclic prefix
}

double fh_rate_split_iid(const CellConfig& cfg) {
    return static_cast<double>(cfg.n_rb) * static_cast<double>(cfg.n_sc) *
           static_cast<double>(cfg.n_mimo) * static_cast<double>(cfg.n_iq) / cfg.t_s;
}

double fh_rate_split_id(const CellConfig& cfg) {
    return static_cast<double>(cfg.n_rb) * static_cast<double>(cfg.n_sc) *
           static_cast<double>(cfg.n_mimo) * static_cast<double>(cfg.q_m) / cfg.t_s;
}

double fh_rate_generic(const CellConfig& cfg, const SplitChain& chain) {
    switch (chain.split_point) {
    case SplitPoint::SplitID:
        return fh_rate_split_id(cfg);
    case SplitPoint::SplitIID:
        return fh_rate_split_iid(cfg);
    case SplitPoint::BelowIID:
        return fh_rate_split_iid(cfg) * chain.f_ofdm;
    }
    throw ConfigError("unknown split point");
}

double chain_factor_from_mac(const SplitChain& chain, const CellConfig& cfg, SplitPoint point) {
    // Blocks from the MAC towards the antenna: coding, rate matching
    // (both above SplitID), modulation (above SplitIID), OFDM (below it).
    double factor = chain.coding_factor * chain.f_rm;
    if (point == SplitPoint::SplitID) return factor;
    factor *= modulation_factor(cfg);
    if (point == SplitPoint::SplitIID) return factor;
    return factor * chain.f_ofdm;
}

double bf_control_rate(const BeamformerConfig& bf, const CellConfig& cfg) {
    const double period_s = refresh_period(bf, cfg);
    switch (bf.kind) {
    case BeamformerKind::Analog:
        return analog_part(bf, period_s);
    case BeamformerKind::Digital:
        return digital_part(bf, cfg, period_s);
    case BeamformerKind::Hybrid:
        return analog_part(bf, period_s) + digital_part(bf, cfg, period_s);
    }
    throw ConfigError("unknown beamformer kind");
}

RateBreakdown total_fh_rate(const CellConfig& cfg, const SplitChain& chain, const BeamformerConfig& bf) {
    RateBreakdown out;
    out.radio_access_bps = radio_access_rate(cfg, chain);
    out.bf_control_bps = bf_control_rate(bf, cfg);
    out.total_bps = out.radio_access_bps + out.bf_control_bps;
    return out;
}

double access_capacity(const CellConfig& cfg) {
    double rate = fh_rate_split_id(cfg) * cfg.r_max * (1.0 - cfg.oh);
    if (cfg.duplex == DuplexMode::Tdd) {
        rate *= cfg.f_tdd_dl;
    }
    return rate;
}

} // namespace fhshape
