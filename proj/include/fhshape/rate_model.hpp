#pragma once

#include <memory>

#include "fhshape/errors.hpp"

namespace fhshape {

/// Intra-PHY functional split points, ordered from closest to the MAC
/// down to the RF front end. Lower points carry rawer, higher-rate data.
enum class SplitPoint {
    SplitID,  ///< codeword bits, upstream of QAM modulation (3GPP option 7-3)
    SplitIID, ///< antenna/IQ symbols, downstream of precoding (3GPP option 7-2)
    BelowIID, ///< time-domain samples after OFDM processing (option 7-1 / 8 style)
};

enum class DuplexMode { Tdd, Fdd };

/// Radio-access cell parameterization. All counts are per carrier.
///
/// `t_s` is the OFDM symbol duration including the cyclic prefix. When
/// `scs_khz` is set, `t_s` must equal symbol_duration(scs_khz); scenario
/// loaders derive it automatically when omitted.
struct CellConfig {
    int n_rb = 0;         ///< physical resource blocks for the configured bandwidth
    int n_sc = 12;        ///< subcarriers per resource block
    int n_mimo = 1;       ///< DL TX antenna ports == max concurrent MIMO layers
    double scs_khz = 0.0; ///< subcarrier spacing; 0 when t_s is given directly
    double t_s = 0.0;     ///< OFDM symbol duration, seconds
    int q_m = 2;          ///< modulation bits per symbol (2^M)
    int n_iq = 16;        ///< bits per encoded IQ sample
    double r_max = 1.0;   ///< target code rate, fraction in (0, 1]
    double oh = 0.0;      ///< control-channel overhead, fraction in [0, 1)
    DuplexMode duplex = DuplexMode::Tdd;
    double f_tdd_dl = 1.0; ///< downlink share of TDD resources, (0, 1]

    /// Uplink counterpart. Required for FDD (rates sum over both
    /// directions); optional for TDD (fronthaul carries the larger of the
    /// two directions). Must not nest further uplink configs.
    std::shared_ptr<const CellConfig> uplink;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

/// A split point plus the payload factors of the PHY blocks between the
/// MAC output and the RF front end. Factors multiply the payload when a
/// block is crossed towards the antenna and divide it on the way up.
struct SplitChain {
    SplitPoint split_point = SplitPoint::SplitIID;
    double coding_factor = 1.0; ///< (n+k)/n redundancy expansion of channel coding
    double f_rm = 1.0;          ///< rate-matching factor
    double f_ofdm = 1.0;        ///< zero padding + cyclic prefix expansion, BelowIID only

    void validate() const;
};

enum class BeamformerKind { Analog, Digital, Hybrid };

/// Beamforming technology at the RU and the sizes that set its control
/// traffic. Analog needs the antenna/phase-shifter fields, digital the
/// frequency-element/RF-chain/weight fields, hybrid both.
struct BeamformerConfig {
    BeamformerKind kind = BeamformerKind::Analog;
    int n_ant = 0; ///< antenna elements driven by phase shifters
    int b_ps = 0;  ///< bits per phase-shift coefficient
    int n_fe = 0;  ///< independently weighted frequency elements (typically n_rb)
    int n_rfc = 0; ///< RF chains
    int b_w = 0;   ///< bits per complex precoding weight

    /// Weight refresh period on the fronthaul, seconds. 0 means one update
    /// per OFDM symbol (the conservative default); a slower refresh scales
    /// the control rate down proportionally.
    double switch_period_s = 0.0;

    void validate() const;
};

/// Fronthaul traffic split into its two components.
struct RateBreakdown {
    double radio_access_bps = 0.0; ///< IQ/codeword payload towards the radio interface
    double bf_control_bps = 0.0;   ///< beamformer weights towards the RF chains
    double total_bps = 0.0;        ///< sum of the two
};

/// OFDM symbol duration (normal cyclic prefix) for a standard subcarrier
/// spacing. Throws ConfigError for spacings outside {15, 30, 60, 120, 240} kHz.
double symbol_duration(double scs_khz);

/// Fronthaul bit rate at the antenna-symbol split (one IQ sample per
/// resource element per layer, every symbol).
double fh_rate_split_iid(const CellConfig& cfg);

/// Fronthaul bit rate at the codeword split (modulation bits instead of
/// IQ samples). Equals fh_rate_split_iid / (n_iq / q_m).
double fh_rate_split_id(const CellConfig& cfg);

/// Fronthaul bit rate at the chain's split point. Dispatches to the
/// dedicated formulas so results match them bit for bit; BelowIID applies
/// the chain's OFDM expansion on top of the antenna-symbol rate.
double fh_rate_generic(const CellConfig& cfg, const SplitChain& chain);

/// Cumulative payload multiplier accrued between the MAC output and
/// `point`, walking the chain's blocks top to bottom. Exposes the factor
/// bookkeeping for inspection and tests.
double chain_factor_from_mac(const SplitChain& chain, const CellConfig& cfg, SplitPoint point);

/// Beamformer control bit rate. Analog ships one phase coefficient per
/// antenna element per refresh; digital ships one weight per frequency
/// element, layer and RF chain; hybrid is the sum of both parts.
double bf_control_rate(const BeamformerConfig& bf, const CellConfig& cfg);

/// Total fronthaul rate for a cell: duplex-combined radio-access rate
/// (TDD carries max(DL, UL), FDD carries DL + UL) plus beamformer control.
/// Throws ConfigError for an FDD config with no uplink.
RateBreakdown total_fh_rate(const CellConfig& cfg, const SplitChain& chain, const BeamformerConfig& bf);

/// Maximum cumulative user data rate the cell can serve: codeword rate
/// scaled by code rate and control overhead, and by the TDD downlink
/// share when duplexing is TDD.
double access_capacity(const CellConfig& cfg);

} // namespace fhshape
