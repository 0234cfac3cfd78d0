#pragma once

#include <string>
#include <vector>

#include "fhshape/errors.hpp"

namespace fhshape {

/// One entry of the adaptive-modulation table.
struct Modulation {
    std::string name;
    int bits_per_symbol = 0;
    double min_snr_db = 0.0; ///< SNR threshold at which this modulation is usable
};

/// Link-budget parameters of the wireless fronthaul hop plus the
/// (bandwidth, modulation) adaptation table. Instantaneous capacity is
/// bandwidth * bits_per_symbol * se_factor for the best feasible pair.
struct FronthaulLink {
    double eirp_dbm = 0.0;
    double rx_gain_dbi = 0.0;
    double fspl_db = 0.0;        ///< free-space path loss at carrier and distance
    double distance_km = 1.0;
    double noise_figure_db = 7.0;
    std::vector<double> bandwidths_mhz;   ///< strictly increasing
    std::vector<Modulation> modulations;  ///< strictly increasing in bits and threshold

    /// Spectral-efficiency multiplier in bit/s/Hz per modulation bit.
    /// Bundles polarization reuse and coding efficiency; 1.7 reproduces a
    /// dual-polarized carrier at ~0.85 code rate.
    double se_factor = 1.7;

    void validate() const;
};

/// One attenuation observation. Values are specific attenuation in dB/km
/// unless the owning trace flags them as total path attenuation.
struct AttenuationSample {
    double t = 0.0; ///< seconds from trace start
    double rain_db_per_km = 0.0;
    double gas_db_per_km = 0.0;
};

/// Selected operating point of the link; capacity_bps == 0 means outage.
struct LinkMode {
    double bw_mhz = 0.0;
    Modulation modulation;
    double capacity_bps = 0.0;
};

/// Receiver SNR for one candidate channel bandwidth under the sample's
/// attenuation: EIRP + RX gain - FSPL - (rain+gas)*distance - thermal
/// noise floor (-174 dBm/Hz + 10log10(BW) + NF). Throws ConfigError when
/// bw_mhz is not one of the link's selectable bandwidths.
double snr_db(const FronthaulLink& link, const AttenuationSample& sample, double bw_mhz);

/// Raw capacity of a (bandwidth, modulation) pair, ignoring SNR.
double link_capacity_bps(const FronthaulLink& link, double bw_mhz, const Modulation& mod);

/// Best feasible (bandwidth, modulation) pair: maximizes capacity over
/// all pairs whose SNR clears the modulation threshold, ties broken
/// toward the larger bandwidth. Returns capacity 0 when nothing fits.
LinkMode select_link_mode(const FronthaulLink& link, const AttenuationSample& sample);

/// Power-law rain attenuation k * R^alpha in dB/km, for synthesizing
/// traces from rain rate.
double rain_specific_attenuation(double rain_rate_mm_h, double k_coeff, double alpha_coeff);

} // namespace fhshape
