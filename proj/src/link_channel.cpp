#include "fhshape/link_channel.hpp"

#include <algorithm>
#include <cmath>

namespace fhshape {

void FronthaulLink::validate() const {
    if (!(distance_km > 0.0)) throw ConfigError("link.distance_km must be > 0");
    if (bandwidths_mhz.empty()) throw ConfigError("link.bandwidths_mhz must not be empty");
    for (std::size_t i = 0; i < bandwidths_mhz.size(); ++i) {
        if (!(bandwidths_mhz[i] > 0.0)) throw ConfigError("link.bandwidths_mhz entries must be > 0");
        if (i > 0 && !(bandwidths_mhz[i] > bandwidths_mhz[i - 1])) {
            throw ConfigError("link.bandwidths_mhz must be strictly increasing");
        }
    }
    if (modulations.empty()) throw ConfigError("link.modulations must not be empty");
    for (std::size_t i = 0; i < modulations.size(); ++i) {
        if (modulations[i].bits_per_symbol < 1) {
            throw ConfigError("link.modulations bits_per_symbol must be >= 1");
        }
        if (i > 0) {
            if (!(modulations[i].bits_per_symbol > modulations[i - 1].bits_per_symbol)) {
                throw ConfigError("link.modulations must have strictly increasing bits_per_symbol");
            }
            if (!(modulations[i].min_snr_db > modulations[i - 1].min_snr_db)) {
                throw ConfigError("link.modulations must have strictly increasing min_snr_db");
            }
        }
    }
    if (!(se_factor > 0.0)) throw ConfigError("link.se_factor must be > 0");
}

double snr_db(const FronthaulLink& link, const AttenuationSample& sample, double bw_mhz) {
    const bool known = std::find(link.bandwidths_mhz.begin(), link.bandwidths_mhz.end(), bw_mhz) !=
                       link.bandwidths_mhz.end();
    if (!known) {
        throw ConfigError("bandwidth " + std::to_string(bw_mhz) +
                          " MHz is not in the link's bandwidth table");
    }
    const double atten_db = (sample.rain_db_per_km + sample.gas_db_per_km) * link.distance_km;
    const double signal_dbm = link.eirp_dbm + link.rx_gain_dbi - link.fspl_db - atten_db;
    const double noise_dbm = -174.0 + 10.0 * std::log10(bw_mhz * 1e6) + link.noise_figure_db;
    return signal_dbm - noise_dbm;
}

double link_capacity_bps(const FronthaulLink& link, double bw_mhz, const Modulation& mod) {
    return bw_mhz * 1e6 * static_cast<double>(mod.bits_per_symbol) * link.se_factor;
}

LinkMode select_link_mode(const FronthaulLink& link, const AttenuationSample& sample) {
    LinkMode best; // capacity 0: outage unless something fits
    for (double bw : link.bandwidths_mhz) {
        const double snr = snr_db(link, sample, bw);
        for (const Modulation& mod : link.modulations) {
            if (snr < mod.min_snr_db) continue;
            const double capacity = link_capacity_bps(link, bw, mod);
            if (capacity > best.capacity_bps ||
                (capacity == best.capacity_bps && bw > best.bw_mhz)) {
                best = LinkMode{bw, mod, capacity};
            }
        }
    }
    return best;
}

double rain_specific_attenuation(double rain_rate_mm_h, double k_coeff, double alpha_coeff) {
    if (rain_rate_mm_h < 0.0) throw ConfigError("rain rate must be >= 0");
    if (!(k_coeff > 0.0) || !(alpha_coeff > 0.0)) {
        throw ConfigError("rain power-law coefficients must be > 0");
    }
    if (rain_rate_mm_h == 0.0) return 0.0;
    return k_coeff * std::pow(rain_rate_mm_h, alpha_coeff);
}

} // namespace fhshape
