#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "fhshape/link_channel.hpp"

using namespace fhshape;

namespace {

// D-band hop: 1 km, 65 dBm EIRP, 42 dBi RX gain, 137 dB FSPL, NF 7 dB,
// four carriers and three modulations.
FronthaulLink dband_link() {
    FronthaulLink link;
    link.eirp_dbm = 65.0;
    link.rx_gain_dbi = 42.0;
    link.fspl_db = 137.0;
    link.distance_km = 1.0;
    link.noise_figure_db = 7.0;
    link.bandwidths_mhz = {250.0, 500.0, 1000.0, 2000.0};
    link.modulations = {{"QPSK", 2, 10.0}, {"64QAM", 6, 25.5}, {"256QAM", 8, 28.0}};
    link.se_factor = 1.7;
    return link;
}

} // namespace

TEST_CASE("link budget arithmetic") {
    const FronthaulLink link = dband_link();
    // 65 + 42 - 137 - 6 = -36 dBm signal; noise floor -73.9897 dBm at 2 GHz
    CHECK(snr_db(link, {0.0, 3.0, 3.0}, 2000.0) == doctest::Approx(37.9897).epsilon(1e-4));
    CHECK(snr_db(link, {0.0, 0.0, 3.0}, 2000.0) == doctest::Approx(40.9897).epsilon(1e-4));
    CHECK(snr_db(link, {0.0, 200.0, 3.0}, 2000.0) < -150.0);
    CHECK_THROWS_AS(snr_db(link, {0.0, 0.0, 0.0}, 750.0), ConfigError);
}

TEST_CASE("halving the bandwidth buys 3.01 dB of SNR") {
    const FronthaulLink link = dband_link();
    const AttenuationSample sample{0.0, 5.0, 3.0};
    const double delta = snr_db(link, sample, 1000.0) - snr_db(link, sample, 2000.0);
    CHECK(delta == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("mode selection walks the calibrated capacity ladder") {
    const FronthaulLink link = dband_link();

    // clear sky: widest carrier, densest modulation
    LinkMode mode = select_link_mode(link, {0.0, 0.0, 3.0});
    CHECK(mode.bw_mhz == 2000.0);
    CHECK(mode.modulation.name == "256QAM");
    CHECK(mode.capacity_bps == doctest::Approx(27.2e9));

    // moderate fade: keep the carrier, drop the modulation
    mode = select_link_mode(link, {0.0, 14.0, 3.0});
    CHECK(mode.bw_mhz == 2000.0);
    CHECK(mode.modulation.name == "64QAM");
    CHECK(mode.capacity_bps == doctest::Approx(20.4e9));

    // deeper fade: the narrower carrier regains enough SNR for 256QAM
    mode = select_link_mode(link, {0.0, 15.75, 3.0});
    CHECK(mode.bw_mhz == 1000.0);
    CHECK(mode.modulation.name == "256QAM");
    CHECK(mode.capacity_bps == doctest::Approx(13.6e9));

    // deep fade: nothing fits
    mode = select_link_mode(link, {0.0, 200.0, 3.0});
    CHECK(mode.capacity_bps == 0.0);
}

TEST_CASE("capacity ties go to the larger bandwidth") {
    const FronthaulLink link = dband_link();
    // 500 MHz * 8 bit and 2000 MHz * 2 bit both give 6.8 Gbps; pick an
    // attenuation where both are feasible and nothing larger is.
    const AttenuationSample sample{0.0, 18.8, 3.0}; // SNR(500) = 28.2, SNR(1000) = 25.2
    const LinkMode mode = select_link_mode(link, sample);
    CHECK(mode.capacity_bps == doctest::Approx(6.8e9));
    CHECK(mode.bw_mhz == 2000.0);
}

TEST_CASE("capacity degrades monotonically with attenuation") {
    const FronthaulLink link = dband_link();
    double prev = std::numeric_limits<double>::infinity();
    for (double rain = 0.0; rain <= 60.0; rain += 0.05) {
        const double cap = select_link_mode(link, {0.0, rain, 3.0}).capacity_bps;
        CHECK(cap <= prev);
        prev = cap;
    }
    CHECK(prev == 0.0); // the sweep ends in outage
}

TEST_CASE("the reachable capacity set has at most B*M values") {
    const FronthaulLink link = dband_link();
    std::set<long long> capacities;
    for (double bw : link.bandwidths_mhz) {
        for (const Modulation& mod : link.modulations) {
            capacities.insert(std::llround(link_capacity_bps(link, bw, mod)));
        }
    }
    CHECK(capacities.size() <= link.bandwidths_mhz.size() * link.modulations.size());
    CHECK(capacities.count(27200000000LL) == 1);
    CHECK(capacities.count(20400000000LL) == 1);
    CHECK(capacities.count(13600000000LL) == 1);
}

TEST_CASE("outage is reported exactly when nothing is feasible") {
    const FronthaulLink link = dband_link();
    for (double rain = 0.0; rain <= 50.0; rain += 0.25) {
        const AttenuationSample sample{0.0, rain, 3.0};
        bool any_feasible = false;
        for (double bw : link.bandwidths_mhz) {
            for (const Modulation& mod : link.modulations) {
                if (snr_db(link, sample, bw) >= mod.min_snr_db) any_feasible = true;
            }
        }
        const LinkMode mode = select_link_mode(link, sample);
        CHECK((mode.capacity_bps > 0.0) == any_feasible);
    }
}

TEST_CASE("rain attenuation power law") {
    CHECK(rain_specific_attenuation(0.0, 1.5, 0.74) == 0.0);
    CHECK(rain_specific_attenuation(1.0, 1.5, 0.74) == doctest::Approx(1.5));
    CHECK(rain_specific_attenuation(34.0, 1.5, 0.74) == doctest::Approx(20.3885).epsilon(1e-4));
    CHECK_THROWS_AS(rain_specific_attenuation(-1.0, 1.5, 0.74), ConfigError);
    CHECK_THROWS_AS(rain_specific_attenuation(1.0, 0.0, 0.74), ConfigError);
}

TEST_CASE("link validation") {
    FronthaulLink link = dband_link();
    CHECK_NOTHROW(link.validate());

    FronthaulLink bad = link;
    bad.bandwidths_mhz = {500.0, 500.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = link;
    bad.modulations[2].min_snr_db = 20.0; // not increasing
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = link;
    bad.distance_km = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = link;
    bad.modulations.clear();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
