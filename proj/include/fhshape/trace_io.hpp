#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhshape/errors.hpp"
#include "fhshape/link_channel.hpp"

namespace fhshape {

/// How the attenuation columns of a trace are to be read.
enum class AttenUnits {
    SpecificPerKm, ///< dB/km, scaled by the link distance
    TotalPathDb,   ///< dB over the whole path, used as-is
};

/// A uniformly sampled attenuation time series. Timestamps are seconds
/// from the first sample; ingestion resamples non-uniform sources.
struct Trace {
    double step_s = 1.0;
    std::vector<AttenuationSample> samples;
    std::string source;
    AttenUnits units = AttenUnits::SpecificPerKm;

    double duration_s() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

/// Column mapping and conversion parameters for CSV ingestion.
///
/// A file must provide the timestamp column plus either a rain
/// attenuation column or a rain-rate column (converted through the
/// k * R^alpha power law). A missing gas column falls back to the
/// constant default.
struct TraceSchema {
    std::string t_col = "t";
    std::string rain_db_col = "rain_db_per_km";
    std::string gas_db_col = "gas_db_per_km";
    std::string rain_rate_col = "rain_mm_h";
    double default_gas_db_per_km = 3.0;
    double k_coeff = 1.5;
    double alpha_coeff = 0.74;
    AttenUnits units = AttenUnits::SpecificPerKm;
    double resample_step_s = 1.0;
};

enum class RampShape { Triangular, Trapezoidal };

/// Parses and validates a CSV attenuation trace. Timestamps may be
/// numeric (epoch or relative seconds) or ISO-8601; they are rebased to
/// seconds from the first sample and the series is resampled to the
/// schema's uniform step by linear interpolation (endpoints preserved,
/// no extrapolation).
///
/// Throws ParseError (with line number) for malformed rows and
/// ValidationError for empty input, negative attenuation or
/// non-monotonic timestamps.
Trace parse_trace(std::istream& in, const TraceSchema& schema = {});

/// parse_trace on a file; throws IoError when the file cannot be opened.
Trace load_trace(const std::string& path, const TraceSchema& schema = {});

/// Resamples to a uniform grid anchored at the first sample, linear
/// interpolation in between. The grid never extends past the last
/// source timestamp.
std::vector<AttenuationSample> resample(const std::vector<AttenuationSample>& samples,
                                        double step_s);

/// Synthesizes a single rain event: the rain rate ramps to
/// peak_rain_mm_h following the given profile over duration_s (peak at
/// the midpoint for the triangular shape), converted to dB/km via the
/// power law; gas attenuation is constant.
Trace synth_rain_event(double duration_s, double peak_rain_mm_h, RampShape shape,
                       double k_coeff, double alpha_coeff, double gas_db_per_km,
                       double step_s = 1.0);

/// A full day of constant gas attenuation with one rain event embedded
/// at event_start_s.
Trace synth_day_trace(double day_s, double event_start_s, double event_duration_s,
                      double peak_rain_mm_h, RampShape shape, double k_coeff,
                      double alpha_coeff, double gas_db_per_km, double step_s = 1.0);

/// Writes the documented CSV form (t,rain_db_per_km,gas_db_per_km).
void write_trace_csv(std::ostream& out, const Trace& trace);

/// write_trace_csv to a file via write-then-rename; throws IoError on failure.
void save_trace(const std::string& path, const Trace& trace);

} // namespace fhshape
