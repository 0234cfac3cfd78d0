#include "fhshape/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fhshape {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& s, std::size_t lineno, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("line " + std::to_string(lineno) + ": cannot parse " + what + " '" + s + "'");
    }
    return value;
}

// days since 1970-01-01 for a proleptic Gregorian civil date
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<long>(era) * 146097L + static_cast<long>(doe) - 719468L;
}

// Accepts plain numeric seconds or ISO-8601 (YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM]).
double parse_timestamp(const std::string& s, std::size_t lineno) {
    {
        const char* begin = s.c_str();
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end != begin && *end == '\0') return value;
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, consumed = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%n", &y, &mo, &d, &h, &mi, &consumed) != 5 ||
        consumed == 0) {
        throw ParseError("line " + std::to_string(lineno) + ": cannot parse timestamp '" + s + "'");
    }
    const char* rest = s.c_str() + consumed;
    char* end = nullptr;
    const double sec = std::strtod(rest, &end);
    if (end == rest) {
        throw ParseError("line " + std::to_string(lineno) + ": cannot parse timestamp '" + s + "'");
    }
    double tz_offset_s = 0.0;
    if (*end == '+' || *end == '-') {
        int th = 0, tm = 0;
        const int sign = (*end == '-') ? -1 : 1;
        if (std::sscanf(end + 1, "%2d:%2d", &th, &tm) < 1) {
            throw ParseError("line " + std::to_string(lineno) + ": bad timezone in '" + s + "'");
        }
        tz_offset_s = sign * (th * 3600.0 + tm * 60.0);
    } else if (*end != '\0' && *end != 'Z') {
        throw ParseError("line " + std::to_string(lineno) + ": trailing garbage in timestamp '" + s + "'");
    }
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec -
           tz_offset_s;
}

int find_column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

} // namespace

std::vector<AttenuationSample> resample(const std::vector<AttenuationSample>& samples,
                                        double step_s) {
    if (!(step_s > 0.0)) throw ValidationError("resample step must be > 0");
    if (samples.empty()) throw ValidationError("cannot resample an empty series");

    const double t0 = samples.front().t;
    const double t_end = samples.back().t;
    const auto count = static_cast<std::size_t>(std::floor((t_end - t0) / step_s + 1e-9)) + 1;

    std::vector<AttenuationSample> out;
    out.reserve(count);
    std::size_t seg = 0; // index of the segment start bracketing the grid point
    for (std::size_t k = 0; k < count; ++k) {
        const double t = t0 + static_cast<double>(k) * step_s;
        while (seg + 1 < samples.size() && samples[seg + 1].t <= t) ++seg;
        const AttenuationSample& a = samples[seg];
        if (t == a.t || seg + 1 == samples.size()) {
            out.push_back(AttenuationSample{t - t0, a.rain_db_per_km, a.gas_db_per_km});
            continue;
        }
        const AttenuationSample& b = samples[seg + 1];
        const double w = (t - a.t) / (b.t - a.t);
        out.push_back(AttenuationSample{t - t0,
                                        a.rain_db_per_km + w * (b.rain_db_per_km - a.rain_db_per_km),
                                        a.gas_db_per_km + w * (b.gas_db_per_km - a.gas_db_per_km)});
    }
    return out;
}

Trace parse_trace(std::istream& in, const TraceSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("trace is empty");
    const std::vector<std::string> header = split_csv(line);

    const int t_idx = find_column(header, schema.t_col);
    if (t_idx < 0) throw ParseError("header has no '" + schema.t_col + "' column");
    const int rain_db_idx = find_column(header, schema.rain_db_col);
    const int rain_rate_idx = find_column(header, schema.rain_rate_col);
    if (rain_db_idx < 0 && rain_rate_idx < 0) {
        throw ParseError("header has neither '" + schema.rain_db_col + "' nor '" +
                         schema.rain_rate_col + "'");
    }
    const int gas_idx = find_column(header, schema.gas_db_col);

    std::vector<AttenuationSample> raw;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        AttenuationSample s;
        s.t = parse_timestamp(fields[static_cast<std::size_t>(t_idx)], lineno);
        if (rain_db_idx >= 0) {
            s.rain_db_per_km =
                parse_number(fields[static_cast<std::size_t>(rain_db_idx)], lineno, "rain attenuation");
        } else {
            const double rate =
                parse_number(fields[static_cast<std::size_t>(rain_rate_idx)], lineno, "rain rate");
            if (rate < 0.0) {
                throw ValidationError("line " + std::to_string(lineno) + ": negative rain rate");
            }
            s.rain_db_per_km = rain_specific_attenuation(rate, schema.k_coeff, schema.alpha_coeff);
        }
        s.gas_db_per_km = gas_idx >= 0 ? parse_number(fields[static_cast<std::size_t>(gas_idx)],
                                                      lineno, "gas attenuation")
                                       : schema.default_gas_db_per_km;
        if (s.rain_db_per_km < 0.0 || s.gas_db_per_km < 0.0) {
            throw ValidationError("line " + std::to_string(lineno) + ": negative attenuation");
        }
        if (!raw.empty() && !(s.t > raw.back().t)) {
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": timestamps must be strictly increasing");
        }
        raw.push_back(s);
    }
    if (raw.empty()) throw ValidationError("trace has no data rows");

    Trace trace;
    trace.step_s = schema.resample_step_s;
    trace.units = schema.units;
    trace.samples = resample(raw, schema.resample_step_s);
    return trace;
}

Trace load_trace(const std::string& path, const TraceSchema& schema) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file '" + path + "'");
    Trace trace = parse_trace(in, schema);
    trace.source = path;
    return trace;
}

namespace {

double ramp_profile(double t, double duration_s, double peak, RampShape shape) {
    if (t < 0.0 || t > duration_s) return 0.0;
    switch (shape) {
    case RampShape::Triangular: {
        const double half = duration_s / 2.0;
        return peak * (1.0 - std::abs(t - half) / half);
    }
    case RampShape::Trapezoidal: {
        const double quarter = duration_s / 4.0;
        if (t < quarter) return peak * t / quarter;
        if (t > 3.0 * quarter) return peak * (duration_s - t) / quarter;
        return peak;
    }
    }
    return 0.0;
}

Trace synth(double total_s, double event_start_s, double event_duration_s, double peak,
            RampShape shape, double k, double alpha, double gas, double step_s,
            const std::string& source) {
    if (!(total_s > 0.0)) throw ValidationError("trace duration must be > 0");
    if (!(event_duration_s > 0.0)) throw ValidationError("event duration must be > 0");
    if (peak < 0.0) throw ValidationError("peak rain rate must be >= 0");
    if (gas < 0.0) throw ValidationError("gas attenuation must be >= 0");
    if (!(step_s > 0.0)) throw ValidationError("step must be > 0");

    const auto count = static_cast<std::size_t>(std::llround(total_s / step_s));
    if (count == 0) throw ValidationError("trace duration shorter than one step");

    Trace trace;
    trace.step_s = step_s;
    trace.source = source;
    trace.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) * step_s;
        const double rate = ramp_profile(t - event_start_s, event_duration_s, peak, shape);
        trace.samples.push_back(
            AttenuationSample{t, rain_specific_attenuation(rate, k, alpha), gas});
    }
    return trace;
}

} // namespace

Trace synth_rain_event(double duration_s, double peak_rain_mm_h, RampShape shape, double k_coeff,
                       double alpha_coeff, double gas_db_per_km, double step_s) {
    return synth(duration_s, 0.0, duration_s, peak_rain_mm_h, shape, k_coeff, alpha_coeff,
                 gas_db_per_km, step_s, "synth_rain_event");
}

Trace synth_day_trace(double day_s, double event_start_s, double event_duration_s,
                      double peak_rain_mm_h, RampShape shape, double k_coeff, double alpha_coeff,
                      double gas_db_per_km, double step_s) {
    return synth(day_s, event_start_s, event_duration_s, peak_rain_mm_h, shape, k_coeff,
                 alpha_coeff, gas_db_per_km, step_s, "synth_day_trace");
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "t,rain_db_per_km,gas_db_per_km\n";
    char buf[96];
    for (const AttenuationSample& s : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.3f,%.12g,%.12g\n", s.t, s.rain_db_per_km,
                      s.gas_db_per_km);
        out << buf;
    }
}

void save_trace(const std::string& path, const Trace& trace) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        write_trace_csv(out, trace);
        if (!out.good()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

} // namespace fhshape
