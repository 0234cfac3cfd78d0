#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fhshape/report_io.hpp"
#include "test_helpers.hpp"

using namespace fhshape;
using test::iid_chain;
using test::reference_abf;
using test::reference_cell;

namespace {

ScenarioConfig sbt_scenario() {
    ScenarioConfig s;
    s.cell = reference_cell();
    s.split = iid_chain();
    s.beamformer = reference_abf();
    s.link.eirp_dbm = 65.0;
    s.link.rx_gain_dbi = 42.0;
    s.link.fspl_db = 137.0;
    s.link.distance_km = 1.0;
    s.link.noise_figure_db = 7.0;
    s.link.bandwidths_mhz = {250.0, 500.0, 1000.0, 2000.0};
    s.link.modulations = {{"QPSK", 2, 10.0}, {"64QAM", 6, 25.5}, {"256QAM", 8, 28.0}};
    s.strategy.kind = StrategyKind::SchedulerThrottling;
    return s;
}

Trace small_trace() {
    Trace trace;
    for (int i = 0; i < 60; ++i) {
        const double rain = (i >= 20 && i < 40) ? 14.0 : 0.0;
        trace.samples.push_back(AttenuationSample{static_cast<double>(i), rain, 3.0});
    }
    return trace;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("run artifacts land on disk with consistent shapes") {
    const ScenarioConfig s = sbt_scenario();
    const Trace trace = small_trace();
    const SimulationReport report = run_scenario(s, trace);

    const std::string dir =
        (std::filesystem::temp_directory_path() / "fhshape_report_test").string();
    std::filesystem::remove_all(dir);
    const RunArtifacts artifacts = write_run_artifacts(dir, s, trace, report);

    const std::string timeseries = read_file(artifacts.timeseries_csv);
    std::size_t rows = 0;
    for (char c : timeseries) rows += c == '\n';
    CHECK(rows == trace.samples.size() + 1); // header + one row per sample

    const std::string summary = read_file(artifacts.summary_json);
    CHECK(summary.find("\"kind\": \"sbt\"") != std::string::npos);
    CHECK(summary.find("\"availability\"") != std::string::npos);
    CHECK(summary.find("23281664000") != std::string::npos);

    // no temporaries left behind
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        CHECK(entry.path().extension() != ".tmp");
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("summary totals are recomputable from the timeseries") {
    const ScenarioConfig s = sbt_scenario();
    const Trace trace = small_trace();
    const SimulationReport report = run_scenario(s, trace);

    std::ostringstream out;
    write_timeseries_csv(out, report);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line); // header

    double access_sum = 0.0;
    std::size_t rows = 0, outage_rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        // columns: t,capacity,required,access,active_rb,active_layers,outage
        std::stringstream ss(line);
        std::string field;
        for (int i = 0; i < 4; ++i) std::getline(ss, field, ',');
        access_sum += std::stod(field);
        for (int i = 0; i < 3; ++i) std::getline(ss, field, ',');
        outage_rows += field == "1";
    }
    REQUIRE(rows == trace.samples.size());

    const double mean_access = access_sum / static_cast<double>(rows);
    CHECK(mean_access ==
          doctest::Approx(report.mean_access_bps).epsilon(1e-6));
    CHECK(static_cast<double>(outage_rows) / static_cast<double>(rows) ==
          doctest::Approx(report.outage_fraction).epsilon(1e-9));
}

TEST_CASE("serialization is deterministic") {
    const ScenarioConfig s = sbt_scenario();
    const Trace trace = small_trace();
    const SimulationReport report = run_scenario(s, trace);

    std::ostringstream a, b;
    write_timeseries_csv(a, report);
    write_timeseries_csv(b, report);
    CHECK(a.str() == b.str());

    CHECK(summary_json_text(s, trace, report) == summary_json_text(s, trace, report));

    std::ostringstream da, db;
    write_decisions_csv(da, report);
    write_decisions_csv(db, report);
    CHECK(da.str() == db.str());
}

TEST_CASE("gbps formatting") {
    CHECK(format_gbps(23281664000.0) == "23.28 Gbps");
    CHECK(format_gbps(6895494144.0) == "6.90 Gbps");
    CHECK(format_gbps(573440000.0) == "0.57 Gbps");
}
