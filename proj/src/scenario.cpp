#include "fhshape/scenario.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace fhshape {

namespace {

using nlohmann::json;

void require_known_keys(const json& j, std::initializer_list<const char*> allowed,
                        const std::string& section) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
}

// Accepts a plain number or a "p/q" fraction string (useful for exact
// code rates like "948/1024").
double number_or_fraction(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            try {
                const double p = std::stod(s.substr(0, slash));
                const double q = std::stod(s.substr(slash + 1));
                if (q != 0.0) return p / q;
            } catch (const std::exception&) {
            }
        }
        throw ConfigError(what + ": cannot parse fraction '" + s + "'");
    }
    throw ConfigError(what + " must be a number or a \"p/q\" string");
}

CellConfig parse_cell(const json& j) {
    require_known_keys(j, {"n_rb", "n_sc", "n_mimo", "scs_khz", "t_s", "q_m", "n_iq", "r_max",
                           "oh", "duplex"},
                       "cell");
    CellConfig cell;
    cell.n_rb = j.at("n_rb").get<int>();
    cell.n_sc = j.value("n_sc", 12);
    cell.n_mimo = j.at("n_mimo").get<int>();
    cell.scs_khz = j.value("scs_khz", 0.0);
    cell.t_s = j.value("t_s", 0.0);
    if (cell.t_s == 0.0) {
        if (cell.scs_khz == 0.0) throw ConfigError("cell needs either t_s or scs_khz");
        cell.t_s = symbol_duration(cell.scs_khz);
    }
    cell.q_m = j.at("q_m").get<int>();
    cell.n_iq = j.value("n_iq", 16);
    if (j.contains("r_max")) cell.r_max = number_or_fraction(j.at("r_max"), "cell.r_max");
    cell.oh = j.value("oh", 0.0);

    if (j.contains("duplex")) {
        const json& d = j.at("duplex");
        require_known_keys(d, {"mode", "dl_fraction", "uplink"}, "cell.duplex");
        const std::string mode = d.value("mode", "tdd");
        if (mode == "tdd") {
            cell.duplex = DuplexMode::Tdd;
            cell.f_tdd_dl = d.value("dl_fraction", 1.0);
        } else if (mode == "fdd") {
            cell.duplex = DuplexMode::Fdd;
        } else {
            throw ConfigError("cell.duplex.mode must be \"tdd\" or \"fdd\"");
        }
        if (d.contains("uplink")) {
            cell.uplink = std::make_shared<CellConfig>(parse_cell(d.at("uplink")));
        }
    }
    return cell;
}

SplitChain parse_split(const json& j) {
    require_known_keys(j, {"point", "coding_factor", "f_rm", "f_ofdm"}, "split");
    SplitChain chain;
    const std::string point = j.value("point", "split_iid");
    if (point == "split_id") chain.split_point = SplitPoint::SplitID;
    else if (point == "split_iid") chain.split_point = SplitPoint::SplitIID;
    else if (point == "below_iid") chain.split_point = SplitPoint::BelowIID;
    else throw ConfigError("split.point must be one of \"split_id\", \"split_iid\", \"below_iid\"");
    chain.coding_factor = j.value("coding_factor", 1.0);
    chain.f_rm = j.value("f_rm", 1.0);
    chain.f_ofdm = j.value("f_ofdm", 1.0);
    return chain;
}

BeamformerConfig parse_beamformer(const json& j, const CellConfig& cell) {
    require_known_keys(j, {"kind", "n_ant", "b_ps", "n_fe", "n_rfc", "b_w", "switch_period_s"},
                       "beamformer");
    BeamformerConfig bf;
    const std::string kind = j.value("kind", "analog");
    if (kind == "analog") bf.kind = BeamformerKind::Analog;
    else if (kind == "digital") bf.kind = BeamformerKind::Digital;
    else if (kind == "hybrid") bf.kind = BeamformerKind::Hybrid;
    else throw ConfigError("beamformer.kind must be one of \"analog\", \"digital\", \"hybrid\"");
    bf.n_ant = j.value("n_ant", 0);
    bf.b_ps = j.value("b_ps", 0);
    bf.n_fe = j.value("n_fe", 0);
    bf.n_rfc = j.value("n_rfc", 0);
    bf.b_w = j.value("b_w", 0);
    bf.switch_period_s = j.value("switch_period_s", 0.0);
    if (bf.n_fe == 0 && bf.kind != BeamformerKind::Analog) {
        bf.n_fe = cell.n_rb; // one weight set per resource block
    }
    return bf;
}

FronthaulLink default_dband_link() {
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

FronthaulLink parse_link(const json& j) {
    require_known_keys(j,
                       {"eirp_dbm", "rx_gain_dbi", "fspl_db", "distance_km", "noise_figure_db",
                        "bandwidths_mhz", "modulations", "se_factor", "include_16qam"},
                       "link");
    FronthaulLink link = default_dband_link();
    link.eirp_dbm = j.value("eirp_dbm", link.eirp_dbm);
    link.rx_gain_dbi = j.value("rx_gain_dbi", link.rx_gain_dbi);
    link.fspl_db = j.value("fspl_db", link.fspl_db);
    link.distance_km = j.value("distance_km", link.distance_km);
    link.noise_figure_db = j.value("noise_figure_db", link.noise_figure_db);
    if (j.contains("bandwidths_mhz")) {
        link.bandwidths_mhz = j.at("bandwidths_mhz").get<std::vector<double>>();
    }
    if (j.contains("modulations")) {
        link.modulations.clear();
        for (const json& m : j.at("modulations")) {
            require_known_keys(m, {"name", "bits_per_symbol", "min_snr_db"}, "link.modulations[]");
            link.modulations.push_back(Modulation{m.at("name").get<std::string>(),
                                                  m.at("bits_per_symbol").get<int>(),
                                                  m.at("min_snr_db").get<double>()});
        }
    } else if (j.value("include_16qam", false)) {
        link.modulations.insert(link.modulations.begin() + 1, Modulation{"16QAM", 4, 17.0});
    }
    link.se_factor = j.value("se_factor", link.se_factor);
    return link;
}

StrategyConfig parse_strategy(const json& j, const CellConfig& cell) {
    require_known_keys(
        j, {"kind", "dwell_s", "legal_set", "legal_bandwidths_mhz", "legal_layers", "extended_mode"},
        "strategy");
    StrategyConfig strategy;
    const std::string kind = j.value("kind", "none");
    if (kind == "none") strategy.kind = StrategyKind::None;
    else if (kind == "cr") strategy.kind = StrategyKind::CellReconfiguration;
    else if (kind == "sbt") strategy.kind = StrategyKind::SchedulerThrottling;
    else throw ConfigError("strategy.kind must be one of \"none\", \"cr\", \"sbt\"");
    strategy.dwell_s = j.value("dwell_s", 300.0);
    strategy.extended_mode = j.value("extended_mode", false);

    if (j.contains("legal_set")) {
        for (const json& pair : j.at("legal_set")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError("strategy.legal_set entries must be [n_rb, n_mimo] pairs");
            }
            strategy.legal_pairs.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
        }
    } else if (j.contains("legal_bandwidths_mhz")) {
        std::vector<int> layers = {cell.n_mimo};
        if (j.contains("legal_layers")) layers = j.at("legal_layers").get<std::vector<int>>();
        for (double bw : j.at("legal_bandwidths_mhz").get<std::vector<double>>()) {
            const int rb = fr2_rb_count(bw, cell.scs_khz);
            for (int m : layers) strategy.legal_pairs.emplace_back(rb, m);
        }
    } else if (strategy.kind == StrategyKind::CellReconfiguration) {
        strategy.legal_pairs = halving_legal_pairs(cell);
    }
    return strategy;
}

TraceSchema parse_trace_options(const json& j) {
    require_known_keys(
        j, {"units", "step_s", "gas_default_db_per_km", "k_coeff", "alpha_coeff"}, "trace_options");
    TraceSchema schema;
    const std::string units = j.value("units", "specific");
    if (units == "specific") schema.units = AttenUnits::SpecificPerKm;
    else if (units == "total_path") schema.units = AttenUnits::TotalPathDb;
    else throw ConfigError("trace_options.units must be \"specific\" or \"total_path\"");
    schema.resample_step_s = j.value("step_s", 1.0);
    schema.default_gas_db_per_km = j.value("gas_default_db_per_km", 3.0);
    schema.k_coeff = j.value("k_coeff", 1.5);
    schema.alpha_coeff = j.value("alpha_coeff", 0.74);
    return schema;
}

} // namespace

int fr2_rb_count(double bw_mhz, double scs_khz) {
    struct Entry {
        double scs, bw;
        int rb;
    };
    static constexpr Entry table[] = {
        {60.0, 50.0, 66},   {60.0, 100.0, 132}, {60.0, 200.0, 264},
        {120.0, 50.0, 32},  {120.0, 100.0, 66}, {120.0, 200.0, 132},
        {120.0, 400.0, 264},
    };
    for (const Entry& e : table) {
        if (e.scs == scs_khz && e.bw == bw_mhz) return e.rb;
    }
    throw ConfigError("no FR2 RB count for " + std::to_string(bw_mhz) + " MHz at " +
                      std::to_string(scs_khz) + " kHz; list strategy.legal_set explicitly");
}

LoadedScenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    LoadedScenario loaded;
    try {
        require_known_keys(
            j, {"cell", "split", "beamformer", "link", "strategy", "trace", "trace_options"},
            "config");
        if (!j.contains("cell")) throw ConfigError("config needs a \"cell\" section");
        loaded.scenario.cell = parse_cell(j.at("cell"));
        loaded.scenario.cell.validate();
        if (j.contains("split")) loaded.scenario.split = parse_split(j.at("split"));
        if (!j.contains("beamformer")) throw ConfigError("config needs a \"beamformer\" section");
        loaded.scenario.beamformer = parse_beamformer(j.at("beamformer"), loaded.scenario.cell);
        loaded.scenario.link =
            j.contains("link") ? parse_link(j.at("link")) : default_dband_link();
        if (j.contains("strategy")) {
            loaded.scenario.strategy = parse_strategy(j.at("strategy"), loaded.scenario.cell);
        }
        loaded.scenario.trace_path = j.value("trace", "");
        if (j.contains("trace_options")) {
            loaded.trace_schema = parse_trace_options(j.at("trace_options"));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    loaded.scenario.validate();
    return loaded;
}

LoadedScenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

} // namespace fhshape
