#include "fiberlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fiberlab/errors.hpp"

namespace fiberlab {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, size_t line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

uint64_t to_u64(const std::string& v, size_t line) {
    uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        fail(line, "expected a non-negative integer, got '" + v + "'");
    return out;
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_double_list(const std::string& v, size_t line) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(to_double(item, line));
    if (out.empty()) fail(line, "empty list");
    return out;
}

// Full key schema; parsing rejects anything outside it.
const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "experiment.scenario",
        "experiment.master_seed",
        "experiment.sweep_dbm",
        "experiment.symbols_per_point",
        "experiment.burst_symbols",
        "experiment.edge_discard",
        "experiment.variants",
        "link.alpha_db_km",
        "link.beta2_ps2_km",
        "link.gamma_w_km",
        "link.length_km",
        "link.nsp",
        "link.carrier_thz",
        "grid.line_rate_ghz",
        "grid.rx_rate_ghz",
        "grid.step_m",
        "grid.dbp_step_m",
        "wdm.num_channels",
        "wdm.symbol_rate_gbd",
        "wdm.channel_spacing_ghz",
        "selection.procedure",
        "selection.block_length",
        "selection.eta_target",
        "selection.gamma_lambda",
        "selection.power_dbm",
        "selection.burst_symbols",
        "selection.guard_symbols",
        "selection.refresh_iterations",
        "selection.target_accepts",
        "selection.max_proposals",
        "selection.store",
        "metric.sigma2",
        "analytic.a",
        "analytic.sigma_w2",
        "analytic.block_length",
        "analytic.shapes",
        "analytic.p_min_db",
        "analytic.p_max_db",
        "analytic.p_points",
        "analytic.output_power_convention",
        "nli.power_dbm",
        "nli.power_step_db",
        "nli.block_length",
        "nli.min_samples",
    };
    return keys;
}

} // namespace

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

RunConfig parse_run_config(const std::string& text) {
    std::map<std::string, std::pair<std::string, size_t>> values; // key -> (value, line)
    std::string section;
    std::istringstream in(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(line_no, "empty section name");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for '" + key + "'");
        if (section.empty()) fail(line_no, "key outside any section");
        std::string full = section + "." + key;
        if (known_keys().count(full) == 0) fail(line_no, "unknown key '" + full + "'");
        if (values.count(full) != 0) fail(line_no, "duplicate key '" + full + "'");
        values[full] = {value, line_no};
    }

    RunConfig cfg;
    auto take = [&](const char* key) -> const std::pair<std::string, size_t>* {
        auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };
    auto dbl = [&](const char* key, double& slot) {
        if (auto* v = take(key)) slot = to_double(v->first, v->second);
    };
    auto u64 = [&](const char* key, auto& slot) {
        if (auto* v = take(key)) slot = static_cast<std::decay_t<decltype(slot)>>(
                                     to_u64(v->first, v->second));
    };
    auto str = [&](const char* key, std::string& slot) {
        if (auto* v = take(key)) slot = v->first;
    };

    str("experiment.scenario", cfg.scenario);
    u64("experiment.master_seed", cfg.master_seed);
    if (auto* v = take("experiment.sweep_dbm")) cfg.sweep_dbm = to_double_list(v->first, v->second);
    u64("experiment.symbols_per_point", cfg.symbols_per_point);
    u64("experiment.burst_symbols", cfg.burst_symbols);
    u64("experiment.edge_discard", cfg.edge_discard);
    if (auto* v = take("experiment.variants")) {
        cfg.variants = split_list(v->first);
        if (cfg.variants.empty()) fail(v->second, "empty variant list");
    }

    dbl("link.alpha_db_km", cfg.link.alpha_db_km);
    dbl("link.beta2_ps2_km", cfg.link.beta2_ps2_km);
    dbl("link.gamma_w_km", cfg.link.gamma_w_km);
    dbl("link.length_km", cfg.link.length_km);
    dbl("link.nsp", cfg.link.nsp);
    dbl("link.carrier_thz", cfg.link.carrier_thz);

    dbl("grid.line_rate_ghz", cfg.grid.line_rate);
    dbl("grid.rx_rate_ghz", cfg.grid.rx_rate);
    dbl("grid.step_m", cfg.grid.step_m);
    dbl("grid.dbp_step_m", cfg.grid.dbp_step_m);

    if (auto* v = take("wdm.num_channels"))
        cfg.wdm.num_channels = static_cast<int>(to_u64(v->first, v->second));
    dbl("wdm.symbol_rate_gbd", cfg.wdm.symbol_rate);
    dbl("wdm.channel_spacing_ghz", cfg.wdm.channel_spacing);

    str("selection.procedure", cfg.procedure);
    u64("selection.block_length", cfg.block_length);
    dbl("selection.eta_target", cfg.eta_target);
    dbl("selection.gamma_lambda", cfg.gamma_lambda);
    dbl("selection.power_dbm", cfg.selection_power_dbm);
    u64("selection.burst_symbols", cfg.selection_burst_symbols);
    u64("selection.guard_symbols", cfg.guard_symbols);
    u64("selection.refresh_iterations", cfg.refresh_iterations);
    u64("selection.target_accepts", cfg.target_accepts);
    u64("selection.max_proposals", cfg.max_proposals);
    str("selection.store", cfg.store_path);

    str("metric.sigma2", cfg.metric_sigma2);
    if (cfg.metric_sigma2 != "auto") {
        auto* v = take("metric.sigma2");
        double s = to_double(cfg.metric_sigma2, v ? v->second : 0);
        if (!(s > 0.0)) fail(v ? v->second : 0, "metric.sigma2 must be positive or 'auto'");
    }

    dbl("analytic.a", cfg.analytic_a);
    dbl("analytic.sigma_w2", cfg.analytic_sigma_w2);
    u64("analytic.block_length", cfg.analytic_block_length);
    if (auto* v = take("analytic.shapes"))
        cfg.analytic_shapes = to_double_list(v->first, v->second);
    dbl("analytic.p_min_db", cfg.analytic_p_min_db);
    dbl("analytic.p_max_db", cfg.analytic_p_max_db);
    u64("analytic.p_points", cfg.analytic_p_points);
    str("analytic.output_power_convention", cfg.output_power_convention);

    dbl("nli.power_dbm", cfg.nli_power_dbm);
    dbl("nli.power_step_db", cfg.nli_power_step_db);
    u64("nli.block_length", cfg.nli_block_length);
    u64("nli.min_samples", cfg.nli_min_samples);

    const std::set<std::string> scenarios = {"single_channel_1pol", "wdm_2pol",
                                             "wdm_2pol_subcarrier"};
    if (scenarios.count(cfg.scenario) == 0)
        throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    if (cfg.procedure != "fast" && cfg.procedure != "averaged")
        throw ConfigError("unknown selection procedure '" + cfg.procedure + "'");
    const std::set<std::string> variants = {"benchmark", "selection", "dbp", "selection_dbp"};
    for (const auto& v : cfg.variants)
        if (variants.count(v) == 0) throw ConfigError("unknown variant '" + v + "'");
    const std::set<std::string> conventions = {"signal_noise_distortion", "signal_noise",
                                               "distortion_anticorrelated"};
    if (conventions.count(cfg.output_power_convention) == 0)
        throw ConfigError("unknown output power convention '" + cfg.output_power_convention +
                          "'");
    if (cfg.analytic_p_points < 2) throw ConfigError("analytic.p_points must be at least 2");

    std::string canon;
    for (const auto& [key, value] : values) canon += key + "=" + value.first + "\n";
    cfg.config_hash = fnv1a64(canon);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

} // namespace fiberlab
