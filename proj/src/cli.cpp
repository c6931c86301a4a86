#include "fiberlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <omp.h>

#include <CLI11.hpp>

#include "fiberlab/analytic.hpp"
#include "fiberlab/csv.hpp"
#include "fiberlab/errors.hpp"
#include "fiberlab/experiment.hpp"
#include "fiberlab/kernels.hpp"
#include "fiberlab/nli_stats.hpp"
#include "fiberlab/rng.hpp"
#include "fiberlab/selection.hpp"
#include "fiberlab/seq_store.hpp"

namespace fiberlab {

namespace {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

Scenario scenario_from_name(const std::string& name) {
    if (name == "single_channel_1pol") return Scenario::SingleChannel1Pol;
    if (name == "wdm_2pol") return Scenario::Wdm2Pol;
    if (name == "wdm_2pol_subcarrier") return Scenario::Wdm2PolSubcarrier;
    throw ConfigError("unknown scenario '" + name + "'");
}

int scenario_pols(Scenario s) { return s == Scenario::SingleChannel1Pol ? 1 : 2; }
int scenario_subc(Scenario s) { return s == Scenario::Wdm2PolSubcarrier ? 4 : 1; }

OutputPowerConvention convention_from_name(const std::string& name) {
    if (name == "signal_noise_distortion") return OutputPowerConvention::SignalNoiseDistortion;
    if (name == "signal_noise") return OutputPowerConvention::SignalNoise;
    if (name == "distortion_anticorrelated")
        return OutputPowerConvention::DistortionAnticorrelated;
    throw ConfigError("unknown output power convention '" + name + "'");
}

CostChannel cost_channel_from(const RunConfig& cfg, int subcarriers) {
    CostChannel ch;
    ch.link = cfg.link;
    ch.step_m = cfg.grid.step_m;
    ch.sampling_rate = cfg.grid.rx_rate;
    ch.symbol_rate = cfg.wdm.symbol_rate;
    ch.subcarriers = subcarriers;
    return ch;
}

std::string shape_column(double shape) {
    std::string s = format_double(shape);
    for (auto& c : s)
        if (c == '.' || c == '-' || c == '+') c = '_';
    return "air_selected_np" + s;
}

void ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "'");
}

} // namespace

int cmd_analytic(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    OutputPowerConvention conv = convention_from_name(cfg.output_power_convention);

    std::vector<AnalyticChannelParams> curves;
    for (double shape : cfg.analytic_shapes) {
        AnalyticChannelParams p;
        p.a = cfg.analytic_a;
        p.sigma_w2 = cfg.analytic_sigma_w2;
        p.block_length = cfg.analytic_block_length;
        p.shape = shape;
        p.validate();
        if (!(shape < p.block_length))
            throw ConfigError("analytic shapes must stay below the block length");
        curves.push_back(p);
    }

    std::vector<std::string> columns = {"p_db", "air_gaussian"};
    for (double shape : cfg.analytic_shapes) columns.push_back(shape_column(shape));
    columns.push_back("linear_channel");

    CsvWriter csv(out_dir + "/analytic_curves.csv", columns,
                  provenance_comments(cfg.config_hash, cfg.master_seed));
    for (uint32_t i = 0; i < cfg.analytic_p_points; ++i) {
        double frac = static_cast<double>(i) / (cfg.analytic_p_points - 1);
        double p_db = cfg.analytic_p_min_db + frac * (cfg.analytic_p_max_db - cfg.analytic_p_min_db);
        double power = std::pow(10.0, p_db / 10.0);
        std::vector<double> row = {p_db, gaussian_air(power, curves.front())};
        for (const auto& params : curves)
            row.push_back(air_with_selection(power, optimal_threshold(params), params, conv));
        row.push_back(std::log2(1.0 + power / cfg.analytic_sigma_w2));
        csv.row(row);
    }
    return kExitOk;
}

int cmd_nli_stats(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    CostChannel ch = cost_channel_from(cfg, 1);
    ch.validate();
    const size_t n = cfg.nli_block_length;
    if (n == 0) throw ConfigError("nli.block_length must be positive");
    if (cfg.selection_burst_symbols < n)
        throw ConfigError("selection.burst_symbols below the cost window");

    const double p_lo_dbm = cfg.nli_power_dbm;
    const double p_hi_dbm = cfg.nli_power_dbm + cfg.nli_power_step_db;
    const double power_ratio = std::pow(10.0, cfg.nli_power_step_db / 10.0);

    // Both powers reuse the same symbol seeds, so the two cost streams come
    // from proportional inputs and stay comparable window by window.
    auto collect = [&](double power_mw) {
        std::vector<double> costs;
        for (uint64_t burst = 0; costs.size() < cfg.nli_min_samples; ++burst) {
            SourceConfig src;
            src.power = power_mw;
            src.length = cfg.selection_burst_symbols;
            src.pol_count = 1;
            src.seed = derive_seed(cfg.master_seed, seed_tag::selection_source, burst);
            SymbolSequence x = gaussian_sequence(src);
            std::vector<double> sqerr = residual_sqerr({x}, ch);
            std::vector<double> w = kernels::sliding_window_costs(sqerr, n);
            costs.insert(costs.end(), w.begin(), w.end());
        }
        return costs;
    };
    std::vector<double> costs_lo = collect(dbm_to_mw(p_lo_dbm));
    std::vector<double> costs_hi = collect(dbm_to_mw(p_hi_dbm));

    EmpiricalCdf cdf_lo(costs_lo);
    EmpiricalCdf cdf_hi(costs_hi);

    CsvWriter cdf_csv(out_dir + "/nli_cdf.csv", {"power_dbm", "cost", "cdf"},
                      provenance_comments(cfg.config_hash, cfg.master_seed));
    auto dump_cdf = [&](double dbm, const EmpiricalCdf& cdf) {
        const auto& s = cdf.sorted();
        for (size_t i = 0; i < s.size(); ++i)
            cdf_csv.row({dbm, s[i], static_cast<double>(i + 1) / static_cast<double>(s.size())});
    };
    dump_cdf(p_lo_dbm, cdf_lo);
    dump_cdf(p_hi_dbm, cdf_hi);

    int degenerate = 0;
    double tail_lo = 0.0, tail_hi = 0.0, shape_lo = 0.0, shape_hi = 0.0;
    double mean_lo = 0.0, mean_hi = 0.0, rho = 0.0;
    try {
        tail_lo = tail_exponent(cdf_lo);
        tail_hi = tail_exponent(cdf_hi);
        GammaFit fit_lo = gamma_fit_moments(costs_lo);
        GammaFit fit_hi = gamma_fit_moments(costs_hi);
        shape_lo = fit_lo.shape;
        mean_lo = fit_lo.mean;
        shape_hi = fit_hi.shape;
        mean_hi = fit_hi.mean;
        size_t m = std::min(costs_lo.size(), costs_hi.size());
        rho = spearman_rank_correlation(
            std::vector<double>(costs_lo.begin(), costs_lo.begin() + m),
            std::vector<double>(costs_hi.begin(), costs_hi.begin() + m));
    } catch (const NumericError&) {
        degenerate = 1;
    }

    CubicScalingReport rep;
    try {
        rep = cubic_scaling_check(costs_lo, costs_hi, power_ratio);
    } catch (const NumericError&) {
        degenerate = 1;
    }

    CsvWriter sum_csv(out_dir + "/nli_summary.csv",
                      {"power_dbm_lo", "power_dbm_hi", "samples", "tail_exponent_lo",
                       "tail_exponent_hi", "gamma_shape_lo", "gamma_shape_hi", "gamma_mean_lo",
                       "gamma_mean_hi", "median_cost_ratio", "expected_cost_ratio",
                       "ratio_iqr_lo", "ratio_iqr_hi", "spearman", "degenerate"},
                      provenance_comments(cfg.config_hash, cfg.master_seed));
    sum_csv.row({p_lo_dbm, p_hi_dbm, static_cast<double>(costs_lo.size()), tail_lo, tail_hi,
                 shape_lo, shape_hi, mean_lo, mean_hi, rep.median_ratio, rep.expected,
                 rep.iqr_lo, rep.iqr_hi, rho, static_cast<double>(degenerate)});
    return kExitOk;
}

int cmd_select(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    Scenario scen = scenario_from_name(cfg.scenario);
    const int pols = scenario_pols(scen);
    const int subc = scenario_subc(scen);

    CostChannel ch = cost_channel_from(cfg, subc);

    SelectionConfig sel;
    sel.burst_symbols = cfg.selection_burst_symbols;
    sel.block_length = cfg.block_length;
    sel.symbol_power = dbm_to_mw(cfg.selection_power_dbm) / pols / subc;
    sel.pol_count = pols;
    sel.eta_target = cfg.eta_target;
    sel.gamma_lambda = cfg.gamma_lambda;
    sel.target_accepts = cfg.target_accepts;
    sel.max_proposals = cfg.max_proposals;
    sel.guard_symbols = cfg.guard_symbols;
    sel.refresh_iterations = cfg.refresh_iterations;
    sel.seed = cfg.master_seed;
    sel.progress = [](uint64_t proposals, uint64_t accepts) {
        std::fprintf(stderr, "select: proposals=%llu accepts=%llu\n",
                     static_cast<unsigned long long>(proposals),
                     static_cast<unsigned long long>(accepts));
    };

    SelectionResult res = cfg.procedure == "fast" ? fast_select(sel, ch)
                                                  : averaged_select(sel, ch);
    if (res.threshold_degenerate)
        std::fprintf(stderr, "select: threshold quantile is degenerate (tied costs)\n");

    std::string path = cfg.store_path.empty() ? out_dir + "/store.seqs" : cfg.store_path;
    write_store(path, res.store);
    std::printf("store = %s\n", path.c_str());
    std::printf("accepts = %llu\n", static_cast<unsigned long long>(res.store.accept_count));
    std::printf("proposals = %llu\n",
                static_cast<unsigned long long>(res.store.proposal_count));
    std::printf("eta = %s\n", format_double(res.realized_eta).c_str());
    std::printf("gamma_lambda = %s\n", format_double(res.store.gamma_lambda).c_str());
    std::printf("checksum = %llu\n",
                static_cast<unsigned long long>(file_checksum(path)));
    return kExitOk;
}

int cmd_air(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    Scenario scen = scenario_from_name(cfg.scenario);

    bool wants_store = false;
    for (const auto& v : cfg.variants)
        if (v == "selection" || v == "selection_dbp") wants_store = true;
    SequenceStore store;
    uint64_t store_checksum = 0;
    if (wants_store) {
        if (cfg.store_path.empty())
            throw ConfigError("selection variants need selection.store to point at a store");
        store = read_store(cfg.store_path);
        store_checksum = file_checksum(cfg.store_path);
    }

    ExperimentSpec spec;
    spec.scenario = scen;
    spec.link = cfg.link;
    spec.wdm = cfg.wdm;
    spec.grid = cfg.grid;
    spec.symbols_per_point = cfg.symbols_per_point;
    spec.burst_symbols = cfg.burst_symbols;
    spec.edge_discard = cfg.edge_discard;
    spec.seed = cfg.master_seed;
    if (cfg.metric_sigma2 != "auto") spec.pinned_sigma2 = std::stod(cfg.metric_sigma2);

    for (const auto& variant : cfg.variants) {
        spec.dbp = variant == "dbp" || variant == "selection_dbp";
        bool uses_store = variant == "selection" || variant == "selection_dbp";
        spec.store = uses_store ? &store : nullptr;

        std::vector<std::string> comments = provenance_comments(cfg.config_hash, cfg.master_seed);
        comments.push_back("variant = " + variant);
        if (uses_store) {
            comments.push_back("store = " + cfg.store_path);
            comments.push_back("store_checksum = " + std::to_string(store_checksum));
        }
        CsvWriter csv(out_dir + "/air_" + variant + ".csv",
                      {"power_dbm", "se_bits_s_hz_pol", "gross_air", "rate_loss", "sigma2_opt",
                       "eta", "n", "seed"},
                      comments);
        for (size_t i = 0; i < cfg.sweep_dbm.size(); ++i) {
            PointResult pt = run_point(spec, cfg.sweep_dbm[i], i);
            csv.text_row({format_double(pt.power_dbm),
                          format_double(pt.estimate.se_per_polarization()),
                          format_double(pt.estimate.gross), format_double(pt.estimate.rate_loss),
                          format_double(pt.estimate.sigma2), format_double(pt.estimate.eta),
                          std::to_string(pt.estimate.block_length),
                          std::to_string(pt.point_seed)});
            std::fprintf(stderr, "air[%s]: point %zu/%zu done\n", variant.c_str(), i + 1,
                         cfg.sweep_dbm.size());
        }
    }
    return kExitOk;
}

int cmd_store_info(const std::string& store_path) {
    std::string text = describe_store_file(store_path);
    std::fputs(text.c_str(), stdout);
    return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"fiber channel laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string store_path;
    uint64_t seed_override = 0;
    int workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed_override, "override [experiment] master_seed");
        sub->add_option("--workers", workers, "worker thread count");
    };

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form rate curves");
    add_common(analytic);
    CLI::App* nli = app.add_subcommand("nli-stats", "distortion cost statistics");
    add_common(nli);
    CLI::App* select = app.add_subcommand("select", "run sequence selection");
    add_common(select);
    CLI::App* air = app.add_subcommand("air", "transmission rate sweep");
    add_common(air);
    CLI::App* info = app.add_subcommand("store-info", "describe a sequence store");
    info->add_option("store", store_path, "store file")->required();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (workers > 0) omp_set_num_threads(workers);
        if (info->parsed()) return cmd_store_info(store_path);

        RunConfig cfg = load_run_config(config_path);
        for (const auto* opt : {analytic, nli, select, air})
            if (opt->parsed() && opt->count("--seed") > 0) cfg.master_seed = seed_override;

        if (analytic->parsed()) return cmd_analytic(cfg, out_dir);
        if (nli->parsed()) return cmd_nli_stats(cfg, out_dir);
        if (select->parsed()) return cmd_select(cfg, out_dir);
        if (air->parsed()) return cmd_air(cfg, out_dir);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const StarvationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitStarvation;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}

} // namespace fiberlab
