// hexmc: analysis and simulation tool for diffusive molecular links on a
// hexagonal transmitter/receiver grid. See README.md for the subcommands.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexmc/channel.hpp"
#include "hexmc/errors.hpp"
#include "hexmc/grid.hpp"
#include "hexmc/mc.hpp"
#include "hexmc/metrics.hpp"
#include "hexmc/pbs.hpp"
#include "hexmc/validation.hpp"
#include "run_config.hpp"

namespace {

using hexmc::cli::CsvWriter;
using hexmc::cli::RunConfig;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GlobalArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    bool seed_set = false;
    std::uint64_t seed = 1;
    bool threads_set = false;
    int threads = 0;
};

RunConfig resolve_config(const GlobalArgs& g)
{
    RunConfig cfg;
    if (!g.config_path.empty())
        cfg = RunConfig::from_file(g.config_path);
    if (g.seed_set) cfg.seed = g.seed;
    if (g.threads_set) cfg.threads = g.threads;
    cfg.validate();
    return cfg;
}

void emit(const CsvWriter& w, const GlobalArgs& g, const RunConfig& cfg,
          nlohmann::json extra = {})
{
    nlohmann::json sidecar{{"config", cfg.to_json()}, {"seed", cfg.seed}};
    if (!extra.is_null() && !extra.empty())
        sidecar.update(extra);
    if (g.out_path.empty()) {
        if (g.format == "json") {
            nlohmann::json doc = w.to_json();
            doc["meta"] = sidecar;
            std::fputs((doc.dump(2) + "\n").c_str(), stdout);
        } else {
            std::fputs(w.to_string().c_str(), stdout);
        }
        return;
    }
    if (g.format == "json") {
        nlohmann::json doc = w.to_json();
        doc["meta"] = sidecar;
        hexmc::cli::write_text_file(g.out_path, doc.dump(2) + "\n");
    } else {
        w.write(g.out_path, sidecar);
    }
}

std::vector<double> d_hex_grid(const RunConfig& cfg)
{
    return hexmc::log_spaced(cfg.d_hex_min, cfg.d_hex_max, cfg.n_points);
}

// --- cir -------------------------------------------------------------------

int cmd_cir(const GlobalArgs& g)
{
    const RunConfig cfg = resolve_config(g);
    const auto params = cfg.channel_params(cfg.d_hex);

    // desired link plus the nearest interferer of each of the first two rings
    const double r0s[] = {0.0, cfg.d_hex, std::sqrt(3.0) * cfg.d_hex};
    const char* tags[] = {"tx0", "tx1", "tx7"};

    std::vector<double> times;
    const int n_steps = static_cast<int>(std::llround(cfg.t_sim / cfg.out_dt));
    times.reserve(n_steps);
    for (int i = 1; i <= n_steps; ++i)
        times.push_back(i * cfg.out_dt);

    std::vector<std::string> cols = {"t"};
    for (const char* tag : tags) {
        cols.push_back(std::string("cir_") + tag);
        cols.push_back(std::string("cir_") + tag + "_k1");
        cols.push_back(std::string("cir_") + tag + "_k0");
        cols.push_back(std::string("cir_uca_") + tag);
    }
    const bool with_pbs = cfg.pbs_realizations > 0;
    if (with_pbs) {
        for (const char* tag : tags) {
            cols.push_back(std::string("pbs_") + tag);
            cols.push_back(std::string("pbs_se_") + tag);
        }
    }

    std::vector<hexmc::CirCurve> full, k1, k0;
    std::vector<std::vector<double>> uca;
    for (double r0 : r0s) {
        full.push_back(hexmc::evaluate_cir_curve(r0, times, cfg.k_max, params));
        k1.push_back(hexmc::evaluate_cir_curve(r0, times, 1, params));
        k0.push_back(hexmc::evaluate_cir_curve(r0, times, 0, params));
        std::vector<double> u;
        u.reserve(times.size());
        for (double t : times)
            u.push_back(hexmc::cir_uca(r0, t, params));
        uca.push_back(std::move(u));
    }

    std::vector<hexmc::PbsCirEstimate> pbs;
    if (with_pbs) {
        hexmc::PbsConfig pcfg;
        pcfg.dt = cfg.out_dt;
        pcfg.t_sim = cfg.t_sim;
        pcfg.n_particles = cfg.pbs_particles;
        pcfg.n_realizations = cfg.pbs_realizations;
        pcfg.seed = cfg.seed;
        const hexmc::OffsetCoord sources[] = {{0, 0}, {0, 1}, {1, 1}};
        for (const auto& src : sources)
            pbs.push_back(hexmc::estimate_cir(pcfg, params, src, cfg.d_hex,
                                              cfg.threads));
    }

    CsvWriter w("hexmc.cir.v1", cols);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row = {times[i]};
        for (std::size_t s = 0; s < 3; ++s) {
            row.push_back(full[s].values[i]);
            row.push_back(k1[s].values[i]);
            row.push_back(k0[s].values[i]);
            row.push_back(uca[s][i]);
        }
        if (with_pbs)
            for (std::size_t s = 0; s < 3; ++s) {
                row.push_back(pbs[s].mean_fraction[i]);
                row.push_back(pbs[s].std_error[i]);
            }
        w.add_row(row);
    }

    const auto peak = hexmc::find_sampling_time(params, cfg.k_max, cfg.t_sim);
    emit(w, g, cfg,
         nlohmann::json{{"t_max", peak.t_max}, {"cir_peak", peak.peak}});
    return 0;
}

// --- ber-sweep -------------------------------------------------------------

int cmd_ber_sweep(const GlobalArgs& g, bool with_mc)
{
    const RunConfig cfg = resolve_config(g);
    const auto grid = d_hex_grid(cfg);
    const auto opts = cfg.link_options();

    CsvWriter w("hexmc.ber.v1",
                {"d_hex", "n_mol", "theta", "p", "q", "ber", "ber_mc", "se"});
    for (int n_mol : cfg.n_mol) {
        const auto sweep = hexmc::sweep_links(grid, n_mol, opts);
        std::vector<hexmc::McSweepRow> mc_rows;
        if (with_mc) {
            hexmc::McConfig mcfg;
            mcfg.n_realizations = cfg.mc_realizations;
            mcfg.n_rings = cfg.mc_rings;
            mcfg.theta_scan_max = cfg.theta_max;
            mcfg.seed = cfg.seed;
            mc_rows = hexmc::mc_are_sweep(mcfg, grid, n_mol, opts);
        }
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const auto& m = sweep[i].metrics;
            const double ber_mc = with_mc ? mc_rows[i].ber_mc_at_analytical : kNaN;
            const double se = with_mc ? mc_rows[i].se_ber : kNaN;
            w.add_row({sweep[i].d_hex, static_cast<double>(n_mol),
                       static_cast<double>(m.theta), m.p, m.q, m.ber, ber_mc,
                       se});
        }
    }
    emit(w, g, cfg);
    return 0;
}

// --- are-sweep -------------------------------------------------------------

int cmd_are_sweep(const GlobalArgs& g)
{
    const RunConfig cfg = resolve_config(g);
    const auto grid = d_hex_grid(cfg);
    const auto opts = cfg.link_options();

    CsvWriter w("hexmc.are.v1",
                {"d_hex", "n_mol", "theta", "p", "q", "ber", "user_rate",
                 "spatial_rate", "are"});
    nlohmann::json summary = nlohmann::json::array();
    for (int n_mol : cfg.n_mol) {
        const auto sweep = hexmc::sweep_links(grid, n_mol, opts);
        double best_are = -1.0, best_d = grid.front();
        for (const auto& pt : sweep) {
            const auto& m = pt.metrics;
            w.add_row({pt.d_hex, static_cast<double>(n_mol),
                       static_cast<double>(m.theta), m.p, m.q, m.ber,
                       m.user_rate, m.spatial_rate, m.are});
            if (m.are > best_are) {
                best_are = m.are;
                best_d = pt.d_hex;
            }
        }
        summary.push_back({{"n_mol", n_mol},
                           {"d_hex_opt", best_d},
                           {"are_max", best_are}});
    }
    emit(w, g, cfg, nlohmann::json{{"summary", std::move(summary)}});
    return 0;
}

// --- mc --------------------------------------------------------------------

int cmd_mc(const GlobalArgs& g, bool sweep)
{
    const RunConfig cfg = resolve_config(g);
    const auto opts = cfg.link_options();
    hexmc::McConfig mcfg;
    mcfg.n_realizations = cfg.mc_realizations;
    mcfg.n_rings = cfg.mc_rings;
    mcfg.theta_scan_max = cfg.theta_max;
    mcfg.seed = cfg.seed;

    const std::vector<double> grid =
        sweep ? d_hex_grid(cfg) : std::vector<double>{cfg.d_hex};

    CsvWriter w("hexmc.mc.v1",
                {"d_hex", "n_mol", "theta_best", "theta_analytical", "ber_mc",
                 "ber_mc_at_analytical", "ber_analytical", "p_hat", "q_hat",
                 "user_rate", "are", "se_ber"});
    for (int n_mol : cfg.n_mol) {
        const auto rows = hexmc::mc_are_sweep(mcfg, grid, n_mol, opts);
        for (const auto& r : rows)
            w.add_row({r.d_hex, static_cast<double>(n_mol),
                       static_cast<double>(r.theta_best),
                       static_cast<double>(r.theta_analytical), r.ber_mc,
                       r.ber_mc_at_analytical, r.ber_analytical, r.p_hat,
                       r.q_hat, r.user_rate, r.are, r.se_ber});
    }
    emit(w, g, cfg);
    return 0;
}

// --- pbs -------------------------------------------------------------------

int cmd_pbs(const GlobalArgs& g, int tx_index)
{
    const RunConfig cfg = resolve_config(g);
    const auto params = cfg.channel_params(cfg.d_hex);

    hexmc::OffsetCoord source{0, 0};
    if (tx_index > 0) {
        const auto layout = hexmc::build_layout(cfg.d_hex, cfg.n_rings);
        if (tx_index > static_cast<int>(layout.interferers.size()))
            throw hexmc::ConfigError("tx index exceeds the grid size at "
                                     + std::to_string(cfg.n_rings) + " rings");
        source = layout.interferers[tx_index - 1].cell;
    }

    hexmc::PbsConfig pcfg;
    pcfg.dt = cfg.dt;
    pcfg.t_sim = cfg.t_sim;
    pcfg.n_particles = cfg.pbs_particles;
    pcfg.n_realizations = cfg.pbs_realizations;
    pcfg.seed = cfg.seed;
    const auto est = hexmc::estimate_cir(pcfg, params, source, cfg.d_hex,
                                         cfg.threads);

    CsvWriter w("hexmc.pbs.v1", {"t", "mean_fraction", "std_error"});
    for (std::size_t i = 0; i < est.times.size(); ++i)
        w.add_row({est.times[i], est.mean_fraction[i], est.std_error[i]});
    emit(w, g, cfg, nlohmann::json{{"tx_index", tx_index}});
    return 0;
}

// --- validate --------------------------------------------------------------

int cmd_validate(const GlobalArgs& g, double series_rel_tol)
{
    const RunConfig cfg = resolve_config(g);
    hexmc::ValidationOptions vopts;
    vopts.seed = cfg.seed;
    vopts.series_rel_tol = series_rel_tol;
    const auto results = hexmc::run_validation(vopts);

    bool all_passed = true;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"measured", r.measured},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    nlohmann::json report{{"schema", "hexmc.validate.v1"},
                          {"all_passed", all_passed},
                          {"checks", std::move(checks)},
                          {"config", cfg.to_json()},
                          {"seed", cfg.seed}};
    const std::string text = report.dump(2) + "\n";
    if (g.out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        hexmc::cli::write_text_file(g.out_path, text);
    for (const auto& r : results)
        std::fprintf(stderr, "%-32s %s (measured %.3e, tolerance %.3e)\n",
                     r.name.c_str(), r.passed ? "pass" : "FAIL", r.measured,
                     r.tolerance);
    return all_passed ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hexagonal-grid molecular communication analyzer"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "flat key = value config file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", g.out_path, "output path (default: stdout)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", g.seed, "base RNG seed");
    auto* threads_opt = app.add_option("--threads", g.threads,
                                       "worker threads (0 = hardware)");
    // global flags may appear after the subcommand name as well
    app.fallthrough();

    auto* cir = app.add_subcommand(
        "cir", "channel impulse response curves, analytical and particle-based");
    auto* ber = app.add_subcommand(
        "ber-sweep", "bit error rate over a cell-spacing sweep");
    bool ber_with_mc = false;
    ber->add_flag("--mc", ber_with_mc, "add Monte Carlo reference columns");
    auto* are = app.add_subcommand(
        "are-sweep", "area rate efficiency sweep with per-N optimum summary");
    auto* mc = app.add_subcommand("mc", "symbol-level Monte Carlo");
    bool mc_sweep = false;
    mc->add_flag("--sweep", mc_sweep,
                 "run over the d_hex grid instead of the single d_hex");
    auto* pbs = app.add_subcommand("pbs", "particle-based CIR simulation");
    int pbs_tx = 0;
    pbs->add_option("--tx", pbs_tx,
                    "source cell index (0 = own cell, 1.. = interferers)")
        ->check(CLI::NonNegativeNumber);
    auto* validate = app.add_subcommand(
        "validate", "cross-route consistency checks against independent oracles");
    double series_rel_tol = 1e-6;
    validate->add_option("--series-rel-tol", series_rel_tol,
                         "tolerance of the series-vs-integration check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    g.seed_set = seed_opt->count() > 0;
    g.threads_set = threads_opt->count() > 0;

    try {
        if (cir->parsed()) return cmd_cir(g);
        if (ber->parsed()) return cmd_ber_sweep(g, ber_with_mc);
        if (are->parsed()) return cmd_are_sweep(g);
        if (mc->parsed()) return cmd_mc(g, mc_sweep);
        if (pbs->parsed()) return cmd_pbs(g, pbs_tx);
        if (validate->parsed()) return cmd_validate(g, series_rel_tol);
    } catch (const hexmc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const hexmc::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
