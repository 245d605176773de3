#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "nsalpha/experiment.hpp"
#include "nsalpha/verify.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBlowUp = 3;

std::string default_out_dir() {
    const char* env = std::getenv("NSALPHA_OUT_DIR");
    return env ? env : ".";
}

nsalpha::StudyConfig build_config(const std::string& config_path) {
    nsalpha::StudyConfig cfg;
    if (!config_path.empty()) cfg = nsalpha::load_config(config_path);
    if (cfg.out_dir == ".") cfg.out_dir = default_out_dir();
    return cfg;
}

int cmd_verify(std::uint64_t seed) {
    const auto results = nsalpha::verify_operators(seed);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[ ok ] " : "[FAIL] ") << r.name << "  (" << r.detail << ")\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_simulate(const nsalpha::StudyConfig& cfg) {
    const nsalpha::SimParams params = nsalpha::make_sim_params(cfg);
    const nsalpha::CounterRng rng(cfg.master_seed);
    const auto traj = nsalpha::run_coupled(params, rng, 0);
    std::filesystem::create_directories(cfg.out_dir);
    for (std::size_t l = 0; l < cfg.alphas.size(); ++l) {
        char name[128];
        std::snprintf(name, sizeof(name), "%s/series_s0000_alpha%g.csv", cfg.out_dir.c_str(),
                      cfg.alphas[l]);
        nsalpha::write_series_csv(name, traj, l);
        std::cout << "wrote " << name << "\n";
    }
    return 0;
}

int cmd_convergence(const nsalpha::StudyConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto ensemble = nsalpha::run_study(cfg);
    const auto fit = nsalpha::fit_rate(nsalpha::rate_points(ensemble));
    nsalpha::write_results_csv(cfg.out_dir + "/results.csv", ensemble, fit);
    nsalpha::write_plotdata(cfg.out_dir + "/plotdata.txt", ensemble);
    std::cout << "R=" << ensemble.R_used << " markov=" << ensemble.markov_diagnostic
              << " slope=" << fit.slope << " ci=[" << fit.slope_ci_lo << ","
              << fit.slope_ci_hi << "]\n";
    std::cout << "wrote " << cfg.out_dir << "/results.csv\n";
    return 0;
}

int cmd_tail(const nsalpha::StudyConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto ensemble = nsalpha::run_study(cfg);
    const auto tail = nsalpha::tail_study(cfg, ensemble);
    nsalpha::write_tail_csv(cfg.out_dir + "/tail.csv", tail);
    for (const auto& t : tail)
        std::cout << "alpha=" << t.alpha << " P(eps >= " << t.threshold
                  << ") = " << t.frequency << " [" << t.wilson_lo << "," << t.wilson_hi
                  << "]\n";
    std::cout << "wrote " << cfg.out_dir << "/tail.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic Leray-alpha / Navier-Stokes convergence laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> samples;
    std::optional<int> threads;
    bool dump_series = false;
    app.add_option("--config", config_path, "flat key=value configuration file");
    app.add_option("--seed", seed, "master seed (overrides config)");
    app.add_option("--out", out, "output directory (overrides config)");
    app.add_option("--samples", samples, "Monte Carlo sample count (overrides config)");
    app.add_option("--threads", threads, "sample-level worker threads");
    app.add_flag("--dump-series", dump_series, "emit per-trajectory time-series CSV");

    auto* verify = app.add_subcommand("verify-operators", "run the operator invariant suite");
    auto* simulate = app.add_subcommand("simulate", "one coupled trajectory, emits series CSV");
    auto* conv = app.add_subcommand("convergence-study", "ensemble study with rate fit");
    auto* tail = app.add_subcommand("tail-study", "convergence-in-probability tail study");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        nsalpha::StudyConfig cfg = build_config(config_path);
        if (seed) cfg.master_seed = *seed;
        if (out) cfg.out_dir = *out;
        if (samples) cfg.samples = *samples;
        if (threads) cfg.threads = *threads;
        if (dump_series) cfg.dump_series = true;

        if (verify->parsed()) return cmd_verify(cfg.master_seed);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (conv->parsed()) return cmd_convergence(cfg);
        if (tail->parsed()) return cmd_tail(cfg);
        return kExitUsage;
    } catch (const nsalpha::BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBlowUp;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        return msg.find("blow-up") != std::string::npos ? kExitBlowUp : 1;
    }
}
