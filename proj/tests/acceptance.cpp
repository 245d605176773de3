// End-to-end acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nsalpha/experiment.hpp"

using namespace nsalpha;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int criterion, const char* what, bool pass, const std::string& detail) {
    std::printf("criterion %2d %s: %s (%s)\n", criterion, pass ? "PASS" : "FAIL", what,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

SpectralVelocity taylor_green(const GridSpec& g) {
    PhysicalVelocity p(g);
    const int n = g.modes_per_axis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = g.period * i / n, y = g.period * j / n;
            p.x[static_cast<size_t>(i) * n + j] = std::cos(x) * std::sin(y);
            p.y[static_cast<size_t>(i) * n + j] = -std::sin(x) * std::cos(y);
        }
    return to_spectral(p, g);
}

void criterion_1_bilinear_identities() {
    const auto t0 = Clock::now();
    const GridSpec g(2.0 * M_PI, 64);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SpectralVelocity u = random_divfree_field(g, CounterRng(101), 2 * i, g.max_mode());
        const SpectralVelocity v =
            random_divfree_field(g, CounterRng(101), 2 * i + 1, g.max_mode());
        const double uv = norm(u, NormKind::V), vv = norm(v, NormKind::V);
        const double r4 = std::abs(trilinear_form(u, v, v)) / (uv * vv * vv);
        const SpectralVelocity au = apply_stokes_power(u, 1.0);
        const double r5 =
            std::abs(trilinear_form(u, u, au)) / (uv * uv * norm(au, NormKind::H));
        worst = std::max(worst, std::max(r4, r5));
    }
    const double dt = seconds_since(t0);
    report(1, "bilinear cancellation identities", worst <= 1e-10 && dt < 10.0,
           fmt("worst ratio %.3g, %.1fs", worst, dt));
}

void criterion_2_filter_bounds() {
    const auto t0 = Clock::now();
    const GridSpec g(2.0 * M_PI, 64);
    bool pass = true;
    double worst_id = 0.0;
    for (double alpha : {1.0, 0.1, 0.01}) {
        for (int i = 0; i < 100; ++i) {
            const SpectralVelocity w =
                random_divfree_field(g, CounterRng(202), i, g.max_mode());
            const SpectralVelocity nw = apply_helmholtz_filter(w, alpha);
            pass = pass && norm(nw, NormKind::H) <= norm(w, NormKind::H) * (1.0 + 1e-12);
            pass = pass && norm(w - nw, NormKind::H) <=
                               0.5 * alpha * norm(w, NormKind::V) * (1.0 + 1e-12);
            pass = pass &&
                   alpha * norm(nw, NormKind::V) <= 0.5 * norm(w, NormKind::H) * (1.0 + 1e-12);
            const SpectralVelocity recon = alpha * alpha * apply_stokes_power(nw, 1.0) + nw;
            worst_id = std::max(worst_id,
                                norm(recon - w, NormKind::H) / norm(w, NormKind::H));
        }
    }
    pass = pass && worst_id <= 1e-12;
    const double dt = seconds_since(t0);
    report(2, "helmholtz filter bounds", pass && dt < 5.0,
           fmt("worst identity residual %.3g, %.1fs", worst_id, dt));
}

void criterion_3_noise_assumptions() {
    const auto t0 = Clock::now();
    const GridSpec g(2.0 * M_PI, 64);
    const NoiseModel model = NoiseModel::make(g, NoiseConfig{});
    const double tol = 1.0 + 1e-12;
    bool pass = true;
    const double s = std::sqrt(2.0) * g.period;
    for (int i = 0; i < 1000; ++i) {
        const SpectralVelocity u = random_divfree_field(g, CounterRng(303), 2 * i, g.max_mode());
        const SpectralVelocity w =
            random_divfree_field(g, CounterRng(303), 2 * i + 1, g.max_mode());
        double hs_h = 0.0, hs_v = 0.0;
        for (const NoiseMode& nm : model.modes()) {
            const Complex d = u.coeff(nm.kx, nm.ky) - w.coeff(nm.kx, nm.ky);
            const double q = nm.b * nm.b * s * s * std::norm(d);
            hs_h += q;
            hs_v += nm.lambda * q;
        }
        const SpectralVelocity diff = u - w;
        pass = pass && std::sqrt(hs_h) <= model.ell0() * norm(diff, NormKind::H) * tol;
        pass = pass && std::sqrt(hs_v) <= model.ell1() * norm(diff, NormKind::V) * tol;
        const auto [gh, gv] = hs_norms_Q(u, model);
        const double nh = norm(u, NormKind::H), nv = norm(u, NormKind::V);
        pass = pass && gh * gh <= model.ell2() * model.ell2() * (1.0 + nh * nh) * tol;
        pass = pass && gv * gv <= model.ell3() * model.ell3() * (1.0 + nv * nv) * tol;
    }
    const double dt = seconds_since(t0);
    report(3, "noise lipschitz and growth bounds", pass && dt < 5.0, fmt("%.1fs", dt));
}

void criterion_4_taylor_green() {
    const GridSpec g(2.0 * M_PI, 64);
    const SpectralVelocity tg = taylor_green(g);

    auto deviations = [&](double dt, int steps) {
        SimParams p;
        p.grid = g;
        NoiseConfig off;
        off.sigma_a = 0.0;
        off.sigma_b = 0.0;
        p.noise = NoiseModel::make(g, off);
        p.nu = 1.0;
        p.dt = dt;
        p.horizon = dt * steps;
        p.u0 = tg;
        SpectralVelocity u = tg;
        SpectralVelocity v = invert_helmholtz(tg, 0.5);
        double worst_nse = 0.0, worst_leray = 0.0;
        for (int s = 1; s <= steps; ++s) {
            u = step_nse(u, nullptr, p);
            const LerayStep ls = step_leray(v, nullptr, 0.5, p);
            v = ls.v;
            const SpectralVelocity exact = std::exp(-2.0 * dt * s) * tg;
            const double ref = norm(exact, NormKind::H);
            worst_nse = std::max(worst_nse, norm(u - exact, NormKind::H) / ref);
            worst_leray = std::max(worst_leray, norm(ls.u - exact, NormKind::H) / ref);
        }
        return std::pair{worst_nse, worst_leray};
    };

    const auto [e_nse, e_leray] = deviations(1e-4, 1000);
    const auto [e_nse_half, e_leray_half] = deviations(5e-5, 2000);
    const double ratio = e_nse / e_nse_half;
    const double ratio_l = e_leray / e_leray_half;
    const bool pass = e_nse <= 5e-3 && e_leray <= 5e-3 && ratio >= 1.7 && ratio <= 2.3 &&
                      ratio_l >= 1.7 && ratio_l <= 2.3;
    report(4, "taylor-green exact decay", pass,
           fmt("nse %.3g leray %.3g, halving ratios %.2f / %.2f", e_nse, e_leray, ratio,
               ratio_l));
}

void criterion_5_deterministic_rate() {
    const auto t0 = Clock::now();
    StudyConfig cfg;
    cfg.noise.sigma_a = 0.0;
    cfg.noise.sigma_b = 0.0;
    cfg.samples = 1;
    cfg.R = 1e9;
    const EnsembleResult r = run_study(cfg);
    std::vector<std::pair<double, double>> pts;
    for (const auto& a : r.per_alpha) pts.emplace_back(a.alpha, a.mean_eps);
    const RateFit fit = fit_rate(pts);
    const double dt = seconds_since(t0);
    report(5, "deterministic rate of eps_alpha(T)",
           fit.slope >= 0.85 && fit.slope <= 2.0 && dt < 120.0,
           fmt("slope %.3f, %.1fs", fit.slope, dt));
}

EnsembleResult shared_ensemble;

void criterion_6_stochastic_rate() {
    const auto t0 = Clock::now();
    const StudyConfig cfg;  // library defaults: M = 64, auto R
    shared_ensemble = run_study(cfg);
    const RateFit fit = fit_rate(rate_points(shared_ensemble));
    const double dt = seconds_since(t0);
    report(6, "localized mean-square rate",
           fit.slope >= 0.8 && fit.slope_ci_lo > 0.5 && dt < 900.0,
           fmt("slope %.3f, ci [%.3f, %.3f], R %.3g, %.0fs", fit.slope, fit.slope_ci_lo,
               fit.slope_ci_hi, shared_ensemble.R_used, dt));
}

void criterion_7_localization() {
    bool pass = !shared_ensemble.per_alpha.empty();
    double worst = 1.0;
    for (const auto& a : shared_ensemble.per_alpha) {
        worst = std::min(worst, a.tau_full_frac);
        pass = pass && a.tau_full_frac >= 0.95;
    }
    report(7, "stopping time reaches the horizon", pass,
           fmt("min full-run fraction %.3f", worst));
}

void criterion_8_tail() {
    const StudyConfig cfg;
    const auto tail = tail_study(cfg, shared_ensemble);
    bool pass = !tail.empty();
    for (std::size_t i = 1; i < tail.size(); ++i)
        pass = pass && tail[i].frequency <= tail[i - 1].frequency;
    pass = pass && tail.back().frequency <= 0.05;
    std::string detail;
    for (const auto& t : tail) detail += fmt("%.3f ", t.frequency);
    detail += fmt("(finest wilson hi %.3f)", tail.back().wilson_hi);
    report(8, "tail probabilities decay", pass, detail);
}

void criterion_9_energy_monitors() {
    bool pass = !shared_ensemble.max_m1.empty();
    double m1_lo = 1e300, m1_hi = 0.0, y_lo = 1e300, y_hi = 0.0;
    for (std::size_t l = 0; l < shared_ensemble.max_m1.size(); ++l) {
        double lm1 = 0.0, ly = 0.0;
        for (double v : shared_ensemble.max_m1[l]) {
            pass = pass && std::isfinite(v);
            lm1 = std::max(lm1, v);
        }
        for (double v : shared_ensemble.max_y[l]) {
            pass = pass && std::isfinite(v);
            ly = std::max(ly, v);
        }
        m1_lo = std::min(m1_lo, lm1);
        m1_hi = std::max(m1_hi, lm1);
        y_lo = std::min(y_lo, ly);
        y_hi = std::max(y_hi, ly);
    }
    pass = pass && m1_hi < 3.0 * m1_lo && y_hi < 3.0 * y_lo;
    report(9, "energy monitors uniformly bounded in alpha", pass,
           fmt("m1 spread %.2f, y spread %.2f", m1_hi / m1_lo, y_hi / y_lo));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10_determinism() {
    StudyConfig cfg;
    cfg.N = 32;
    cfg.T = 0.1;
    cfg.samples = 16;
    auto emit = [&](const char* path) {
        const EnsembleResult r = run_study(cfg);
        write_results_csv(path, r, fit_rate(rate_points(r)));
    };
    emit("acc_serial_a.csv");
    emit("acc_serial_b.csv");
    cfg.threads = 4;
    emit("acc_parallel.csv");
    const std::string a = slurp("acc_serial_a.csv");
    const bool pass = !a.empty() && a == slurp("acc_serial_b.csv") &&
                      a == slurp("acc_parallel.csv");
    std::remove("acc_serial_a.csv");
    std::remove("acc_serial_b.csv");
    std::remove("acc_parallel.csv");
    report(10, "bit-identical serial and parallel output", pass,
           pass ? "3 runs identical" : "outputs differ");
}

}  // namespace

int main() {
    criterion_1_bilinear_identities();
    criterion_2_filter_bounds();
    criterion_3_noise_assumptions();
    criterion_4_taylor_green();
    criterion_5_deterministic_rate();
    criterion_6_stochastic_rate();
    criterion_7_localization();
    criterion_8_tail();
    criterion_9_energy_monitors();
    criterion_10_determinism();
    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
