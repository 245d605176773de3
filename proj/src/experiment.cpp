#include "nsalpha/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace nsalpha {

void StudyConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("StudyConfig: samples must be >= 1");
    if (alphas.empty()) throw std::invalid_argument("StudyConfig: alpha grid is empty");
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i] >= alphas[i - 1])
            throw std::invalid_argument("StudyConfig: alphas must be strictly decreasing");
    for (double a : alphas)
        if (a <= 0.0 || a >= 1.0)
            throw std::invalid_argument("StudyConfig: every alpha must lie in (0,1)");
    if (threads < 1) throw std::invalid_argument("StudyConfig: threads must be >= 1");
}

namespace {

std::vector<double> parse_alpha_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void apply_key(StudyConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "L") cfg.L = std::stod(value);
    else if (key == "N") cfg.N = std::stoi(value);
    else if (key == "dealias_fraction") cfg.dealias_fraction = std::stod(value);
    else if (key == "galerkin_cutoff") cfg.galerkin_cutoff = std::stoi(value);
    else if (key == "nu") cfg.nu = std::stod(value);
    else if (key == "dt") cfg.dt = std::stod(value);
    else if (key == "T") cfg.T = std::stod(value);
    else if (key == "alphas") cfg.alphas = parse_alpha_list(value);
    else if (key == "gamma") cfg.noise.gamma = std::stod(value);
    else if (key == "sigma_a") cfg.noise.sigma_a = std::stod(value);
    else if (key == "sigma_b") cfg.noise.sigma_b = std::stod(value);
    else if (key == "mult_cutoff") cfg.noise.mult_cutoff = std::stoi(value);
    else if (key == "noise_cutoff") cfg.noise.noise_cutoff = std::stoi(value);
    else if (key == "samples") cfg.samples = std::stoi(value);
    else if (key == "R") cfg.R = (value == "auto") ? -1.0 : std::stod(value);
    else if (key == "master_seed") cfg.master_seed = std::stoull(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "dump_series") cfg.dump_series = (value == "1" || value == "true");
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "criterion") {
        if (value == "V2") cfg.criterion = StopCriterion::V2;
        else if (value == "L4") cfg.criterion = StopCriterion::L4;
        else throw std::invalid_argument("config: criterion must be V2 or L4");
    } else if (key == "u0_band") cfg.u0_band = std::stoi(value);
    else if (key == "exploratory") cfg.exploratory = (value == "1" || value == "true");
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    StudyConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

SimParams make_sim_params(const StudyConfig& cfg) {
    cfg.validate();
    SimParams p;
    p.grid = GridSpec(cfg.L, cfg.N, cfg.dealias_fraction, cfg.galerkin_cutoff);
    p.nu = cfg.nu;
    p.dt = cfg.dt;
    p.horizon = cfg.T;
    p.alphas = cfg.alphas;
    p.noise = NoiseModel::make(p.grid, cfg.noise);
    p.u0 = random_divfree_field(p.grid, CounterRng(CounterRng::mix(cfg.master_seed ^ 0x1c0ffeeULL)),
                                0, cfg.u0_band);
    p.validate();
    return p;
}

double calibrate_R(const StudyConfig& cfg,
                   const std::vector<std::vector<double>>& pilot_integrals) {
    for (const auto& level : pilot_integrals)
        if (level.size() < 16)
            throw std::invalid_argument("calibrate_R: pilot too small (< 16 samples)");
    double peak = 0.0;
    for (const auto& level : pilot_integrals)
        for (double v : level) peak = std::max(peak, v);
    if (peak <= 0.0) peak = std::numeric_limits<double>::min();
    // 5% headroom above the pilot maximum: every pilot sample runs to T
    return 1.05 * peak;
}

EnsembleResult run_study(const StudyConfig& cfg) {
    cfg.validate();
    const SimParams params = make_sim_params(cfg);
    const CounterRng rng(cfg.master_seed);
    const std::size_t nlev = cfg.alphas.size();
    const std::size_t nsmp = static_cast<std::size_t>(cfg.samples);

    std::vector<CoupledTrajectory> trajs(nsmp);
    std::vector<char> ok(nsmp, 0);
    std::vector<std::string> failures(nsmp);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t s = next.fetch_add(1);
            if (s >= nsmp) return;
            try {
                trajs[s] = run_coupled(params, rng, s);
                ok[s] = 1;
            } catch (const BlowUpError& e) {
                failures[s] = e.what();
            }
        }
    };
    if (cfg.threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < cfg.threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int blowups = 0;
    for (std::size_t s = 0; s < nsmp; ++s) {
        if (ok[s]) continue;
        ++blowups;
        if (!cfg.exploratory)
            throw std::runtime_error("run_study: " + failures[s] +
                                     " (acceptance runs require zero blow-ups)");
    }

    // localization integrals at T, per level per surviving sample
    std::vector<std::vector<double>> integrals(nlev);
    for (std::size_t l = 0; l < nlev; ++l)
        for (std::size_t s = 0; s < nsmp; ++s) {
            if (!ok[s]) continue;
            const auto st = localize(trajs[s], l, std::numeric_limits<double>::infinity(),
                                     cfg.criterion);
            integrals[l].push_back(st.integral.back());
        }

    EnsembleResult r;
    r.total_blowups = blowups;
    r.R_used = cfg.R < 0.0 ? calibrate_R(cfg, integrals) : cfg.R;

    double integral_sum = 0.0;
    std::size_t integral_count = 0;
    r.loc_err.assign(nlev, {});
    r.eps_T.assign(nlev, {});
    r.max_m1.assign(nlev, {});
    r.max_y.assign(nlev, {});
    for (std::size_t l = 0; l < nlev; ++l) {
        std::size_t tau_full = 0, n = 0;
        double sum_loc = 0.0, sum_eps = 0.0;
        for (std::size_t s = 0; s < nsmp; ++s) {
            if (!ok[s]) continue;
            const double le = localized_error(trajs[s], l, r.R_used, cfg.criterion);
            const double eps = epsilon_final(trajs[s], l);
            const auto st = localize(trajs[s], l, r.R_used, cfg.criterion);
            if (st.tau_index + 1 == trajs[s].t.size()) ++tau_full;
            const auto& lev = trajs[s].levels[l];
            r.loc_err[l].push_back(le);
            r.eps_T[l].push_back(eps);
            r.max_m1[l].push_back(*std::max_element(lev.m1.begin(), lev.m1.end()));
            r.max_y[l].push_back(*std::max_element(lev.y.begin(), lev.y.end()));
            sum_loc += le;
            sum_eps += eps;
            integral_sum += st.integral.back();
            ++integral_count;
            ++n;
        }
        AlphaResult a;
        a.alpha = cfg.alphas[l];
        a.blowups = blowups;
        if (n > 0) {
            a.mean_loc_err = sum_loc / n;
            a.mean_eps = sum_eps / n;
            a.tau_full_frac = static_cast<double>(tau_full) / n;
            if (n > 1) {
                double ss = 0.0;
                for (double v : r.loc_err[l]) ss += (v - a.mean_loc_err) * (v - a.mean_loc_err);
                a.sem = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
            }
        }
        r.per_alpha.push_back(a);
    }
    r.markov_diagnostic =
        integral_count ? (integral_sum / integral_count) / r.R_used : 0.0;

    if (cfg.dump_series) {
        for (std::size_t s = 0; s < nsmp; ++s) {
            if (!ok[s]) continue;
            for (std::size_t l = 0; l < nlev; ++l) {
                char name[128];
                std::snprintf(name, sizeof(name), "%s/series_s%04zu_alpha%g.csv",
                              cfg.out_dir.c_str(), s, cfg.alphas[l]);
                write_series_csv(name, trajs[s], l);
            }
        }
    }
    return r;
}

namespace {

// two-sided 97.5% Student t quantiles by degrees of freedom
double t_quantile(int df) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                   2.306,  2.262, 2.228, 2.201, 2.179, 2.160, 2.145,
                                   2.131,  2.120, 2.110, 2.101, 2.093, 2.086};
    if (df < 1) return std::numeric_limits<double>::infinity();
    if (df <= 20) return table[df - 1];
    return 2.0;
}

}  // namespace

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
    for (const auto& [a, e] : points)
        if (a <= 0.0 || e <= 0.0)
            throw std::invalid_argument("fit_rate: non-positive value in fit data");

    const std::size_t n = points.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(points[i].first);
        y[i] = std::log(points[i].second);
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: degenerate alpha grid");

    RateFit f;
    f.points = static_cast<int>(n);
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = y[i] - (f.intercept + f.slope * x[i]);
        rss += resid * resid;
    }
    f.residual_norm = std::sqrt(rss);
    const double se = std::sqrt((rss / static_cast<double>(n - 2)) / sxx);
    const double half = t_quantile(static_cast<int>(n) - 2) * se;
    f.slope_ci_lo = f.slope - half;
    f.slope_ci_hi = f.slope + half;
    return f;
}

std::vector<TailPoint> tail_study(const StudyConfig& cfg, const EnsembleResult& ensemble) {
    std::vector<TailPoint> out;
    const double z = 1.959963984540054;
    for (std::size_t l = 0; l < ensemble.eps_T.size(); ++l) {
        TailPoint tp;
        tp.alpha = cfg.alphas[l];
        tp.gamma_n = 1.0 + std::log(1.0 + static_cast<double>(l + 1));
        tp.threshold = tp.gamma_n * tp.alpha;
        tp.total = static_cast<int>(ensemble.eps_T[l].size());
        for (double e : ensemble.eps_T[l])
            if (e >= tp.threshold) ++tp.exceedances;
        const double nn = tp.total;
        if (nn > 0) {
            const double p = tp.exceedances / nn;
            tp.frequency = p;
            const double denom = 1.0 + z * z / nn;
            const double center = (p + z * z / (2.0 * nn)) / denom;
            const double half =
                z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
            tp.wilson_lo = std::max(0.0, center - half);
            tp.wilson_hi = std::min(1.0, center + half);
        }
        out.push_back(tp);
    }
    return out;
}

std::vector<std::pair<double, double>> rate_points(const EnsembleResult& r) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& a : r.per_alpha) pts.emplace_back(a.alpha, std::sqrt(a.mean_loc_err));
    return pts;
}

void write_results_csv(const std::string& path, const EnsembleResult& r, const RateFit& fit) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "alpha,mean_loc_err,sem,mean_eps,tau_full_frac,blowups\n";
    for (const auto& a : r.per_alpha)
        out << fmt(a.alpha) << ',' << fmt(a.mean_loc_err) << ',' << fmt(a.sem) << ','
            << fmt(a.mean_eps) << ',' << fmt(a.tau_full_frac) << ',' << a.blowups << '\n';
    out << "fit," << fmt(fit.slope) << ',' << fmt(fit.slope_ci_lo) << ','
        << fmt(fit.slope_ci_hi) << ',' << fmt(fit.intercept) << ',' << fmt(fit.residual_norm)
        << '\n';
}

void write_plotdata(const std::string& path, const EnsembleResult& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (const auto& a : r.per_alpha)
        out << fmt(std::log(a.alpha)) << ' ' << fmt(0.5 * std::log(a.mean_loc_err)) << '\n';
}

void write_tail_csv(const std::string& path, const std::vector<TailPoint>& tail) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "alpha,gamma_n,threshold,frequency,wilson_lo,wilson_hi,exceedances,total\n";
    for (const auto& t : tail)
        out << fmt(t.alpha) << ',' << fmt(t.gamma_n) << ',' << fmt(t.threshold) << ','
            << fmt(t.frequency) << ',' << fmt(t.wilson_lo) << ',' << fmt(t.wilson_hi) << ','
            << t.exceedances << ',' << t.total << '\n';
}

void write_series_csv(const std::string& path, const CoupledTrajectory& traj,
                      std::size_t level) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    const AlphaSeries& s = traj.levels.at(level);
    const auto stV = localize(traj, level, std::numeric_limits<double>::infinity(),
                              StopCriterion::V2);
    const auto stL = localize(traj, level, std::numeric_limits<double>::infinity(),
                              StopCriterion::L4);
    out << "t,eps_sup,eps_int,m1,y,IV,I4\n";
    double sup = 0.0, integral = 0.0;
    for (std::size_t j = 0; j < traj.t.size(); ++j) {
        if (j > 0) integral += traj.dt * s.delta_v2[j - 1];
        sup = std::max(sup, s.delta_h[j]);
        out << fmt(traj.t[j]) << ',' << fmt(sup) << ',' << fmt(integral) << ',' << fmt(s.m1[j])
            << ',' << fmt(s.y[j]) << ',' << fmt(stV.integral[j]) << ',' << fmt(stL.integral[j])
            << '\n';
    }
}

}  // namespace nsalpha
