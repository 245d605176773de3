#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsalpha/estimators.hpp"
#include "nsalpha/integrator.hpp"

namespace nsalpha {

struct StudyConfig {
    // discretization
    double L = 2.0 * M_PI;
    int N = 64;
    double dealias_fraction = 2.0 / 3.0;
    std::optional<int> galerkin_cutoff;
    double nu = 0.05;
    double dt = 1e-3;
    double T = 0.5;
    std::vector<double> alphas{0.2, 0.1, 0.05, 0.025};
    // noise
    NoiseConfig noise;
    // ensemble
    int samples = 64;
    double R = -1.0;  // < 0 means "auto": calibrated from the ensemble itself
    std::uint64_t master_seed = 1;
    std::string out_dir = ".";
    bool dump_series = false;
    int threads = 1;
    StopCriterion criterion = StopCriterion::L4;
    int u0_band = 4;
    bool exploratory = false;  // if true, blown-up samples are excluded instead of fatal

    void validate() const;
};

// Flat key=value file; '#' starts a comment. Unknown keys are an error.
StudyConfig load_config(const std::string& path);
void apply_key(StudyConfig& cfg, const std::string& key, const std::string& value);

SimParams make_sim_params(const StudyConfig& cfg);

struct AlphaResult {
    double alpha = 0.0;
    double mean_loc_err = 0.0;
    double sem = 0.0;       // standard error of the mean
    double mean_eps = 0.0;  // mean eps_alpha(T)
    double tau_full_frac = 0.0;
    int blowups = 0;
};

struct EnsembleResult {
    std::vector<AlphaResult> per_alpha;
    double R_used = 0.0;
    double markov_diagnostic = 0.0;  // mean localization integral at T over R
    // per [alpha][sample]
    std::vector<std::vector<double>> loc_err;
    std::vector<std::vector<double>> eps_T;
    std::vector<std::vector<double>> max_m1;
    std::vector<std::vector<double>> max_y;
    int total_blowups = 0;
};

EnsembleResult run_study(const StudyConfig& cfg);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_norm = 0.0;
    double slope_ci_lo = 0.0;  // 95% confidence interval on the slope
    double slope_ci_hi = 0.0;
    int points = 0;
};

// OLS of log(error) against log(alpha); errors must be positive.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct TailPoint {
    double alpha = 0.0;
    double gamma_n = 0.0;
    double threshold = 0.0;  // gamma_n * alpha_n
    double frequency = 0.0;  // empirical P(eps_n(T) >= threshold)
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    int exceedances = 0;
    int total = 0;
};

// Default slowly diverging sequence Gamma_n = 1 + log(1 + n), n = 1-based
// along the alpha grid.
std::vector<TailPoint> tail_study(const StudyConfig& cfg, const EnsembleResult& ensemble);

// Smallest threshold for which at most 5% of pilot samples stop early;
// requires >= 16 pilot samples per level.
double calibrate_R(const StudyConfig& cfg, const std::vector<std::vector<double>>& pilot_integrals);

// Output emission (UTF-8, '.' decimal, fixed column order).
void write_results_csv(const std::string& path, const EnsembleResult& r, const RateFit& fit);
void write_plotdata(const std::string& path, const EnsembleResult& r);
void write_tail_csv(const std::string& path, const std::vector<TailPoint>& tail);

// Per-trajectory time series (columns: t, eps_sup, eps_int, m1, y, IV, I4).
void write_series_csv(const std::string& path, const CoupledTrajectory& traj,
                      std::size_t level);

// Rate fit input assembled from an ensemble: (alpha, sqrt(mean_loc_err)).
std::vector<std::pair<double, double>> rate_points(const EnsembleResult& r);

}  // namespace nsalpha
