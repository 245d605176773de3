#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsalpha/noise.hpp"
#include "nsalpha/nonlinearity.hpp"
#include "nsalpha/spectral.hpp"

namespace nsalpha {

// Non-finite coefficient encountered while stepping: dt too large or the
// field under-resolved.
class BlowUpError : public std::runtime_error {
   public:
    BlowUpError(std::size_t step, double alpha, std::uint64_t sample)
        : std::runtime_error("numerical blow-up at step " + std::to_string(step) +
                             ", alpha=" + std::to_string(alpha) +
                             ", sample=" + std::to_string(sample)),
          step(step),
          alpha(alpha),
          sample(sample) {}
    std::size_t step;
    double alpha;
    std::uint64_t sample;
};

struct SimParams {
    double nu = 0.05;
    std::vector<double> alphas{0.2, 0.1, 0.05, 0.025};
    double dt = 1e-3;
    double horizon = 0.5;
    GridSpec grid{};
    NoiseModel noise;
    SpectralVelocity u0;
    bool nonlinearity_enabled = true;  // test hook: disabling B leaves the Stokes flow

    SimParams() : noise(NoiseModel::make(grid, NoiseConfig{})), u0(grid) {}

    std::size_t steps() const;
    void validate() const;
};

// Per-step scalar record for one alpha level of a coupled run. Index j is
// the grid point t_j = j*dt, j = 0..steps.
struct AlphaSeries {
    double alpha = 0.0;
    std::vector<double> delta_h;     // |u - u^alpha|
    std::vector<double> delta_v2;    // |A^{1/2}(u - u^alpha)|^2
    std::vector<double> ualpha_v2;   // ||u^alpha||^2
    std::vector<double> ualpha_l44;  // ||u^alpha||_{L4}^4
    std::vector<double> m1;          // |u|^2 + 2 a^2 ||u||^2 + a^4 |Au|^2 (= |v^alpha|^2)
    std::vector<double> y;           // ||u||^2 + a^2 |Au|^2
};

struct CoupledTrajectory {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> uref_h2;  // |u|^2 of the reference solution
    std::vector<double> uref_v2;  // ||u||^2 of the reference solution
    std::vector<AlphaSeries> levels;
};

// One linearly implicit Euler-Maruyama step of the stochastic NSE:
// per mode, u+ = (u - dt*B(u,u) + Q(u)dW) / (1 + nu*dt*lambda).
// Pass dW = nullptr for the deterministic (Q = 0) flow.
SpectralVelocity step_nse(const SpectralVelocity& u, const NoiseIncrement* dW,
                          const SimParams& params);

// One step of the stochastic Leray-alpha system in the momentum variable:
// v+ = (v - dt*B(u,v) + Q(u)dW) / (1 + nu*dt*lambda), u+ = N_alpha v+.
struct LerayStep {
    SpectralVelocity v;
    SpectralVelocity u;
};
LerayStep step_leray(const SpectralVelocity& v, const NoiseIncrement* dW, double alpha,
                     const SimParams& params);

// Advances the NSE reference and every alpha level on the SAME Wiener
// increments, recording the per-step quantities consumed by the estimators.
CoupledTrajectory run_coupled(const SimParams& params, const CounterRng& rng,
                              std::uint64_t sample_id);

// Band-limited random divergence-free field with unit V-norm.
SpectralVelocity random_divfree_field(const GridSpec& grid, const CounterRng& rng,
                                      std::uint64_t tag, int band = 4);

// Optional binary trajectory snapshot (debugging aid, off by default):
// header with a grid/params hash followed by per-step coefficient blocks.
void dump_snapshot(const std::string& path, const SimParams& params,
                   const std::vector<SpectralVelocity>& states);

}  // namespace nsalpha
