#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsalpha/rng.hpp"
#include "nsalpha/spectral.hpp"

namespace nsalpha {

struct NoiseConfig {
    double gamma = 2.0;     // additive spectral decay, a_k = sigma_a * lambda_k^{-gamma}
    double sigma_a = 0.05;  // additive amplitude
    double sigma_b = 0.05;  // multiplicative gain on low modes
    int mult_cutoff = 4;    // b_k = sigma_b for |k|_inf <= mult_cutoff, else 0
    int noise_cutoff = 4;   // max |k|_inf of driven modes
};

// One driven wavevector from the half lattice; it carries two real degrees
// of freedom (the cosine and sine eigenmodes at the same eigenvalue).
struct NoiseMode {
    int kx = 0;
    int ky = 0;
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;
};

// Wiener increments for one time step: independent N(0, dt) draws per real
// degree of freedom, stored as (cosine, sine) pairs per driven mode.
struct NoiseIncrement {
    double dt = 0.0;
    std::vector<std::pair<double, double>> w;
};

// Diagonal diffusion coefficient in the Stokes eigenbasis:
// Q(u) e_k = (a_k + b_k <u, psi_k>) psi_k. Both Lipschitz constants and both
// growth constants are closed-form in the coefficient sequences.
class NoiseModel {
   public:
    static NoiseModel make(const GridSpec& grid, const NoiseConfig& cfg);

    const GridSpec& grid() const { return grid_; }
    const std::vector<NoiseMode>& modes() const { return modes_; }
    const NoiseConfig& config() const { return cfg_; }

    double ell0() const { return ell0_; }
    double ell1() const { return ell1_; }
    double ell2() const { return ell2_; }
    double ell3() const { return ell3_; }
    double sum_a2() const { return sum_a2_; }          // sum of a_k^2 over real dof
    double sum_lambda_a2() const { return sum_lam_a2_; }

    bool silent() const { return modes_.empty() || (ell0_ == 0.0 && sum_a2_ == 0.0); }

   private:
    GridSpec grid_{};
    NoiseConfig cfg_{};
    std::vector<NoiseMode> modes_;
    double ell0_ = 0.0, ell1_ = 0.0, ell2_ = 0.0, ell3_ = 0.0;
    double sum_a2_ = 0.0, sum_lam_a2_ = 0.0;
};

// Q(u) applied to the increment: sum_k (a_k + b_k <u, psi_k>) dW_k psi_k.
SpectralVelocity apply_Q(const SpectralVelocity& u, const NoiseIncrement& dW,
                         const NoiseModel& model);

// Exact Hilbert-Schmidt norms: (||Q(u)||_HS, ||A^{1/2} Q(u)||_HS).
std::pair<double, double> hs_norms_Q(const SpectralVelocity& u, const NoiseModel& model);

// Fresh increments for (sample, step); bit-identical for identical counters.
NoiseIncrement sample_increment(const CounterRng& rng, std::uint64_t sample,
                                std::uint64_t step, double dt, const NoiseModel& model);

}  // namespace nsalpha
