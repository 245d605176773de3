#pragma once

#include <cstddef>
#include <vector>

#include "nsalpha/integrator.hpp"

namespace nsalpha {

// Running error functional
//   eps(t) = sup_{s<=t} |u - u^alpha| + ( int_0^t |A^{1/2}(u - u^alpha)|^2 ds )^{1/2},
// accumulated on grid points with left-endpoint quadrature for the integral.
class ErrorSeries {
   public:
    // dt is the time elapsed since the previous update; pass 0 at t = 0.
    void update(const SpectralVelocity& u, const SpectralVelocity& u_alpha, double dt);

    double sup_part() const { return sup_; }
    double int_part() const { return integral_; }
    double value() const;

   private:
    double sup_ = 0.0;
    double integral_ = 0.0;
    double pending_v2_ = 0.0;
    bool started_ = false;
};

enum class StopCriterion { V2, L4 };

// Running localization integral, stopping time and Omega_R flag for one
// alpha level of a recorded trajectory.
struct LocalizationState {
    std::vector<double> integral;  // I[m] = sum_{j<m} dt * X_j
    double threshold = 0.0;
    double tau = 0.0;              // first grid time with I >= R, else T
    std::size_t tau_index = 0;
    bool omega_R = false;          // I(T) <= R
};

LocalizationState localize(const CoupledTrajectory& traj, std::size_t level, double R,
                           StopCriterion crit = StopCriterion::L4);

// sup_{s <= T ^ tau_R} |delta|^2 + 4 * int_0^{T ^ tau_R} |A^{1/2} delta|^2 ds.
double localized_error(const CoupledTrajectory& traj, std::size_t level, double R,
                       StopCriterion crit = StopCriterion::L4);

double stopping_time(const CoupledTrajectory& traj, std::size_t level, double R,
                     StopCriterion crit);

// eps_alpha evaluated at every grid point / at the horizon.
std::vector<double> epsilon_series(const CoupledTrajectory& traj, std::size_t level);
double epsilon_final(const CoupledTrajectory& traj, std::size_t level);

struct EnergyMonitors {
    double m1 = 0.0;           // |u^a|^2 + 2 a^2 |A^{1/2}u^a|^2 + a^4 |Au^a|^2
    double y = 0.0;            // |A^{1/2}u^a|^2 + a^2 |Au^a|^2
    double dissipation = 0.0;  // |Au^a|^2 + a^2 |A^{3/2}u^a|^2
};

EnergyMonitors energy_monitors(const SpectralVelocity& u_alpha, double alpha);

}  // namespace nsalpha
