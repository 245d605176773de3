#include "nsalpha/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsalpha {

void ErrorSeries::update(const SpectralVelocity& u, const SpectralVelocity& u_alpha, double dt) {
    if (started_) integral_ += dt * pending_v2_;
    const SpectralVelocity delta = u - u_alpha;
    sup_ = std::max(sup_, norm(delta, NormKind::H));
    const double dv = norm(delta, NormKind::V);
    pending_v2_ = dv * dv;
    started_ = true;
}

double ErrorSeries::value() const { return sup_ + std::sqrt(integral_); }

namespace {

const AlphaSeries& level_at(const CoupledTrajectory& traj, std::size_t level) {
    if (level >= traj.levels.size()) throw std::out_of_range("trajectory level out of range");
    return traj.levels[level];
}

}  // namespace

LocalizationState localize(const CoupledTrajectory& traj, std::size_t level, double R,
                           StopCriterion crit) {
    const AlphaSeries& s = level_at(traj, level);
    const std::vector<double>& x = crit == StopCriterion::V2 ? s.ualpha_v2 : s.ualpha_l44;
    const std::size_t last = x.size() - 1;

    LocalizationState st;
    st.threshold = R;
    st.integral.resize(x.size());
    st.integral[0] = 0.0;
    for (std::size_t m = 1; m < x.size(); ++m)
        st.integral[m] = st.integral[m - 1] + traj.dt * x[m - 1];

    st.tau_index = last;
    st.tau = traj.t[last];
    for (std::size_t m = 0; m < x.size(); ++m) {
        if (st.integral[m] >= R) {
            st.tau_index = m;
            st.tau = traj.t[m];
            break;
        }
    }
    st.omega_R = st.integral[last] <= R;
    return st;
}

double localized_error(const CoupledTrajectory& traj, std::size_t level, double R,
                       StopCriterion crit) {
    const AlphaSeries& s = level_at(traj, level);
    const LocalizationState st = localize(traj, level, R, crit);
    double sup2 = 0.0;
    for (std::size_t j = 0; j <= st.tau_index; ++j)
        sup2 = std::max(sup2, s.delta_h[j] * s.delta_h[j]);
    double integral = 0.0;
    for (std::size_t j = 0; j < st.tau_index; ++j) integral += traj.dt * s.delta_v2[j];
    return sup2 + 4.0 * integral;
}

double stopping_time(const CoupledTrajectory& traj, std::size_t level, double R,
                     StopCriterion crit) {
    return localize(traj, level, R, crit).tau;
}

std::vector<double> epsilon_series(const CoupledTrajectory& traj, std::size_t level) {
    const AlphaSeries& s = level_at(traj, level);
    std::vector<double> eps(s.delta_h.size());
    double sup = 0.0, integral = 0.0;
    for (std::size_t j = 0; j < s.delta_h.size(); ++j) {
        if (j > 0) integral += traj.dt * s.delta_v2[j - 1];
        sup = std::max(sup, s.delta_h[j]);
        eps[j] = sup + std::sqrt(integral);
    }
    return eps;
}

double epsilon_final(const CoupledTrajectory& traj, std::size_t level) {
    return epsilon_series(traj, level).back();
}

EnergyMonitors energy_monitors(const SpectralVelocity& u_alpha, double alpha) {
    const double a2 = alpha * alpha;
    const double h = norm(u_alpha, NormKind::H);
    const double v = norm(u_alpha, NormKind::V);
    const double da = norm(u_alpha, NormKind::DA);
    const double a32 = norm(apply_stokes_power(u_alpha, 1.5), NormKind::H);
    EnergyMonitors m;
    m.m1 = h * h + 2.0 * a2 * v * v + a2 * a2 * da * da;
    m.y = v * v + a2 * da * da;
    m.dissipation = da * da + a2 * a32 * a32;
    return m;
}

}  // namespace nsalpha
