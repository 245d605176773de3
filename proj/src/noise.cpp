#include "nsalpha/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsalpha {

NoiseModel NoiseModel::make(const GridSpec& grid, const NoiseConfig& cfg) {
    if (cfg.sigma_a < 0.0 || cfg.sigma_b < 0.0)
        throw std::invalid_argument("NoiseModel: amplitudes must be nonnegative");
    if (cfg.sigma_a > 0.0 && cfg.gamma <= 1.0)
        throw std::invalid_argument(
            "NoiseModel: gamma must exceed 1 (A^{1/2}Q not Hilbert-Schmidt at refinement)");
    if (cfg.noise_cutoff < 0 || cfg.noise_cutoff > grid.max_mode())
        throw std::invalid_argument("NoiseModel: noise_cutoff outside retained lattice");

    NoiseModel m;
    m.grid_ = grid;
    m.cfg_ = cfg;
    const int c = cfg.noise_cutoff;
    // half lattice: one representative per +-k pair
    for (int kx = 0; kx <= c; ++kx)
        for (int ky = (kx == 0 ? 1 : -c); ky <= c; ++ky) {
            if (!grid.retained(kx, ky)) continue;
            NoiseMode nm;
            nm.kx = kx;
            nm.ky = ky;
            nm.lambda = grid.lambda(kx, ky);
            nm.a = cfg.sigma_a * std::pow(nm.lambda, -cfg.gamma);
            nm.b = std::max(std::abs(kx), std::abs(ky)) <= cfg.mult_cutoff ? cfg.sigma_b : 0.0;
            m.modes_.push_back(nm);
        }

    for (const NoiseMode& nm : m.modes_) {
        m.ell0_ = std::max(m.ell0_, nm.b);
        m.sum_a2_ += 2.0 * nm.a * nm.a;                // two real dof per pair
        m.sum_lam_a2_ += 2.0 * nm.lambda * nm.a * nm.a;
    }
    m.ell1_ = m.ell0_;
    m.ell2_ = std::sqrt(2.0 * m.sum_a2_ + 2.0 * m.ell0_ * m.ell0_);
    m.ell3_ = std::sqrt(2.0 * m.sum_lam_a2_ + 2.0 * m.ell1_ * m.ell1_);
    if (!std::isfinite(m.ell2_) || !std::isfinite(m.ell3_))
        throw std::invalid_argument("NoiseModel: growth constants are not finite");
    return m;
}

namespace {

// Projections of u on the real eigenmode pair at k: <u, psi_c>, <u, psi_s>.
std::pair<double, double> mode_components(const SpectralVelocity& u, const NoiseMode& nm) {
    const double s = std::sqrt(2.0) * u.grid().period;
    const Complex phi = u.coeff(nm.kx, nm.ky);
    return {s * phi.real(), s * phi.imag()};
}

}  // namespace

SpectralVelocity apply_Q(const SpectralVelocity& u, const NoiseIncrement& dW,
                         const NoiseModel& model) {
    if (!(u.grid() == model.grid())) throw std::invalid_argument("apply_Q: grid mismatch");
    if (dW.w.size() != model.modes().size())
        throw std::invalid_argument("apply_Q: increment does not match model cutoff");
    SpectralVelocity out(u.grid());
    const double inv = 1.0 / (std::sqrt(2.0) * u.grid().period);
    for (size_t i = 0; i < model.modes().size(); ++i) {
        const NoiseMode& nm = model.modes()[i];
        const auto [uc, us] = mode_components(u, nm);
        const double coef_c = nm.a + nm.b * uc;
        const double coef_s = nm.a + nm.b * us;
        const Complex dphi{coef_c * dW.w[i].first * inv, coef_s * dW.w[i].second * inv};
        out.add_to_mode(nm.kx, nm.ky, dphi);
    }
    return out;
}

std::pair<double, double> hs_norms_Q(const SpectralVelocity& u, const NoiseModel& model) {
    if (!(u.grid() == model.grid())) throw std::invalid_argument("hs_norms_Q: grid mismatch");
    double h = 0.0, v = 0.0;
    for (const NoiseMode& nm : model.modes()) {
        const auto [uc, us] = mode_components(u, nm);
        const double cc = nm.a + nm.b * uc;
        const double cs = nm.a + nm.b * us;
        h += cc * cc + cs * cs;
        v += nm.lambda * (cc * cc + cs * cs);
    }
    return {std::sqrt(h), std::sqrt(v)};
}

NoiseIncrement sample_increment(const CounterRng& rng, std::uint64_t sample,
                                std::uint64_t step, double dt, const NoiseModel& model) {
    if (dt <= 0.0) throw std::invalid_argument("sample_increment: dt must be positive");
    NoiseIncrement inc;
    inc.dt = dt;
    inc.w.resize(model.modes().size());
    const double s = std::sqrt(dt);
    for (size_t i = 0; i < inc.w.size(); ++i) {
        const auto [g1, g2] = rng.gaussian_pair(sample, step, i);
        inc.w[i] = {s * g1, s * g2};
    }
    return inc;
}

}  // namespace nsalpha
