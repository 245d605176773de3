#include "nsalpha/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace nsalpha {

std::size_t SimParams::steps() const {
    return static_cast<std::size_t>(std::llround(horizon / dt));
}

void SimParams::validate() const {
    grid.validate();
    if (nu <= 0.0) throw std::invalid_argument("SimParams: nu must be positive");
    if (dt <= 0.0 || horizon <= 0.0)
        throw std::invalid_argument("SimParams: dt and horizon must be positive");
    const double n = horizon / dt;
    if (std::abs(n - std::llround(n)) > 1e-9 * n)
        throw std::invalid_argument("SimParams: horizon must be a whole number of steps");
    for (double a : alphas)
        if (a < 0.0 || a >= 1.0)
            throw std::invalid_argument("SimParams: every alpha must lie in [0,1)");
    if (!(u0.grid() == grid)) throw std::invalid_argument("SimParams: u0 grid mismatch");
    if (!std::isfinite(norm(u0, NormKind::DA)))
        throw std::invalid_argument("SimParams: u0 must have finite |A u0|");
}

namespace {

// Shared semi-implicit update: (state - dt*Bhat + noise) / (1 + nu*dt*lambda).
SpectralVelocity implicit_update(const SpectralVelocity& state, const SpectralVelocity* bhat,
                                 const SpectralVelocity* qdw, const SimParams& params) {
    SpectralVelocity out = state;
    const GridSpec& g = state.grid();
    const int m = g.max_mode();
    for (int kx = -m; kx <= m; ++kx)
        for (int ky = -m; ky <= m; ++ky) {
            if (kx == 0 && ky == 0) continue;
            const size_t i = out.index(kx, ky);
            Complex rhs = state.raw()[i];
            if (bhat) rhs -= params.dt * bhat->raw()[i];
            if (qdw) rhs += qdw->raw()[i];
            out.raw()[i] = rhs / (1.0 + params.nu * params.dt * g.lambda(kx, ky));
        }
    return out;
}

}  // namespace

SpectralVelocity step_nse(const SpectralVelocity& u, const NoiseIncrement* dW,
                          const SimParams& params) {
    SpectralVelocity bhat(u.grid());
    if (params.nonlinearity_enabled) bhat = bilinear_B(u, u);
    SpectralVelocity qdw(u.grid());
    if (dW) qdw = apply_Q(u, *dW, params.noise);
    return implicit_update(u, params.nonlinearity_enabled ? &bhat : nullptr,
                           dW ? &qdw : nullptr, params);
}

LerayStep step_leray(const SpectralVelocity& v, const NoiseIncrement* dW, double alpha,
                     const SimParams& params) {
    const SpectralVelocity u = apply_helmholtz_filter(v, alpha);
    SpectralVelocity bhat(v.grid());
    if (params.nonlinearity_enabled) bhat = bilinear_B(u, v);
    SpectralVelocity qdw(v.grid());
    if (dW) qdw = apply_Q(u, *dW, params.noise);
    LerayStep out{implicit_update(v, params.nonlinearity_enabled ? &bhat : nullptr,
                                  dW ? &qdw : nullptr, params),
                  SpectralVelocity(v.grid())};
    out.u = apply_helmholtz_filter(out.v, alpha);
    return out;
}

namespace {

void record_level(AlphaSeries& s, const SpectralVelocity& u_ref, const SpectralVelocity& u_a,
                  double alpha) {
    const SpectralVelocity delta = u_ref - u_a;
    s.delta_h.push_back(norm(delta, NormKind::H));
    const double dv = norm(delta, NormKind::V);
    s.delta_v2.push_back(dv * dv);
    const double v2 = norm(u_a, NormKind::V);
    const double da = norm(u_a, NormKind::DA);
    const double h = norm(u_a, NormKind::H);
    const double l4 = norm(u_a, NormKind::L4);
    s.ualpha_v2.push_back(v2 * v2);
    s.ualpha_l44.push_back(l4 * l4 * l4 * l4);
    const double a2 = alpha * alpha;
    s.m1.push_back(h * h + 2.0 * a2 * v2 * v2 + a2 * a2 * da * da);
    s.y.push_back(v2 * v2 + a2 * da * da);
}

}  // namespace

CoupledTrajectory run_coupled(const SimParams& params, const CounterRng& rng,
                              std::uint64_t sample_id) {
    params.validate();
    const std::size_t nsteps = params.steps();
    const bool noisy = !params.noise.silent();

    CoupledTrajectory traj;
    traj.dt = params.dt;
    traj.levels.resize(params.alphas.size());

    SpectralVelocity u_ref = params.u0;
    std::vector<SpectralVelocity> v_levels;
    std::vector<SpectralVelocity> u_levels;
    for (size_t l = 0; l < params.alphas.size(); ++l) {
        traj.levels[l].alpha = params.alphas[l];
        v_levels.push_back(invert_helmholtz(params.u0, params.alphas[l]));
        u_levels.push_back(params.u0);
    }

    auto record_all = [&](double t) {
        traj.t.push_back(t);
        const double h = norm(u_ref, NormKind::H);
        const double v = norm(u_ref, NormKind::V);
        traj.uref_h2.push_back(h * h);
        traj.uref_v2.push_back(v * v);
        for (size_t l = 0; l < params.alphas.size(); ++l)
            record_level(traj.levels[l], u_ref, u_levels[l], params.alphas[l]);
    };
    record_all(0.0);

    for (std::size_t step = 0; step < nsteps; ++step) {
        NoiseIncrement inc;
        const NoiseIncrement* dW = nullptr;
        if (noisy) {
            inc = sample_increment(rng, sample_id, step, params.dt, params.noise);
            dW = &inc;
        }
        u_ref = step_nse(u_ref, dW, params);
        if (!u_ref.finite()) throw BlowUpError(step, 0.0, sample_id);
        for (size_t l = 0; l < params.alphas.size(); ++l) {
            LerayStep ls = step_leray(v_levels[l], dW, params.alphas[l], params);
            if (!ls.v.finite()) throw BlowUpError(step, params.alphas[l], sample_id);
            v_levels[l] = std::move(ls.v);
            u_levels[l] = std::move(ls.u);
        }
        record_all(static_cast<double>(step + 1) * params.dt);
    }
    return traj;
}

SpectralVelocity random_divfree_field(const GridSpec& grid, const CounterRng& rng,
                                      std::uint64_t tag, int band) {
    SpectralVelocity f(grid);
    const int m = std::min(band, grid.max_mode());
    std::uint64_t idx = 0;
    for (int kx = 0; kx <= m; ++kx)
        for (int ky = (kx == 0 ? 1 : -m); ky <= m; ++ky) {
            if (!grid.retained(kx, ky)) continue;
            const auto [g1, g2] = rng.gaussian_pair(tag, idx++, 0x5eedu);
            const double lam = grid.lambda(kx, ky);
            f.set_mode(kx, ky, Complex{g1, g2} / lam);
        }
    const double v = norm(f, NormKind::V);
    if (v > 0.0) f *= 1.0 / v;
    return f;
}

void dump_snapshot(const std::string& path, const SimParams& params,
                   const std::vector<SpectralVelocity>& states) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_snapshot: cannot open " + path);
    std::uint64_t hash = CounterRng::mix(static_cast<std::uint64_t>(params.grid.modes_per_axis));
    hash = CounterRng::mix(hash ^ static_cast<std::uint64_t>(params.steps()));
    const char magic[8] = {'n', 's', 'a', 's', 'n', 'a', 'p', '1'};
    out.write(magic, sizeof(magic));
    const std::int32_t n = params.grid.modes_per_axis;
    const std::uint64_t count = states.size();
    out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&count), sizeof(count));
    for (const auto& s : states)
        out.write(reinterpret_cast<const char*>(s.raw().data()),
                  static_cast<std::streamsize>(s.raw().size() * sizeof(Complex)));
}

}  // namespace nsalpha
