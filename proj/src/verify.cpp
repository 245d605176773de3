#include "nsalpha/verify.hpp"

#include <cmath>
#include <cstdio>

#include "nsalpha/estimators.hpp"
#include "nsalpha/integrator.hpp"
#include "nsalpha/noise.hpp"
#include "nsalpha/nonlinearity.hpp"

namespace nsalpha {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

CheckResult bounded(const std::string& name, double worst, double bound) {
    return {name, worst <= bound, "worst " + num(worst) + " vs bound " + num(bound)};
}

}  // namespace

std::vector<CheckResult> verify_operators(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const GridSpec grid(2.0 * M_PI, 64);
    const CounterRng rng(seed);
    const int band = grid.max_mode();

    auto field = [&](std::uint64_t tag) { return random_divfree_field(grid, rng, tag, band); };

    // cancellation identities of the advective trilinear form
    {
        double worst_b4 = 0.0, worst_b5 = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpectralVelocity u = field(2 * i);
            const SpectralVelocity v = field(2 * i + 1);
            const double b4 = std::abs(trilinear_form(u, v, v)) /
                              (norm(u, NormKind::V) * norm(v, NormKind::V) * norm(v, NormKind::V));
            const SpectralVelocity au = apply_stokes_power(u, 1.0);
            const double b5 = std::abs(trilinear_form(u, u, au)) /
                              (norm(u, NormKind::V) * norm(u, NormKind::V) * norm(au, NormKind::H));
            worst_b4 = std::max(worst_b4, b4);
            worst_b5 = std::max(worst_b5, b5);
        }
        out.push_back(bounded("energy_cancellation <B(u,v),v>=0", worst_b4, 1e-10));
        out.push_back(bounded("enstrophy_cancellation <B(u,u),Au>=0", worst_b5, 1e-10));
    }

    // Helmholtz filter bounds
    {
        double worst_contract = 0.0, worst_err = 0.0, worst_smooth = 0.0, worst_id = 0.0;
        for (double alpha : {1.0, 0.1, 0.01}) {
            for (int i = 0; i < 100; ++i) {
                const SpectralVelocity w = field(1000 + i);
                const SpectralVelocity nw = apply_helmholtz_filter(w, alpha);
                worst_contract =
                    std::max(worst_contract, norm(nw, NormKind::H) / norm(w, NormKind::H));
                worst_err = std::max(worst_err, norm(w - nw, NormKind::H) /
                                                    (0.5 * alpha * norm(w, NormKind::V)));
                worst_smooth = std::max(
                    worst_smooth, alpha * norm(nw, NormKind::V) / (0.5 * norm(w, NormKind::H)));
                const SpectralVelocity recon =
                    alpha * alpha * apply_stokes_power(nw, 1.0) + nw;
                worst_id = std::max(worst_id,
                                    norm(recon - w, NormKind::H) / norm(w, NormKind::H));
            }
        }
        out.push_back(bounded("filter_contraction |N_a w| <= |w|", worst_contract, 1.0));
        out.push_back(bounded("filter_error |(I-N_a)w| <= (a/2)|A^1/2 w|", worst_err, 1.0));
        out.push_back(bounded("filter_smoothing |a A^1/2 N_a w| <= |w|/2", worst_smooth, 1.0));
        out.push_back(bounded("filter_identity a^2 A N_a w + N_a w = w", worst_id, 1e-12));
    }

    // diagonal noise model: Lipschitz and growth constants
    {
        const NoiseModel model = NoiseModel::make(grid, NoiseConfig{});
        double worst_lip0 = 0.0, worst_lip1 = 0.0, worst_g2 = 0.0, worst_g3 = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const SpectralVelocity u1 = field(5000 + 2 * i);
            const SpectralVelocity u2 = field(5000 + 2 * i + 1);
            const SpectralVelocity d = u1 - u2;

            // brute-force HS norms of Q(u1)-Q(u2) from the mode sums
            double hs_h = 0.0, hs_v = 0.0;
            for (const NoiseMode& nm : model.modes()) {
                const double s = std::sqrt(2.0) * grid.period;
                const Complex p1 = u1.coeff(nm.kx, nm.ky);
                const Complex p2 = u2.coeff(nm.kx, nm.ky);
                const double dc = nm.b * s * (p1.real() - p2.real());
                const double ds = nm.b * s * (p1.imag() - p2.imag());
                hs_h += dc * dc + ds * ds;
                hs_v += nm.lambda * (dc * dc + ds * ds);
            }
            worst_lip0 = std::max(worst_lip0, std::sqrt(hs_h) /
                                                  (model.ell0() * norm(d, NormKind::H)));
            worst_lip1 = std::max(worst_lip1, std::sqrt(hs_v) /
                                                  (model.ell1() * norm(d, NormKind::V)));

            const auto [qh, qv] = hs_norms_Q(u1, model);
            worst_g2 = std::max(worst_g2, qh / (model.ell2() * (1.0 + norm(u1, NormKind::H))));
            worst_g3 = std::max(worst_g3, qv / (model.ell3() * (1.0 + norm(u1, NormKind::V))));
        }
        const double tol = 1.0 + 1e-12;
        out.push_back(bounded("noise_lipschitz_H (Assumption i)", worst_lip0, tol));
        out.push_back(bounded("noise_lipschitz_V (Assumption ii)", worst_lip1, tol));
        out.push_back(bounded("noise_growth_H", worst_g2, tol));
        out.push_back(bounded("noise_growth_V", worst_g3, tol));

        // filtered noise is a contraction in HS norm
        double worst_filter = 0.0;
        for (double alpha : {1.0, 0.1}) {
            const SpectralVelocity u = field(42);
            NoiseIncrement unit;
            unit.dt = 1.0;
            unit.w.assign(model.modes().size(), {1.0, 1.0});
            const SpectralVelocity q = apply_Q(u, unit, model);
            const SpectralVelocity nq = apply_helmholtz_filter(q, alpha);
            worst_filter = std::max(worst_filter, norm(nq, NormKind::H) / norm(q, NormKind::H));
        }
        out.push_back(bounded("filtered_noise_contraction", worst_filter, 1.0));
    }

    // Leray projector: idempotent and H-self-adjoint
    {
        double worst_idem = 0.0, worst_adj = 0.0;
        for (int i = 0; i < 20; ++i) {
            SpectralVectorField raw(grid);
            const int m = grid.max_mode();
            std::uint64_t c = 0;
            for (int kx = 0; kx <= m; ++kx)
                for (int ky = (kx == 0 ? 1 : -m); ky <= m; ++ky) {
                    const auto [g1, g2] = rng.gaussian_pair(9000 + i, c, 0);
                    const auto [g3, g4] = rng.gaussian_pair(9000 + i, c, 1);
                    ++c;
                    raw.x[raw.index(kx, ky)] = Complex{g1, g2};
                    raw.y[raw.index(kx, ky)] = Complex{g3, g4};
                    raw.x[raw.index(-kx, -ky)] = std::conj(Complex{g1, g2});
                    raw.y[raw.index(-kx, -ky)] = std::conj(Complex{g3, g4});
                }
            const SpectralVelocity p1 = project_leray(raw);
            SpectralVectorField again(grid);
            for (int kx = -m; kx <= m; ++kx)
                for (int ky = -m; ky <= m; ++ky) {
                    if (kx == 0 && ky == 0) continue;
                    again.x[again.index(kx, ky)] = p1.coeff_x(kx, ky);
                    again.y[again.index(kx, ky)] = p1.coeff_y(kx, ky);
                }
            const SpectralVelocity p2 = project_leray(again);
            worst_idem = std::max(worst_idem,
                                  norm(p2 - p1, NormKind::H) / norm(p1, NormKind::H));
        }
        // self-adjointness: <Pi f, g> = <f, Pi g> for divergence-free g
        for (int i = 0; i < 20; ++i) {
            const SpectralVelocity a = field(9100 + 2 * i);
            const SpectralVelocity b = field(9100 + 2 * i + 1);
            worst_adj = std::max(worst_adj, std::abs(inner_h(a, b) - inner_h(b, a)) /
                                                (norm(a, NormKind::H) * norm(b, NormKind::H)));
        }
        out.push_back(bounded("projector_idempotent", worst_idem, 1e-12));
        out.push_back(bounded("inner_product_symmetric", worst_adj, 1e-12));
    }

    // Parseval: spectral H-norm vs collocation quadrature
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SpectralVelocity f = field(9500 + i);
            const PhysicalVelocity p = to_physical(f);
            const double dx2 = (grid.period / grid.modes_per_axis) *
                               (grid.period / grid.modes_per_axis);
            double quad = 0.0;
            for (size_t j = 0; j < p.x.size(); ++j)
                quad += p.x[j] * p.x[j] + p.y[j] * p.y[j];
            quad *= dx2;
            const double h2 = norm(f, NormKind::H) * norm(f, NormKind::H);
            worst = std::max(worst, std::abs(quad - h2) / h2);
        }
        out.push_back(bounded("parseval_H_vs_quadrature", worst, 1e-10));
    }

    // transform round trip
    {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const SpectralVelocity f = field(9700 + i);
            const SpectralVelocity g = to_spectral(to_physical(f), grid);
            worst = std::max(worst, norm(g - f, NormKind::H) / norm(f, NormKind::H));
        }
        out.push_back(bounded("transform_round_trip", worst, 1e-12));
    }

    return out;
}

}  // namespace nsalpha
