#include "nsalpha/nonlinearity.hpp"

#include <cmath>

#include "nsalpha/fft.hpp"

namespace nsalpha {

namespace {

// Inverse transform of a spectral buffer; real part of the samples.
std::vector<double> to_grid(std::vector<Complex> buf, int n) {
    fft::inverse2d(buf, n);
    std::vector<double> out(buf.size());
    for (size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

}  // namespace

SpectralVelocity bilinear_B(const SpectralVelocity& u, const SpectralVelocity& v) {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("bilinear_B: grid mismatch");
    const GridSpec& g = u.grid();
    const int n = g.modes_per_axis;
    const size_t sz = static_cast<size_t>(n) * n;
    const double kfac = 2.0 * M_PI / g.period;
    const int m = g.max_mode();

    std::vector<Complex> ux(sz), uy(sz), vx_dx(sz), vx_dy(sz), vy_dx(sz), vy_dy(sz);
    for (int kx = -m; kx <= m; ++kx)
        for (int ky = -m; ky <= m; ++ky) {
            if (kx == 0 && ky == 0) continue;
            const size_t i = u.index(kx, ky);
            ux[i] = u.coeff_x(kx, ky);
            uy[i] = u.coeff_y(kx, ky);
            const Complex ikx{0.0, kfac * kx};
            const Complex iky{0.0, kfac * ky};
            const Complex vx = v.coeff_x(kx, ky);
            const Complex vy = v.coeff_y(kx, ky);
            vx_dx[i] = ikx * vx;
            vx_dy[i] = iky * vx;
            vy_dx[i] = ikx * vy;
            vy_dy[i] = iky * vy;
        }

    const auto pux = to_grid(std::move(ux), n);
    const auto puy = to_grid(std::move(uy), n);
    const auto pvx_dx = to_grid(std::move(vx_dx), n);
    const auto pvx_dy = to_grid(std::move(vx_dy), n);
    const auto pvy_dx = to_grid(std::move(vy_dx), n);
    const auto pvy_dy = to_grid(std::move(vy_dy), n);

    std::vector<Complex> wx(sz), wy(sz);
    for (size_t i = 0; i < sz; ++i) {
        wx[i] = pux[i] * pvx_dx[i] + puy[i] * pvx_dy[i];
        wy[i] = pux[i] * pvy_dx[i] + puy[i] * pvy_dy[i];
    }
    fft::forward2d(wx, n);
    fft::forward2d(wy, n);

    const DealiasMask mask(g);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    SpectralVectorField raw(g);
    for (int kx = -m; kx <= m; ++kx)
        for (int ky = -m; ky <= m; ++ky) {
            if (!mask.keep(kx, ky)) continue;
            const size_t i = raw.index(kx, ky);
            raw.x[i] = wx[i] * scale;
            raw.y[i] = wy[i] * scale;
        }
    return project_leray(raw);
}

double trilinear_form(const SpectralVelocity& u, const SpectralVelocity& v,
                      const SpectralVelocity& w) {
    if (!(u.grid() == w.grid())) throw std::invalid_argument("trilinear_form: grid mismatch");
    return inner_h(bilinear_B(u, v), w);
}

}  // namespace nsalpha
