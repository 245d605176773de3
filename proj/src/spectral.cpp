#include "nsalpha/spectral.hpp"

#include <cmath>

#include "nsalpha/fft.hpp"

namespace nsalpha {

Complex SpectralVelocity::coeff_x(int kx, int ky) const {
    if (!grid_.retained(kx, ky)) return {0.0, 0.0};
    const double norm = std::sqrt(static_cast<double>(kx * kx + ky * ky));
    return phi_[index(kx, ky)] * (-ky / norm);
}

Complex SpectralVelocity::coeff_y(int kx, int ky) const {
    if (!grid_.retained(kx, ky)) return {0.0, 0.0};
    const double norm = std::sqrt(static_cast<double>(kx * kx + ky * ky));
    return phi_[index(kx, ky)] * (kx / norm);
}

SpectralVelocity& SpectralVelocity::operator+=(const SpectralVelocity& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralVelocity: grid mismatch");
    for (size_t i = 0; i < phi_.size(); ++i) phi_[i] += o.phi_[i];
    return *this;
}

SpectralVelocity& SpectralVelocity::operator-=(const SpectralVelocity& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralVelocity: grid mismatch");
    for (size_t i = 0; i < phi_.size(); ++i) phi_[i] -= o.phi_[i];
    return *this;
}

SpectralVelocity& SpectralVelocity::operator*=(double s) {
    for (auto& c : phi_) c *= s;
    return *this;
}

bool SpectralVelocity::finite() const {
    for (const auto& c : phi_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

namespace {

template <typename F>
void for_each_retained(const GridSpec& g, F&& f) {
    const int m = g.max_mode();
    for (int kx = -m; kx <= m; ++kx)
        for (int ky = -m; ky <= m; ++ky) {
            if (kx == 0 && ky == 0) continue;
            f(kx, ky);
        }
}

}  // namespace

SpectralVelocity project_leray(const SpectralVectorField& raw) {
    SpectralVelocity out(raw.grid);
    for_each_retained(raw.grid, [&](int kx, int ky) {
        const size_t i = raw.index(kx, ky);
        const double norm = std::sqrt(static_cast<double>(kx * kx + ky * ky));
        // component along kperp/|k| = (-ky, kx)/|k|
        const Complex phi = (-static_cast<double>(ky) * raw.x[i] +
                             static_cast<double>(kx) * raw.y[i]) /
                            norm;
        out.raw()[out.index(kx, ky)] = phi;
    });
    return out;
}

SpectralVelocity apply_stokes_power(const SpectralVelocity& f, double s) {
    SpectralVelocity out = f;
    if (s == 0.0) return out;
    for_each_retained(f.grid(), [&](int kx, int ky) {
        out.raw()[out.index(kx, ky)] *= std::pow(f.grid().lambda(kx, ky), s);
    });
    return out;
}

SpectralVelocity apply_helmholtz_filter(const SpectralVelocity& f, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("apply_helmholtz_filter: alpha must be >= 0");
    SpectralVelocity out = f;
    if (alpha == 0.0) return out;
    for_each_retained(f.grid(), [&](int kx, int ky) {
        out.raw()[out.index(kx, ky)] /= 1.0 + alpha * alpha * f.grid().lambda(kx, ky);
    });
    return out;
}

SpectralVelocity invert_helmholtz(const SpectralVelocity& f, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("invert_helmholtz: alpha must be >= 0");
    SpectralVelocity out = f;
    if (alpha == 0.0) return out;
    for_each_retained(f.grid(), [&](int kx, int ky) {
        out.raw()[out.index(kx, ky)] *= 1.0 + alpha * alpha * f.grid().lambda(kx, ky);
    });
    return out;
}

double inner_h(const SpectralVelocity& a, const SpectralVelocity& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_h: grid mismatch");
    const double l2 = a.grid().period * a.grid().period;
    double acc = 0.0;
    for_each_retained(a.grid(), [&](int kx, int ky) {
        const size_t i = a.index(kx, ky);
        acc += (a.raw()[i] * std::conj(b.raw()[i])).real();
    });
    return l2 * acc;
}

double norm(const SpectralVelocity& f, NormKind kind) {
    if (kind == NormKind::L4) {
        const PhysicalVelocity p = to_physical(f);
        const int n = f.grid().modes_per_axis;
        const double dx2 = (f.grid().period / n) * (f.grid().period / n);
        double acc = 0.0;
        for (size_t i = 0; i < p.x.size(); ++i) {
            const double m2 = p.x[i] * p.x[i] + p.y[i] * p.y[i];
            acc += m2 * m2;
        }
        return std::pow(acc * dx2, 0.25);
    }
    const double l2 = f.grid().period * f.grid().period;
    double acc = 0.0;
    for_each_retained(f.grid(), [&](int kx, int ky) {
        double w = 1.0;
        if (kind == NormKind::V) w = f.grid().lambda(kx, ky);
        if (kind == NormKind::DA) {
            const double lam = f.grid().lambda(kx, ky);
            w = lam * lam;
        }
        acc += w * std::norm(f.raw()[f.index(kx, ky)]);
    });
    return std::sqrt(l2 * acc);
}

PhysicalVelocity to_physical(const SpectralVelocity& f) {
    const int n = f.grid().modes_per_axis;
    std::vector<Complex> bx(static_cast<size_t>(n) * n, Complex{0.0, 0.0});
    std::vector<Complex> by = bx;
    for_each_retained(f.grid(), [&](int kx, int ky) {
        const size_t i = f.index(kx, ky);
        bx[i] = f.coeff_x(kx, ky);
        by[i] = f.coeff_y(kx, ky);
    });
    fft::inverse2d(bx, n);
    fft::inverse2d(by, n);
    PhysicalVelocity p(f.grid());
    for (size_t i = 0; i < bx.size(); ++i) {
        p.x[i] = bx[i].real();
        p.y[i] = by[i].real();
    }
    return p;
}

SpectralVelocity to_spectral(const PhysicalVelocity& p, const GridSpec& grid) {
    const int n = grid.modes_per_axis;
    if (p.x.size() != static_cast<size_t>(n) * n || !(p.grid == grid))
        throw std::invalid_argument("to_spectral: grid mismatch");
    std::vector<Complex> bx(p.x.begin(), p.x.end());
    std::vector<Complex> by(p.y.begin(), p.y.end());
    fft::forward2d(bx, n);
    fft::forward2d(by, n);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    SpectralVectorField raw(grid);
    for (size_t i = 0; i < bx.size(); ++i) {
        raw.x[i] = bx[i] * scale;
        raw.y[i] = by[i] * scale;
    }
    return project_leray(raw);
}

SpectralVelocity make_eigenmode(const GridSpec& grid, int kx, int ky, ModeParity parity) {
    SpectralVelocity f(grid);
    const double amp = 1.0 / (std::sqrt(2.0) * grid.period);
    f.set_mode(kx, ky, parity == ModeParity::Cos ? Complex{amp, 0.0} : Complex{0.0, amp});
    return f;
}

}  // namespace nsalpha
