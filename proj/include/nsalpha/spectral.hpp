#pragma once

#include <complex>
#include <vector>

#include "nsalpha/grid.hpp"

namespace nsalpha {

using Complex = std::complex<double>;

// Raw spectral vector field (not necessarily divergence-free): the two
// Cartesian components on the full wrapped N x N frequency lattice.
struct SpectralVectorField {
    GridSpec grid;
    std::vector<Complex> x;
    std::vector<Complex> y;

    explicit SpectralVectorField(const GridSpec& g)
        : grid(g),
          x(static_cast<size_t>(g.modes_per_axis) * g.modes_per_axis),
          y(static_cast<size_t>(g.modes_per_axis) * g.modes_per_axis) {}

    size_t index(int kx, int ky) const {
        const int n = grid.modes_per_axis;
        const int ix = ((kx % n) + n) % n;
        const int iy = ((ky % n) + n) % n;
        return static_cast<size_t>(ix) * n + iy;
    }
};

// Real-valued collocation samples of both velocity components.
struct PhysicalVelocity {
    GridSpec grid;
    std::vector<double> x;
    std::vector<double> y;

    explicit PhysicalVelocity(const GridSpec& g)
        : grid(g),
          x(static_cast<size_t>(g.modes_per_axis) * g.modes_per_axis, 0.0),
          y(static_cast<size_t>(g.modes_per_axis) * g.modes_per_axis, 0.0) {}
};

// Divergence-free, zero-mean periodic velocity field stored as one complex
// amplitude per wavevector along the unit polarization (-ky, kx)/|k|.
// Realness of the physical field corresponds to phi(-k) = -conj(phi(k)).
class SpectralVelocity {
   public:
    explicit SpectralVelocity(const GridSpec& g)
        : grid_(g),
          phi_(static_cast<size_t>(g.modes_per_axis) * g.modes_per_axis, Complex{0.0, 0.0}) {}

    const GridSpec& grid() const { return grid_; }

    Complex coeff(int kx, int ky) const {
        return grid_.retained(kx, ky) ? phi_[index(kx, ky)] : Complex{0.0, 0.0};
    }

    // Sets the amplitude at k and mirrors -k so the field stays real.
    void set_mode(int kx, int ky, Complex phi) {
        if (!grid_.retained(kx, ky))
            throw std::invalid_argument("SpectralVelocity: mode outside retained lattice");
        phi_[index(kx, ky)] = phi;
        phi_[index(-kx, -ky)] = -std::conj(phi);
    }

    void add_to_mode(int kx, int ky, Complex dphi) { set_mode(kx, ky, coeff(kx, ky) + dphi); }

    // Cartesian coefficients u_hat(k) = phi(k) * kperp/|k|.
    Complex coeff_x(int kx, int ky) const;
    Complex coeff_y(int kx, int ky) const;

    SpectralVelocity& operator+=(const SpectralVelocity& o);
    SpectralVelocity& operator-=(const SpectralVelocity& o);
    SpectralVelocity& operator*=(double s);
    friend SpectralVelocity operator+(SpectralVelocity a, const SpectralVelocity& b) {
        a += b;
        return a;
    }
    friend SpectralVelocity operator-(SpectralVelocity a, const SpectralVelocity& b) {
        a -= b;
        return a;
    }
    friend SpectralVelocity operator*(double s, SpectralVelocity a) {
        a *= s;
        return a;
    }

    bool finite() const;

    const std::vector<Complex>& raw() const { return phi_; }
    std::vector<Complex>& raw() { return phi_; }

    size_t index(int kx, int ky) const {
        const int n = grid_.modes_per_axis;
        const int ix = ((kx % n) + n) % n;
        const int iy = ((ky % n) + n) % n;
        return static_cast<size_t>(ix) * n + iy;
    }

   private:
    GridSpec grid_;
    std::vector<Complex> phi_;
};

enum class NormKind { H, V, DA, L4 };

// Orthogonal projection onto divergence-free, zero-mean fields.
SpectralVelocity project_leray(const SpectralVectorField& raw);

// A^s as the spectral multiplier lambda(k)^s.
SpectralVelocity apply_stokes_power(const SpectralVelocity& f, double s);

// N_alpha = (I + alpha^2 A)^{-1}: multiplier 1/(1 + alpha^2 lambda).
SpectralVelocity apply_helmholtz_filter(const SpectralVelocity& f, double alpha);

// N_alpha^{-1} = I + alpha^2 A.
SpectralVelocity invert_helmholtz(const SpectralVelocity& f, double alpha);

// H/V/DA by Parseval sums; L4 by collocation-grid quadrature.
double norm(const SpectralVelocity& f, NormKind kind);

// H (= L^2) inner product.
double inner_h(const SpectralVelocity& a, const SpectralVelocity& b);

PhysicalVelocity to_physical(const SpectralVelocity& f);
SpectralVelocity to_spectral(const PhysicalVelocity& p, const GridSpec& grid);

// Real orthonormal eigenmode of the Stokes operator (unit H-norm).
enum class ModeParity { Cos, Sin };
SpectralVelocity make_eigenmode(const GridSpec& grid, int kx, int ky, ModeParity parity);

}  // namespace nsalpha
