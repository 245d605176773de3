#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace nsalpha {

// Periodic box [0,L]^2 discretized with N collocation points per axis.
// Spectral fields retain wavevectors with 0 < |k|_inf <= max_mode().
struct GridSpec {
    double period = 2.0 * M_PI;
    int modes_per_axis = 64;
    double dealias_fraction = 2.0 / 3.0;
    std::optional<int> galerkin_cutoff;

    GridSpec() = default;
    GridSpec(double L, int N, double dealias = 2.0 / 3.0,
             std::optional<int> cutoff = std::nullopt)
        : period(L), modes_per_axis(N), dealias_fraction(dealias), galerkin_cutoff(cutoff) {
        validate();
    }

    void validate() const {
        if (period <= 0.0) throw std::invalid_argument("GridSpec: period must be positive");
        if (modes_per_axis < 8 || modes_per_axis % 2 != 0)
            throw std::invalid_argument("GridSpec: N must be even and >= 8");
        if (dealias_fraction <= 0.0 || dealias_fraction > 1.0)
            throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0,1]");
        if (dealias_limit() < 2)
            throw std::invalid_argument("GridSpec: fewer than 2 retained modes per axis");
        if (galerkin_cutoff && (*galerkin_cutoff < 1 || *galerkin_cutoff > dealias_limit()))
            throw std::invalid_argument("GridSpec: galerkin_cutoff exceeds dealias limit");
    }

    // Largest |k| component kept by the dealias rule.
    int dealias_limit() const {
        int lim = static_cast<int>(std::floor(dealias_fraction * modes_per_axis / 2.0));
        // never keep the Nyquist mode: it has no Hermitian partner
        return std::min(lim, modes_per_axis / 2 - 1);
    }

    int max_mode() const {
        return galerkin_cutoff ? std::min(*galerkin_cutoff, dealias_limit()) : dealias_limit();
    }

    // Stokes eigenvalue (2 pi / L)^2 |k|^2.
    double lambda(int kx, int ky) const {
        const double f = 2.0 * M_PI / period;
        return f * f * static_cast<double>(kx * kx + ky * ky);
    }

    bool retained(int kx, int ky) const {
        if (kx == 0 && ky == 0) return false;
        const int m = max_mode();
        return std::abs(kx) <= m && std::abs(ky) <= m;
    }

    bool operator==(const GridSpec&) const = default;
};

struct WaveVector {
    int kx = 0;
    int ky = 0;
    double lambda = 0.0;
};

}  // namespace nsalpha
