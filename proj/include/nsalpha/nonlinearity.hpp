#pragma once

#include "nsalpha/spectral.hpp"

namespace nsalpha {

// Indicator of the modes kept by the 2/3-rule truncation. With inputs
// band-limited to this set, quadratic aliasing wraps entirely outside of it,
// so masking the product recovers the exact convolution.
struct DealiasMask {
    GridSpec grid;
    explicit DealiasMask(const GridSpec& g) : grid(g) {}
    bool keep(int kx, int ky) const { return grid.retained(kx, ky); }
};

// B(u,v) = Pi[(u . grad) v], evaluated pseudospectrally with spectral
// derivatives; the product is truncated by the grid's dealias mask before
// projection. Output is divergence-free and zero-mean. The cancellation
// identities hold to round-off only when dealias_fraction <= 2/3; a grid
// with a larger fraction lets aliased products corrupt retained modes.
SpectralVelocity bilinear_B(const SpectralVelocity& u, const SpectralVelocity& v);

// <B(u,v), w> in the H inner product.
double trilinear_form(const SpectralVelocity& u, const SpectralVelocity& v,
                      const SpectralVelocity& w);

}  // namespace nsalpha
