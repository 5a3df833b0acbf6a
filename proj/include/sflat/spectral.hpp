#pragma once

#include <complex>
#include <vector>

#include "sflat/domain.hpp"

namespace sflat {

// Fourier-collocation machinery on periodic grids. Exact for band-limited
// fields; the Nyquist mode of each axis is dropped when differentiating so
// outputs stay real and d o d vanishes to round-off.

/// In-place spectral derivative of a scalar grid field along one axis.
void spectral_derivative(const Domain& dom, int axis, const double* in, double* out);

/// Integral of the trigonometric interpolant of the periodic samples
/// `line` (length n, spacing h = period/n) over [t0, t0 + len], t0 = i0 * h.
double segment_integral(const std::vector<double>& line, double period,
                        std::size_t i0, double len);

/// Componentwise multiply of the Fourier transform by 1 / (|k|^2 / 2 + shift);
/// the flat-Laplacian preconditioner used by the conjugate-gradient solves.
void apply_inverse_laplacian(const Domain& dom, const double* in, double* out,
                             double shift);

}  // namespace sflat
