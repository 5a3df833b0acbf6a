#pragma once

#include <vector>

#include "sflat/domain.hpp"

namespace sflat {

/// Diagonal Riemannian metric g = sum_i g_i(x) dx_i^2 with positive,
/// possibly position-dependent coefficients. Drives the Hodge star and all
/// inner products.
struct Metric {
  DomainPtr domain;
  // One coefficient field per axis, each of size npoints; empty vector means
  // the flat metric (all ones).
  std::vector<std::vector<double>> g;
  std::vector<double> sqrt_det;  // volume density per point; empty = 1

  static Metric flat(DomainPtr dom);

  /// The compatible metric of the 4-torus example:
  ///   g = dx1^2 + dx2^2 + (1/f) dx3^2 + f dx4^2,
  ///   f = (3 + 2 sin 2x2 cos x3) / (1 - (1/2) sin 2x2 cos x3).
  static Metric t4_example(DomainPtr dom);

  bool is_flat() const { return g.empty(); }

  double coeff(int axis, std::size_t p) const {
    return g.empty() ? 1.0 : g[axis][p];
  }
  double inv_coeff(int axis, std::size_t p) const {
    return g.empty() ? 1.0 : 1.0 / g[axis][p];
  }
  double density(std::size_t p) const {
    return sqrt_det.empty() ? 1.0 : sqrt_det[p];
  }

  // Product of inverse coefficients over the axes in `mask`; the pointwise
  // squared norm of dx_I.
  double inv_product(std::uint8_t mask, std::size_t p) const {
    if (g.empty()) return 1.0;
    double r = 1.0;
    for (int a = 0; a < domain->dim; ++a)
      if (mask & (1u << a)) r /= g[a][p];
    return r;
  }

  /// Compatibility with the Darboux form requires g_{2i-1} g_{2i} = 1 at
  /// every sample (hence unit volume density). Returns the max deviation.
  double compatibility_defect() const;
};

}  // namespace sflat
