#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef M_PI
#define M_PI 3.14159265358979323846
#endif

namespace sflat {

/// Sample domain for fields: either a periodic grid (flat torus, spectral
/// differentiation) or a point cloud in R^4 (derivatives must be supplied in
/// closed form; nothing is differenced numerically).
struct Domain {
  enum class Kind { Torus, PointCloud };

  Kind kind = Kind::Torus;
  int dim = 4;

  // Torus data: per-axis resolution (power of two, >= 8) and period.
  std::vector<int> resolution;
  std::vector<double> periods;

  // Point-cloud data: flattened coordinates, dim per point.
  std::vector<double> points;

  std::size_t npoints = 0;

  static std::shared_ptr<const Domain> torus(int dim, int res,
                                             double period = 2.0 * M_PI) {
    return torus(std::vector<int>(dim, res), std::vector<double>(dim, period));
  }

  static std::shared_ptr<const Domain> torus(std::vector<int> res,
                                             std::vector<double> per) {
    auto d = std::make_shared<Domain>();
    d->kind = Kind::Torus;
    d->dim = static_cast<int>(res.size());
    if (d->dim != 2 && d->dim != 4)
      throw std::invalid_argument("torus dimension must be 2 or 4");
    if (per.size() != res.size())
      throw std::invalid_argument("periods/resolution size mismatch");
    d->npoints = 1;
    for (int n : res) {
      if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("resolution must be a power of two >= 8");
      d->npoints *= static_cast<std::size_t>(n);
    }
    for (double L : per)
      if (!(L > 0)) throw std::invalid_argument("periods must be positive");
    d->resolution = std::move(res);
    d->periods = std::move(per);
    return d;
  }

  static std::shared_ptr<const Domain> point_cloud(std::vector<double> pts) {
    auto d = std::make_shared<Domain>();
    d->kind = Kind::PointCloud;
    d->dim = 4;
    if (pts.empty() || pts.size() % 4 != 0)
      throw std::invalid_argument("point cloud needs a nonempty multiple of 4 coords");
    d->npoints = pts.size() / 4;
    d->points = std::move(pts);
    for (std::size_t i = 0; i < d->npoints; ++i)
      for (std::size_t j = i + 1; j < d->npoints; ++j) {
        bool same = true;
        for (int c = 0; c < 4; ++c)
          if (d->points[4 * i + c] != d->points[4 * j + c]) { same = false; break; }
        if (same) throw std::invalid_argument("point cloud has duplicate points");
      }
    return d;
  }

  bool is_torus() const { return kind == Kind::Torus; }

  double spacing(int axis) const { return periods[axis] / resolution[axis]; }

  // Product of grid spacings; the quadrature cell volume.
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= spacing(a);
    return v;
  }

  // Coordinates of grid point with flat index p (row-major, last axis fastest).
  std::array<double, 4> coords(std::size_t p) const {
    std::array<double, 4> x = {0, 0, 0, 0};
    if (kind == Kind::PointCloud) {
      for (int c = 0; c < 4; ++c) x[c] = points[4 * p + c];
      return x;
    }
    for (int a = dim - 1; a >= 0; --a) {
      std::size_t n = resolution[a];
      x[a] = spacing(a) * static_cast<double>(p % n);
      p /= n;
    }
    return x;
  }

  bool same_as(const Domain& o) const {
    return kind == o.kind && dim == o.dim && resolution == o.resolution &&
           periods == o.periods && npoints == o.npoints && points == o.points;
  }
};

using DomainPtr = std::shared_ptr<const Domain>;

}  // namespace sflat
