#include "sflat/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace sflat {

Metric Metric::flat(DomainPtr dom) {
  Metric m;
  m.domain = std::move(dom);
  return m;
}

Metric Metric::t4_example(DomainPtr dom) {
  if (dom->dim != 4) throw std::invalid_argument("t4 metric needs dim 4");
  Metric m;
  m.domain = dom;
  m.g.assign(4, std::vector<double>(dom->npoints, 1.0));
  m.sqrt_det.assign(dom->npoints, 1.0);
  for (std::size_t p = 0; p < dom->npoints; ++p) {
    const auto x = dom->coords(p);
    const double s = std::sin(2.0 * x[1]) * std::cos(x[2]);
    const double f = (3.0 + 2.0 * s) / (1.0 - 0.5 * s);
    if (!(f > 0)) throw std::domain_error("nonpositive metric sample");
    m.g[2][p] = 1.0 / f;
    m.g[3][p] = f;
    // det = 1 * 1 * (1/f) * f = 1
  }
  return m;
}

double Metric::compatibility_defect() const {
  if (domain->dim % 2 != 0)
    throw std::invalid_argument("compatibility needs an even-dimensional domain");
  if (is_flat()) return 0.0;
  double worst = 0.0;
  for (int pair = 0; pair + 1 < domain->dim; pair += 2)
    for (std::size_t p = 0; p < domain->npoints; ++p)
      worst = std::max(worst, std::abs(g[pair][p] * g[pair + 1][p] - 1.0));
  return worst;
}

}  // namespace sflat
