#include "sflat/calculus.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sflat/spectral.hpp"

namespace sflat {

namespace {

std::mutex g_reg_mutex;
std::map<std::string, std::function<DifferentialForm(const DifferentialForm&)>>&
derivative_registry() {
  static std::map<std::string, std::function<DifferentialForm(const DifferentialForm&)>> reg;
  return reg;
}

}  // namespace

void register_analytic_derivative(
    const std::string& key,
    std::function<DifferentialForm(const DifferentialForm&)> fn) {
  std::lock_guard<std::mutex> lock(g_reg_mutex);
  derivative_registry()[key] = std::move(fn);
}

DifferentialForm exterior_derivative(const DifferentialForm& eta) {
  const int dim = eta.domain->dim;
  if (eta.degree == dim)
    throw std::domain_error("degree-overflow: d of a top-degree form");

  if (!eta.domain->is_torus()) {
    std::function<DifferentialForm(const DifferentialForm&)> fn;
    {
      std::lock_guard<std::mutex> lock(g_reg_mutex);
      auto& reg = derivative_registry();
      auto it = eta.analytic_key ? reg.find(*eta.analytic_key) : reg.end();
      if (it == reg.end())
        throw std::invalid_argument(
            "point-cloud field has no analytic derivative table");
      fn = it->second;
    }
    return fn(eta);
  }

  DifferentialForm out(eta.domain, eta.algebra, eta.degree + 1);
  const IndexTable& in_t = eta.table();
  const IndexTable& out_t = out.table();
  const std::size_t np = eta.npoints();
  std::vector<double> deriv(np);

  for (int c = 0; c < eta.ncomps(); ++c) {
    const std::uint8_t mask = in_t.masks[c];
    for (int a = 0; a < dim; ++a) {
      if (mask & (1u << a)) continue;
      const int k = out_t.index_of[mask | (1u << a)];
      const double s = merge_sign(static_cast<std::uint8_t>(1u << a), mask);
      for (int ch = 0; ch < eta.nchannels(); ++ch) {
        spectral_derivative(*eta.domain, a, eta.channel(c, ch), deriv.data());
        double* dst = out.channel(k, ch);
        for (std::size_t p = 0; p < np; ++p) dst[p] += s * deriv[p];
      }
    }
  }
  return out;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b,
                       WedgePairing pairing) {
  if (!a.domain->same_as(*b.domain))
    throw std::invalid_argument("wedge: mismatched domains");
  const int dim = a.domain->dim;
  if (a.degree + b.degree > dim)
    throw std::domain_error("wedge: degree overflow");
  const bool a_su2 = a.algebra == AlgebraKind::Su2;
  const bool b_su2 = b.algebra == AlgebraKind::Su2;
  if (pairing != WedgePairing::Plain && a_su2 != b_su2)
    throw std::invalid_argument("wedge: mismatched algebras for this pairing");

  AlgebraKind out_alg;
  if (pairing == WedgePairing::Plain)
    out_alg = (a_su2 != b_su2) ? AlgebraKind::Su2 : AlgebraKind::Abelian;
  else
    out_alg = a.algebra;
  // bracket/matrix keep su2; plain su2 x su2 contracts channels

  DifferentialForm out(a.domain, out_alg, a.degree + b.degree);
  const IndexTable& ta = a.table();
  const IndexTable& tb = b.table();
  const IndexTable& to = out.table();
  const std::size_t np = a.npoints();

  for (int ca = 0; ca < a.ncomps(); ++ca)
    for (int cb = 0; cb < b.ncomps(); ++cb) {
      const std::uint8_t ma = ta.masks[ca], mb = tb.masks[cb];
      if (ma & mb) continue;
      const int k = to.index_of[ma | mb];
      const double s = merge_sign(ma, mb);

      if (pairing == WedgePairing::Plain) {
        if (!a_su2 && !b_su2) {
          double* dst = out.channel(k, 0);
          const double* pa = a.channel(ca, 0);
          const double* pb = b.channel(cb, 0);
          for (std::size_t p = 0; p < np; ++p) dst[p] += s * pa[p] * pb[p];
        } else if (a_su2 && b_su2) {
          double* dst = out.channel(k, 0);
          for (std::size_t p = 0; p < np; ++p)
            dst[p] += s * dot(a.su2_at(ca, p), b.su2_at(cb, p));
        } else {
          const DifferentialForm& scal = a_su2 ? b : a;
          const DifferentialForm& vec = a_su2 ? a : b;
          const int cs = a_su2 ? cb : ca;
          const int cv = a_su2 ? ca : cb;
          const double* ps = scal.channel(cs, 0);
          for (int ch = 0; ch < 3; ++ch) {
            double* dst = out.channel(k, ch);
            const double* pv = vec.channel(cv, ch);
            for (std::size_t p = 0; p < np; ++p) dst[p] += s * ps[p] * pv[p];
          }
        }
      } else if (!a_su2) {
        if (pairing == WedgePairing::MatrixProduct) {
          double* dst = out.channel(k, 0);
          const double* pa = a.channel(ca, 0);
          const double* pb = b.channel(cb, 0);
          for (std::size_t p = 0; p < np; ++p) dst[p] += s * pa[p] * pb[p];
        }
        // abelian bracket vanishes
      } else {
        const double scale = (pairing == WedgePairing::Bracket) ? s : 0.5 * s;
        for (std::size_t p = 0; p < np; ++p) {
          const Su2 cr = bracket(a.su2_at(ca, p), b.su2_at(cb, p));
          Su2 v = out.su2_at(k, p);
          for (int i = 0; i < 3; ++i) v[i] += scale * cr[i];
          out.set_su2(k, p, v);
        }
      }
    }
  return out;
}

DifferentialForm hodge_star(const DifferentialForm& eta, const Metric& g) {
  if (!g.domain->same_as(*eta.domain))
    throw std::invalid_argument("hodge_star: metric on a different domain");
  const int dim = eta.domain->dim;
  DifferentialForm out(eta.domain, eta.algebra, dim - eta.degree);
  const IndexTable& ti = eta.table();
  const IndexTable& to = out.table();
  const std::size_t np = eta.npoints();
  const std::uint8_t full = static_cast<std::uint8_t>((1u << dim) - 1u);

  for (int c = 0; c < eta.ncomps(); ++c) {
    const std::uint8_t mask = ti.masks[c];
    const int k = to.index_of[full & ~mask];
    const double s = complement_sign(mask, dim);
    for (int ch = 0; ch < eta.nchannels(); ++ch) {
      const double* src = eta.channel(c, ch);
      double* dst = out.channel(k, ch);
      if (g.is_flat()) {
        for (std::size_t p = 0; p < np; ++p) dst[p] = s * src[p];
      } else {
        for (std::size_t p = 0; p < np; ++p) {
          const double w = g.density(p) * g.inv_product(mask, p);
          if (!(g.density(p) > 0)) throw std::domain_error("nonpositive metric sample");
          dst[p] = s * w * src[p];
        }
      }
    }
  }
  return out;
}

std::vector<double> pointwise_inner(const DifferentialForm& a,
                                    const DifferentialForm& b, const Metric& g) {
  if (a.degree != b.degree) throw std::invalid_argument("degree mismatch");
  if (a.algebra != b.algebra) throw std::invalid_argument("algebra mismatch");
  if (!a.domain->same_as(*b.domain)) throw std::invalid_argument("domain mismatch");
  const std::size_t np = a.npoints();
  std::vector<double> acc(np, 0.0);
  const IndexTable& t = a.table();
  for (int c = 0; c < a.ncomps(); ++c) {
    const std::uint8_t mask = t.masks[c];
    for (std::size_t p = 0; p < np; ++p) {
      double contraction;
      if (a.algebra == AlgebraKind::Abelian)
        contraction = a.at(c, p) * b.at(c, p);
      else
        contraction = dot(a.su2_at(c, p), b.su2_at(c, p));
      acc[p] += contraction * g.inv_product(mask, p);
    }
  }
  return acc;
}

double inner_product(const DifferentialForm& a, const DifferentialForm& b,
                     const Metric& g) {
  if (!a.domain->is_torus())
    throw std::invalid_argument("inner_product: quadrature needs a torus domain");
  const std::vector<double> f = pointwise_inner(a, b, g);
  const double cv = a.domain->cell_volume();
  double total = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) total += f[p] * g.density(p);
  return total * cv;
}

DifferentialForm codifferential(const DifferentialForm& eta, const Metric& g) {
  if (eta.degree < 1) throw std::invalid_argument("codifferential needs degree >= 1");
  if (eta.domain->dim % 2 != 0)
    throw std::invalid_argument("codifferential assumes even dimension");
  DifferentialForm r = hodge_star(exterior_derivative(hodge_star(eta, g)), g);
  r *= -1.0;
  return r;
}

}  // namespace sflat
