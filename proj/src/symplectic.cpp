#include "sflat/symplectic.hpp"

#include <cmath>
#include <stdexcept>

#include "sflat/gauge.hpp"

namespace sflat {

SymplecticForm SymplecticForm::standard(DomainPtr dom) {
  if (dom->dim % 2 != 0)
    throw std::invalid_argument("symplectic form needs even dimension");
  SymplecticForm w;
  w.domain = dom;
  w.n = dom->dim / 2;
  w.form = DifferentialForm(dom, AlgebraKind::Abelian, 2);
  const IndexTable& t = w.form.table();
  for (int i = 0; i < w.n; ++i) {
    const std::uint8_t mask = static_cast<std::uint8_t>((1u << (2 * i)) | (1u << (2 * i + 1)));
    const int c = t.index_of[mask];
    for (std::size_t p = 0; p < dom->npoints; ++p) w.form.at(c, p) = 1.0;
  }
  return w;
}

DifferentialForm lefschetz_L(const SymplecticForm& w, const DifferentialForm& eta) {
  if (eta.degree > eta.domain->dim - 2)
    throw std::domain_error("lefschetz_L: degree overflow");
  return wedge(w.form, eta, WedgePairing::Plain);
}

DifferentialForm dual_lefschetz(const SymplecticForm& w, const DifferentialForm& eta) {
  if (eta.degree < 2) throw std::domain_error("dual_lefschetz needs degree >= 2");
  DifferentialForm out(eta.domain, eta.algebra, eta.degree - 2);
  const IndexTable& ti = eta.table();
  const IndexTable& to = out.table();
  const std::size_t np = eta.npoints();

  for (int c = 0; c < eta.ncomps(); ++c) {
    const std::uint8_t mask = ti.masks[c];
    for (int i = 0; i < w.n; ++i) {
      const int lo = 2 * i, hi = 2 * i + 1;
      const std::uint8_t pair = static_cast<std::uint8_t>((1u << lo) | (1u << hi));
      if ((mask & pair) != pair) continue;
      // iota_{e_hi} (iota_{e_lo} dx_mask)
      const int s1 = interior_sign(mask, lo);
      const std::uint8_t m1 = static_cast<std::uint8_t>(mask & ~(1u << lo));
      const int s2 = interior_sign(m1, hi);
      const int k = to.index_of[m1 & ~(1u << hi)];
      const double s = s1 * s2;
      for (int ch = 0; ch < eta.nchannels(); ++ch) {
        const double* src = eta.channel(c, ch);
        double* dst = out.channel(k, ch);
        for (std::size_t p = 0; p < np; ++p) dst[p] += s * src[p];
      }
    }
  }
  return out;
}

TwoFormDecomposition lefschetz_decompose_2form(const SymplecticForm& w,
                                               const DifferentialForm& eta) {
  if (eta.degree != 2) throw std::invalid_argument("decompose: degree 2 expected");
  TwoFormDecomposition d;
  d.phi = dual_lefschetz(w, eta);
  d.phi *= 1.0 / w.n;
  if (eta.domain->dim == 2) {
    d.degenerate_dim = true;
    d.primitive = DifferentialForm::zero(eta.domain, eta.algebra, 2);
    return d;
  }
  d.primitive = eta - wedge(d.phi, w.form, WedgePairing::Plain);
  return d;
}

DifferentialForm primitive_project(const SymplecticForm& w, const DifferentialForm& eta) {
  if (eta.domain->dim != 4 || eta.degree != 3)
    throw std::invalid_argument("primitive_project supports 3-forms in dim 4");
  return eta - wedge(w.form, dual_lefschetz(w, eta), WedgePairing::Plain);
}

namespace {

void require_primitive(const SymplecticForm& w, const DifferentialForm& eta) {
  if (eta.degree >= 2) {
    const double defect = dual_lefschetz(w, eta).sup_norm();
    if (defect > 1e-8 * (1.0 + eta.sup_norm()))
      throw std::invalid_argument("d_plus/d_minus: input is not primitive");
  }
}

}  // namespace

DifferentialForm split_minus(const SymplecticForm& w, int input_degree,
                             const DifferentialForm& deta) {
  if (input_degree == 0)
    return DifferentialForm::zero(deta.domain, deta.algebra, 0);
  if (input_degree == 1) {
    DifferentialForm m = dual_lefschetz(w, deta);
    m *= 1.0 / w.n;
    return m;
  }
  if (input_degree == 2 && w.domain->dim == 4) return dual_lefschetz(w, deta);
  throw std::invalid_argument("splitting implemented for degrees 0..2 (dim 4)");
}

DifferentialForm split_plus(const SymplecticForm& w, int input_degree,
                            const DifferentialForm& deta) {
  if (input_degree == 0) return deta;
  DifferentialForm m = split_minus(w, input_degree, deta);
  return deta - wedge(w.form, m, WedgePairing::Plain);
}

DifferentialForm d_plus(const SymplecticForm& w, const DifferentialForm& eta) {
  require_primitive(w, eta);
  return split_plus(w, eta.degree, exterior_derivative(eta));
}

DifferentialForm d_minus(const SymplecticForm& w, const DifferentialForm& eta) {
  require_primitive(w, eta);
  return split_minus(w, eta.degree, exterior_derivative(eta));
}

DifferentialForm twisted_d_plus(const SymplecticForm& w, const DifferentialForm& eta,
                                const Connection& A) {
  require_primitive(w, eta);
  return split_plus(w, eta.degree, covariant_d(eta, A));
}

DifferentialForm twisted_d_minus(const SymplecticForm& w, const DifferentialForm& eta,
                                 const Connection& A) {
  require_primitive(w, eta);
  return split_minus(w, eta.degree, covariant_d(eta, A));
}

ClosedTwoForm ClosedTwoForm::certify(DifferentialForm f, double tol) {
  if (f.degree != 2) throw std::invalid_argument("certify: degree 2 expected");
  ClosedTwoForm z;
  // top-degree forms are closed by degree counting
  z.closedness =
      f.degree < f.domain->dim ? exterior_derivative(f).sup_norm() : 0.0;
  if (z.closedness > tol * (1.0 + f.sup_norm()))
    throw std::invalid_argument("certify: form is not closed within tolerance");
  z.form = std::move(f);
  return z;
}

ZetaDecomposition zeta_decompose(const DifferentialForm& F, const ClosedTwoForm& zeta,
                                 const Metric& g) {
  if (F.degree != 2) throw std::invalid_argument("zeta_decompose: degree 2 expected");
  const std::vector<double> z2 = pointwise_inner(zeta.form, zeta.form, g);
  double zmax = 0.0;
  for (double v : z2) zmax = std::max(zmax, v);
  for (double v : z2)
    if (!(v > 1e-12 * zmax))
      throw std::domain_error("degenerate-zeta: |zeta| vanishes at a sample");

  ZetaDecomposition out;
  out.phi = DifferentialForm(F.domain, F.algebra, 0);
  const std::size_t np = F.npoints();
  const IndexTable& t = F.table();
  for (int ch = 0; ch < F.nchannels(); ++ch) {
    double* dst = out.phi.channel(0, ch);
    for (int c = 0; c < F.ncomps(); ++c) {
      const std::uint8_t mask = t.masks[c];
      const double* fsrc = F.channel(c, ch);
      const double* zsrc = zeta.form.channel(c, 0);
      for (std::size_t p = 0; p < np; ++p)
        dst[p] += fsrc[p] * zsrc[p] * g.inv_product(mask, p);
    }
    for (std::size_t p = 0; p < np; ++p) dst[p] /= z2[p];
  }
  out.f_perp = F - wedge(out.phi, zeta.form, WedgePairing::Plain);
  return out;
}

}  // namespace sflat
