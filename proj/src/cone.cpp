#include "sflat/cone.hpp"

#include <stdexcept>

namespace sflat {

namespace {

// B acting on the values of a form: pointwise multiply (abelian) or bracket.
DifferentialForm algebra_action(const DifferentialForm& B, const DifferentialForm& x) {
  if (B.algebra != x.algebra) throw std::invalid_argument("cone: algebra mismatch");
  return wedge(B, x, B.algebra == AlgebraKind::Abelian ? WedgePairing::Plain
                                                       : WedgePairing::Bracket);
}

// Covariant derivative on cone sections. su2 sections carry the adjoint
// action; abelian sections carry the charge-1 action d + a, so that the
// square reproduces the full curvature of potentialized connections.
DifferentialForm section_covariant_d(const DifferentialForm& x, const ConeOperator& op) {
  DifferentialForm d = exterior_derivative(x);
  d += wedge(op.A.a, x,
             op.A.algebra == AlgebraKind::Su2 ? WedgePairing::Bracket
                                              : WedgePairing::Plain);
  return d;
}

}  // namespace

ConeForm ConeForm::make(DifferentialForm xi_part) {
  ConeForm c;
  c.degree = xi_part.degree;
  c.algebra = xi_part.algebra;
  c.domain = xi_part.domain;
  c.xi = std::move(xi_part);
  if (c.degree >= 1)
    c.eta = DifferentialForm::zero(c.domain, c.algebra, c.degree - 1);
  return c;
}

ConeForm ConeForm::make(DifferentialForm xi_part, DifferentialForm eta_part) {
  if (eta_part.degree != xi_part.degree - 1)
    throw std::invalid_argument("cone form slots must have degrees (k, k-1)");
  if (eta_part.algebra != xi_part.algebra || !eta_part.domain->same_as(*xi_part.domain))
    throw std::invalid_argument("cone form slot mismatch");
  ConeForm c = make(std::move(xi_part));
  c.eta = std::move(eta_part);
  return c;
}

ConeForm ConeForm::theta_only(DifferentialForm eta_part) {
  ConeForm c;
  c.degree = eta_part.degree + 1;
  c.algebra = eta_part.algebra;
  c.domain = eta_part.domain;
  if (c.degree <= c.domain->dim)
    c.xi = DifferentialForm::zero(c.domain, c.algebra, c.degree);
  c.eta = std::move(eta_part);
  return c;
}

ConeOperator ConeOperator::standard(Connection A, DifferentialForm B) {
  return with_sigma(std::move(A), std::move(B),
                    ClosedTwoForm::certify(SymplecticForm::standard(B.domain).form));
}

ConeOperator ConeOperator::with_sigma(Connection A, DifferentialForm B,
                                      ClosedTwoForm sigma) {
  if (B.degree != 0) throw std::invalid_argument("cone endomorphism must be a 0-form");
  if (B.algebra != A.algebra) throw std::invalid_argument("cone: algebra mismatch");
  ConeOperator op{std::move(A), std::move(B), std::move(sigma)};
  return op;
}

ConeForm cone_d(const ConeForm& c, const ConeOperator& op) {
  const int dim = c.domain->dim;
  if (c.algebra != op.A.algebra) throw std::invalid_argument("cone_d: algebra mismatch");
  const int kout = c.degree + 1;

  std::optional<DifferentialForm> xi_out;
  if (kout <= dim) {
    xi_out = DifferentialForm::zero(c.domain, c.algebra, kout);
    if (c.xi) *xi_out += section_covariant_d(*c.xi, op);
    if (c.eta) *xi_out += wedge(op.sigma.form, *c.eta, WedgePairing::Plain);
  }

  DifferentialForm eta_out = DifferentialForm::zero(c.domain, c.algebra, kout - 1);
  if (c.xi) eta_out += algebra_action(op.B, *c.xi);
  if (c.eta && c.eta->degree < dim) eta_out -= section_covariant_d(*c.eta, op);

  ConeForm out;
  out.degree = kout;
  out.algebra = c.algebra;
  out.domain = c.domain;
  out.xi = std::move(xi_out);
  out.eta = std::move(eta_out);
  return out;
}

ConeForm cone_curvature(const ConeOperator& op) {
  DifferentialForm first =
      curvature(op.A) + wedge(op.B, op.sigma.form, WedgePairing::Plain);
  DifferentialForm second = covariant_d(op.B, op.A);
  second *= -1.0;
  return ConeForm::make(std::move(first), std::move(second));
}

ConeForm cone_star(const ConeForm& c, const Metric& g) {
  const int dim = c.domain->dim;
  ConeForm out;
  out.degree = dim + 1 - c.degree;
  out.algebra = c.algebra;
  out.domain = c.domain;
  if (c.eta) out.xi = hodge_star(*c.eta, g);
  if (c.xi) {
    DifferentialForm s = hodge_star(*c.xi, g);
    if (c.degree % 2 != 0) s *= -1.0;
    out.eta = std::move(s);
  }
  if (!out.xi && out.degree <= dim)
    out.xi = DifferentialForm::zero(c.domain, c.algebra, out.degree);
  if (!out.eta && out.degree >= 1)
    out.eta = DifferentialForm::zero(c.domain, c.algebra, out.degree - 1);
  return out;
}

double cone_inner_product(const ConeForm& a, const ConeForm& b, const Metric& g) {
  if (a.degree != b.degree) throw std::invalid_argument("cone inner product: degree mismatch");
  double total = 0.0;
  if (a.xi && b.xi) total += inner_product(*a.xi, *b.xi, g);
  if (a.eta && b.eta) total += inner_product(*a.eta, *b.eta, g);
  return total;
}

ConeForm curvature_action_on_scalar(const ConeOperator& op, const DifferentialForm& s) {
  if (s.degree != 0) throw std::invalid_argument("expects a 0-form section");
  const ConeForm F = cone_curvature(op);
  const bool abelian = s.algebra == AlgebraKind::Abelian;
  auto act = [&](const DifferentialForm& form) {
    return wedge(form, s, abelian ? WedgePairing::Plain : WedgePairing::Bracket);
  };
  return ConeForm::make(act(*F.xi), act(*F.eta));
}

}  // namespace sflat
