#include "sflat/functionals.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sflat {

FunctionalValue eval_ym(const Connection& A, const Metric& g, double tol) {
  FunctionalValue v;
  v.tolerance = tol;
  const DifferentialForm F = curvature(A);
  v.value = inner_product(F, F, g);
  v.residual_norms.emplace_back("d_A*F", l2_norm(covariant_codifferential(F, A, g), g));
  v.finish();
  return v;
}

FunctionalValue eval_pym(const Connection& A, const Metric& g, double tol) {
  if (A.a.domain->dim < 4)
    throw std::invalid_argument("primitive component is trivial in dim 2");
  FunctionalValue v;
  v.tolerance = tol;
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm Fp = lefschetz_decompose_2form(w, curvature(A)).primitive;
  v.value = inner_product(Fp, Fp, g);
  v.residual_norms.emplace_back("d_A*F_p", l2_norm(covariant_codifferential(Fp, A, g), g));
  v.finish();
  return v;
}

FunctionalValue eval_phi_omega(const Connection& A, const Metric& g, double tol) {
  FunctionalValue v;
  v.tolerance = tol;
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const auto dec = lefschetz_decompose_2form(w, curvature(A));
  const DifferentialForm phi_omega = wedge(dec.phi, w.form, WedgePairing::Plain);
  v.value = inner_product(phi_omega, phi_omega, g);
  v.residual_norms.emplace_back("d_A Phi", l2_norm(covariant_d(dec.phi, A), g));
  v.finish();
  return v;
}

namespace {

// Residual pair of the cone functional; shared by eval and flows.
std::pair<DifferentialForm, DifferentialForm> cone_residual_pair(
    const Connection& A, const DifferentialForm& B, const Metric& g) {
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm F = curvature(A);
  const DifferentialForm FwB = F + wedge(B, w.form, WedgePairing::Plain);
  DifferentialForm r1 = covariant_codifferential(FwB, A, g);
  const DifferentialForm dAB = covariant_d(B, A);
  if (A.algebra == AlgebraKind::Su2) r1 -= wedge(dAB, B, WedgePairing::Bracket);

  DifferentialForm r2 = dual_lefschetz(w, F);
  DifferentialForm nB = B;
  nB *= static_cast<double>(w.n);
  r2 += nB;
  r2 += covariant_codifferential(dAB, A, g);
  return {std::move(r1), std::move(r2)};
}

}  // namespace

FunctionalValue eval_cone_ym(const Connection& A, const DifferentialForm& B,
                             const Metric& g, double tol) {
  if (B.degree != 0 || B.algebra != A.algebra)
    throw std::invalid_argument("cone endomorphism must be a 0-form of the same algebra");
  FunctionalValue v;
  v.tolerance = tol;
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm FwB =
      curvature(A) + wedge(B, w.form, WedgePairing::Plain);
  const DifferentialForm dAB = covariant_d(B, A);
  v.value = inner_product(FwB, FwB, g) + inner_product(dAB, dAB, g);
  auto [r1, r2] = cone_residual_pair(A, B, g);
  v.residual_norms.emplace_back("d_A*(F+wB)-[d_AB,B]", l2_norm(r1, g));
  v.residual_norms.emplace_back("LF+nB+d_A*d_AB", l2_norm(r2, g));
  v.finish();
  return v;
}

std::vector<DifferentialForm> el_residual(FunctionalKind kind, const Connection& A,
                                          const DifferentialForm* B, const Metric& g,
                                          bool verify_identity) {
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  switch (kind) {
    case FunctionalKind::Ym:
      return {covariant_codifferential(curvature(A), A, g)};
    case FunctionalKind::Pym: {
      const DifferentialForm Fp = lefschetz_decompose_2form(w, curvature(A)).primitive;
      DifferentialForm r = covariant_codifferential(Fp, A, g);
      if (verify_identity) {
        const DifferentialForm eta =
            random_form(A.a.domain, A.algebra, 1, 777u, 0.7, 2, 3);
        const double lhs = inner_product(eta, r, g);
        const double rhs = inner_product(twisted_d_plus(w, eta, A), Fp, g);
        const double scale = 1.0 + std::abs(lhs) + std::abs(rhs);
        if (std::abs(lhs - rhs) > 1e-6 * scale)
          throw std::runtime_error("pym residual identity check failed");
      }
      return {std::move(r)};
    }
    case FunctionalKind::PhiOmega: {
      const auto dec = lefschetz_decompose_2form(w, curvature(A));
      const DifferentialForm phi_omega = wedge(dec.phi, w.form, WedgePairing::Plain);
      return {covariant_codifferential(phi_omega, A, g)};
    }
    case FunctionalKind::Cone: {
      if (!B) throw std::invalid_argument("cone residual needs B");
      auto [r1, r2] = cone_residual_pair(A, *B, g);
      std::vector<DifferentialForm> out;
      out.push_back(std::move(r1));
      out.push_back(std::move(r2));
      return out;
    }
  }
  throw std::invalid_argument("invalid functional kind");
}

namespace {

// *[*(sigma), eta] with the bracket pairing; vanishes for abelian values.
DifferentialForm star_bracket_term(const DifferentialForm& sigma,
                                   const DifferentialForm& eta, const Metric& g) {
  if (sigma.algebra == AlgebraKind::Abelian)
    return DifferentialForm::zero(eta.domain, eta.algebra, eta.degree);
  return hodge_star(wedge(hodge_star(sigma, g), eta, WedgePairing::Bracket), g);
}

}  // namespace

DifferentialForm hessian_apply(FunctionalKind kind, const Connection& A,
                               const DifferentialForm& eta, const Metric& g) {
  if (eta.degree != 1) throw std::invalid_argument("hessian acts on 1-forms");
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm F = curvature(A);
  const auto dec = lefschetz_decompose_2form(w, F);

  double crit = 0.0;
  DifferentialForm result(eta.domain, eta.algebra, 1);
  switch (kind) {
    case FunctionalKind::Ym:
      crit = l2_norm(covariant_codifferential(F, A, g), g);
      result = covariant_codifferential(covariant_d(eta, A), A, g) +
               star_bracket_term(F, eta, g);
      break;
    case FunctionalKind::Pym:
      crit = l2_norm(covariant_codifferential(dec.primitive, A, g), g);
      result = covariant_codifferential(twisted_d_plus(w, eta, A), A, g) +
               star_bracket_term(dec.primitive, eta, g);
      break;
    case FunctionalKind::PhiOmega: {
      const DifferentialForm phi_omega = wedge(dec.phi, w.form, WedgePairing::Plain);
      crit = l2_norm(covariant_codifferential(phi_omega, A, g), g);
      const DifferentialForm m = twisted_d_minus(w, eta, A);
      result = covariant_codifferential(wedge(w.form, m, WedgePairing::Plain), A, g) +
               star_bracket_term(phi_omega, eta, g);
      break;
    }
    default:
      throw std::invalid_argument("hessian_apply supports ym, pym, phi");
  }
  if (crit > 1e-4 * (1.0 + l2_norm(F, g)))
    std::cerr << "hessian_apply: warning, connection is not a critical point "
                 "(residual "
              << crit << ")\n";
  return result;
}

DifferentialForm trace_chain(const std::vector<const DifferentialForm*>& fs) {
  if (fs.empty()) throw std::invalid_argument("trace_chain: empty chain");
  const DomainPtr dom = fs[0]->domain;
  const AlgebraKind alg = fs[0]->algebra;
  int total = 0;
  for (const auto* f : fs) {
    if (f->algebra != alg || !f->domain->same_as(*dom))
      throw std::invalid_argument("trace_chain: mismatched factors");
    total += f->degree;
  }
  if (total > dom->dim) throw std::domain_error("trace_chain: degree overflow");

  DifferentialForm out(dom, AlgebraKind::Abelian, total);
  const IndexTable& to = out.table();
  const std::size_t np = dom->npoints;

  // recursive walk over component choices, accumulating mask and sign
  std::vector<int> pick(fs.size(), 0);
  std::function<void(std::size_t, std::uint8_t, double)> walk =
      [&](std::size_t depth, std::uint8_t mask, double sign) {
        if (depth == fs.size()) {
          const int k = to.index_of[mask];
          double* dst = out.channel(k, 0);
          if (alg == AlgebraKind::Abelian) {
            for (std::size_t p = 0; p < np; ++p) {
              double prod = sign;
              for (std::size_t d = 0; d < fs.size(); ++d)
                prod *= fs[d]->at(pick[d], p);
              dst[p] += prod;
            }
          } else {
            for (std::size_t p = 0; p < np; ++p) {
              Quat q{0.0, fs[0]->su2_at(pick[0], p)};
              for (std::size_t d = 1; d < fs.size(); ++d)
                q = q * Quat{0.0, fs[d]->su2_at(pick[d], p)};
              dst[p] += sign * q.trace();
            }
          }
          return;
        }
        const IndexTable& t = fs[depth]->table();
        for (int c = 0; c < fs[depth]->ncomps(); ++c) {
          const std::uint8_t m = t.masks[c];
          if (mask & m) continue;
          pick[depth] = c;
          walk(depth + 1, static_cast<std::uint8_t>(mask | m),
               sign * merge_sign(mask, m));
        }
      };
  walk(0, 0, 1.0);
  return out;
}

double integrate_top_form(const DifferentialForm& f) {
  if (!f.domain->is_torus())
    throw std::invalid_argument("integration needs a torus domain");
  if (f.degree != f.domain->dim || f.algebra != AlgebraKind::Abelian)
    throw std::invalid_argument("expects a real-valued top form");
  double total = 0.0;
  const double* v = f.channel(0, 0);
  for (std::size_t p = 0; p < f.npoints(); ++p) total += v[p];
  return total * f.domain->cell_volume();
}

ChernSimonsResult chern_simons_p2(const Connection& A, const DifferentialForm& B,
                                  const Metric& g) {
  (void)g;
  if (A.a.domain->dim != 2) throw std::invalid_argument("P2 needs dim 2");
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm F = curvature(A);

  const DifferentialForm trBB = trace_chain({&B, &B});
  const DifferentialForm trBF = trace_chain({&B, &F});
  DifferentialForm integrand = wedge(w.form, trBB, WedgePairing::Plain);
  integrand += 2.0 * trBF;

  const DifferentialForm exact = exterior_derivative(trace_chain({&A.a, &B}));
  integrand -= exact;

  const double pref = -1.0 / (8.0 * M_PI * M_PI);
  ChernSimonsResult r;
  r.value = pref * integrate_top_form(integrand);
  r.exact_term = integrate_top_form(exact);
  return r;
}

ChernSimonsResult chern_simons_p4(const Connection& A, const DifferentialForm& B,
                                  const Metric& g) {
  (void)g;
  if (A.a.domain->dim != 4) throw std::invalid_argument("P4 needs dim 4");
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm F = curvature(A);
  const DifferentialForm& a = A.a;
  const DifferentialForm da = exterior_derivative(a);

  DifferentialForm integrand = 3.0 * trace_chain({&B, &F, &F});
  integrand += 3.0 * wedge(w.form, trace_chain({&B, &B, &F}), WedgePairing::Plain);
  integrand += wedge(wedge(w.form, w.form, WedgePairing::Plain),
                     trace_chain({&B, &B, &B}), WedgePairing::Plain);

  // interior exact term, as printed: d(B dA A + omega B A B + (3/2) B A^3 - B A dA)
  DifferentialForm inner = trace_chain({&B, &da, &a});
  inner += wedge(w.form, trace_chain({&B, &a, &B}), WedgePairing::Plain);
  inner += 1.5 * trace_chain({&B, &a, &a, &a});
  inner -= trace_chain({&B, &a, &da});
  const DifferentialForm exact = exterior_derivative(inner);
  integrand -= exact;

  ChernSimonsResult r;
  r.value = (-1.0 / 48.0) * integrate_top_form(integrand);
  r.exact_term = integrate_top_form(exact);
  return r;
}

double cs_invariant_p2(const DifferentialForm& phi) {
  const SymplecticForm w = SymplecticForm::standard(phi.domain);
  const DifferentialForm tr2 = trace_chain({&phi, &phi});
  const double integral =
      integrate_top_form(wedge(w.form, tr2, WedgePairing::Plain));
  return integral / (8.0 * M_PI * M_PI);
}

double cs_invariant_p4(const DifferentialForm& phi) {
  const SymplecticForm w = SymplecticForm::standard(phi.domain);
  const DifferentialForm tr3 = trace_chain({&phi, &phi, &phi});
  const DifferentialForm w2 = wedge(w.form, w.form, WedgePairing::Plain);
  return integrate_top_form(wedge(w2, tr3, WedgePairing::Plain)) / 48.0;
}

ZetaFunctionals eval_zeta_functionals(const Connection& A, const DifferentialForm* phi,
                                      const ClosedTwoForm& zeta, const Metric& g) {
  ZetaFunctionals out;
  const DifferentialForm F = curvature(A);
  out.ym = inner_product(F, F, g);

  const ZetaDecomposition dec = zeta_decompose(F, zeta, g);
  const DifferentialForm& use_phi = phi ? *phi : dec.phi;
  const DifferentialForm phi_zeta = wedge(use_phi, zeta.form, WedgePairing::Plain);
  const DifferentialForm perp = F - phi_zeta;
  out.perp = inner_product(perp, perp, g);
  out.phi_part = inner_product(phi_zeta, phi_zeta, g);

  DifferentialForm Bfield = use_phi;
  Bfield *= -1.0;
  const DifferentialForm FzB = F + wedge(Bfield, zeta.form, WedgePairing::Plain);
  const DifferentialForm dAB = covariant_d(Bfield, A);
  out.cone = inner_product(FzB, FzB, g) + inner_product(dAB, dAB, g);
  return out;
}

}  // namespace sflat
