#pragma once

#include <string>
#include <vector>

#include "sflat/cone.hpp"
#include "sflat/gauge.hpp"
#include "sflat/symplectic.hpp"

namespace sflat {

/// Scalar functional value plus the L2 norms of its Euler-Lagrange system.
struct FunctionalValue {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> residual_norms;
  double tolerance = 1e-6;
  bool critical = false;

  void finish() {
    critical = true;
    for (auto& [name, r] : residual_norms) critical = critical && r <= tolerance;
  }
};

enum class FunctionalKind { Ym, Pym, PhiOmega, Cone };

/// |F|^2 with residual d_A* F.
FunctionalValue eval_ym(const Connection& A, const Metric& g, double tol = 1e-6);

/// |F_p|^2 with residual d_A* F_p. Errors in dim 2, where F_p is trivial.
FunctionalValue eval_pym(const Connection& A, const Metric& g, double tol = 1e-6);

/// |Phi omega|^2 with the critical-point condition residual |d_A Phi|
/// (equivalent to d_A*(Phi omega) = 0 through the omega^{n-1} isomorphism).
/// For compatible metrics |omega|^2 = n pointwise, so the value equals
/// n * integral of |Phi|^2.
FunctionalValue eval_phi_omega(const Connection& A, const Metric& g, double tol = 1e-6);

/// |F + omega B|^2 + |d_A B|^2 with the critical-point residual pair
///   ( d_A*(F + omega B) - [d_A B, B],  Lambda F + n B + d_A* d_A B ).
FunctionalValue eval_cone_ym(const Connection& A, const DifferentialForm& B,
                             const Metric& g, double tol = 1e-6);

/// Euler-Lagrange residual forms. The true gradient is twice the returned
/// residual in every case (pinned by the finite-difference contract).
/// For PhiOmega the returned form is the 1-form gradient d_A*(Phi omega);
/// the scalar condition d_A Phi is reported by eval_phi_omega.
/// For Pym, when verify_identity is set, the defining identity
/// <eta, d_A* F_p> = <d_plus_A eta, F_p> is spot-checked on a random eta.
std::vector<DifferentialForm> el_residual(FunctionalKind kind, const Connection& A,
                                          const DifferentialForm* B, const Metric& g,
                                          bool verify_identity = false);

/// Hessian operators on 1-forms at (near-)critical connections:
///   Ym:       L eta   = d_A* d_A eta + *[*F, eta]
///   Pym:      L_p eta = d_A* d_plus_A eta + *[*F_p, eta]
///   PhiOmega: L_f eta = d_A* (omega d_minus_A eta) + *[*(Phi omega), eta]
/// Warns on stderr when A is not critical for the requested functional.
DifferentialForm hessian_apply(FunctionalKind kind, const Connection& A,
                               const DifferentialForm& eta, const Metric& g);

/// tr(f1 ^ f2 ^ ... ^ fk) as a real-valued form. su2 chains multiply in the
/// algebra spanned by {I, T_a}; abelian values are 1x1 matrices.
DifferentialForm trace_chain(const std::vector<const DifferentialForm*>& fs);

/// Integral of a top-degree real-valued form (no metric involved).
double integrate_top_form(const DifferentialForm& f);

struct ChernSimonsResult {
  double value = 0.0;       // reported with the constant prefactor, i factored out
  double exact_term = 0.0;  // raw integral of the interior exact term
};

/// P2(A,B) = (-1/8pi^2) integral tr[omega B^2 + 2 B F - d(A B)], dim 2.
/// The exact term is evaluated as printed and returned for the caller to
/// assert small on closed tori.
ChernSimonsResult chern_simons_p2(const Connection& A, const DifferentialForm& B,
                                  const Metric& g);

/// P4(A,B) = (-1/48) integral tr[3 B F^2 + 3 omega B^2 F + omega^2 B^3
///            - d(B dA A + omega B A B + (3/2) B A^3 - B A dA)], dim 4.
/// The overall factor i of the underlying invariant is factored out of the
/// reported value.
ChernSimonsResult chern_simons_p4(const Connection& A, const DifferentialForm& B,
                                  const Metric& g);

/// The substitution values at a flat pair: (1/8pi^2) integral tr Phi^2 omega
/// and (1/48) integral tr Phi^3 omega^2.
double cs_invariant_p2(const DifferentialForm& phi);
double cs_invariant_p4(const DifferentialForm& phi);

struct ZetaFunctionals {
  double ym = 0.0;        // |F|^2
  double perp = 0.0;      // |F_perp|^2
  double phi_part = 0.0;  // |Phi zeta|^2
  double cone = 0.0;      // |F + zeta B|^2 + |d_A B|^2 with B = -Phi
};

/// Decomposition values for a general closed zeta:
/// |F|^2 = |F_perp|^2 + |Phi zeta|^2, and the zeta-cone value.
ZetaFunctionals eval_zeta_functionals(const Connection& A, const DifferentialForm* phi,
                                      const ClosedTwoForm& zeta, const Metric& g);

}  // namespace sflat
