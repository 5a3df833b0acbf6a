#pragma once

#include "sflat/calculus.hpp"
#include "sflat/form.hpp"
#include "sflat/metric.hpp"

namespace sflat {

struct Connection;  // gauge.hpp

/// The Darboux symplectic form omega = sum_i dx_{2i-1} ^ dx_{2i} on an
/// even-dimensional domain; n = dim/2.
struct SymplecticForm {
  DomainPtr domain;
  int n = 0;
  DifferentialForm form;  // abelian 2-form, constant coefficients

  static SymplecticForm standard(DomainPtr dom);
};

/// Lefschetz operator L(eta) = omega ^ eta.
DifferentialForm lefschetz_L(const SymplecticForm& w, const DifferentialForm& eta);

/// Dual Lefschetz operator, metric-free: double contraction with the inverse
/// bivector sum_i e_{2i} . e_{2i-1} . eta. Kills primitive forms; Lambda(omega) = n.
DifferentialForm dual_lefschetz(const SymplecticForm& w, const DifferentialForm& eta);

struct TwoFormDecomposition {
  DifferentialForm primitive;  // degree 2, Lambda-free
  DifferentialForm phi;        // degree 0
  bool degenerate_dim = false; // dim == 2: primitive part forced to zero
};

/// eta = eta_p + phi * omega with Lambda(eta_p) = 0 and phi = Lambda(eta)/n.
TwoFormDecomposition lefschetz_decompose_2form(const SymplecticForm& w,
                                               const DifferentialForm& eta);

/// Projection of 3-forms in dim 4 onto their primitive component:
/// Pi(eta) = eta - omega ^ Lambda(eta). (Identically zero in dim 4, where
/// every 3-form is an omega-multiple; kept as the generic formula.)
DifferentialForm primitive_project(const SymplecticForm& w, const DifferentialForm& eta);

/// Splitting d(eta) = d_plus(eta) + omega ^ d_minus(eta) with d_plus primitive.
/// Degree 0: d_plus = d, d_minus = 0. Degree 1: d_minus = Lambda(d eta)/n.
/// Primitive degree 2 (dim 4): d_minus = Lambda(d eta).
DifferentialForm d_plus(const SymplecticForm& w, const DifferentialForm& eta);
DifferentialForm d_minus(const SymplecticForm& w, const DifferentialForm& eta);

/// Twisted splitting with d replaced by the covariant derivative of A.
DifferentialForm twisted_d_plus(const SymplecticForm& w, const DifferentialForm& eta,
                                const Connection& A);
DifferentialForm twisted_d_minus(const SymplecticForm& w, const DifferentialForm& eta,
                                 const Connection& A);

/// Splitting applied to a precomputed derivative; shared by the twisted and
/// untwisted entry points.
DifferentialForm split_plus(const SymplecticForm& w, int input_degree,
                            const DifferentialForm& deta);
DifferentialForm split_minus(const SymplecticForm& w, int input_degree,
                             const DifferentialForm& deta);

/// Closed 2-form with a closedness certificate.
struct ClosedTwoForm {
  DifferentialForm form;
  double closedness = 0.0;  // sup norm of d(form) at construction

  static ClosedTwoForm certify(DifferentialForm f, double tol = 1e-8);
};

struct ZetaDecomposition {
  DifferentialForm f_perp;
  DifferentialForm phi;  // degree 0
};

/// Pointwise decomposition F = F_perp + phi * zeta with <F_perp, zeta>_g = 0:
/// phi(x) = <F, zeta>_g(x) / |zeta|_g^2(x). Errors when zeta degenerates.
ZetaDecomposition zeta_decompose(const DifferentialForm& F, const ClosedTwoForm& zeta,
                                 const Metric& g);

}  // namespace sflat
