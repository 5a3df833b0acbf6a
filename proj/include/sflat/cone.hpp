#pragma once

#include <optional>

#include "sflat/gauge.hpp"
#include "sflat/symplectic.hpp"

namespace sflat {

/// Element xi + theta*eta of the mapping cone of forms, where theta has
/// degree 1, theta^2 = 0 and d(theta) = sigma (omega by default).
///
/// A cone form of degree k holds xi of degree k and eta of degree k-1; a slot
/// is absent when its degree falls outside [0, dim] (top cone degree dim+1
/// has only the theta slot).
///
/// Sign convention, fixed once by the degree-0 curvature identity:
///   D(xi + theta eta) = (d_A xi + sigma ^ eta) + theta (B xi - d_A eta),
/// which gives D^2 = (F + sigma B) - theta (d_A B) acting through the
/// algebra (multiplication for abelian values, bracket for su2).
struct ConeForm {
  int degree = 0;
  AlgebraKind algebra = AlgebraKind::Abelian;
  DomainPtr domain;
  std::optional<DifferentialForm> xi;
  std::optional<DifferentialForm> eta;

  static ConeForm make(DifferentialForm xi_part);
  static ConeForm make(DifferentialForm xi_part, DifferentialForm eta_part);
  static ConeForm theta_only(DifferentialForm eta_part);
};

/// D_C = d_A + theta B with d(theta) = sigma.
struct ConeOperator {
  Connection A;
  DifferentialForm B;        // degree 0, same algebra
  ClosedTwoForm sigma;       // omega by default, any certified closed 2-form

  static ConeOperator standard(Connection A, DifferentialForm B);
  static ConeOperator with_sigma(Connection A, DifferentialForm B, ClosedTwoForm sigma);
};

ConeForm cone_d(const ConeForm& c, const ConeOperator& op);

/// Curvature pair (F + sigma B, -d_A B); vanishes exactly when (A, -B)
/// witnesses sigma-flatness.
ConeForm cone_curvature(const ConeOperator& op);

/// Star on the cone: xi + theta eta -> (-1)^{|xi|} theta * xi + * eta.
ConeForm cone_star(const ConeForm& c, const Metric& g);

/// <xi1 + theta eta1, xi2 + theta eta2> = <xi1, xi2> + <eta1, eta2>.
double cone_inner_product(const ConeForm& a, const ConeForm& b, const Metric& g);

/// Action of the curvature pair on a 0-form test section: multiplication for
/// abelian values, bracket for su2. Equals D_C(D_C(s)).
ConeForm curvature_action_on_scalar(const ConeOperator& op, const DifferentialForm& s);

}  // namespace sflat
