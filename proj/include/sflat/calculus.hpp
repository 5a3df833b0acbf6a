#pragma once

#include <functional>
#include <string>

#include "sflat/form.hpp"
#include "sflat/metric.hpp"

namespace sflat {

/// Exterior derivative. On tori each component derivative is computed by
/// Fourier collocation; on point clouds the field must carry an analytic key
/// with a registered closed-form derivative.
DifferentialForm exterior_derivative(const DifferentialForm& eta);

/// Closed-form derivative table for point-cloud fields, keyed by the field's
/// analytic_key. Presets register their evaluators here.
void register_analytic_derivative(
    const std::string& key,
    std::function<DifferentialForm(const DifferentialForm&)> fn);

/// Coefficient pairing used by wedge.
///  - Plain: pointwise products. For su2 x su2 this contracts the algebra
///    channels with the invariant inner product and yields an abelian form.
///  - Bracket: [X,Y] on coefficients with the graded shuffle sign.
///  - MatrixProduct: the 2x2 matrix wedge. For su2 x su2 the result is the
///    su(2) projection (1/2)[a^b]; the scalar trace channel cancels for the
///    contractual use a^a of a single 1-form.
enum class WedgePairing { Plain, Bracket, MatrixProduct };

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b,
                       WedgePairing pairing = WedgePairing::Plain);

/// Hodge star of a diagonal metric, applied pointwise:
///   *(dx_I) = sign(I, I^c) sqrt(det g) (prod_{i in I} g^{ii}) dx_{I^c}.
DifferentialForm hodge_star(const DifferentialForm& eta, const Metric& g);

/// L2 inner product: grid quadrature of the pointwise metric contraction.
double inner_product(const DifferentialForm& a, const DifferentialForm& b,
                     const Metric& g);

inline double l2_norm(const DifferentialForm& a, const Metric& g) {
  return std::sqrt(std::max(0.0, inner_product(a, a, g)));
}

/// Codifferential d* = -*d* (even-dimensional domains).
DifferentialForm codifferential(const DifferentialForm& eta, const Metric& g);

/// Pointwise metric contraction of two equal-degree forms (algebra channels
/// contracted with the invariant inner product). Returns a scalar field.
std::vector<double> pointwise_inner(const DifferentialForm& a,
                                    const DifferentialForm& b, const Metric& g);

}  // namespace sflat
