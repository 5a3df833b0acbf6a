#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include "sflat/calculus.hpp"
#include "sflat/form.hpp"
#include "sflat/metric.hpp"

namespace sflat {

/// Connection on a trivial bundle plus, for abelian groups, a fixed closed
/// background flux 2-form representing a nontrivial bundle class. Everything
/// downstream depends only on the curvature and on global 1-form shifts,
/// which this representation supports exactly.
struct Connection {
  AlgebraKind algebra = AlgebraKind::Abelian;
  DifferentialForm a;                     // global 1-form part
  std::optional<DifferentialForm> flux;   // abelian only; closed 2-form

  DomainPtr domain() const { return a.domain; }
};

Connection make_connection(DifferentialForm a,
                           std::optional<DifferentialForm> flux = std::nullopt);

/// F = flux + da (abelian) or da + a ^ a (su2). Bianchi d_A F = 0 holds to
/// round-off on band-limited fields.
DifferentialForm curvature(const Connection& A);

/// d_A eta = d eta (abelian) or d eta + [a ^ eta] (su2, bracket pairing).
DifferentialForm covariant_d(const DifferentialForm& eta, const Connection& A);

/// d_A^* = -*d_A* on even-dimensional domains.
DifferentialForm covariant_codifferential(const DifferentialForm& eta,
                                          const Connection& A, const Metric& g);

/// Gauge transformation field: a real function lambda for abelian groups
/// (acting by a -> a + d lambda), a pointwise SU(2) element for su2
/// (acting by a -> g a g^-1 - (dg) g^-1).
struct GroupField {
  AlgebraKind algebra = AlgebraKind::Abelian;
  DomainPtr domain;
  // abelian: ch[0] = lambda. su2: ch[0] = I channel, ch[1..3] = T channels.
  std::array<std::vector<double>, 4> ch;

  static GroupField abelian(DomainPtr dom, std::vector<double> lambda);
  static GroupField identity(DomainPtr dom, AlgebraKind alg);
  /// exp of a band-limited random su2 field; unit at every sample.
  static GroupField random_su2(DomainPtr dom, unsigned seed, double amplitude,
                               int max_freq = 1);

  Quat at(std::size_t p) const {
    return {ch[0][p], {ch[1][p], ch[2][p], ch[3][p]}};
  }
};

Connection gauge_apply(const Connection& A, const GroupField& g);

/// Pointwise conjugation g X g^-1 of an su2-valued form.
DifferentialForm conjugate_form(const DifferentialForm& eta, const GroupField& g);

struct FlatnessReport {
  double curvature_residual = 0.0;  // sup |F - Phi*sigma|
  double dphi_residual = 0.0;       // sup |d_A Phi|
  double tolerance = 0.0;
  bool curvature_ok = false;
  bool dphi_ok = false;
  bool flat() const { return curvature_ok && dphi_ok; }
};

FlatnessReport check_symplectically_flat(const Connection& A,
                                         const DifferentialForm& phi, double tol);
FlatnessReport check_zeta_flat(const Connection& A, const DifferentialForm& phi,
                               const DifferentialForm& zeta, double tol);

/// Axis-aligned rectangle within one periodic cell. The corner sits on a
/// grid node and both side lengths are multiples of the grid spacing, so all
/// four edges run along grid lines.
struct RectangleLoop {
  int axis_i = 0, axis_j = 1;
  std::array<std::size_t, 4> corner = {0, 0, 0, 0};  // grid indices
  double len_i = 0.0, len_j = 0.0;
};

/// Holonomy of an abelian connection: exp(i(loop integral of a + background
/// flux through the enclosed disk)). Spectrally accurate quadrature.
std::complex<double> loop_holonomy(const Connection& A, const RectangleLoop& loop);

// ---- preset connections -------------------------------------------------

/// Abelian Yang-Mills connection on T^4 whose curvature has a nonconstant
/// omega-component: a = (1/4pi) sin(2x2) sin(x3) dx1 over background flux
/// (1/2pi) dx1^dx3.
Connection t4_yang_mills_example(DomainPtr dom);
DifferentialForm t4_example_curvature_closed_form(DomainPtr dom);
DifferentialForm t4_example_phi_closed_form(DomainPtr dom);

/// Self-dual su(2) instanton on an R^4 point cloud, unit scale, centered at
/// the origin. All derivative data ships as closed-form tables.
Connection bpst(DomainPtr cloud);
DifferentialForm bpst_curvature_closed_form(DomainPtr cloud);
DifferentialForm bpst_phi_closed_form(DomainPtr cloud);
DomainPtr bpst_sample_cloud(std::size_t npts, unsigned seed, double box_half_width);

Connection flat_wilson(DomainPtr dom, const std::array<double, 4>& c);
Connection constant_flux(DomainPtr dom, double c);
Connection random_su2_connection(DomainPtr dom, unsigned seed, double amplitude,
                                 int max_freq = 2);
Connection random_abelian_connection(DomainPtr dom, unsigned seed, double amplitude,
                                     int max_freq = 2);

double thooft_symbol(int a, int mu, int nu);  // 0-indexed axes

}  // namespace sflat
