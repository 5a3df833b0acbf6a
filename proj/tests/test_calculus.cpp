#include <doctest.h>

#include <cmath>

#include "sflat/calculus.hpp"
#include "sflat/gauge.hpp"
#include "sflat/symplectic.hpp"

using namespace sflat;

namespace {
const DomainPtr t4 = Domain::torus(4, 8);
const Metric flat4 = Metric::flat(t4);
}  // namespace

TEST_CASE("domain invariants") {
  CHECK_THROWS_AS(Domain::torus(4, 6), std::invalid_argument);   // not power of two
  CHECK_THROWS_AS(Domain::torus(4, 4), std::invalid_argument);   // below minimum
  CHECK_THROWS_AS(Domain::torus(3, 8), std::invalid_argument);   // bad dimension
  CHECK_THROWS_AS(Domain::point_cloud({}), std::invalid_argument);
  CHECK_THROWS_AS(Domain::point_cloud({1, 2, 3, 4, 1, 2, 3, 4}),
                  std::invalid_argument);  // duplicate points
  CHECK(t4->npoints == 4096);
  CHECK(t4->spacing(0) == doctest::Approx(2.0 * M_PI / 8));
}

TEST_CASE("su2 basis algebra") {
  // orthonormal basis, antisymmetric structure constants
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Su2 ea = {0, 0, 0}, eb = {0, 0, 0};
      ea[a] = 1;
      eb[b] = 1;
      CHECK(dot(ea, eb) == doctest::Approx(a == b ? 1.0 : 0.0));
      CHECK(-2.0 * trace2(ea, eb) == doctest::Approx(a == b ? 1.0 : 0.0));
    }
  Su2 t1 = {1, 0, 0}, t2 = {0, 1, 0};
  const Su2 br = bracket(t1, t2);
  CHECK(br[2] == doctest::Approx(1.0));  // [T1,T2] = T3
  // quaternion model reproduces T_a T_b = -(1/4) delta I + (1/2) eps T_c
  const Quat q = Quat{0, t1} * Quat{0, t2};
  CHECK(q.s == doctest::Approx(0.0));
  CHECK(q.v[2] == doctest::Approx(0.5));
  const Quat qaa = Quat{0, t1} * Quat{0, t1};
  CHECK(qaa.s == doctest::Approx(-0.25));
  CHECK(trace3(t1, t2, {0, 0, 1}) == doctest::Approx(-0.25));
}

TEST_CASE("exterior derivative on single modes") {
  // d of a constant 0-form vanishes
  DifferentialForm c(t4, AlgebraKind::Abelian, 0);
  for (std::size_t p = 0; p < t4->npoints; ++p) c.at(0, p) = 3.5;
  CHECK(exterior_derivative(c).sup_norm() == doctest::Approx(0.0).epsilon(1e-14));

  // d(sin x2 dx1) = -cos x2 dx1^dx2
  DifferentialForm a(t4, AlgebraKind::Abelian, 1);
  fill_channel(a, 0, 0, [](const std::array<double, 4>& x) { return std::sin(x[1]); });
  const DifferentialForm da = exterior_derivative(a);
  DifferentialForm expect(t4, AlgebraKind::Abelian, 2);
  const int c12 = IndexTable::get(4, 2).index_of[0b0011];
  fill_channel(expect, c12, 0,
               [](const std::array<double, 4>& x) { return -std::cos(x[1]); });
  CHECK(max_abs_diff(da, expect) < 1e-12);

  // top-degree input must signal degree overflow
  DifferentialForm top(t4, AlgebraKind::Abelian, 4);
  CHECK_THROWS_AS(exterior_derivative(top), std::domain_error);
}

TEST_CASE("d o d vanishes across degrees") {
  for (int degree = 0; degree <= 2; ++degree)
    for (unsigned seed = 0; seed < 50; ++seed) {
      const DifferentialForm eta =
          random_form(t4, seed % 2 ? AlgebraKind::Su2 : AlgebraKind::Abelian, degree,
                      seed, 1.0, 2, 4);
      const double norm = eta.sup_norm();
      const double dd = exterior_derivative(exterior_derivative(eta)).sup_norm();
      CHECK(dd <= 1e-10 * (norm + 1.0));
    }
}

TEST_CASE("wedge algebra") {
  const SymplecticForm w = SymplecticForm::standard(t4);
  // omega ^ omega = 2 vol
  const DifferentialForm w2 = wedge(w.form, w.form);
  CHECK(w2.ncomps() == 1);
  for (std::size_t p = 0; p < 16; ++p) CHECK(w2.at(0, p) == doctest::Approx(2.0));

  // [T1 dx1 ^ T2 dx2] = T3 dx1^dx2
  DifferentialForm u(t4, AlgebraKind::Su2, 1), v(t4, AlgebraKind::Su2, 1);
  for (std::size_t p = 0; p < t4->npoints; ++p) {
    u.set_su2(0, p, {1, 0, 0});
    v.set_su2(1, p, {0, 1, 0});
  }
  const DifferentialForm br = wedge(u, v, WedgePairing::Bracket);
  const int c12 = IndexTable::get(4, 2).index_of[0b0011];
  CHECK(br.su2_at(c12, 0)[2] == doctest::Approx(1.0));

  // graded commutativity (plain) and antisymmetry (bracket)
  const DifferentialForm a = random_form(t4, AlgebraKind::Abelian, 1, 3, 1.0, 2, 3);
  const DifferentialForm b = random_form(t4, AlgebraKind::Abelian, 2, 4, 1.0, 2, 3);
  DifferentialForm ba = wedge(b, a);
  ba *= 1.0;  // (-1)^{1*2} = +1
  CHECK(max_abs_diff(wedge(a, b), ba) < 1e-12);

  const DifferentialForm su = random_form(t4, AlgebraKind::Su2, 1, 5, 1.0, 2, 3);
  const DifferentialForm sv = random_form(t4, AlgebraKind::Su2, 1, 6, 1.0, 2, 3);
  DifferentialForm lhs = wedge(su, sv, WedgePairing::Bracket);
  const DifferentialForm rhs = wedge(sv, su, WedgePairing::Bracket);
  // [a^b] = -(-1)^{k l}[b^a] = +[b^a] for two 1-forms
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);

  CHECK_THROWS_AS(wedge(w2, w.form), std::domain_error);
  DifferentialForm other(Domain::torus(4, 16), AlgebraKind::Abelian, 1);
  CHECK_THROWS_AS(wedge(a, other), std::invalid_argument);
  CHECK_THROWS_AS(wedge(a, su, WedgePairing::Bracket), std::invalid_argument);
}

TEST_CASE("hodge star on the example metric") {
  const Metric gt4 = Metric::t4_example(t4);
  DifferentialForm dx12(t4, AlgebraKind::Abelian, 2), dx13(t4, AlgebraKind::Abelian, 2);
  const IndexTable& tab = IndexTable::get(4, 2);
  for (std::size_t p = 0; p < t4->npoints; ++p) {
    dx12.at(tab.index_of[0b0011], p) = 1.0;
    dx13.at(tab.index_of[0b0101], p) = 1.0;
  }
  // *(dx1^dx2) = dx3^dx4
  const DifferentialForm s12 = hodge_star(dx12, gt4);
  for (std::size_t p = 0; p < 32; ++p)
    CHECK(s12.at(tab.index_of[0b1100], p) == doctest::Approx(1.0));
  // *(dx1^dx3) = -f dx2^dx4
  const DifferentialForm s13 = hodge_star(dx13, gt4);
  for (std::size_t p = 0; p < 32; ++p) {
    const auto x = t4->coords(p);
    const double s = std::sin(2 * x[1]) * std::cos(x[2]);
    const double f = (3 + 2 * s) / (1 - 0.5 * s);
    CHECK(s13.at(tab.index_of[0b1010], p) == doctest::Approx(-f));
  }
  // ** = (+1) on 2-forms in dim 4, and the sign pattern across degrees
  for (int k = 0; k <= 4; ++k) {
    const DifferentialForm eta = random_form(t4, AlgebraKind::Abelian, k, 11 + k, 1.0, 2, 3);
    DifferentialForm ss = hodge_star(hodge_star(eta, flat4), flat4);
    const double sign = ((k * (4 - k)) % 2 == 0) ? 1.0 : -1.0;
    DifferentialForm expect = eta;
    expect *= sign;
    CHECK(max_abs_diff(ss, expect) < 1e-12);
  }
  CHECK(gt4.compatibility_defect() < 1e-14);
}

TEST_CASE("inner product and codifferential") {
  const SymplecticForm w = SymplecticForm::standard(t4);
  // <omega, omega> = 2 (2 pi)^4 on the flat torus
  CHECK(inner_product(w.form, w.form, flat4) ==
        doctest::Approx(2.0 * std::pow(2.0 * M_PI, 4)).epsilon(1e-12));

  // definiteness
  const DifferentialForm eta = random_form(t4, AlgebraKind::Su2, 2, 21, 1.0, 2, 3);
  CHECK(inner_product(eta, eta, flat4) > 0.0);
  const DifferentialForm zero(t4, AlgebraKind::Su2, 2);
  CHECK(inner_product(zero, zero, flat4) == doctest::Approx(0.0));

  CHECK_THROWS_AS(inner_product(eta, random_form(t4, AlgebraKind::Su2, 1, 2, 1.0, 2, 3), flat4),
                  std::invalid_argument);
  CHECK_THROWS_AS(codifferential(DifferentialForm(t4, AlgebraKind::Abelian, 0), flat4),
                  std::invalid_argument);

  // adjointness <d a, b> = <a, d* b> on both metrics
  for (const Metric& g : {Metric::flat(t4), Metric::t4_example(t4)}) {
    for (unsigned seed = 0; seed < 8; ++seed) {
      const int k = static_cast<int>(seed % 3);
      const DifferentialForm a = random_form(t4, AlgebraKind::Abelian, k, 31 + seed, 1.0, 2, 3);
      const DifferentialForm b =
          random_form(t4, AlgebraKind::Abelian, k + 1, 41 + seed, 1.0, 2, 3);
      const double lhs = inner_product(exterior_derivative(a), b, g);
      const double rhs = inner_product(a, codifferential(b, g), g);
      const double scale = l2_norm(a, g) * l2_norm(b, g);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * (scale + 1.0));
    }
  }

  // d*(Phi omega) = -(1/(n-1)!) * [(d Phi) ^ omega^{n-1}] in dim 4
  const DifferentialForm phi = random_form(t4, AlgebraKind::Abelian, 0, 55, 1.0, 2, 4);
  const DifferentialForm lhs = codifferential(wedge(phi, w.form), flat4);
  DifferentialForm rhs = hodge_star(wedge(exterior_derivative(phi), w.form), flat4);
  rhs *= -1.0;
  CHECK(max_abs_diff(lhs, rhs) < 1e-10);

  // constant-coefficient omega multiples are harmonic on the flat torus
  DifferentialForm cw = w.form;
  cw *= 0.75;
  CHECK(codifferential(cw, flat4).sup_norm() <= 1e-13);
}

TEST_CASE("worked curvature is closed at full resolution") {
  const DomainPtr t32 = Domain::torus(4, 32);
  const DifferentialForm F = t4_example_curvature_closed_form(t32);
  CHECK(exterior_derivative(F).sup_norm() <= 1e-8);
}

TEST_CASE("point clouds only differentiate through tables") {
  const DomainPtr cloud = bpst_sample_cloud(32, 7u, 1.5);
  DifferentialForm naked(cloud, AlgebraKind::Su2, 1);
  CHECK_THROWS_AS(exterior_derivative(naked), std::invalid_argument);
  CHECK_THROWS_AS(inner_product(naked, naked, Metric::flat(cloud)),
                  std::invalid_argument);

  const Connection A = bpst(cloud);
  CHECK_NOTHROW(exterior_derivative(A.a));  // analytic table
}
