#include <doctest.h>

#include <cmath>
#include <functional>

#include "sflat/functionals.hpp"

using namespace sflat;

namespace {
const DomainPtr t4 = Domain::torus(4, 8);
const Metric flat4 = Metric::flat(t4);

DifferentialForm constant_scalar(DomainPtr dom, AlgebraKind alg, double v) {
  DifferentialForm f(dom, alg, 0);
  for (std::size_t p = 0; p < dom->npoints; ++p) f.at(0, p) = v;
  return f;
}

// central difference of a functional along a connection direction
double fd_connection(const std::function<double(const Connection&)>& fn,
                     const Connection& A, const DifferentialForm& eta, double t) {
  Connection Ap = A, Am = A;
  DifferentialForm step = eta;
  step *= t;
  Ap.a += step;
  Am.a -= step;
  return (fn(Ap) - fn(Am)) / (2.0 * t);
}

double fd2_connection(const std::function<double(const Connection&)>& fn,
                      const Connection& A, const DifferentialForm& eta, double t) {
  Connection Ap = A, Am = A;
  DifferentialForm step = eta;
  step *= t;
  Ap.a += step;
  Am.a -= step;
  return (fn(Ap) + fn(Am) - 2.0 * fn(A)) / (t * t);
}
}  // namespace

TEST_CASE("values on flat connections vanish") {
  const Connection A = flat_wilson(t4, {0.2, 0.4, 0.1, 0.3});
  CHECK(eval_ym(A, flat4).value == doctest::Approx(0.0));
  CHECK(eval_pym(A, flat4).value == doctest::Approx(0.0));
  CHECK(eval_phi_omega(A, flat4).value == doctest::Approx(0.0));
  const DifferentialForm B0 = constant_scalar(t4, AlgebraKind::Abelian, 0.0);
  CHECK(eval_cone_ym(A, B0, flat4).value == doctest::Approx(0.0));
  for (auto kind : {FunctionalKind::Ym, FunctionalKind::Pym, FunctionalKind::PhiOmega})
    CHECK(el_residual(kind, A, nullptr, flat4)[0].sup_norm() <= 1e-12);
}

TEST_CASE("pythagoras across presets") {
  const DomainPtr t16 = Domain::torus(4, 16);
  struct Case {
    Connection A;
    Metric g;
  };
  std::vector<Case> cases;
  cases.push_back({t4_yang_mills_example(t16), Metric::t4_example(t16)});
  cases.push_back({constant_flux(t16, 0.6), Metric::flat(t16)});
  cases.push_back({flat_wilson(t16, {0.1, 0, 0.2, 0}), Metric::flat(t16)});
  cases.push_back({random_su2_connection(t16, 5u, 0.4, 2), Metric::flat(t16)});
  cases.push_back({random_abelian_connection(t16, 6u, 0.5, 2), Metric::flat(t16)});
  for (const auto& c : cases) {
    const double ym = eval_ym(c.A, c.g).value;
    const double pym = eval_pym(c.A, c.g).value;
    const double phi = eval_phi_omega(c.A, c.g).value;
    CHECK(std::abs(ym - pym - phi) <= 1e-8 * (1.0 + ym));
  }
}

TEST_CASE("worked example: Yang-Mills but not primitive Yang-Mills") {
  const DomainPtr t32 = Domain::torus(4, 32);
  const Metric g = Metric::t4_example(t32);
  const Connection A = t4_yang_mills_example(t32);
  const FunctionalValue ym = eval_ym(A, g);
  const FunctionalValue phi = eval_phi_omega(A, g);
  CHECK(ym.residual_norms[0].second <= 1e-6);   // d*F = 0
  CHECK(phi.residual_norms[0].second > 0.01);   // dPhi far from zero
  // by the two-out-of-three rule this cannot be primitive Yang-Mills
  const FunctionalValue pym = eval_pym(A, g);
  CHECK(pym.residual_norms[0].second > 1e-3);
}

TEST_CASE("gradient consistency by finite differences") {
  const Connection Asu = random_su2_connection(t4, 31u, 0.35, 2);
  const Connection Aab = random_abelian_connection(t4, 32u, 0.45, 2);

  auto run = [&](const Connection& A) {
    const struct {
      FunctionalKind kind;
      std::function<double(const Connection&)> fn;
    } funcs[] = {
        {FunctionalKind::Ym, [&](const Connection& X) { return eval_ym(X, flat4).value; }},
        {FunctionalKind::Pym, [&](const Connection& X) { return eval_pym(X, flat4).value; }},
        {FunctionalKind::PhiOmega,
         [&](const Connection& X) { return eval_phi_omega(X, flat4).value; }},
    };
    for (const auto& f : funcs) {
      const auto residual = el_residual(f.kind, A, nullptr, flat4);
      for (unsigned s = 0; s < 5; ++s) {
        const DifferentialForm eta = random_form(t4, A.algebra, 1, 900 + s, 1.0, 2, 3);
        const double analytic = 2.0 * inner_product(residual[0], eta, flat4);
        const double fd = fd_connection(f.fn, A, eta, 1e-4);
        const double scale = std::max({1.0, std::abs(analytic), std::abs(fd)});
        CHECK(std::abs(analytic - fd) <= 1e-5 * scale);
      }
    }
  };
  run(Asu);
  run(Aab);

  // cone functional: joint (A, B) gradient against the residual pair
  const DifferentialForm B = random_form(t4, AlgebraKind::Su2, 0, 33u, 0.4, 2, 3);
  const auto pair = el_residual(FunctionalKind::Cone, Asu, &B, flat4);
  for (unsigned s = 0; s < 5; ++s) {
    const DifferentialForm eta = random_form(t4, AlgebraKind::Su2, 1, 910 + s, 1.0, 2, 3);
    const DifferentialForm b = random_form(t4, AlgebraKind::Su2, 0, 920 + s, 1.0, 2, 3);
    const double analytic =
        2.0 * (inner_product(pair[0], eta, flat4) + inner_product(pair[1], b, flat4));
    const double t = 1e-4;
    Connection Ap = Asu, Am = Asu;
    DifferentialForm de = eta;
    de *= t;
    Ap.a += de;
    Am.a -= de;
    DifferentialForm Bp = B, Bm = B;
    DifferentialForm db = b;
    db *= t;
    Bp += db;
    Bm -= db;
    const double fd =
        (eval_cone_ym(Ap, Bp, flat4).value - eval_cone_ym(Am, Bm, flat4).value) /
        (2.0 * t);
    const double scale = std::max({1.0, std::abs(analytic), std::abs(fd)});
    CHECK(std::abs(analytic - fd) <= 1e-5 * scale);
  }
}

TEST_CASE("pym residual identity and phi gradient form") {
  const Connection A = random_su2_connection(t4, 41u, 0.3, 2);
  // contract check inside el_residual: <eta, d*F_p> = <d_plus eta, F_p>
  CHECK_NOTHROW(el_residual(FunctionalKind::Pym, A, nullptr, flat4, true));

  // ym residual = pym residual + phi residual (linearity of d_A*)
  const auto ym = el_residual(FunctionalKind::Ym, A, nullptr, flat4);
  const auto pym = el_residual(FunctionalKind::Pym, A, nullptr, flat4);
  const auto phi = el_residual(FunctionalKind::PhiOmega, A, nullptr, flat4);
  CHECK(max_abs_diff(ym[0], pym[0] + phi[0]) <= 1e-10 * (1 + ym[0].sup_norm()));
}

TEST_CASE("hessians match second differences") {
  // abelian at a critical preset: L_p eta = d* d_plus eta exactly
  const Connection C = constant_flux(t4, 0.5);
  auto pym_fn = [&](const Connection& X) { return eval_pym(X, flat4).value; };
  for (unsigned s = 0; s < 4; ++s) {
    const DifferentialForm eta = random_form(t4, AlgebraKind::Abelian, 1, 50 + s, 1.0, 2, 3);
    const DifferentialForm L = hessian_apply(FunctionalKind::Pym, C, eta, flat4);
    const double q = inner_product(L, eta, flat4);
    const double fd2 = fd2_connection(pym_fn, C, eta, 1e-3);
    CHECK(std::abs(2.0 * q - fd2) <= 1e-4 * std::max(1.0, std::abs(fd2)));
  }

  // flat su2 connection: critical for all three functionals
  Connection Z;
  Z.algebra = AlgebraKind::Su2;
  Z.a = DifferentialForm(t4, AlgebraKind::Su2, 1);
  const struct {
    FunctionalKind kind;
    std::function<double(const Connection&)> fn;
  } funcs[] = {
      {FunctionalKind::Ym, [&](const Connection& X) { return eval_ym(X, flat4).value; }},
      {FunctionalKind::Pym, [&](const Connection& X) { return eval_pym(X, flat4).value; }},
      {FunctionalKind::PhiOmega,
       [&](const Connection& X) { return eval_phi_omega(X, flat4).value; }},
  };
  for (const auto& f : funcs)
    for (unsigned s = 0; s < 3; ++s) {
      const DifferentialForm eta = random_form(t4, AlgebraKind::Su2, 1, 70 + s, 0.8, 2, 3);
      const double q = inner_product(hessian_apply(f.kind, Z, eta, flat4), eta, flat4);
      const double fd2 = fd2_connection(f.fn, Z, eta, 2e-3);
      CHECK(std::abs(2.0 * q - fd2) <= 1e-4 * std::max(1.0, std::abs(fd2)));
    }

  // symmetry of the quadratic form
  const DifferentialForm e1 = random_form(t4, AlgebraKind::Abelian, 1, 81u, 1.0, 2, 3);
  const DifferentialForm e2 = random_form(t4, AlgebraKind::Abelian, 1, 82u, 1.0, 2, 3);
  const double s12 =
      inner_product(hessian_apply(FunctionalKind::Pym, C, e1, flat4), e2, flat4);
  const double s21 =
      inner_product(hessian_apply(FunctionalKind::Pym, C, e2, flat4), e1, flat4);
  CHECK(std::abs(s12 - s21) <= 1e-8 * (1.0 + std::abs(s12)));

  CHECK_THROWS_AS(hessian_apply(FunctionalKind::Ym, C,
                                random_form(t4, AlgebraKind::Abelian, 2, 1u, 1.0, 1, 2),
                                flat4),
                  std::invalid_argument);
}

TEST_CASE("su2 hessian bracket terms at a non-critical point") {
  // the identity 2<L eta, eta> = second difference holds at any connection,
  // which exercises the *[*F, eta] terms off the critical locus
  const Connection A = random_su2_connection(t4, 91u, 0.3, 2);
  auto ym_fn = [&](const Connection& X) { return eval_ym(X, flat4).value; };
  const DifferentialForm eta = random_form(t4, AlgebraKind::Su2, 1, 92u, 0.8, 2, 3);
  const double q = inner_product(hessian_apply(FunctionalKind::Ym, A, eta, flat4), eta, flat4);
  const double fd2 = fd2_connection(ym_fn, A, eta, 1e-3);
  CHECK(std::abs(2.0 * q - fd2) <= 1e-4 * std::max(1.0, std::abs(fd2)));
}

TEST_CASE("functional values are gauge invariant") {
  const DomainPtr t16 = Domain::torus(4, 16);
  const Metric g16 = Metric::flat(t16);
  const Connection A = random_su2_connection(t16, 55u, 0.3, 1);
  const GroupField g = GroupField::random_su2(t16, 56u, 0.12, 1);
  const Connection Ag = gauge_apply(A, g);
  CHECK(std::abs(eval_ym(A, g16).value - eval_ym(Ag, g16).value) <= 1e-7);
  CHECK(std::abs(eval_pym(A, g16).value - eval_pym(Ag, g16).value) <= 1e-7);
  CHECK(std::abs(eval_phi_omega(A, g16).value - eval_phi_omega(Ag, g16).value) <= 1e-7);

  // abelian shifts are exact
  const Connection Ab = random_abelian_connection(t4, 57u, 0.4, 2);
  const DifferentialForm lam = random_form(t4, AlgebraKind::Abelian, 0, 58u, 1.0, 2, 3);
  const Connection Abg = gauge_apply(Ab, GroupField::abelian(t4, lam.comps[0]));
  CHECK(eval_ym(Ab, flat4).value == doctest::Approx(eval_ym(Abg, flat4).value));
}

TEST_CASE("cone functional zero set and dim-2 guard") {
  const Connection C = constant_flux(t4, 0.5);
  const DifferentialForm B = constant_scalar(t4, AlgebraKind::Abelian, -0.5);
  const FunctionalValue v = eval_cone_ym(C, B, flat4);
  CHECK(v.value == doctest::Approx(0.0));
  CHECK(v.critical);

  const DomainPtr t2 = Domain::torus(2, 8);
  const Connection A2 = constant_flux(t2, 0.5);
  CHECK_THROWS_AS(eval_pym(A2, Metric::flat(t2)), std::invalid_argument);
}

TEST_CASE("chern-simons functionals") {
  const DomainPtr t2 = Domain::torus(2, 16);
  const Metric g2 = Metric::flat(t2);

  // flat pair: P2 = 0
  const Connection F2 = flat_wilson(t2, {0.3, 0.1, 0, 0});
  const auto p20 = chern_simons_p2(F2, constant_scalar(t2, AlgebraKind::Abelian, 0.0), g2);
  CHECK(p20.value == doctest::Approx(0.0));

  // constant flux c on T^2 with B = -c: P2 = (1/8pi^2) c^2 Vol = c^2/2
  const double c = 0.5;
  const Connection A = constant_flux(t2, c);
  const auto p2 = chern_simons_p2(A, constant_scalar(t2, AlgebraKind::Abelian, -c), g2);
  CHECK(p2.value == doctest::Approx(c * c / 2.0));
  const SymplecticForm w2 = SymplecticForm::standard(t2);
  const DifferentialForm phi = lefschetz_decompose_2form(w2, curvature(A)).phi;
  CHECK(p2.value == doctest::Approx(cs_invariant_p2(phi)));
  CHECK(std::abs(p2.exact_term) <= 1e-8);

  // wrong dimension is rejected
  CHECK_THROWS_AS(chern_simons_p2(constant_flux(t4, 1.0),
                                  constant_scalar(t4, AlgebraKind::Abelian, 1.0), flat4),
                  std::invalid_argument);
  CHECK_THROWS_AS(chern_simons_p4(A, constant_scalar(t2, AlgebraKind::Abelian, 1.0), g2),
                  std::invalid_argument);

  // P4 invariant on the 4-torus
  const double c4 = 0.7;
  const Connection A4 = constant_flux(t4, c4);
  const SymplecticForm w4 = SymplecticForm::standard(t4);
  const DifferentialForm phi4 = lefschetz_decompose_2form(w4, curvature(A4)).phi;
  DifferentialForm B4 = phi4;
  B4 *= -1.0;
  const auto p4 = chern_simons_p4(A4, B4, flat4);
  CHECK(p4.value == doctest::Approx(cs_invariant_p4(phi4)));
  // explicit value: (1/48) c^3 * 2 (2 pi)^4
  CHECK(p4.value == doctest::Approx(c4 * c4 * c4 / 48.0 * 2.0 * std::pow(2 * M_PI, 4)));

  // su2 trace chains: tr of any odd power vanishes, so both sides of the
  // substitution identity are zero; the integrand still collapses
  const DifferentialForm sphi = constant_scalar(t4, AlgebraKind::Su2, 0.0);
  DifferentialForm sp = sphi;
  for (std::size_t p = 0; p < t4->npoints; ++p) sp.set_su2(0, p, {0.1, -0.2, 0.3});
  const DifferentialForm tr3 = trace_chain({&sp, &sp, &sp});
  CHECK(tr3.sup_norm() <= 1e-14);
  CHECK(cs_invariant_p4(sp) == doctest::Approx(0.0));
}

TEST_CASE("trace chain algebra") {
  // tr(BF) for su2 fields agrees with the pointwise -(1/2) dot contraction
  const DifferentialForm b = random_form(t4, AlgebraKind::Su2, 0, 1u, 1.0, 1, 2);
  const DifferentialForm f = random_form(t4, AlgebraKind::Su2, 2, 2u, 1.0, 1, 2);
  const DifferentialForm tr = trace_chain({&b, &f});
  for (std::size_t p = 0; p < 16; ++p) {
    const int comp = 3;
    const double expect = trace2(b.su2_at(0, p), f.su2_at(comp, p));
    CHECK(tr.at(comp, p) == doctest::Approx(expect));
  }

  // cyclicity of the trace for 0-forms
  const DifferentialForm x = random_form(t4, AlgebraKind::Su2, 0, 3u, 1.0, 1, 2);
  const DifferentialForm y = random_form(t4, AlgebraKind::Su2, 0, 4u, 1.0, 1, 2);
  const DifferentialForm z = random_form(t4, AlgebraKind::Su2, 0, 5u, 1.0, 1, 2);
  CHECK(max_abs_diff(trace_chain({&x, &y, &z}), trace_chain({&z, &x, &y})) < 1e-13);
}

TEST_CASE("zeta functionals") {
  // zeta = omega reduces to the symplectic decomposition
  const Connection A = t4_yang_mills_example(t4);
  const Metric g = Metric::t4_example(t4);
  const SymplecticForm w = SymplecticForm::standard(t4);
  const ClosedTwoForm zw = ClosedTwoForm::certify(w.form);
  const ZetaFunctionals zf = eval_zeta_functionals(A, nullptr, zw, g);
  CHECK(zf.ym == doctest::Approx(eval_ym(A, g).value));
  CHECK(zf.perp == doctest::Approx(eval_pym(A, g).value));
  CHECK(zf.phi_part == doctest::Approx(eval_phi_omega(A, g).value));

  // general zeta: Pythagoras
  DifferentialForm z(t4, AlgebraKind::Abelian, 2);
  const IndexTable& tab = IndexTable::get(4, 2);
  for (std::size_t p = 0; p < t4->npoints; ++p) {
    z.at(tab.index_of[0b0011], p) = 1.0;
    z.at(tab.index_of[0b1100], p) = 2.0;
  }
  const ClosedTwoForm zeta = ClosedTwoForm::certify(z);
  const Connection R = random_abelian_connection(t4, 8u, 0.5, 2);
  const ZetaFunctionals zr = eval_zeta_functionals(R, nullptr, zeta, flat4);
  CHECK(std::abs(zr.ym - zr.perp - zr.phi_part) <= 1e-8 * (1.0 + zr.ym));

  // F = zeta: perpendicular part vanishes and the cone value is zero
  Connection Z = make_connection(DifferentialForm(t4, AlgebraKind::Abelian, 1), z);
  const ZetaFunctionals zz = eval_zeta_functionals(Z, nullptr, zeta, flat4);
  CHECK(zz.perp == doctest::Approx(0.0));
  CHECK(zz.cone == doctest::Approx(0.0));
}
