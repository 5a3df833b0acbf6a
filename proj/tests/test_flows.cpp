#include <doctest.h>

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <vector>

#include "sflat/flows.hpp"
#include "sflat/functionals.hpp"

using namespace sflat;

namespace {
const DomainPtr t8 = Domain::torus(4, 8);
const Metric flat8 = Metric::flat(t8);

// Exact solution of the linearized abelian flow d xi/dt = -d* (d xi)_p on the
// flat 4-torus, mode by mode. Per Fourier mode k the operator is
//   M(k) = |k|^2 I - k k^T - (1/2) (Jk)(Jk)^T,  Jk = (-k2, k1, -k4, k3),
// with eigenpairs: k (rate 0), Jk (rate |k|^2/2), and the orthogonal
// complement (rate |k|^2). Independent of the flow implementation.
DifferentialForm heat_flow_exact(const DifferentialForm& xi0, double time) {
  const Domain& dom = *xi0.domain;
  const std::size_t np = dom.npoints;
  const int n = dom.resolution[0];

  std::vector<std::vector<std::complex<double>>> hat(4);
  fftw_complex* buf = fftw_alloc_complex(np);
  int dims[4] = {n, n, n, n};
  for (int ax = 0; ax < 4; ++ax) {
    const double* src = xi0.channel(ax, 0);
    for (std::size_t p = 0; p < np; ++p) {
      buf[p][0] = src[p];
      buf[p][1] = 0.0;
    }
    fftw_plan fwd = fftw_plan_dft(4, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    hat[ax].resize(np);
    for (std::size_t p = 0; p < np; ++p)
      hat[ax][p] = {buf[p][0], buf[p][1]};
  }

  auto freq = [&](int k) { return 2 * k < n ? (2 * k == n ? 0 : k) : k - n; };
  for (std::size_t p = 0; p < np; ++p) {
    int kk[4];
    std::size_t rem = p;
    for (int ax = 3; ax >= 0; --ax) {
      kk[ax] = freq(static_cast<int>(rem % n));
      rem /= n;
    }
    const double k2 = kk[0] * kk[0] + kk[1] * kk[1] + kk[2] * kk[2] + kk[3] * kk[3];
    std::complex<double> v[4];
    for (int ax = 0; ax < 4; ++ax) v[ax] = hat[ax][p];
    if (k2 == 0) continue;  // constants do not move
    const double kvec[4] = {double(kk[0]), double(kk[1]), double(kk[2]), double(kk[3])};
    const double jvec[4] = {-kvec[1], kvec[0], -kvec[3], kvec[2]};
    std::complex<double> pk = 0, pj = 0;
    for (int ax = 0; ax < 4; ++ax) {
      pk += kvec[ax] * v[ax];
      pj += jvec[ax] * v[ax];
    }
    pk /= k2;
    pj /= k2;
    const double decay_perp = std::exp(-k2 * time);
    const double decay_j = std::exp(-0.5 * k2 * time);
    for (int ax = 0; ax < 4; ++ax) {
      const std::complex<double> along_k = pk * kvec[ax];
      const std::complex<double> along_j = pj * jvec[ax];
      const std::complex<double> perp = v[ax] - along_k - along_j;
      v[ax] = along_k + decay_j * along_j + decay_perp * perp;
    }
    for (int ax = 0; ax < 4; ++ax) hat[ax][p] = v[ax];
  }

  DifferentialForm out(xi0.domain, AlgebraKind::Abelian, 1);
  for (int ax = 0; ax < 4; ++ax) {
    for (std::size_t p = 0; p < np; ++p) {
      buf[p][0] = hat[ax][p].real();
      buf[p][1] = hat[ax][p].imag();
    }
    fftw_plan bwd = fftw_plan_dft(4, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    double* dst = out.channel(ax, 0);
    for (std::size_t p = 0; p < np; ++p) dst[p] = buf[p][0] / double(np);
  }
  fftw_free(buf);
  return out;
}
}  // namespace

TEST_CASE("flat start terminates immediately") {
  const Connection A = flat_wilson(t8, {0.1, 0.2, 0.3, 0.4});
  FlowConfig cfg;
  cfg.kind = FlowKind::Pym;
  cfg.max_steps = 50;
  cfg.stop_tolerance = 1e-8;
  const FlowResult res = flow_run(A, std::nullopt, cfg, flat8);
  CHECK(res.steps == 0);
  CHECK(res.converged);
  CHECK(res.trace.rows.size() == 1);
  CHECK(max_abs_diff(res.A.a, A.a) == doctest::Approx(0.0));
}

TEST_CASE("pym flow matches the linear heat solution and dissipates") {
  Connection A0 = flat_wilson(t8, {0.0, 0.0, 0.0, 0.0});
  const DifferentialForm xi0 = random_form(t8, AlgebraKind::Abelian, 1, 17u, 1e-3, 2, 4);
  A0.a += xi0;

  FlowConfig cfg;
  cfg.kind = FlowKind::Pym;
  cfg.max_steps = 120;
  cfg.stop_tolerance = 1e-14;  // force the full step budget
  cfg.trace_stride = 10;
  const FlowResult res = flow_run(A0, std::nullopt, cfg, flat8);
  CHECK(res.steps == 120);

  // monotone trace
  for (std::size_t i = 1; i < res.trace.rows.size(); ++i)
    CHECK(res.trace.rows[i].value_pym <=
          res.trace.rows[i - 1].value_pym + 1e-10 * (1 + res.trace.rows[i - 1].value_pym));

  // the abelian flow is linear; compare against the exact mode solution
  const double time = res.trace.rows.back().time;
  const DifferentialForm expect = heat_flow_exact(xi0, time);
  CHECK(max_abs_diff(res.A.a, expect) <= 1e-9);
}

TEST_CASE("pym flow converges from a perturbed flat start") {
  Connection A0 = flat_wilson(t8, {0, 0, 0, 0});
  A0.a += random_form(t8, AlgebraKind::Abelian, 1, 23u, 1e-3, 2, 4);
  FlowConfig cfg;
  cfg.kind = FlowKind::Pym;
  cfg.max_steps = 500;
  cfg.stop_tolerance = 1e-8;
  cfg.trace_stride = 25;
  const FlowResult res = flow_run(A0, std::nullopt, cfg, flat8);
  CHECK(res.converged);
  CHECK(res.steps <= 500);
  CHECK(res.final_residual <= 1e-8);
  // the stationarity contract: the EL residual matches the stop criterion
  const double post = l2_norm(el_residual(FunctionalKind::Pym, res.A, nullptr, flat8)[0], flat8);
  CHECK(post <= 1e-8);
}

TEST_CASE("ym flow on the worked example sits still while pym moves") {
  const DomainPtr t16 = Domain::torus(4, 16);
  const Metric g = Metric::t4_example(t16);
  const Connection A = t4_yang_mills_example(t16);
  // Yang-Mills residual is already tiny
  CHECK(l2_norm(el_residual(FunctionalKind::Ym, A, nullptr, g)[0], g) <= 1e-6);
  // primitive flow starts with nonzero speed |d* F_p|
  CHECK(l2_norm(el_residual(FunctionalKind::Pym, A, nullptr, g)[0], g) > 1e-3);

  FlowConfig cfg;
  cfg.kind = FlowKind::Pym;
  cfg.max_steps = 3;
  cfg.stop_tolerance = 1e-12;
  const FlowResult res = flow_run(A, std::nullopt, cfg, g);
  CHECK(max_abs_diff(res.A.a, A.a) > 0.0);
  for (std::size_t i = 1; i < res.trace.rows.size(); ++i)
    CHECK(res.trace.rows[i].value_pym <= res.trace.rows[i - 1].value_pym + 1e-10);
}

TEST_CASE("cone flow descends both residuals") {
  Connection A0 = constant_flux(t8, 0.5);
  A0.a += random_form(t8, AlgebraKind::Abelian, 1, 29u, 1e-2, 2, 3);
  DifferentialForm B0(t8, AlgebraKind::Abelian, 0);
  for (std::size_t p = 0; p < t8->npoints; ++p) B0.at(0, p) = -0.45;

  FlowConfig cfg;
  cfg.kind = FlowKind::Cone;
  cfg.max_steps = 200;
  cfg.stop_tolerance = 1e-7;
  cfg.trace_stride = 20;
  const FlowResult res = flow_run(A0, B0, cfg, flat8);
  CHECK(res.final_residual < 1e-2);
  const double v0 = eval_cone_ym(A0, B0, flat8).value;
  const double v1 = eval_cone_ym(res.A, *res.B, flat8).value;
  CHECK(v1 < v0);

  CHECK_THROWS_AS(flow_run(A0, std::nullopt, cfg, flat8), std::invalid_argument);
}

TEST_CASE("gauge equivariance of the abelian flow") {
  Connection A0 = flat_wilson(t8, {0, 0, 0, 0});
  A0.a += random_form(t8, AlgebraKind::Abelian, 1, 31u, 1e-2, 2, 3);
  const DifferentialForm lam = random_form(t8, AlgebraKind::Abelian, 0, 32u, 0.5, 2, 3);
  const GroupField g = GroupField::abelian(t8, lam.comps[0]);

  FlowConfig cfg;
  cfg.kind = FlowKind::Pym;
  cfg.max_steps = 40;
  cfg.stop_tolerance = 1e-13;
  const FlowResult direct = flow_run(gauge_apply(A0, g), std::nullopt, cfg, flat8);
  const FlowResult flowed = flow_run(A0, std::nullopt, cfg, flat8);
  const Connection flowed_then_gauged = gauge_apply(flowed.A, g);
  CHECK(max_abs_diff(direct.A.a, flowed_then_gauged.a) <= 1e-6);
}

TEST_CASE("trace csv format") {
  FlowTrace t;
  t.rows.push_back({0.0, 1.0, 0.5, 0.5, 0.1});
  const std::string csv = t.to_csv();
  CHECK(csv.rfind("time,value_ym,value_pym,value_phi,residual\n", 0) == 0);
  CHECK(csv.find("0.000000000000e+00,1.000000000000e+00") != std::string::npos);
}

TEST_CASE("primitive Yang-Mills construction from the worked example") {
  const DomainPtr t16 = Domain::torus(4, 16);
  const Metric g = Metric::t4_example(t16);
  const Connection A = t4_yang_mills_example(t16);

  const PymConstruction out = make_pym_from_ym(A, g, 1e-7, 600);
  CHECK(out.residual_pym <= 1e-6);
  CHECK(out.residual_ym >= 1e-3);  // the shifted connection is no longer Yang-Mills
  CHECK(out.xi.sup_norm() > 0.0);

  // idempotence: a second application changes nothing
  const PymConstruction again = make_pym_from_ym(out.a_prime, g, 1e-7, 600);
  CHECK(again.xi.sup_norm() <= 1e-6);

  // a connection that is already primitive Yang-Mills returns xi near zero
  const Connection C = constant_flux(t16, 0.5);
  const PymConstruction triv = make_pym_from_ym(C, Metric::flat(t16), 1e-9, 100);
  CHECK(triv.xi.sup_norm() <= 1e-6);
}
