#include "sflat/flows.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sflat/spectral.hpp"

namespace sflat {

std::string FlowTrace::to_csv() const {
  std::string out = "time,value_ym,value_pym,value_phi,residual\n";
  char buf[192];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12e,%.12e,%.12e,%.12e,%.12e\n", r.time,
                  r.value_ym, r.value_pym, r.value_phi, r.residual);
    out += buf;
  }
  return out;
}

namespace {

struct FlowState {
  DifferentialForm a;
  std::optional<DifferentialForm> B;

  FlowState scaled_add(const FlowState& d, double c) const {
    FlowState s = *this;
    DifferentialForm da = d.a;
    da *= c;
    s.a += da;
    if (B) {
      DifferentialForm db = *d.B;
      db *= c;
      *s.B += db;
    }
    return s;
  }
};

struct FlowProblem {
  const Connection& A0;
  const Metric& g;
  FlowKind kind;

  Connection connection_at(const FlowState& s) const {
    Connection A = A0;
    A.a = s.a;
    return A;
  }

  // minus the EL residual of the flowed functional
  FlowState rhs(const FlowState& s) const {
    const Connection A = connection_at(s);
    FlowState d;
    switch (kind) {
      case FlowKind::Ym:
        d.a = el_residual(FunctionalKind::Ym, A, nullptr, g)[0];
        break;
      case FlowKind::Pym:
        d.a = el_residual(FunctionalKind::Pym, A, nullptr, g)[0];
        break;
      case FlowKind::Cone: {
        auto rs = el_residual(FunctionalKind::Cone, A, &*s.B, g);
        d.a = std::move(rs[0]);
        d.B = std::move(rs[1]);
        break;
      }
    }
    d.a *= -1.0;
    if (d.B) *d.B *= -1.0;
    return d;
  }

  double value(const FlowState& s) const {
    const Connection A = connection_at(s);
    switch (kind) {
      case FlowKind::Ym:
        return eval_ym(A, g).value;
      case FlowKind::Pym:
        return eval_pym(A, g).value;
      case FlowKind::Cone:
        return eval_cone_ym(A, *s.B, g).value;
    }
    return 0.0;
  }

  double residual_norm(const FlowState& d) const {
    double r2 = inner_product(d.a, d.a, g);
    if (d.B) r2 += inner_product(*d.B, *d.B, g);
    return std::sqrt(std::max(0.0, r2));
  }
};

FlowTraceRow make_row(const FlowProblem& prob, const FlowState& s, double time,
                      double residual) {
  FlowTraceRow row;
  row.time = time;
  const Connection A = prob.connection_at(s);
  row.value_ym = eval_ym(A, prob.g).value;
  row.value_pym = A.a.domain->dim >= 4 ? eval_pym(A, prob.g).value : 0.0;
  row.value_phi = eval_phi_omega(A, prob.g).value;
  row.residual = residual;
  return row;
}

FlowState rk4_step(const FlowProblem& prob, const FlowState& s, double h) {
  const FlowState k1 = prob.rhs(s);
  const FlowState k2 = prob.rhs(s.scaled_add(k1, 0.5 * h));
  const FlowState k3 = prob.rhs(s.scaled_add(k2, 0.5 * h));
  const FlowState k4 = prob.rhs(s.scaled_add(k3, h));
  FlowState next = s.scaled_add(k1, h / 6.0);
  next = next.scaled_add(k2, h / 3.0);
  next = next.scaled_add(k3, h / 3.0);
  next = next.scaled_add(k4, h / 6.0);
  return next;
}

}  // namespace

FlowResult flow_run(const Connection& A0, const std::optional<DifferentialForm>& B0,
                    const FlowConfig& cfg, const Metric& g) {
  if (cfg.kind == FlowKind::Cone && !B0)
    throw std::invalid_argument("cone flow requires an initial B");
  if (cfg.max_steps < 0 || cfg.stop_tolerance <= 0)
    throw std::invalid_argument("bad flow configuration");
  const Domain& dom = *A0.a.domain;
  if (!dom.is_torus()) throw std::invalid_argument("flows run on torus domains");

  double h = cfg.step;
  if (h <= 0) {
    double hx = dom.spacing(0);
    for (int a = 1; a < dom.dim; ++a) hx = std::min(hx, dom.spacing(a));
    h = 0.1 * hx * hx;
  }

  FlowProblem prob{A0, g, cfg.kind};
  FlowState state{A0.a, cfg.kind == FlowKind::Cone ? B0 : std::nullopt};

  FlowResult out;
  out.trace.rows.clear();

  double value = prob.value(state);
  FlowState grad = prob.rhs(state);
  double residual = prob.residual_norm(grad);
  double time = 0.0;
  out.trace.rows.push_back(make_row(prob, state, time, residual));

  int step_index = 0;
  for (; step_index < cfg.max_steps && residual > cfg.stop_tolerance; ++step_index) {
    double htry = h;
    int halvings = 0;
    for (;;) {
      FlowState next = rk4_step(prob, state, htry);
      if (!next.a.is_finite() || (next.B && !next.B->is_finite()))
        throw std::runtime_error("flow diverged (NaN)");
      const double vnext = prob.value(next);
      if (vnext <= value + 1e-10 * std::max(1.0, std::abs(value))) {
        state = std::move(next);
        value = vnext;
        time += htry;
        break;
      }
      if (++halvings > 60)
        throw std::runtime_error("flow step underflow: halving did not restore descent");
      htry *= 0.5;
    }
    grad = prob.rhs(state);
    residual = prob.residual_norm(grad);
    if ((step_index + 1) % cfg.trace_stride == 0 || residual <= cfg.stop_tolerance)
      out.trace.rows.push_back(make_row(prob, state, time, residual));
  }

  if (out.trace.rows.back().time != time)
    out.trace.rows.push_back(make_row(prob, state, time, residual));

  out.A = prob.connection_at(state);
  out.B = state.B;
  out.steps = step_index;
  out.converged = residual <= cfg.stop_tolerance;
  out.final_residual = residual;
  return out;
}

namespace {

// pointwise quadrature weight of the g inner product on 1-forms
std::vector<double> one_form_weights(const Metric& g, int axis) {
  const std::size_t np = g.domain->npoints;
  std::vector<double> w(np);
  const double cv = g.domain->cell_volume();
  for (std::size_t p = 0; p < np; ++p)
    w[p] = g.inv_coeff(axis, p) * g.density(p) * cv;
  return w;
}

}  // namespace

PymConstruction make_pym_from_ym(const Connection& A, const Metric& g, double tol,
                                 int max_iter) {
  if (A.algebra != AlgebraKind::Abelian)
    throw std::invalid_argument("make_pym_from_ym handles abelian connections");
  const Domain& dom = *A.a.domain;
  if (!dom.is_torus() || dom.dim != 4)
    throw std::invalid_argument("make_pym_from_ym needs a 4-torus");

  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  const DifferentialForm Fp = lefschetz_decompose_2form(w, curvature(A)).primitive;

  auto op = [&](const DifferentialForm& xi) {
    return codifferential(split_plus(w, 1, exterior_derivative(xi)), g);
  };

  // Euclidean-symmetrized system W M xi = W b with b = -d* F_p; the metric
  // weight W makes the g-self-adjoint M symmetric for plain CG, and the flat
  // inverse Laplacian preconditions it.
  std::vector<std::vector<double>> W(4);
  for (int ax = 0; ax < 4; ++ax) W[ax] = one_form_weights(g, ax);

  auto weight = [&](const DifferentialForm& f) {
    DifferentialForm r = f;
    for (int ax = 0; ax < 4; ++ax) {
      double* v = r.channel(ax, 0);
      for (std::size_t p = 0; p < dom.npoints; ++p) v[p] *= W[ax][p];
    }
    return r;
  };
  auto unweight = [&](const DifferentialForm& f) {
    DifferentialForm r = f;
    for (int ax = 0; ax < 4; ++ax) {
      double* v = r.channel(ax, 0);
      for (std::size_t p = 0; p < dom.npoints; ++p) v[p] /= W[ax][p];
    }
    return r;
  };
  auto dot_euc = [&](const DifferentialForm& x, const DifferentialForm& y) {
    double s = 0.0;
    for (int ax = 0; ax < 4; ++ax) {
      const double* px = x.channel(ax, 0);
      const double* py = y.channel(ax, 0);
      for (std::size_t p = 0; p < dom.npoints; ++p) s += px[p] * py[p];
    }
    return s;
  };
  auto precond = [&](const DifferentialForm& f) {
    DifferentialForm r = f;
    for (int ax = 0; ax < 4; ++ax)
      apply_inverse_laplacian(dom, f.channel(ax, 0), r.channel(ax, 0), 0.5);
    return r;
  };

  DifferentialForm b = codifferential(Fp, g);
  b *= -1.0;

  DifferentialForm xi = DifferentialForm::zero(A.a.domain, AlgebraKind::Abelian, 1);
  DifferentialForm r = weight(b);  // W(b - M xi), xi = 0
  DifferentialForm z = precond(r);
  DifferentialForm p = z;
  double rz = dot_euc(r, z);

  PymConstruction out;
  out.residual_pym = l2_norm(b, g);
  int it = 0;
  for (; it < max_iter && out.residual_pym > tol; ++it) {
    const DifferentialForm Mp = weight(op(p));
    const double alpha = rz / dot_euc(p, Mp);
    DifferentialForm step = p;
    step *= alpha;
    xi += step;
    DifferentialForm rstep = Mp;
    rstep *= alpha;
    r -= rstep;
    out.residual_pym = l2_norm(unweight(r), g);
    z = precond(r);
    const double rz_new = dot_euc(r, z);
    DifferentialForm pnew = z;
    DifferentialForm pscaled = p;
    pscaled *= rz_new / rz;
    pnew += pscaled;
    p = std::move(pnew);
    rz = rz_new;
  }
  if (out.residual_pym > tol)
    throw std::runtime_error("make_pym_from_ym: conjugate gradients did not converge");

  out.iterations = it;
  out.xi = xi;
  out.a_prime = A;
  out.a_prime.a += xi;

  const DifferentialForm Fprime = curvature(out.a_prime);
  out.residual_ym = l2_norm(codifferential(Fprime, g), g);
  const DifferentialForm Fp_prime = lefschetz_decompose_2form(w, Fprime).primitive;
  out.residual_pym = l2_norm(codifferential(Fp_prime, g), g);
  return out;
}

}  // namespace sflat
