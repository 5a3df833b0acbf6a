#include "sflat/gauge.hpp"

#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>

#include "sflat/spectral.hpp"
#include "sflat/symplectic.hpp"

namespace sflat {

Connection make_connection(DifferentialForm a, std::optional<DifferentialForm> flux) {
  if (a.degree != 1) throw std::invalid_argument("connection 1-form expected");
  Connection A;
  A.algebra = a.algebra;
  if (flux) {
    if (A.algebra == AlgebraKind::Su2)
      throw std::invalid_argument("su2 connections live on trivial bundles (no background flux)");
    if (flux->degree != 2 || !flux->domain->same_as(*a.domain))
      throw std::invalid_argument("background flux must be a 2-form on the same domain");
    if (flux->domain->is_torus() && flux->degree < flux->domain->dim) {
      const double closedness = exterior_derivative(*flux).sup_norm();
      if (closedness > 1e-8 * (1.0 + flux->sup_norm()))
        throw std::invalid_argument("background flux is not closed");
    }
    A.flux = std::move(flux);
  }
  A.a = std::move(a);
  return A;
}

DifferentialForm curvature(const Connection& A) {
  if (A.algebra == AlgebraKind::Abelian) {
    DifferentialForm F = exterior_derivative(A.a);
    if (A.flux) F += *A.flux;
    return F;
  }
  return exterior_derivative(A.a) + wedge(A.a, A.a, WedgePairing::MatrixProduct);
}

DifferentialForm covariant_d(const DifferentialForm& eta, const Connection& A) {
  if (eta.algebra != A.algebra)
    throw std::invalid_argument("covariant_d: algebra mismatch");
  if (!eta.domain->same_as(*A.a.domain))
    throw std::invalid_argument("covariant_d: domain mismatch");
  DifferentialForm d = exterior_derivative(eta);
  if (A.algebra == AlgebraKind::Su2)
    d += wedge(A.a, eta, WedgePairing::Bracket);
  return d;
}

DifferentialForm covariant_codifferential(const DifferentialForm& eta,
                                          const Connection& A, const Metric& g) {
  if (eta.degree < 1)
    throw std::invalid_argument("covariant codifferential needs degree >= 1");
  if (eta.domain->dim % 2 != 0)
    throw std::invalid_argument("covariant codifferential assumes even dimension");
  DifferentialForm r = hodge_star(covariant_d(hodge_star(eta, g), A), g);
  r *= -1.0;
  return r;
}

GroupField GroupField::abelian(DomainPtr dom, std::vector<double> lambda) {
  if (lambda.size() != dom->npoints)
    throw std::invalid_argument("gauge field size mismatch");
  GroupField g;
  g.algebra = AlgebraKind::Abelian;
  g.domain = std::move(dom);
  g.ch[0] = std::move(lambda);
  return g;
}

GroupField GroupField::identity(DomainPtr dom, AlgebraKind alg) {
  GroupField g;
  g.algebra = alg;
  g.domain = dom;
  if (alg == AlgebraKind::Abelian) {
    g.ch[0].assign(dom->npoints, 0.0);
  } else {
    g.ch[0].assign(dom->npoints, 1.0);
    for (int i = 1; i < 4; ++i) g.ch[i].assign(dom->npoints, 0.0);
  }
  return g;
}

GroupField GroupField::random_su2(DomainPtr dom, unsigned seed, double amplitude,
                                  int max_freq) {
  DifferentialForm x = random_form(dom, AlgebraKind::Su2, 0, seed, amplitude, max_freq, 3);
  GroupField g;
  g.algebra = AlgebraKind::Su2;
  g.domain = dom;
  for (int i = 0; i < 4; ++i) g.ch[i].assign(dom->npoints, 0.0);
  for (std::size_t p = 0; p < dom->npoints; ++p) {
    const Quat q = su2_exp(x.su2_at(0, p));
    g.ch[0][p] = q.s;
    for (int i = 0; i < 3; ++i) g.ch[i + 1][p] = q.v[i];
  }
  return g;
}

namespace {

void require_unitary(const GroupField& g) {
  for (std::size_t p = 0; p < g.domain->npoints; ++p)
    if (std::abs(g.at(p).norm2() - 1.0) > 1e-10)
      throw std::invalid_argument("gauge field is not unitary at a sample");
}

}  // namespace

DifferentialForm conjugate_form(const DifferentialForm& eta, const GroupField& g) {
  if (eta.algebra != AlgebraKind::Su2 || g.algebra != AlgebraKind::Su2)
    throw std::invalid_argument("conjugate_form expects su2 data");
  DifferentialForm out = eta;
  for (int c = 0; c < eta.ncomps(); ++c)
    for (std::size_t p = 0; p < eta.npoints(); ++p) {
      const Quat q = g.at(p);
      const Quat x{0.0, eta.su2_at(c, p)};
      out.set_su2(c, p, (q * x * q.conj()).v);
    }
  out.analytic_key.reset();
  return out;
}

Connection gauge_apply(const Connection& A, const GroupField& g) {
  if (!g.domain->same_as(*A.a.domain))
    throw std::invalid_argument("gauge_apply: domain mismatch");
  if (g.algebra != A.algebra) throw std::invalid_argument("gauge_apply: algebra mismatch");

  if (A.algebra == AlgebraKind::Abelian) {
    DifferentialForm lambda(A.a.domain, AlgebraKind::Abelian, 0);
    lambda.comps[0] = g.ch[0];
    Connection out = A;
    out.a += exterior_derivative(lambda);
    return out;
  }

  require_unitary(g);
  const Domain& dom = *A.a.domain;
  if (!dom.is_torus())
    throw std::invalid_argument("su2 gauge action needs a torus (dg is spectral)");

  // dg: spectral derivative of each quaternion channel along each axis
  std::array<std::vector<double>, 4> dch;
  DifferentialForm anew(A.a.domain, AlgebraKind::Su2, 1);
  for (int axis = 0; axis < dom.dim; ++axis) {
    for (int i = 0; i < 4; ++i) {
      dch[i].resize(dom.npoints);
      spectral_derivative(dom, axis, g.ch[i].data(), dch[i].data());
    }
    for (std::size_t p = 0; p < dom.npoints; ++p) {
      const Quat q = g.at(p);
      const Quat dq{dch[0][p], {dch[1][p], dch[2][p], dch[3][p]}};
      const Quat ax{0.0, A.a.su2_at(axis, p)};
      const Quat res = q * ax * q.conj() + (-1.0) * (dq * q.conj());
      anew.set_su2(axis, p, res.v);
    }
  }
  Connection out;
  out.algebra = AlgebraKind::Su2;
  out.a = std::move(anew);
  return out;
}

namespace {

FlatnessReport flatness_against(const Connection& A, const DifferentialForm& phi,
                                const DifferentialForm& sigma, double tol) {
  if (phi.degree != 0) throw std::invalid_argument("phi must be a 0-form");
  FlatnessReport r;
  r.tolerance = tol;
  const DifferentialForm F = curvature(A);
  r.curvature_residual = (F - wedge(phi, sigma, WedgePairing::Plain)).sup_norm();
  r.dphi_residual = covariant_d(phi, A).sup_norm();
  r.curvature_ok = r.curvature_residual <= tol;
  r.dphi_ok = r.dphi_residual <= tol;
  return r;
}

}  // namespace

FlatnessReport check_symplectically_flat(const Connection& A,
                                         const DifferentialForm& phi, double tol) {
  const SymplecticForm w = SymplecticForm::standard(A.a.domain);
  return flatness_against(A, phi, w.form, tol);
}

FlatnessReport check_zeta_flat(const Connection& A, const DifferentialForm& phi,
                               const DifferentialForm& zeta, double tol) {
  return flatness_against(A, phi, zeta, tol);
}

std::complex<double> loop_holonomy(const Connection& A, const RectangleLoop& loop) {
  if (A.algebra != AlgebraKind::Abelian)
    throw std::invalid_argument("path-ordered su2 holonomy is out of scope");
  const Domain& dom = *A.a.domain;
  if (!dom.is_torus()) throw std::invalid_argument("holonomy needs a torus");
  const int ai = loop.axis_i, aj = loop.axis_j;
  if (ai == aj || ai < 0 || aj < 0 || ai >= dom.dim || aj >= dom.dim)
    throw std::invalid_argument("bad rectangle axes");
  for (double len : {loop.len_i, loop.len_j})
    if (len < 0) throw std::invalid_argument("negative rectangle side");
  if (loop.len_i > dom.periods[ai] + 1e-12 || loop.len_j > dom.periods[aj] + 1e-12)
    throw std::invalid_argument("rectangle exceeds one periodic cell");
  const double hi = dom.spacing(ai), hj = dom.spacing(aj);
  const double mi = loop.len_i / hi, mj = loop.len_j / hj;
  if (std::abs(mi - std::round(mi)) > 1e-9 || std::abs(mj - std::round(mj)) > 1e-9)
    throw std::invalid_argument("rectangle sides must be multiples of the grid spacing");
  const std::size_t ni = static_cast<std::size_t>(std::llround(mi));
  const std::size_t nj = static_cast<std::size_t>(std::llround(mj));

  // gather a 1-d line of samples of comp along `axis`, starting at base point
  auto gather_line = [&](const std::vector<double>& field,
                         std::array<std::size_t, 4> idx, int axis) {
    const int n = dom.resolution[axis];
    std::vector<double> line(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      idx[axis] = static_cast<std::size_t>(t);
      std::size_t flat = 0;
      for (int a = 0; a < dom.dim; ++a)
        flat = flat * dom.resolution[a] + (idx[a] % dom.resolution[a]);
      line[static_cast<std::size_t>(t)] = field[flat];
    }
    return line;
  };

  auto line_integral = [&](int comp_axis, std::array<std::size_t, 4> start,
                           int along_axis, double len) {
    const IndexTable& t1 = IndexTable::get(dom.dim, 1);
    const int comp = t1.index_of[1u << comp_axis];
    const auto line = gather_line(A.a.comps[comp], start, along_axis);
    return segment_integral(line, dom.periods[along_axis], start[along_axis], len);
  };

  std::array<std::size_t, 4> c = loop.corner;
  double circulation = 0.0;
  // edge 1: +axis_i at x_j
  circulation += line_integral(ai, c, ai, loop.len_i);
  // edge 2: +axis_j at x_i + s_i
  {
    auto c2 = c;
    c2[ai] += ni;
    circulation += line_integral(aj, c2, aj, loop.len_j);
  }
  // edge 3: -axis_i at x_j + s_j
  {
    auto c3 = c;
    c3[aj] += nj;
    circulation -= line_integral(ai, c3, ai, loop.len_i);
  }
  // edge 4: -axis_j at x_i
  circulation -= line_integral(aj, c, aj, loop.len_j);

  // background flux through the enclosed disk
  double flux = 0.0;
  if (A.flux) {
    const IndexTable& t2 = IndexTable::get(dom.dim, 2);
    const int lo = std::min(ai, aj), hi_ax = std::max(ai, aj);
    const int comp = t2.index_of[(1u << lo) | (1u << hi_ax)];
    const double orient = (ai == lo) ? 1.0 : -1.0;
    // integrate along axis_i for each on-grid x_j, then along axis_j
    const int nlines = dom.resolution[aj];
    std::vector<double> partial(static_cast<std::size_t>(nlines));
    for (int t = 0; t < nlines; ++t) {
      auto idx = c;
      idx[aj] = static_cast<std::size_t>(t);
      const auto line = gather_line(A.flux->comps[comp], idx, ai);
      partial[static_cast<std::size_t>(t)] =
          segment_integral(line, dom.periods[ai], c[ai], loop.len_i);
    }
    flux = orient * segment_integral(partial, dom.periods[aj], c[aj], loop.len_j);
  }

  const std::complex<double> i_unit(0.0, 1.0);
  return std::exp(i_unit * (circulation + flux));
}

// ---- presets --------------------------------------------------------------

Connection t4_yang_mills_example(DomainPtr dom) {
  if (dom->dim != 4 || !dom->is_torus())
    throw std::invalid_argument("t4 example preset needs a 4-torus");
  DifferentialForm a(dom, AlgebraKind::Abelian, 1);
  fill_channel(a, 0, 0, [](const std::array<double, 4>& x) {
    return std::sin(2.0 * x[1]) * std::sin(x[2]) / (4.0 * M_PI);
  });
  DifferentialForm beta(dom, AlgebraKind::Abelian, 2);
  const int c13 = IndexTable::get(4, 2).index_of[(1u << 0) | (1u << 2)];
  for (std::size_t p = 0; p < dom->npoints; ++p)
    beta.at(c13, p) = 1.0 / (2.0 * M_PI);
  return make_connection(std::move(a), std::move(beta));
}

DifferentialForm t4_example_curvature_closed_form(DomainPtr dom) {
  DifferentialForm F(dom, AlgebraKind::Abelian, 2);
  const IndexTable& t2 = IndexTable::get(4, 2);
  const int c12 = t2.index_of[(1u << 0) | (1u << 1)];
  const int c13 = t2.index_of[(1u << 0) | (1u << 2)];
  fill_channel(F, c12, 0, [](const std::array<double, 4>& x) {
    return -std::cos(2.0 * x[1]) * std::sin(x[2]) / (2.0 * M_PI);
  });
  fill_channel(F, c13, 0, [](const std::array<double, 4>& x) {
    return (1.0 - 0.5 * std::sin(2.0 * x[1]) * std::cos(x[2])) / (2.0 * M_PI);
  });
  return F;
}

DifferentialForm t4_example_phi_closed_form(DomainPtr dom) {
  DifferentialForm phi(dom, AlgebraKind::Abelian, 0);
  fill_channel(phi, 0, 0, [](const std::array<double, 4>& x) {
    return -std::cos(2.0 * x[1]) * std::sin(x[2]) / (4.0 * M_PI);
  });
  return phi;
}

double thooft_symbol(int a, int mu, int nu) {
  // 0-indexed axes; a in {0,1,2} labels T_{a+1}
  auto eps = [](int i, int j, int k) -> double {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i) * (k - j) * (k - i) > 0) ? 1.0 : -1.0;
  };
  if (mu < 3 && nu < 3) return eps(a, mu, nu);
  if (mu == 3 && nu == 3) return 0.0;
  if (mu == 3) return -(a == nu ? 1.0 : 0.0);
  return (a == mu ? 1.0 : 0.0);  // nu == 3
}

namespace {

inline double bpst_rho(const std::array<double, 4>& x) {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  return 1.0 / (r2 + 1.0);
}

DifferentialForm bpst_form_A(DomainPtr cloud) {
  DifferentialForm a(cloud, AlgebraKind::Su2, 1);
  for (std::size_t p = 0; p < cloud->npoints; ++p) {
    const auto x = cloud->coords(p);
    const double rho = bpst_rho(x);
    for (int mu = 0; mu < 4; ++mu) {
      Su2 v = {0, 0, 0};
      for (int t = 0; t < 3; ++t)
        for (int nu = 0; nu < 4; ++nu) v[t] += 2.0 * thooft_symbol(t, mu, nu) * x[nu] * rho;
      a.set_su2(mu, p, v);
    }
  }
  a.analytic_key = "bpst.A";
  return a;
}

DifferentialForm bpst_form_dA(DomainPtr cloud) {
  DifferentialForm d(cloud, AlgebraKind::Su2, 2);
  const IndexTable& t2 = IndexTable::get(4, 2);
  for (std::size_t p = 0; p < cloud->npoints; ++p) {
    const auto x = cloud->coords(p);
    const double rho = bpst_rho(x);
    for (int c = 0; c < 6; ++c) {
      const std::uint8_t mask = t2.masks[c];
      int lam = -1, mu = -1;
      for (int ax = 0; ax < 4; ++ax)
        if (mask & (1u << ax)) (lam < 0 ? lam : mu) = ax;
      Su2 v = {0, 0, 0};
      for (int t = 0; t < 3; ++t) {
        double xl = 0, xm = 0;
        for (int nu = 0; nu < 4; ++nu) {
          xl += thooft_symbol(t, lam, nu) * x[nu];
          xm += thooft_symbol(t, mu, nu) * x[nu];
        }
        v[t] = -4.0 * rho * thooft_symbol(t, lam, mu) +
               4.0 * rho * rho * (xl * x[mu] - xm * x[lam]);
      }
      d.set_su2(c, p, v);
    }
  }
  return d;
}

DifferentialForm bpst_form_dPhi(DomainPtr cloud) {
  DifferentialForm d(cloud, AlgebraKind::Su2, 1);
  for (std::size_t p = 0; p < cloud->npoints; ++p) {
    const auto x = cloud->coords(p);
    const double rho = bpst_rho(x);
    for (int mu = 0; mu < 4; ++mu)
      d.set_su2(mu, p, {0.0, 0.0, 16.0 * rho * rho * rho * x[mu]});
  }
  return d;
}

std::once_flag g_bpst_registered;

void register_bpst_tables() {
  std::call_once(g_bpst_registered, [] {
    register_analytic_derivative("bpst.A", [](const DifferentialForm& f) {
      return bpst_form_dA(f.domain);
    });
    register_analytic_derivative("bpst.Phi", [](const DifferentialForm& f) {
      return bpst_form_dPhi(f.domain);
    });
  });
}

}  // namespace

Connection bpst(DomainPtr cloud) {
  if (cloud->is_torus()) throw std::invalid_argument("bpst preset lives on a point cloud");
  register_bpst_tables();
  Connection A;
  A.algebra = AlgebraKind::Su2;
  A.a = bpst_form_A(std::move(cloud));
  return A;
}

DifferentialForm bpst_curvature_closed_form(DomainPtr cloud) {
  DifferentialForm F(cloud, AlgebraKind::Su2, 2);
  const IndexTable& t2 = IndexTable::get(4, 2);
  for (std::size_t p = 0; p < cloud->npoints; ++p) {
    const auto x = cloud->coords(p);
    const double w = -4.0 * bpst_rho(x) * bpst_rho(x);
    for (int c = 0; c < 6; ++c) {
      const std::uint8_t mask = t2.masks[c];
      int lam = -1, mu = -1;
      for (int ax = 0; ax < 4; ++ax)
        if (mask & (1u << ax)) (lam < 0 ? lam : mu) = ax;
      Su2 v = {0, 0, 0};
      for (int t = 0; t < 3; ++t) v[t] = w * thooft_symbol(t, lam, mu);
      F.set_su2(c, p, v);
    }
  }
  return F;
}

DifferentialForm bpst_phi_closed_form(DomainPtr cloud) {
  register_bpst_tables();
  DifferentialForm phi(cloud, AlgebraKind::Su2, 0);
  for (std::size_t p = 0; p < cloud->npoints; ++p) {
    const auto x = cloud->coords(p);
    const double rho = bpst_rho(x);
    phi.set_su2(0, p, {0.0, 0.0, -4.0 * rho * rho});
  }
  phi.analytic_key = "bpst.Phi";
  return phi;
}

DomainPtr bpst_sample_cloud(std::size_t npts, unsigned seed, double box_half_width) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-box_half_width, box_half_width);
  std::vector<double> pts(npts * 4);
  for (double& v : pts) v = u(rng);
  return Domain::point_cloud(std::move(pts));
}

Connection flat_wilson(DomainPtr dom, const std::array<double, 4>& c) {
  DifferentialForm a(dom, AlgebraKind::Abelian, 1);
  for (int ax = 0; ax < dom->dim; ++ax)
    for (std::size_t p = 0; p < dom->npoints; ++p) a.at(ax, p) = c[ax];
  return make_connection(std::move(a));
}

Connection constant_flux(DomainPtr dom, double c) {
  DifferentialForm a(dom, AlgebraKind::Abelian, 1);
  SymplecticForm w = SymplecticForm::standard(dom);
  DifferentialForm beta = w.form;
  beta *= c;
  return make_connection(std::move(a), std::move(beta));
}

Connection random_su2_connection(DomainPtr dom, unsigned seed, double amplitude,
                                 int max_freq) {
  Connection A;
  A.algebra = AlgebraKind::Su2;
  A.a = random_form(dom, AlgebraKind::Su2, 1, seed, amplitude, max_freq, 4);
  return A;
}

Connection random_abelian_connection(DomainPtr dom, unsigned seed, double amplitude,
                                     int max_freq) {
  return make_connection(random_form(dom, AlgebraKind::Abelian, 1, seed, amplitude,
                                     max_freq, 4));
}

}  // namespace sflat
