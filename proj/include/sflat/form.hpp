#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sflat/algebra.hpp"
#include "sflat/domain.hpp"
#include "sflat/multiindex.hpp"

namespace sflat {

/// Lie-algebra-valued differential form sampled over a domain.
///
/// Storage: one scalar field per strictly increasing multi-index and algebra
/// channel; comps[c] holds channels(algebra) contiguous blocks of npoints
/// doubles. Instances are plain values, immutable by convention once built.
struct DifferentialForm {
  DomainPtr domain;
  AlgebraKind algebra = AlgebraKind::Abelian;
  int degree = 0;

  std::vector<std::vector<double>> comps;

  // Point-cloud fields carry the name of their closed-form evaluator so the
  // exterior derivative can be looked up instead of differenced.
  std::optional<std::string> analytic_key;

  DifferentialForm() = default;
  DifferentialForm(DomainPtr dom, AlgebraKind alg, int k);

  static DifferentialForm zero(DomainPtr dom, AlgebraKind alg, int k) {
    return DifferentialForm(std::move(dom), alg, k);
  }

  int ncomps() const { return static_cast<int>(comps.size()); }
  int nchannels() const { return channels(algebra); }
  std::size_t npoints() const { return domain->npoints; }

  double* channel(int comp, int ch) { return comps[comp].data() + ch * npoints(); }
  const double* channel(int comp, int ch) const {
    return comps[comp].data() + ch * npoints();
  }

  // Value accessors for scalar-per-component use (abelian) and triples (su2).
  double& at(int comp, std::size_t p) { return comps[comp][p]; }
  double at(int comp, std::size_t p) const { return comps[comp][p]; }
  Su2 su2_at(int comp, std::size_t p) const {
    const std::size_t n = npoints();
    return {comps[comp][p], comps[comp][n + p], comps[comp][2 * n + p]};
  }
  void set_su2(int comp, std::size_t p, const Su2& v) {
    const std::size_t n = npoints();
    comps[comp][p] = v[0];
    comps[comp][n + p] = v[1];
    comps[comp][2 * n + p] = v[2];
  }

  const IndexTable& table() const { return IndexTable::get(domain->dim, degree); }

  DifferentialForm& operator+=(const DifferentialForm& o);
  DifferentialForm& operator-=(const DifferentialForm& o);
  DifferentialForm& operator*=(double c);
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
    a += b;
    return a;
  }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) {
    a -= b;
    return a;
  }
  friend DifferentialForm operator*(double c, DifferentialForm a) {
    a *= c;
    return a;
  }

  // Largest pointwise algebra norm over all components and samples.
  double sup_norm() const;

  bool is_finite() const;
};

/// Band-limited random form: a handful of low-frequency modes per component
/// and channel, deterministic in the seed. Exactly representable on the grid,
/// so spectral identities hold to round-off.
DifferentialForm random_form(DomainPtr dom, AlgebraKind alg, int degree,
                             unsigned seed, double amplitude = 1.0,
                             int max_freq = 2, int modes = 5);

/// Fill one scalar channel from a callable of the sample coordinates.
template <typename F>
void fill_channel(DifferentialForm& form, int comp, int ch, F&& f) {
  double* out = form.channel(comp, ch);
  const auto& dom = *form.domain;
  for (std::size_t p = 0; p < dom.npoints; ++p) out[p] = f(dom.coords(p));
}

double max_abs_diff(const DifferentialForm& a, const DifferentialForm& b);

}  // namespace sflat
