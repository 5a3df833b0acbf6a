#include "sflat/form.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace sflat {

const IndexTable& IndexTable::get(int dim, int degree) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, IndexTable> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  IndexTable t;
  t.dim = dim;
  t.degree = degree;
  // lexicographic order over increasing index sets == numeric order of masks
  // restricted to popcount == degree
  for (std::uint8_t m = 0; m < (1u << dim); ++m)
    if (std::popcount(static_cast<unsigned>(m)) == degree) {
      t.index_of[m] = static_cast<int>(t.masks.size());
      t.masks.push_back(m);
    }
  return cache.emplace(key, std::move(t)).first->second;
}

DifferentialForm::DifferentialForm(DomainPtr dom, AlgebraKind alg, int k)
    : domain(std::move(dom)), algebra(alg), degree(k) {
  if (k < 0 || k > domain->dim)
    throw std::invalid_argument("form degree out of range");
  const int nc = binom(domain->dim, k);
  comps.assign(nc, std::vector<double>(
                       static_cast<std::size_t>(nchannels()) * domain->npoints, 0.0));
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
  if (degree != o.degree || algebra != o.algebra || !domain->same_as(*o.domain))
    throw std::invalid_argument("form mismatch in +=");
  for (int c = 0; c < ncomps(); ++c)
    for (std::size_t i = 0; i < comps[c].size(); ++i) comps[c][i] += o.comps[c][i];
  analytic_key.reset();
  return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
  if (degree != o.degree || algebra != o.algebra || !domain->same_as(*o.domain))
    throw std::invalid_argument("form mismatch in -=");
  for (int c = 0; c < ncomps(); ++c)
    for (std::size_t i = 0; i < comps[c].size(); ++i) comps[c][i] -= o.comps[c][i];
  analytic_key.reset();
  return *this;
}

DifferentialForm& DifferentialForm::operator*=(double c) {
  for (auto& v : comps)
    for (double& x : v) x *= c;
  analytic_key.reset();
  return *this;
}

double DifferentialForm::sup_norm() const {
  const std::size_t np = npoints();
  double best = 0.0;
  for (int c = 0; c < ncomps(); ++c) {
    if (algebra == AlgebraKind::Abelian) {
      for (std::size_t p = 0; p < np; ++p) best = std::max(best, std::abs(comps[c][p]));
    } else {
      for (std::size_t p = 0; p < np; ++p) {
        const Su2 v = su2_at(c, p);
        best = std::max(best, std::sqrt(dot(v, v)));
      }
    }
  }
  return best;
}

bool DifferentialForm::is_finite() const {
  for (const auto& v : comps)
    for (double x : v)
      if (!std::isfinite(x)) return false;
  return true;
}

DifferentialForm random_form(DomainPtr dom, AlgebraKind alg, int degree,
                             unsigned seed, double amplitude, int max_freq,
                             int modes) {
  if (!dom->is_torus())
    throw std::invalid_argument("random_form needs a torus domain");
  DifferentialForm f(dom, alg, degree);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> freq(-max_freq, max_freq);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

  const int dim = dom->dim;
  for (int c = 0; c < f.ncomps(); ++c)
    for (int ch = 0; ch < f.nchannels(); ++ch) {
      double* out = f.channel(c, ch);
      for (int m = 0; m < modes; ++m) {
        int k[4] = {0, 0, 0, 0};
        for (int a = 0; a < dim; ++a) k[a] = freq(rng);
        const double amp = amplitude * unit(rng);
        const double ph = phase(rng);
        for (std::size_t p = 0; p < dom->npoints; ++p) {
          const auto x = dom->coords(p);
          double arg = ph;
          for (int a = 0; a < dim; ++a)
            arg += 2.0 * M_PI * k[a] * x[a] / dom->periods[a];
          out[p] += amp * std::cos(arg);
        }
      }
    }
  return f;
}

double max_abs_diff(const DifferentialForm& a, const DifferentialForm& b) {
  DifferentialForm d = a;
  d -= b;
  return d.sup_norm();
}

}  // namespace sflat
