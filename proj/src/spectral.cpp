#include "sflat/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sflat {

namespace {

// One cached pair of 1-D complex plans per line length, executed on a shared
// scratch buffer under a lock. Plan creation uses FFTW_ESTIMATE so the first
// call per length is cheap and deterministic.
struct LinePlans {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr, bwd = nullptr;
  int n = 0;

  explicit LinePlans(int n_) : n(n_) {
    buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~LinePlans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
};

std::mutex g_fft_mutex;

LinePlans& plans_for(int n) {
  static std::map<int, LinePlans*> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, new LinePlans(n)).first;
  return *it->second;
}

// Signed frequency of DFT bin k; the Nyquist bin maps to 0 for derivatives.
inline int signed_freq(int k, int n) {
  if (2 * k < n) return k;
  if (2 * k == n) return 0;
  return k - n;
}

}  // namespace

void spectral_derivative(const Domain& dom, int axis, const double* in, double* out) {
  if (!dom.is_torus()) throw std::invalid_argument("spectral derivative needs a torus");
  const int n = dom.resolution[axis];
  const double k0 = 2.0 * M_PI / dom.periods[axis];

  // stride between consecutive samples along `axis`, row-major layout
  std::size_t stride = 1;
  for (int a = axis + 1; a < dom.dim; ++a) stride *= dom.resolution[a];
  const std::size_t nlines = dom.npoints / static_cast<std::size_t>(n);
  const std::size_t block = stride * static_cast<std::size_t>(n);

  std::lock_guard<std::mutex> lock(g_fft_mutex);
  LinePlans& pl = plans_for(n);

  for (std::size_t line = 0; line < nlines; ++line) {
    // lines are indexed by (outer, inner): outer blocks of `block` samples,
    // `stride` lines per block
    const std::size_t base = (line / stride) * block + (line % stride);
    for (int j = 0; j < n; ++j) {
      pl.buf[j][0] = in[base + static_cast<std::size_t>(j) * stride];
      pl.buf[j][1] = 0.0;
    }
    fftw_execute(pl.fwd);
    for (int k = 0; k < n; ++k) {
      const double w = k0 * signed_freq(k, n);
      const double re = pl.buf[k][0], im = pl.buf[k][1];
      pl.buf[k][0] = -w * im;  // multiply by i*w
      pl.buf[k][1] = w * re;
    }
    fftw_execute(pl.bwd);
    const double inv = 1.0 / n;
    for (int j = 0; j < n; ++j)
      out[base + static_cast<std::size_t>(j) * stride] = pl.buf[j][0] * inv;
  }
}

double segment_integral(const std::vector<double>& line, double period,
                        std::size_t i0, double len) {
  const int n = static_cast<int>(line.size());
  const double h = period / n;
  const double t0 = h * static_cast<double>(i0);

  std::lock_guard<std::mutex> lock(g_fft_mutex);
  LinePlans& pl = plans_for(n);
  for (int j = 0; j < n; ++j) {
    pl.buf[j][0] = line[static_cast<std::size_t>(j)];
    pl.buf[j][1] = 0.0;
  }
  fftw_execute(pl.fwd);

  // integral of the interpolant sum_k c_k e^{i w_k t} over [t0, t0+len];
  // the Nyquist bin is interpreted as the symmetric cosine mode.
  const double k0 = 2.0 * M_PI / period;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const std::complex<double> c(pl.buf[k][0] / n, pl.buf[k][1] / n);
    if (k == 0) {
      total += c.real() * len;
      continue;
    }
    if (2 * k == n) {
      // cos(w t) with w = k0 * n/2: integral = [sin(w t)/w]
      const double w = k0 * (n / 2);
      total += c.real() * (std::sin(w * (t0 + len)) - std::sin(w * t0)) / w;
      continue;
    }
    const double w = k0 * signed_freq(k, n);
    const std::complex<double> iw(0.0, w);
    const std::complex<double> val =
        c * (std::exp(iw * (t0 + len)) - std::exp(iw * t0)) / iw;
    total += val.real();
  }
  return total;
}

void apply_inverse_laplacian(const Domain& dom, const double* in, double* out,
                             double shift) {
  if (!dom.is_torus()) throw std::invalid_argument("needs a torus");
  const std::size_t np = dom.npoints;
  fftw_complex* buf = fftw_alloc_complex(np);
  for (std::size_t p = 0; p < np; ++p) {
    buf[p][0] = in[p];
    buf[p][1] = 0.0;
  }
  {
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    int dims[4];
    for (int a = 0; a < dom.dim; ++a) dims[a] = dom.resolution[a];
    fftw_plan fwd = fftw_plan_dft(dom.dim, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    // multiply by 1 / (|k|^2/2 + shift)
    std::vector<std::size_t> idx(dom.dim, 0);
    for (std::size_t p = 0; p < np; ++p) {
      double k2 = 0;
      std::size_t rem = p;
      for (int a = dom.dim - 1; a >= 0; --a) {
        const int n = dom.resolution[a];
        const int k = static_cast<int>(rem % n);
        rem /= n;
        const double w = 2.0 * M_PI / dom.periods[a] * signed_freq(k, n);
        k2 += w * w;
      }
      const double scale = 1.0 / (0.5 * k2 + shift);
      buf[p][0] *= scale;
      buf[p][1] *= scale;
    }

    fftw_plan bwd = fftw_plan_dft(dom.dim, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
  }
  const double inv = 1.0 / static_cast<double>(np);
  for (std::size_t p = 0; p < np; ++p) out[p] = buf[p][0] * inv;
  fftw_free(buf);
}

}  // namespace sflat
