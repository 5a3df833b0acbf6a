#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace sflat {

/// Coefficient algebra for bundle-valued forms.
///
/// Abelian values are plain reals. su(2) values are stored as coefficient
/// triples with respect to the basis T_a = sigma_a/(2i), which satisfies
/// [T_a,T_b] = eps^{abc} T_c and is orthonormal for <X,Y> = -2 tr(XY).
enum class AlgebraKind { Abelian, Su2 };

inline int channels(AlgebraKind k) { return k == AlgebraKind::Abelian ? 1 : 3; }

using Su2 = std::array<double, 3>;

// [X,Y]^c = eps^{abc} X^a Y^b: the cross product of coefficient triples.
inline Su2 bracket(const Su2& x, const Su2& y) {
  return {x[1] * y[2] - x[2] * y[1],
          x[2] * y[0] - x[0] * y[2],
          x[0] * y[1] - x[1] * y[0]};
}

inline double dot(const Su2& x, const Su2& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

/// Element of the real algebra spanned by {I, T_1, T_2, T_3}, closed under
/// 2x2 matrix multiplication:
///   T_a T_b = -(1/4) delta_ab I + (1/2) eps^{abc} T_c.
/// Used for trace chains (Chern-Simons integrands) and SU(2) group elements.
struct Quat {
  double s = 0;          // coefficient of I
  Su2 v = {0, 0, 0};     // coefficients of T_a

  static Quat identity() { return {1.0, {0, 0, 0}}; }

  friend Quat operator*(const Quat& a, const Quat& b) {
    Quat r;
    r.s = a.s * b.s - 0.25 * dot(a.v, b.v);
    Su2 cr = bracket(a.v, b.v);
    for (int i = 0; i < 3; ++i)
      r.v[i] = a.s * b.v[i] + b.s * a.v[i] + 0.5 * cr[i];
    return r;
  }
  friend Quat operator+(const Quat& a, const Quat& b) {
    return {a.s + b.s, {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2]}};
  }
  friend Quat operator*(double c, const Quat& a) {
    return {c * a.s, {c * a.v[0], c * a.v[1], c * a.v[2]}};
  }

  // Conjugate transpose; inverse for unit elements.
  Quat conj() const { return {s, {-v[0], -v[1], -v[2]}}; }

  // det-like norm: g g.conj() = norm2 I.
  double norm2() const { return s * s + 0.25 * dot(v, v); }

  double trace() const { return 2.0 * s; }
};

// exp(x^a T_a) = cos(|x|/2) I + (sin(|x|/2)/(|x|/2)) x^a/2 * (2T_a)...
// written out: s = cos(|x|/2), v^a = x^a * sinc(|x|/2).
inline Quat su2_exp(const Su2& x) {
  double n = std::sqrt(dot(x, x));
  double half = 0.5 * n;
  double sc = (n < 1e-14) ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return {std::cos(half), {x[0] * sc, x[1] * sc, x[2] * sc}};
}

// tr(XY) for su(2) coefficient triples; tr(T_a T_b) = -delta_ab/2.
inline double trace2(const Su2& x, const Su2& y) { return -0.5 * dot(x, y); }

// tr(XYZ) = -(1/4) eps^{abc} X^a Y^b Z^c.
inline double trace3(const Su2& x, const Su2& y, const Su2& z) {
  return -0.25 * dot(bracket(x, y), z);
}

}  // namespace sflat
