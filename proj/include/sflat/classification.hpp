#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sflat {

/// Exact rational, always in lowest terms with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  static Rational parse(const std::string& text);  // "p", "p/q"

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b);

  bool positive() const { return num > 0; }
  bool zero() const { return num == 0; }
  Rational abs() const { return num < 0 ? Rational(-num, den) : *this; }
  double to_double() const { return static_cast<double>(num) / den; }
  std::string str() const;
};

/// gcd over Q of two positive rationals: the minimal positive element of
/// Z c1 + Z c2. Exact arithmetic, no floats.
Rational minimal_positive_combination(const Rational& c1, const Rational& c2);

/// Generator of the period group: an exact rational, or a tagged irrational
/// with a symbolic witness. Irrationality is an input declaration, never a
/// floating-point decision; distinct markers are treated as incommensurable.
struct PeriodGenerator {
  bool irrational = false;
  Rational value;        // rational case
  std::string witness;   // irrational case, e.g. "sqrt2"

  static PeriodGenerator rational(Rational r) { return {false, r, ""}; }
  static PeriodGenerator irrational_marker(std::string w) {
    return {true, Rational(), std::move(w)};
  }
  std::string str() const { return irrational ? witness : value.str(); }
};

struct PeriodGroupSpec {
  std::vector<PeriodGenerator> generators;
  bool h_plus_nonempty = false;  // must agree with the generator list
};

enum class ExtensionCase { RExtension, S1Extension, FlatOnly };

struct CaseVerdict {
  ExtensionCase kind = ExtensionCase::RExtension;
  std::optional<Rational> c0;       // minimal positive element, rational case
  std::optional<std::string> c0_symbol;  // single irrational generator
  std::string justification;
};

/// Trichotomy on the period group: empty positive part gives the real-line
/// extension; a minimal positive element gives the circle extension; dense
/// positive part leaves only flat connections.
CaseVerdict case_of(const PeriodGroupSpec& spec);

struct U1T4Report {
  PeriodGenerator c1, c2;
  CaseVerdict verdict;
  // rational-ratio case
  std::string morphism_family;  // rho(b) = exp(2 pi i n |b| / c0), n in Z
  std::string euler_class;      // "(n/c0) zeta" or "0"
  int wilson_parameters = 4;    // free rho(a_i) in S^1
  // commutator relations |a_j^-1 a_i^-1 a_j a_i|
  std::vector<std::pair<std::string, std::string>> commutators;

  std::string render() const;
};

/// Circle bundles over the 4-torus with curvature proportional to
/// zeta = c1 dx1^dx2 + c2 dx3^dx4: the morphism families, minimal period,
/// Euler class label and Wilson parameters.
U1T4Report classify_u1_t4(const PeriodGenerator& c1, const PeriodGenerator& c2);

}  // namespace sflat
