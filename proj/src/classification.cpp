#include "sflat/classification.hpp"

#include <numeric>
#include <stdexcept>

namespace sflat {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text), 1);
    return Rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational: " + text);
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num * b.den < b.num * a.den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational minimal_positive_combination(const Rational& c1, const Rational& c2) {
  if (!c1.positive() || !c2.positive())
    throw std::invalid_argument("minimal_positive_combination needs positive inputs");
  // gcd(a1/d1, a2/d2) = gcd(a1 d2, a2 d1) / (d1 d2)
  const long long cross = std::gcd(c1.num * c2.den, c2.num * c1.den);
  return Rational(cross, c1.den * c2.den);
}

CaseVerdict case_of(const PeriodGroupSpec& spec) {
  int irrational = 0;
  std::vector<Rational> rationals;
  std::string sym;
  for (const auto& g : spec.generators) {
    if (g.irrational) {
      ++irrational;
      sym = g.witness;
    } else if (!g.value.zero()) {
      rationals.push_back(g.value.abs());
    }
  }
  const bool nonempty = irrational > 0 || !rationals.empty();
  if (spec.h_plus_nonempty && !nonempty)
    throw std::invalid_argument("period group flagged nonempty but no generators supplied");

  CaseVerdict v;
  if (!nonempty) {
    v.kind = ExtensionCase::RExtension;
    v.justification = "H = 0: no nonzero periods, the extension is by the real line";
    return v;
  }
  if (irrational == 0) {
    v.kind = ExtensionCase::S1Extension;
    Rational c0 = rationals[0];
    for (std::size_t i = 1; i < rationals.size(); ++i)
      c0 = minimal_positive_combination(c0, rationals[i]);
    v.c0 = c0;
    v.justification =
        "all periods rational: H has minimal positive element c0 = " + c0.str();
    return v;
  }
  if (irrational == 1 && rationals.empty()) {
    v.kind = ExtensionCase::S1Extension;
    v.c0_symbol = sym;
    v.justification = "single generator " + sym +
                      ": H is an infinite cyclic group with irrational minimal period";
    return v;
  }
  v.kind = ExtensionCase::FlatOnly;
  v.justification =
      "incommensurable periods: H is dense, every such connection is flat";
  return v;
}

U1T4Report classify_u1_t4(const PeriodGenerator& c1, const PeriodGenerator& c2) {
  for (const auto* c : {&c1, &c2})
    if (!c->irrational && c->value.zero())
      throw std::invalid_argument("classify_u1_t4 needs nonzero coefficients");

  U1T4Report rep;
  rep.c1 = c1;
  rep.c2 = c2;
  rep.commutators = {{"a2^-1 a1^-1 a2 a1", c1.str()},
                     {"a4^-1 a3^-1 a4 a3", c2.str()},
                     {"other pairs", "0"}};

  const bool irrational_ratio = c1.irrational || c2.irrational;
  if (irrational_ratio) {
    PeriodGroupSpec spec;
    spec.generators = {c1, c2};
    spec.h_plus_nonempty = true;
    rep.verdict = case_of(spec);
    rep.verdict.kind = ExtensionCase::FlatOnly;
    rep.morphism_family = "rho(b) = 1 for every contractible b; rho determined by rho(a_i)";
    rep.euler_class = "0";
    return rep;
  }

  PeriodGroupSpec spec;
  spec.generators = {PeriodGenerator::rational(c1.value.abs()),
                     PeriodGenerator::rational(c2.value.abs())};
  spec.h_plus_nonempty = true;
  rep.verdict = case_of(spec);
  const Rational c0 = *rep.verdict.c0;
  rep.morphism_family = "rho(b) = exp(2 pi i n |b| / (" + c0.str() + ")), n in Z";
  rep.euler_class = "(n/(" + c0.str() + ")) zeta, n in Z";
  return rep;
}

std::string U1T4Report::render() const {
  std::string out;
  out += "input periods: c1 = " + c1.str() + ", c2 = " + c2.str() + "\n";
  switch (verdict.kind) {
    case ExtensionCase::RExtension:
      out += "case: R-extension\n";
      break;
    case ExtensionCase::S1Extension:
      out += "case: S1-extension, c0 = " +
             (verdict.c0 ? verdict.c0->str() : *verdict.c0_symbol) + "\n";
      break;
    case ExtensionCase::FlatOnly:
      out += "case: flat connections only\n";
      break;
  }
  out += "justification: " + verdict.justification + "\n";
  out += "morphism family: " + morphism_family + "\n";
  out += "euler class: " + euler_class + "\n";
  out += "wilson parameters: " + std::to_string(wilson_parameters) +
         " free values rho(a_i) in S1\n";
  out += "commutator periods:\n";
  for (const auto& [k, v] : commutators) out += "  |" + k + "| = " + v + "\n";
  return out;
}

}  // namespace sflat
