#ifndef PARRONDO_REFERENCE_FORMULAS_HPP
#define PARRONDO_REFERENCE_FORMULAS_HPP

#include <vector>

#include "parrondo/rational.hpp"

namespace parrondo_test {

using parrondo::Rational;

inline Rational poly(const Rational& x, const std::vector<long long>& coeffs) {
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

// Closed-form rational functions of rho for the r=3 and r=4 chains, used as
// pointwise oracles for the engine.

inline Rational mu3_abb(const Rational& rho) {
  using parrondo::pow;
  const Rational num =
      pow(Rational(1) - rho, 3) * (Rational(1) + rho) * poly(rho, {1, 2, 1, 2, 1});
  const Rational den = poly(rho, {3, 12, 20, 28, 36, 28, 20, 12, 3});
  return num / den;
}

inline Rational mu4_abb(const Rational& rho) {
  using parrondo::pow;
  return pow(Rational(1) - rho, 3) / (Rational(3) * (Rational(1) + pow(rho, 3)));
}

inline Rational mu4_abbb_even(const Rational& rho) {
  return (Rational(1) - rho) * poly(rho, {2, -3, 2}) /
         (Rational(4) * (Rational(1) + rho) * poly(rho, {1, -1, 1}));
}

inline Rational mu4_abbb_odd(const Rational& rho) {
  using parrondo::pow;
  return -pow(rho, 2) * (Rational(1) - rho) * poly(rho, {5, -6, 5}) /
         (Rational(4) * pow(Rational(1) + rho, 3) * pow(poly(rho, {1, -1, 1}), 2));
}

}  // namespace parrondo_test

#endif  // PARRONDO_REFERENCE_FORMULAS_HPP
