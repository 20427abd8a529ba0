#ifndef PARRONDO_LATTICE_ORACLE_HPP
#define PARRONDO_LATTICE_ORACLE_HPP

#include <vector>

#include "parrondo/rational.hpp"

namespace parrondo_test {

using parrondo::Rational;

// Independent oracle for the stopped lattice-path distribution: enumerates
// every path from (0,0) (right with probability p, up with q) until it lands
// on the staircase boundary, accumulating exact path probabilities. Kept
// deliberately free of the closed-form pmf expressions it validates.
inline std::vector<Rational> enumerate_z_pmf(int n, const Rational& p) {
  const int m = n % 2 == 0 ? n / 2 : (n + 1) / 2;
  auto boundary_height = [&](int x) {
    return n % 2 == 0 ? m - x / 2 : m - (x + 1) / 2;
  };
  const Rational q = Rational(1) - p;
  std::vector<Rational> pmf(static_cast<std::size_t>(n) + 1, Rational(0));

  struct Point {
    int x;
    int y;
    Rational prob;
  };
  std::vector<Point> stack{{0, 0, Rational(1)}};
  while (!stack.empty()) {
    const Point pt = stack.back();
    stack.pop_back();
    if (pt.y == boundary_height(pt.x)) {
      pmf[static_cast<std::size_t>(pt.x)] += pt.prob;
      continue;
    }
    stack.push_back({pt.x + 1, pt.y, pt.prob * p});
    stack.push_back({pt.x, pt.y + 1, pt.prob * q});
  }
  return pmf;
}

}  // namespace parrondo_test

#endif  // PARRONDO_LATTICE_ORACLE_HPP
