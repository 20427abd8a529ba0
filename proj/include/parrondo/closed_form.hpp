#ifndef PARRONDO_CLOSED_FORM_HPP
#define PARRONDO_CLOSED_FORM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "parrondo/rational.hpp"

namespace parrondo {

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt acc(1);
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;  // exact at every step
  }
  return acc;
}

enum class Parity { Even, Odd };

/// Sum_{k=0}^{s} ceil(2k/r) C(s,k) 2^{-s}; equals (2^s - 1)/2^s whenever
/// s <= r/2 and is bounded below by it in general.
inline Rational ceil_weighted_binomial_sum(int r, int s) {
  BigInt acc(0);
  for (int k = 0; k <= s; ++k) {
    const BigInt ceil_term((2 * k + r - 1) / r);
    acc += ceil_term * binomial(s, k);
  }
  return Rational(acc, BigInt(1) << s);
}

/// Closed-form rate of profit of the pattern (AB)^s B^(r-2) at rho = 0.
/// Odd r:  r/(2s+r-2) * (2^s-1)/(2^s+1), independent of the start.
/// Even r: r/(2s+r-2) * ceil_weighted_binomial_sum for an even start, 0 for
/// an odd start.
inline Rational block_pattern_rate(int r, int s, Parity start_parity = Parity::Even) {
  if (r < 3) throw std::invalid_argument("r must be >= 3, got " + std::to_string(r));
  if (s < 1) throw std::invalid_argument("s must be >= 1, got " + std::to_string(s));
  const Rational front(BigInt(r), BigInt(2 * s + r - 2));
  if (r % 2 == 1) {
    const BigInt two_s = BigInt(1) << s;
    return front * Rational(two_s - 1, two_s + 1);
  }
  if (start_parity == Parity::Odd) return Rational(0);
  return front * ceil_weighted_binomial_sum(r, s);
}

/// The binomial-like stopped lattice-path distribution: a particle from
/// (0,0) steps right with probability p or up with probability q = 1-p and
/// stops on the staircase boundary; Z_n is the final x-coordinate.
struct ZDistribution {
  int n = 1;
  Rational p;
  std::vector<Rational> pmf;  // index k = 0..n

  Rational mean() const {
    Rational acc(0);
    for (std::size_t k = 0; k < pmf.size(); ++k)
      acc += Rational(static_cast<long long>(k)) * pmf[k];
    return acc;
  }
  Rational even_mass() const {
    Rational acc(0);
    for (std::size_t k = 0; k < pmf.size(); k += 2) acc += pmf[k];
    return acc;
  }
};

namespace detail {

inline void check_z_args(int n, const Rational& p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
  if (p <= Rational(0) || p >= Rational(1))
    throw std::invalid_argument("p must lie in (0,1), got " + p.str());
}

}  // namespace detail

/// Exact pmf of Z_n: floor-boundary binomial form for even n, ceiling form
/// for odd n.
inline ZDistribution z_pmf(int n, const Rational& p) {
  detail::check_z_args(n, p);
  const Rational q = Rational(1) - p;
  ZDistribution dist;
  dist.n = n;
  dist.p = p;
  dist.pmf.reserve(static_cast<std::size_t>(n) + 1);
  if (n % 2 == 0) {
    const int m = n / 2;
    for (int k = 0; k <= n; ++k) {
      const int fl = k / 2;
      dist.pmf.push_back(Rational(binomial(m + fl, k)) * pow(p, static_cast<unsigned>(k)) *
                         pow(q, static_cast<unsigned>(m - fl)));
    }
  } else {
    const int m = (n + 1) / 2;
    for (int k = 0; k <= n; ++k) {
      const int ce = (k + 1) / 2;
      dist.pmf.push_back(Rational(binomial(m - 1 + ce, k)) * pow(p, static_cast<unsigned>(k)) *
                         pow(q, static_cast<unsigned>(m - ce)));
    }
  }
  return dist;
}

/// P(Z_n is even) = (1+q^{n+1})/(1+q) for even n, (q+q^{n+1})/(1+q) for odd.
inline Rational z_parity(int n, const Rational& p) {
  detail::check_z_args(n, p);
  const Rational q = Rational(1) - p;
  const Rational q_pow = pow(q, static_cast<unsigned>(n + 1));
  const Rational head = n % 2 == 0 ? Rational(1) : q;
  return (head + q_pow) / (Rational(1) + q);
}

/// E[Z_n] = n(1-q)/(1+q) + [1-(-1)^n q^n] q(1-q)/(1+q)^2.
inline Rational z_mean(int n, const Rational& p) {
  detail::check_z_args(n, p);
  const Rational q = Rational(1) - p;
  const Rational one_plus_q = Rational(1) + q;
  const Rational signed_qn =
      n % 2 == 0 ? pow(q, static_cast<unsigned>(n)) : -pow(q, static_cast<unsigned>(n));
  return Rational(n) * (Rational(1) - q) / one_plus_q +
         (Rational(1) - signed_qn) * q * (Rational(1) - q) / (one_plus_q * one_plus_q);
}

/// Verifies, in exact rationals, the negative-binomial/binomial tail
/// identity  sum_{j=k-1}^{s-1} C(j,k-1) 2^{-(j+1)} = sum_{j=k}^{s} C(s,j) 2^{-s}
/// for every k in s0+1..s.
inline bool binom_negbinom_identity_check(int s, int s0) {
  if (!(1 <= s0 && s0 < s)) throw std::invalid_argument("need 1 <= s0 < s");
  for (int k = s0 + 1; k <= s; ++k) {
    Rational lhs(0);
    for (int j = k - 1; j <= s - 1; ++j)
      lhs += Rational(binomial(j, k - 1), BigInt(1) << (j + 1));
    Rational rhs(0);
    for (int j = k; j <= s; ++j) rhs += Rational(binomial(s, j), BigInt(1) << s);
    if (lhs != rhs) return false;
  }
  return true;
}

/// The three alternative lattice-path constructions of Z_n that avoid
/// separate even/odd formulations.
enum class ZVariant {
  FloorBoundary,  // right p / up q, stop on reaching or crossing y = (n-x)/2
  TwoUp,          // right p / up 2 with q, stop on reaching or crossing y = n-x
  OneUpThenOne    // right p / up 1 with q then up 1 surely, stop on y = n-x
};

/// One sampled Z_n value from the chosen construction. The caller owns the
/// generator state.
template <class Rng>
int z_sample_alternative(int n, const Rational& p, ZVariant variant, Rng& rng) {
  detail::check_z_args(n, p);
  const double pd = to_double(p);
  int x = 0;
  int y = 0;
  switch (variant) {
    case ZVariant::FloorBoundary:
      while (2 * y < n - x) {
        if (rng.bernoulli(pd)) ++x;
        else ++y;
      }
      return x;
    case ZVariant::TwoUp:
      while (y < n - x) {
        if (rng.bernoulli(pd)) ++x;
        else y += 2;
      }
      return x;
    case ZVariant::OneUpThenOne:
      while (y < n - x) {
        if (rng.bernoulli(pd)) {
          ++x;
        } else {
          ++y;  // first unit; the second only if the boundary was not hit
          if (y < n - x) ++y;
        }
      }
      return x;
  }
  throw std::invalid_argument("unknown variant");
}

}  // namespace parrondo

#endif  // PARRONDO_CLOSED_FORM_HPP
