#ifndef PARRONDO_RATIONAL_HPP
#define PARRONDO_RATIONAL_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace parrondo {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator. The only scalar used on exact code paths.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r(*this);
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Denominators are positive, so cross-multiplication preserves order.
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  /// Renders "num/den", or just "num" for integers.
  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) {
      s += '/';
      s += den_.str();
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  while (exp != 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

/// Nearest double. Goes through a wide-exponent binary float so that huge
/// numerators/denominators (e.g. rho^(r-1) at r in the thousands) convert
/// without overflow on the way.
inline double to_double(const Rational& r) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  if (r.is_zero()) return 0.0;
  Wide w = Wide(r.num()) / Wide(r.den());
  return w.convert_to<double>();
}

/// Parses "a/b", an integer "a", or a terminating decimal "12.345" (converted
/// exactly). Accepts a leading sign; rejects everything else.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return fail();

  auto digits_to_int = [&](std::string_view d) -> BigInt {
    if (d.empty()) return fail(), BigInt(0);
    BigInt v(0);
    for (char c : d) {
      if (c < '0' || c > '9') return fail(), BigInt(0);
      v = v * 10 + (c - '0');
    }
    return v;
  };

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt n = digits_to_int(s.substr(0, slash));
    BigInt d = digits_to_int(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    BigInt w = whole.empty() ? BigInt(0) : digits_to_int(whole);
    BigInt f = frac.empty() ? BigInt(0) : digits_to_int(frac);
    BigInt scale(1);
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    result = Rational(w * scale + f, scale);
  } else {
    result = Rational(digits_to_int(s));
  }
  return negative ? -result : result;
}

}  // namespace parrondo

namespace Eigen {

template <>
struct NumTraits<parrondo::Rational> : GenericNumTraits<parrondo::Rational> {
  typedef parrondo::Rational Real;
  typedef parrondo::Rational NonInteger;
  typedef parrondo::Rational Nested;
  typedef parrondo::Rational Literal;

  static inline Real epsilon() { return parrondo::Rational(0); }
  static inline Real dummy_precision() { return parrondo::Rational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 200,
    MulCost = 150
  };
};

}  // namespace Eigen

#endif  // PARRONDO_RATIONAL_HPP
