#ifndef PARRONDO_GAMES_HPP
#define PARRONDO_GAMES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

enum class Game : std::uint8_t { A, B };

inline char to_char(Game g) { return g == Game::A ? 'A' : 'B'; }

/// Game parameters: modulo number r and the fairness parameter rho, with the
/// two coin biases of game B derived from them,
///   p0 = rho^(r-1) / (1 + rho^(r-1)),   p1 = 1 / (1 + rho).
/// Both games are exactly fair under this parameterization.
struct GameSpec {
  int r = 3;
  Rational rho;
  Rational p0;
  Rational p1;
};

inline GameSpec make_game_spec(int r, const Rational& rho) {
  if (r < 3) throw std::invalid_argument("r must be >= 3, got " + std::to_string(r));
  if (rho < Rational(0) || rho > Rational(1))
    throw std::invalid_argument("rho must lie in [0,1], got " + rho.str());
  GameSpec spec;
  spec.r = r;
  spec.rho = rho;
  const Rational rho_pow = pow(rho, static_cast<unsigned>(r - 1));
  spec.p0 = rho_pow / (Rational(1) + rho_pow);
  spec.p1 = Rational(1) / (Rational(1) + rho);
  // Fairness: (1-p0)(1-p1)^(r-1) == p0 p1^(r-1), exactly.
  const Rational lhs =
      (Rational(1) - spec.p0) * pow(Rational(1) - spec.p1, static_cast<unsigned>(r - 1));
  const Rational rhs = spec.p0 * pow(spec.p1, static_cast<unsigned>(r - 1));
  if (lhs != rhs) throw std::logic_error("fairness identity violated");
  return spec;
}

template <class Scalar>
Scalar scalar_cast(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else {
    return static_cast<Scalar>(to_double(r));
  }
}

/// Transition matrix of game A: from state i, move to i+1 or i-1 (mod r),
/// each with probability 1/2. Doubly stochastic.
template <class Scalar = Rational>
Matrix<Scalar> build_pa(int r) {
  if (r < 3) throw std::invalid_argument("r must be >= 3, got " + std::to_string(r));
  Matrix<Scalar> m = Matrix<Scalar>::Zero(r, r);
  const Scalar half = Scalar(1) / Scalar(2);
  for (int i = 0; i < r; ++i) {
    m(i, (i + 1) % r) = half;
    m(i, (i + r - 1) % r) = half;
  }
  return m;
}

/// Transition matrix of game B: the p0-coin in state 0, the p1-coin
/// elsewhere; win moves +1, loss moves -1 (mod r).
template <class Scalar = Rational>
Matrix<Scalar> build_pb(const GameSpec& spec) {
  const int r = spec.r;
  Matrix<Scalar> m = Matrix<Scalar>::Zero(r, r);
  const Scalar p0 = scalar_cast<Scalar>(spec.p0);
  const Scalar p1 = scalar_cast<Scalar>(spec.p1);
  m(0, 1 % r) = p0;
  m(0, r - 1) = Scalar(1) - p0;
  for (int i = 1; i < r; ++i) {
    m(i, (i + 1) % r) = p1;
    m(i, i - 1) = Scalar(1) - p1;
  }
  return m;
}

/// Payoff matrix w(i,j): +1 on the winning step j = i+1 (mod r), -1 on the
/// losing step j = i-1 (mod r), 0 elsewhere.
inline Eigen::MatrixXi build_payoff(int r) {
  if (r < 3) throw std::invalid_argument("r must be >= 3, got " + std::to_string(r));
  Eigen::MatrixXi w = Eigen::MatrixXi::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    w(i, (i + 1) % r) = 1;
    w(i, (i + r - 1) % r) = -1;
  }
  return w;
}

/// Hadamard product P ∘ W: the one-step reward matrix of a transition matrix.
template <class Scalar>
Matrix<Scalar> reward_matrix(const Matrix<Scalar>& p, const Eigen::MatrixXi& w) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(p.rows(), p.cols());
  for (Index i = 0; i < p.rows(); ++i)
    for (Index j = 0; j < p.cols(); ++j)
      if (w(i, j) != 0) m(i, j) = p(i, j) * Scalar(w(i, j));
  return m;
}

/// A finite nonempty word over {A, B}, played cyclically.
struct Pattern {
  std::vector<Game> tokens;

  std::size_t length() const { return tokens.size(); }
  bool operator==(const Pattern& o) const { return tokens == o.tokens; }
};

inline std::string render_pattern(const Pattern& p) {
  std::string s;
  s.reserve(p.tokens.size());
  for (Game g : p.tokens) s.push_back(to_char(g));
  return s;
}

namespace detail {

// Grammar:  Pattern := Term+ ;  Term := ("A" | "B" | "(" Pattern ")") ("^" UInt)?
// Exponents must be >= 1; whitespace is ignored.
class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : text_(text) {}

  std::vector<Game> parse() {
    std::vector<Game> out = parse_sequence(0);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    if (out.empty()) fail("empty pattern");
    return out;
  }

 private:
  static constexpr std::size_t kMaxExpansion = 1u << 20;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("pattern parse error at position " +
                                std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_term_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'A' || c == 'B' || c == '(';
  }

  std::vector<Game> parse_sequence(int depth) {
    std::vector<Game> out;
    if (!at_term_start()) fail("expected 'A', 'B' or '('");
    while (at_term_start()) {
      std::vector<Game> term = parse_term(depth);
      if (out.size() + term.size() > kMaxExpansion) fail("pattern expands beyond limit");
      out.insert(out.end(), term.begin(), term.end());
    }
    return out;
  }

  std::vector<Game> parse_term(int depth) {
    skip_ws();
    std::vector<Game> base;
    const char c = text_[pos_];
    if (c == 'A' || c == 'B') {
      base.push_back(c == 'A' ? Game::A : Game::B);
      ++pos_;
    } else {  // '('
      if (depth > 64) fail("parentheses nested too deeply");
      ++pos_;
      base = parse_sequence(depth + 1);
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("unbalanced parenthesis");
      ++pos_;
      if (base.empty()) fail("empty group");
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
        fail("expected exponent digits after '^'");
      std::size_t exp = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        exp = exp * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (exp > kMaxExpansion) fail("exponent too large");
        ++pos_;
      }
      if (exp == 0) fail("exponent must be >= 1");
      if (base.size() * exp > kMaxExpansion) fail("pattern expands beyond limit");
      std::vector<Game> expanded;
      expanded.reserve(base.size() * exp);
      for (std::size_t i = 0; i < exp; ++i)
        expanded.insert(expanded.end(), base.begin(), base.end());
      base = std::move(expanded);
    }
    return base;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Pattern parse_pattern(std::string_view text) {
  return Pattern{detail::PatternParser(text).parse()};
}

/// The pattern (AB)^s B^(r-2).
inline Pattern ab_power_pattern(int r, int s) {
  if (r < 3) throw std::invalid_argument("r must be >= 3");
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  Pattern p;
  p.tokens.reserve(static_cast<std::size_t>(2 * s + r - 2));
  for (int i = 0; i < s; ++i) {
    p.tokens.push_back(Game::A);
    p.tokens.push_back(Game::B);
  }
  for (int i = 0; i < r - 2; ++i) p.tokens.push_back(Game::B);
  return p;
}

}  // namespace parrondo

#endif  // PARRONDO_GAMES_HPP
