#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "parrondo/games.hpp"
#include "parrondo/rng.hpp"

using namespace parrondo;

TEST_CASE("game spec derives the coin biases from (r, rho)") {
  const GameSpec spec = make_game_spec(3, Rational(1, 3));
  CHECK(spec.p0 == Rational(1, 10));
  CHECK(spec.p1 == Rational(3, 4));

  const GameSpec degenerate = make_game_spec(3, Rational(0));
  CHECK(degenerate.p0 == Rational(0));
  CHECK(degenerate.p1 == Rational(1));

  const GameSpec five = make_game_spec(5, Rational(1, 2));
  CHECK(five.p0 == Rational(1, 17));
  CHECK(five.p1 == Rational(2, 3));

  const GameSpec fair = make_game_spec(7, Rational(1));
  CHECK(fair.p0 == Rational(1, 2));
  CHECK(fair.p1 == Rational(1, 2));
}

TEST_CASE("game spec validation") {
  CHECK_THROWS_AS(make_game_spec(2, Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(make_game_spec(3, Rational(-1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(make_game_spec(3, Rational(11, 10)), std::invalid_argument);
}

TEST_CASE("fairness identity holds exactly on a rational grid") {
  const std::vector<Rational> rhos = {Rational(0),     Rational(1, 10), Rational(1, 3),
                                      Rational(2, 5),  Rational(1, 2),  Rational(7, 9),
                                      Rational(9, 10), Rational(1)};
  for (int r : {3, 4, 5, 8, 13}) {
    for (const Rational& rho : rhos) {
      const GameSpec spec = make_game_spec(r, rho);
      const Rational lhs =
          (Rational(1) - spec.p0) * pow(Rational(1) - spec.p1, static_cast<unsigned>(r - 1));
      const Rational rhs = spec.p0 * pow(spec.p1, static_cast<unsigned>(r - 1));
      CHECK(lhs == rhs);
    }
  }
  // The r=3, rho=1/3 instance spelled out: (9/10)(1/4)^2 = (1/10)(3/4)^2 = 9/160.
  const GameSpec spec = make_game_spec(3, Rational(1, 3));
  CHECK((Rational(1) - spec.p0) * pow(Rational(1) - spec.p1, 2) == Rational(9, 160));
  CHECK(spec.p0 * pow(spec.p1, 2) == Rational(9, 160));
}

TEST_CASE("game A matrix is the half-half circulant") {
  const RationalMatrix pa = build_pa<Rational>(3);
  CHECK(pa(0, 0) == Rational(0));
  CHECK(pa(0, 1) == Rational(1, 2));
  CHECK(pa(0, 2) == Rational(1, 2));
  CHECK(pa(1, 0) == Rational(1, 2));
  CHECK(pa(2, 1) == Rational(1, 2));

  const RationalMatrix pa4 = build_pa<Rational>(4);
  CHECK(pa4(0, 0) == Rational(0));
  CHECK(pa4(0, 1) == Rational(1, 2));
  CHECK(pa4(0, 2) == Rational(0));
  CHECK(pa4(0, 3) == Rational(1, 2));

  CHECK_THROWS_AS(build_pa<Rational>(2), std::invalid_argument);
}

TEST_CASE("game matrices are exactly row-stochastic up to r = 64") {
  for (int r = 3; r <= 64; ++r) {
    CHECK(is_row_stochastic(build_pa<Rational>(r)));
    CHECK(is_row_stochastic(build_pb<Rational>(make_game_spec(r, Rational(1, 3)))));
    CHECK(is_row_stochastic(build_pb<Rational>(make_game_spec(r, Rational(0)))));
  }
}

TEST_CASE("game A is doubly stochastic") {
  for (int r : {3, 5, 8, 17}) {
    const RationalMatrix pa = build_pa<Rational>(r);
    for (int j = 0; j < r; ++j) {
      Rational col(0);
      for (int i = 0; i < r; ++i) col += pa(i, j);
      CHECK(col == Rational(1));
    }
  }
}

TEST_CASE("game B matrix matches the worked r=3 instances") {
  const RationalMatrix pb = build_pb<Rational>(make_game_spec(3, Rational(1, 3)));
  CHECK(pb(0, 1) == Rational(1, 10));
  CHECK(pb(0, 2) == Rational(9, 10));
  CHECK(pb(1, 0) == Rational(1, 4));
  CHECK(pb(1, 2) == Rational(3, 4));
  CHECK(pb(2, 0) == Rational(3, 4));
  CHECK(pb(2, 1) == Rational(1, 4));

  const RationalMatrix pb0 = build_pb<Rational>(make_game_spec(3, Rational(0)));
  CHECK(pb0(0, 2) == Rational(1));
  CHECK(pb0(1, 2) == Rational(1));
  CHECK(pb0(2, 0) == Rational(1));
  CHECK(pb0(0, 1) == Rational(0));
}

TEST_CASE("at rho = 1 game B degenerates to game A") {
  for (int r : {3, 4, 7}) {
    const RationalMatrix pa = build_pa<Rational>(r);
    const RationalMatrix pb = build_pb<Rational>(make_game_spec(r, Rational(1)));
    CHECK(pa == pb);
  }
}

TEST_CASE("payoff matrix structure") {
  const Eigen::MatrixXi w = build_payoff(3);
  CHECK(w(0, 1) == 1);
  CHECK(w(0, 2) == -1);
  CHECK(w(1, 0) == -1);
  CHECK(w(1, 2) == 1);
  CHECK(w(2, 0) == 1);
  CHECK(w(2, 1) == -1);

  const Eigen::MatrixXi w5 = build_payoff(5);
  CHECK(w5(2, 1) == -1);
  CHECK(w5(2, 3) == 1);
  CHECK(w5(2, 0) == 0);
  CHECK(w5(2, 4) == 0);

  for (int r : {3, 4, 5, 9}) {
    const Eigen::MatrixXi m = build_payoff(r);
    CHECK(m == -m.transpose());  // antisymmetric
    for (int i = 0; i < r; ++i) {
      int plus = 0, minus = 0;
      for (int j = 0; j < r; ++j) {
        plus += m(i, j) == 1;
        minus += m(i, j) == -1;
      }
      CHECK(plus == 1);
      CHECK(minus == 1);
    }
  }
  CHECK_THROWS_AS(build_payoff(1), std::invalid_argument);
}

TEST_CASE("pattern parsing expands the compact notation") {
  CHECK(render_pattern(parse_pattern("ABB")) == "ABB");
  CHECK(render_pattern(parse_pattern("(AB)^2B")) == "ABABB");
  CHECK(render_pattern(parse_pattern("(AB)^3B^3")) == "ABABABBBB");
  CHECK(render_pattern(parse_pattern("A^4")) == "AAAA");
  CHECK(render_pattern(parse_pattern(" (A B)^2 ")) == "ABAB");
  CHECK(render_pattern(parse_pattern("((AB)^2)^2")) == "ABABABAB");
  CHECK(parse_pattern("(AB)^1B^2") == ab_power_pattern(4, 1));
  CHECK(parse_pattern("(AB)^3B^3") == ab_power_pattern(5, 3));
}

TEST_CASE("pattern parse errors carry a position") {
  CHECK_THROWS_AS(parse_pattern(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("AC"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("A^0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("(AB"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("AB)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("()"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("A^"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("^2"), std::invalid_argument);
  try {
    parse_pattern("AB)");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("position 3") != std::string::npos);
  }
}

TEST_CASE("pattern render/parse round-trips on random words") {
  SplitMix64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    Pattern p;
    const int len = 1 + static_cast<int>(rng.next() % 12);
    for (int i = 0; i < len; ++i)
      p.tokens.push_back(rng.bernoulli(0.5) ? Game::A : Game::B);
    CHECK(parse_pattern(render_pattern(p)) == p);
  }
}
