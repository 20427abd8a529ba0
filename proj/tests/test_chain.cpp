#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "parrondo/chain.hpp"
#include "parrondo/games.hpp"
#include "test_helpers.hpp"

using namespace parrondo;
using parrondo_test::all_patterns;
using parrondo_test::product_chain;

TEST_CASE("classification of the worked examples") {
  const GameSpec spec13 = make_game_spec(3, Rational(1, 3));
  const ChainClassification c1 = classify(product_chain(spec13, parse_pattern("ABB")));
  CHECK(c1.case_label == ChainCase::Case1);
  CHECK(c1.recurrent_classes.size() == 1);
  CHECK(c1.transient_states.empty());

  const GameSpec spec43 = make_game_spec(4, Rational(1, 3));
  const ChainClassification c2 = classify(product_chain(spec43, parse_pattern("ABB")));
  CHECK(c2.case_label == ChainCase::Case2);
  CHECK(c2.periods == std::vector<int>{2});

  const GameSpec spec30 = make_game_spec(3, Rational(0));
  const ChainClassification c4 = classify(product_chain(spec30, parse_pattern("ABB")));
  CHECK(c4.case_label == ChainCase::Case4);
  CHECK(c4.recurrent_classes == std::vector<std::vector<int>>{{0, 2}});
  CHECK(c4.transient_states == std::vector<int>{1});
}

TEST_CASE("five-case taxonomy over the exhaustive grid") {
  // rho in (0,1): odd r is Case1 for every pattern; even r splits on the
  // parity of the pattern length.
  const Rational rho(1, 3);
  for (int r = 3; r <= 8; ++r) {
    const GameSpec spec = make_game_spec(r, rho);
    for (int len = 1; len <= 5; ++len) {
      for (const Pattern& pattern : all_patterns(len)) {
        const ChainClassification cls = classify(product_chain(spec, pattern));
        if (r % 2 == 1) {
          CHECK(cls.case_label == ChainCase::Case1);
        } else if (len % 2 == 1) {
          CHECK(cls.case_label == ChainCase::Case2);
        } else {
          CHECK(cls.case_label == ChainCase::Case3);
          CHECK(cls.recurrent_classes[0].size() == static_cast<std::size_t>(r) / 2);
          CHECK(cls.recurrent_classes[1].size() == static_cast<std::size_t>(r) / 2);
        }
        std::size_t covered = cls.transient_states.size();
        for (const auto& rc : cls.recurrent_classes) covered += rc.size();
        CHECK(covered == static_cast<std::size_t>(r));
      }
    }
  }
}

TEST_CASE("rho = 0 block patterns give Case4 (odd r) and Case5 (even r)") {
  for (int r = 3; r <= 9; ++r) {
    const GameSpec spec = make_game_spec(r, Rational(0));
    for (int s = 1; s <= 4; ++s) {
      const ChainClassification cls = classify(product_chain(spec, ab_power_pattern(r, s)));
      if (r % 2 == 1) {
        CHECK(cls.case_label == ChainCase::Case4);
        CHECK(cls.recurrent_classes == std::vector<std::vector<int>>{{0, r - 1}});
      } else {
        CHECK(cls.case_label == ChainCase::Case5);
        CHECK(cls.recurrent_classes.size() == 2);
        CHECK(cls.transient_states.size() == static_cast<std::size_t>(r) - 2);
      }
    }
  }
}

TEST_CASE("synthetic structures outside the taxonomy are labeled Other") {
  // A 3-cycle: irreducible with period 3.
  RationalMatrix cyc = RationalMatrix::Zero(3, 3);
  cyc(0, 1) = Rational(1);
  cyc(1, 2) = Rational(1);
  cyc(2, 0) = Rational(1);
  const ChainClassification cls = classify(cyc);
  CHECK(cls.case_label == ChainCase::Other);
  CHECK(cls.periods == std::vector<int>{3});

  // Three absorbing states.
  const ChainClassification id3 = classify(RationalMatrix(RationalMatrix::Identity(3, 3)));
  CHECK(id3.case_label == ChainCase::Other);
  CHECK(id3.recurrent_classes.size() == 3);
}

TEST_CASE("stationary distribution of game A is uniform") {
  const RationalMatrix pa = build_pa<Rational>(3);
  const Vector<Rational> pi = stationary(pa, {0, 1, 2});
  CHECK(pi(0) == Rational(1, 3));
  CHECK(pi(1) == Rational(1, 3));
  CHECK(pi(2) == Rational(1, 3));
}

TEST_CASE("stationary distribution of the rho = 0 worked example") {
  const GameSpec spec = make_game_spec(3, Rational(0));
  const RationalMatrix p = product_chain(spec, parse_pattern("ABB"));
  const Vector<Rational> pi = stationary(p, {0, 2});
  CHECK(pi(0) == Rational(2, 3));
  CHECK(pi(1) == Rational(0));
  CHECK(pi(2) == Rational(1, 3));
}

TEST_CASE("recurrent-class mass is 2^s/(2^s+1) at rho = 0") {
  for (int r : {3, 5, 7}) {
    const GameSpec spec = make_game_spec(r, Rational(0));
    const RationalMatrix p = product_chain(spec, ab_power_pattern(r, 3));
    const Vector<Rational> pi = stationary(p, {0, r - 1});
    CHECK(pi(0) == Rational(8, 9));
    CHECK(pi(r - 1) == Rational(1, 9));
  }
}

TEST_CASE("stationary vectors satisfy pi P = pi exactly") {
  const std::vector<std::pair<GameSpec, Pattern>> cases = {
      {make_game_spec(3, Rational(1, 3)), parse_pattern("ABB")},
      {make_game_spec(5, Rational(2, 7)), parse_pattern("ABABB")},
      {make_game_spec(4, Rational(1, 2)), parse_pattern("ABBA")},
      {make_game_spec(3, Rational(0)), parse_pattern("ABB")},
  };
  for (const auto& [spec, pattern] : cases) {
    const RationalMatrix p = product_chain(spec, pattern);
    const ChainClassification cls = classify(p);
    for (const auto& rc : cls.recurrent_classes) {
      const Vector<Rational> pi = stationary(p, rc);
      Rational total(0);
      for (int i = 0; i < spec.r; ++i) total += pi(i);
      CHECK(total == Rational(1));
      const Vector<Rational> image = p.transpose() * pi;
      for (int i = 0; i < spec.r; ++i) CHECK(image(i) == pi(i));
    }
  }
}

TEST_CASE("stationary rejects supports that are not recurrent classes") {
  const GameSpec spec = make_game_spec(3, Rational(0));
  const RationalMatrix p = product_chain(spec, parse_pattern("ABB"));
  CHECK_THROWS_AS(stationary(p, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(stationary(p, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(stationary(p, {1}), std::invalid_argument);
}

TEST_CASE("absorption probabilities for the two-class chains") {
  const GameSpec spec = make_game_spec(4, Rational(0));
  const RationalMatrix p = product_chain(spec, parse_pattern("ABBB"));
  const ChainClassification cls = classify(p);
  REQUIRE(cls.recurrent_classes.size() == 2);
  const std::vector<int>& r1 = cls.recurrent_classes[0];
  const std::vector<int>& r2 = cls.recurrent_classes[1];

  CHECK(absorption_probability(p, r1, r1.front()) == Rational(1));
  CHECK(absorption_probability(p, r1, r2.front()) == Rational(0));

  // Parity is preserved by the t-step chain: odd starts never reach the
  // even-capital class.
  const std::vector<int> even_class = r1.front() % 2 == 0 ? r1 : r2;
  CHECK(absorption_probability(p, even_class, 1) == Rational(0));

  const Vector<Rational> toward1 = absorption_probabilities(p, r1);
  const Vector<Rational> toward2 = absorption_probabilities(p, r2);
  for (int i = 0; i < spec.r; ++i) CHECK(toward1(i) + toward2(i) == Rational(1));
}

TEST_CASE("absorption requires exactly two recurrent classes") {
  const RationalMatrix pa = build_pa<Rational>(3);
  CHECK_THROWS_AS(absorption_probabilities(pa, {0, 1, 2}), std::invalid_argument);
  const GameSpec spec = make_game_spec(4, Rational(1, 2));
  const RationalMatrix p = product_chain(spec, parse_pattern("ABBA"));
  CHECK_THROWS_AS(absorption_probabilities(p, {0}), std::invalid_argument);
}

TEST_CASE("double-precision stationary agrees with the exact one") {
  const GameSpec spec = make_game_spec(5, Rational(1, 3));
  const RationalMatrix p = product_chain(spec, parse_pattern("ABB"));
  const Matrix<double> pd = to_double(p);
  const Vector<Rational> exact = stationary(p, {0, 1, 2, 3, 4});
  const Vector<double> approx = stationary(pd, {0, 1, 2, 3, 4});
  for (int i = 0; i < 5; ++i)
    CHECK(approx(i) == doctest::Approx(to_double(exact(i))).epsilon(1e-12));
}

TEST_CASE("sparse stationary path used for large chains matches the ring structure") {
  // Mixture-like chain on a large ring, solved through the sparse branch.
  const int r = 701;
  Matrix<double> m = Matrix<double>::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    m(i, (i + 1) % r) = 0.6;
    m(i, (i + r - 1) % r) = 0.4;
  }
  std::vector<int> all(r);
  for (int i = 0; i < r; ++i) all[i] = i;
  const Vector<double> pi = stationary(m, all);
  // Doubly stochastic, so the stationary law is uniform.
  for (int i = 0; i < r; ++i) CHECK(pi(i) == doctest::Approx(1.0 / r).epsilon(1e-9));
}
