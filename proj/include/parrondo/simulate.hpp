#ifndef PARRONDO_SIMULATE_HPP
#define PARRONDO_SIMULATE_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "parrondo/games.hpp"
#include "parrondo/rational.hpp"
#include "parrondo/rng.hpp"

namespace parrondo {

/// Either a fixed pattern played cyclically or the random mixture that plays
/// A with probability gamma at every step.
using Schedule = std::variant<Pattern, Rational>;

struct SimConfig {
  GameSpec spec;
  Schedule schedule;
  long long initial_capital = 0;
  long long steps = 1;
  std::uint64_t seed = 0;
  long long trace_stride = 0;  // record S_n every stride steps; 0 disables
};

struct SimResult {
  long long final_capital = 0;
  long long total_profit = 0;  // S_n
  double mean_profit_per_game = 0.0;
  std::vector<std::pair<long long, long long>> trace;  // (step, S_step)
};

/// Plays the schedule for the configured number of steps. Capital moves +1
/// on a win and -1 on a loss; the active coin is the fair coin for game A
/// and the p0/p1 coin of game B depending on capital mod r. Deterministic
/// given the seed. Bernoulli draws compare a uniform in [0,1) against the
/// exact probability rendered to double; for mixtures the game draw precedes
/// the coin draw.
inline SimResult simulate(const SimConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("steps must be >= 1");
  const int r = config.spec.r;
  const double p0 = to_double(config.spec.p0);
  const double p1 = to_double(config.spec.p1);

  const Pattern* pattern = std::get_if<Pattern>(&config.schedule);
  double gamma = 0.0;
  if (pattern != nullptr) {
    if (pattern->tokens.empty()) throw std::invalid_argument("schedule pattern is empty");
  } else {
    const Rational& g = std::get<Rational>(config.schedule);
    if (g < Rational(0) || g > Rational(1))
      throw std::invalid_argument("gamma must lie in [0,1]");
    gamma = to_double(g);
  }

  SplitMix64 rng(config.seed);
  long long capital = config.initial_capital;
  int state = static_cast<int>(((capital % r) + r) % r);

  SimResult result;
  if (config.trace_stride > 0)
    result.trace.reserve(static_cast<std::size_t>(config.steps / config.trace_stride) + 1);

  for (long long n = 1; n <= config.steps; ++n) {
    Game game;
    if (pattern != nullptr) {
      game = pattern->tokens[static_cast<std::size_t>((n - 1) % static_cast<long long>(
                                 pattern->tokens.size()))];
    } else {
      game = rng.bernoulli(gamma) ? Game::A : Game::B;
    }
    const double win_prob = game == Game::A ? 0.5 : (state == 0 ? p0 : p1);
    if (rng.bernoulli(win_prob)) {
      ++capital;
      state = state + 1 == r ? 0 : state + 1;
    } else {
      --capital;
      state = state == 0 ? r - 1 : state - 1;
    }
    if (config.trace_stride > 0 && n % config.trace_stride == 0)
      result.trace.emplace_back(n, capital - config.initial_capital);
  }

  result.final_capital = capital;
  result.total_profit = capital - config.initial_capital;
  result.mean_profit_per_game =
      static_cast<double>(result.total_profit) / static_cast<double>(config.steps);
  return result;
}

/// Profit of a single block of (AB)^s B^(r-2) from the given start state.
/// Only meaningful at rho = 0, where game B is deterministic and the block
/// profit takes the handful of values the capital-growth analysis predicts.
template <class Rng>
long long simulate_block_profile(const GameSpec& spec, int s, int start, Rng& rng) {
  if (!spec.rho.is_zero()) throw std::invalid_argument("block profile requires rho = 0");
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  const int r = spec.r;
  if (start < 0 || start >= r) throw std::invalid_argument("start state out of range");

  long long profit = 0;
  int state = start;
  auto play = [&](double win_prob) {
    if (rng.bernoulli(win_prob)) {
      ++profit;
      state = state + 1 == r ? 0 : state + 1;
    } else {
      --profit;
      state = state == 0 ? r - 1 : state - 1;
    }
  };
  for (int i = 0; i < s; ++i) {
    play(0.5);                            // game A
    play(state == 0 ? 0.0 : 1.0);         // game B at rho = 0
  }
  for (int i = 0; i < r - 2; ++i) play(state == 0 ? 0.0 : 1.0);
  return profit;
}

}  // namespace parrondo

#endif  // PARRONDO_SIMULATE_HPP
