#ifndef PARRONDO_SEARCH_HPP
#define PARRONDO_SEARCH_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parrondo/closed_form.hpp"
#include "parrondo/games.hpp"
#include "parrondo/rate.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

struct SweepRow {
  int r = 0;
  std::optional<int> s;
  std::optional<Rational> rho;
  std::optional<double> gamma;
  Rational rate;
  double rate_float = 0.0;
  bool exact = false;    // true only when computed fully in rational arithmetic
  bool warning = false;  // set when a gamma grid looked non-unimodal
};

struct BestS {
  int s = 0;
  Rational rate;
};

inline int default_s_max(int r) {
  int bits = 0;
  for (int v = r - 1; v > 0; v >>= 1) ++bits;  // ceil(log2 r) for r >= 2
  return 2 * bits + 8;
}

/// Argmax over s in 1..s_max of the closed-form rate for (AB)^s B^(r-2) at
/// rho = 0, exact comparison, ties to the smaller s. Errors if the maximum
/// sits at s_max, which would signal truncation.
inline BestS best_s(int r, int s_max = 0) {
  if (r < 3 || r % 2 == 0) throw std::invalid_argument("best_s needs odd r >= 3");
  if (s_max == 0) s_max = default_s_max(r);
  if (s_max < 1) throw std::invalid_argument("s_max must be >= 1");
  BestS best{1, block_pattern_rate(r, 1)};
  for (int s = 2; s <= s_max; ++s) {
    const Rational rate = block_pattern_rate(r, s);
    if (rate > best.rate) best = {s, rate};
  }
  if (best.s == s_max)
    throw std::runtime_error("best_s: maximum attained at s_max = " + std::to_string(s_max) +
                             "; raise s_max");
  return best;
}

struct BestGamma {
  double gamma = 0.0;
  double rate = 0.0;
  bool grid_warning = false;  // multiple local maxima on the coarse grid
};

/// Maximizes the mixture rate over gamma in (0,1): coarse grid, unimodality
/// check, then golden-section refinement of the bracketing interval down to
/// |gamma - argmax| <= tolerance. Evaluations use the floating-point solver,
/// whose ~1e-12 accuracy dwarfs the tolerances involved.
inline BestGamma best_gamma(int r, const Rational& rho, double tolerance = 1e-6) {
  if (r < 3 || r % 2 == 0) throw std::invalid_argument("best_gamma needs odd r >= 3");
  if (!(tolerance > 0.0) || tolerance > 1e-6)
    throw std::invalid_argument("tolerance must lie in (0, 1e-6]");
  const GameSpec spec = make_game_spec(r, rho);

  // The maximization runs over gamma in (0,1); the boundary mixtures are the
  // pure games, each fair, so the endpoints are pinned at rate 0 rather than
  // evaluated.
  constexpr int kGrid = 128;
  std::vector<double> value(kGrid + 1, 0.0);
  for (int i = 1; i < kGrid; ++i)
    value[i] = mixture_rate_double(spec, static_cast<double>(i) / kGrid);

  int best_i = 0;
  int local_maxima = 0;
  for (int i = 1; i < kGrid; ++i) {
    if (value[i] > value[best_i]) best_i = i;
    if (value[i] > value[i - 1] && value[i] > value[i + 1]) ++local_maxima;
  }
  if (local_maxima > 1) {
    // Not unimodal as far as the grid can tell: report the best grid point.
    return {static_cast<double>(best_i) / kGrid, value[best_i], true};
  }
  if (best_i == 0 || best_i == kGrid)
    throw std::runtime_error("best_gamma: interior maximum not found");

  double a = static_cast<double>(best_i - 1) / kGrid;
  double b = static_cast<double>(best_i + 1) / kGrid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = mixture_rate_double(spec, c);
  double fd = mixture_rate_double(spec, d);
  while (b - a > tolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = mixture_rate_double(spec, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = mixture_rate_double(spec, d);
    }
  }
  const double gamma = (a + b) / 2;
  return {gamma, mixture_rate_double(spec, gamma), false};
}

/// Exact pattern rates over a grid of rho values; no monotonicity asserted.
/// Rates are reported for start state 0.
inline std::vector<SweepRow> rho_sweep(int r, const Pattern& pattern,
                                       const std::vector<Rational>& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const Rational& rho : grid) {
    const GameSpec spec = make_game_spec(r, rho);
    const RateReport rep = pattern_rate(spec, pattern, 0);
    SweepRow row;
    row.r = r;
    row.rho = rho;
    row.rate = rep.rate();
    row.rate_float = rep.float_rate();
    row.exact = rep.exact;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Evidence rows for the sup = 1 claim: the closed-form rate at the best s
/// for each odd r in the list.
inline std::vector<SweepRow> sup_demo(const std::vector<int>& r_list) {
  std::vector<SweepRow> rows;
  rows.reserve(r_list.size());
  for (int r : r_list) {
    const BestS bs = best_s(r);
    SweepRow row;
    row.r = r;
    row.s = bs.s;
    row.rho = Rational(0);
    row.rate = bs.rate;
    row.rate_float = to_double(bs.rate);
    row.exact = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace parrondo

#endif  // PARRONDO_SEARCH_HPP
