#ifndef PARRONDO_RATE_HPP
#define PARRONDO_RATE_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parrondo/chain.hpp"
#include "parrondo/games.hpp"
#include "parrondo/matrix.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

/// Thrown when the t-step product chain falls outside the structures the
/// rate analysis covers (period >= 3, more than two recurrent classes, or a
/// periodic class among two).
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact dyadic lift of a finite double.
inline Rational rational_from_double(double d) {
  if (d == 0.0) return Rational(0);
  if (!std::isfinite(d)) throw std::invalid_argument("rational_from_double: not finite");
  int exp = 0;
  const double m = std::frexp(d, &exp);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  const int e2 = exp - 53;
  if (e2 >= 0) return Rational(BigInt(mant) << e2);
  return Rational(BigInt(mant), BigInt(1) << -e2);
}

/// Rate-of-profit results for one schedule: per-class rates and the rate as
/// a function of the initial state.
struct RateReport {
  ChainClassification classification;  // of the t-step product chain
  std::vector<Rational> class_rates;   // mu, or mu1/mu2 per recurrent class
  std::vector<Rational> rate_for_start;  // indexed by initial state
  int start = 0;
  bool exact = true;  // false when the floating-point solver produced it

  const Rational& rate() const { return rate_for_start[static_cast<std::size_t>(start)]; }
  double float_rate() const { return to_double(rate()); }
  std::vector<double> float_class_rates() const {
    std::vector<double> v;
    v.reserve(class_rates.size());
    for (const Rational& r : class_rates) v.push_back(to_double(r));
    return v;
  }
};

template <class Scalar>
struct StepRef {
  const Matrix<Scalar>* transition;
  const Matrix<Scalar>* reward;
};

template <class Scalar>
struct RateComputation {
  ChainClassification classification;
  std::vector<Scalar> class_rates;
  Vector<Scalar> rate_for_start;
};

namespace detail {

// mu_j = pi_j . d1 / t for each class, then blend by absorption split.
template <class Scalar>
void two_class_rates(const Matrix<Scalar>& P, const Vector<Scalar>& d1, int t,
                     const ChainClassification& cls, std::vector<Scalar>& class_rates,
                     Vector<Scalar>& rate_for_start) {
  const Scalar inv_t = Scalar(1) / Scalar(t);
  for (int c = 0; c < 2; ++c) {
    const Vector<Scalar> pi = stationary(P, cls.recurrent_classes[c]);
    class_rates.push_back(pi.dot(d1) * inv_t);
  }
  const Vector<Scalar> alpha = absorption_probabilities(P, cls.recurrent_classes[0]);
  rate_for_start.resize(P.rows());
  for (Index i = 0; i < P.rows(); ++i)
    rate_for_start(i) =
        alpha(i) * class_rates[0] + (Scalar(1) - alpha(i)) * class_rates[1];
}

}  // namespace detail

/// Rate of profit of a cyclic schedule of transition/reward pairs, through
/// the stationary law of the t-step product chain:
///   mu = t^-1 pi (R_1 + T_1 R_2 + ... + T_1...T_{t-1} R_t) 1.
/// One recurrent aperiodic class: the unique stationary pi, rate independent
/// of the start. One recurrent class of period 2: the schedule is doubled,
/// which reduces to the two-class case (phase rates agree identically). Two
/// aperiodic recurrent classes: per-class rates blended by the absorption
/// split of the start state. Anything else throws ClassificationError.
template <class Scalar>
RateComputation<Scalar> schedule_rate(const std::vector<StepRef<Scalar>>& steps) {
  if (steps.empty()) throw std::invalid_argument("schedule_rate: empty schedule");
  const int t = static_cast<int>(steps.size());
  const Index r = steps.front().transition->rows();
  const Vector<Scalar> ones = Vector<Scalar>::Constant(r, Scalar(1));

  // d1 = D 1 accumulated as a vector; prefix carries T_1...T_k.
  Vector<Scalar> d1 = *steps.front().reward * ones;
  Matrix<Scalar> prefix = *steps.front().transition;
  for (int k = 1; k < t; ++k) {
    d1 += prefix * (*steps[k].reward * ones);
    prefix = prefix * *steps[k].transition;
  }
  const Matrix<Scalar>& P = prefix;

  RateComputation<Scalar> out;
  out.classification = classify(P);
  const ChainClassification& cls = out.classification;
  const std::size_t k = cls.recurrent_classes.size();

  if (k == 1 && cls.periods[0] == 1) {
    const Vector<Scalar> pi = stationary(P, cls.recurrent_classes[0]);
    const Scalar mu = pi.dot(d1) / Scalar(t);
    out.class_rates = {mu};
    out.rate_for_start = Vector<Scalar>::Constant(r, mu);
    return out;
  }

  if (k == 1 && cls.periods[0] == 2) {
    // Doubled schedule: P2 = P^2 splits the class into two aperiodic phase
    // classes whose rates coincide, so the start never matters here.
    const Matrix<Scalar> P2 = P * P;
    const Vector<Scalar> d1_2 = d1 + P * d1;
    const ChainClassification cls2 = classify(P2);
    if (cls2.recurrent_classes.size() != 2 || cls2.periods[0] != 1 || cls2.periods[1] != 1)
      throw ClassificationError("doubled schedule did not split the period-2 class: " +
                                cls2.describe());
    std::vector<Scalar> rates;
    Vector<Scalar> per_start;
    detail::two_class_rates(P2, d1_2, 2 * t, cls2, rates, per_start);
    if constexpr (!std::is_floating_point_v<Scalar>) {
      if (!(rates[0] == rates[1]))
        throw std::logic_error("period-2 phase rates differ");
    }
    out.class_rates = {rates[0]};
    out.rate_for_start = std::move(per_start);
    return out;
  }

  if (k == 2 && cls.periods[0] == 1 && cls.periods[1] == 1) {
    detail::two_class_rates(P, d1, t, cls, out.class_rates, out.rate_for_start);
    return out;
  }

  throw ClassificationError("schedule chain has unsupported structure: " + cls.describe());
}

namespace detail {

inline RateReport report_from_exact(RateComputation<Rational>&& c, int start) {
  RateReport rep;
  rep.classification = std::move(c.classification);
  rep.class_rates = std::move(c.class_rates);
  rep.rate_for_start.assign(c.rate_for_start.data(),
                            c.rate_for_start.data() + c.rate_for_start.size());
  rep.start = start;
  rep.exact = true;
  return rep;
}

inline RateReport report_from_double(RateComputation<double>&& c, int start) {
  RateReport rep;
  rep.classification = std::move(c.classification);
  for (double m : c.class_rates) rep.class_rates.push_back(rational_from_double(m));
  rep.rate_for_start.reserve(static_cast<std::size_t>(c.rate_for_start.size()));
  for (Index i = 0; i < c.rate_for_start.size(); ++i)
    rep.rate_for_start.push_back(rational_from_double(c.rate_for_start(i)));
  rep.start = start;
  rep.exact = false;
  return rep;
}

inline void check_start(int start, int r) {
  if (start < 0 || start >= r)
    throw std::invalid_argument("start state must lie in [0, r), got " + std::to_string(start));
}

}  // namespace detail

/// Exact rate of profit of a repeated pattern, reported per start state.
inline RateReport pattern_rate(const GameSpec& spec, const Pattern& pattern, int start = 0) {
  if (pattern.tokens.empty()) throw std::invalid_argument("pattern must be nonempty");
  detail::check_start(start, spec.r);
  const RationalMatrix pa = build_pa<Rational>(spec.r);
  const RationalMatrix pb = build_pb<Rational>(spec);
  const Eigen::MatrixXi w = build_payoff(spec.r);
  const RationalMatrix pa_dot = reward_matrix(pa, w);
  const RationalMatrix pb_dot = reward_matrix(pb, w);
  std::vector<StepRef<Rational>> steps;
  steps.reserve(pattern.tokens.size());
  for (Game g : pattern.tokens)
    steps.push_back(g == Game::A ? StepRef<Rational>{&pa, &pa_dot}
                                 : StepRef<Rational>{&pb, &pb_dot});
  return detail::report_from_exact(schedule_rate(steps), start);
}

/// Rate computed through the unique stationary distribution of the t-step
/// chain, mu = t^-1 pi D 1; valid whenever there is a single recurrent
/// class, of period 1 or 2. The period-2 agreement with the doubled-schedule
/// route of pattern_rate is exercised in tests.
inline Rational pattern_rate_from_stationary(const GameSpec& spec, const Pattern& pattern) {
  if (pattern.tokens.empty()) throw std::invalid_argument("pattern must be nonempty");
  const RationalMatrix pa = build_pa<Rational>(spec.r);
  const RationalMatrix pb = build_pb<Rational>(spec);
  const Eigen::MatrixXi w = build_payoff(spec.r);
  const RationalMatrix pa_dot = reward_matrix(pa, w);
  const RationalMatrix pb_dot = reward_matrix(pb, w);
  const Vector<Rational> ones = Vector<Rational>::Constant(spec.r, Rational(1));

  Vector<Rational> d1 = (pattern.tokens.front() == Game::A ? pa_dot : pb_dot) * ones;
  RationalMatrix prefix = pattern.tokens.front() == Game::A ? pa : pb;
  for (std::size_t k = 1; k < pattern.tokens.size(); ++k) {
    const bool is_a = pattern.tokens[k] == Game::A;
    d1 += prefix * ((is_a ? pa_dot : pb_dot) * ones);
    prefix = prefix * (is_a ? pa : pb);
  }
  const ChainClassification cls = classify(prefix);
  if (cls.recurrent_classes.size() != 1)
    throw ClassificationError("stationary route needs a single recurrent class: " +
                              cls.describe());
  const Vector<Rational> pi = stationary(prefix, cls.recurrent_classes[0]);
  return pi.dot(d1) / Rational(static_cast<long long>(pattern.tokens.size()));
}

enum class SolveMode { Auto, Exact, FloatingPoint };

namespace detail {

// Stationary distribution on one closed class of a ring chain given by
// up/down step probabilities. Anchors the last class member at mass 1,
// solves the strictly sparse balance system for the rest (banded, so the
// factorization stays O(k)), and normalizes.
inline Vector<double> ring_stationary(const std::vector<double>& up,
                                      const std::vector<double>& down,
                                      const std::vector<int>& members) {
  const int r = static_cast<int>(up.size());
  const int k = static_cast<int>(members.size());
  const int anchor = members.back();
  Vector<double> pi = Vector<double>::Zero(r);
  if (k == 1) {
    pi(anchor) = 1.0;
    return pi;
  }

  std::vector<int> local(static_cast<std::size_t>(r), -1);
  for (int i = 0; i + 1 < k; ++i) local[static_cast<std::size_t>(members[i])] = i;

  // B(j,i) = delta - M(i,j) over non-anchor states; rhs_j = M(anchor, j).
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(3 * k));
  Vector<double> rhs = Vector<double>::Zero(k - 1);
  for (int i = 0; i + 1 < k; ++i) triplets.emplace_back(i, i, 1.0);
  const auto add_edge = [&](int src, int dest, double p) {
    if (p <= 0.0) return;
    const int col = src == anchor ? -1 : local[static_cast<std::size_t>(src)];
    const int row = dest == anchor ? -1 : local[static_cast<std::size_t>(dest)];
    if (col == -1 && row == -1) return;
    if (src != anchor && col < 0) throw std::invalid_argument("ring_stationary: class not closed");
    if (dest != anchor && row < 0) throw std::invalid_argument("ring_stationary: class not closed");
    if (row == -1) return;  // flows into the anchor do not appear as equations
    if (col == -1)
      rhs(row) += p;
    else
      triplets.emplace_back(row, col, -p);
  };
  for (int j = 0; j < k; ++j) {
    const int state = members[j];
    add_edge(state, (state + 1) % r, up[static_cast<std::size_t>(state)]);
    add_edge(state, (state + r - 1) % r, down[static_cast<std::size_t>(state)]);
  }

  Eigen::SparseMatrix<double> B(k - 1, k - 1);
  B.setFromTriplets(triplets.begin(), triplets.end());
  B.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(B);
  lu.factorize(B);
  if (lu.info() != Eigen::Success)
    throw std::domain_error("ring_stationary: factorization failed");
  const Vector<double> x = lu.solve(rhs);

  double total = 1.0;
  for (int i = 0; i + 1 < k; ++i) total += x(i);
  for (int i = 0; i + 1 < k; ++i) pi(members[static_cast<std::size_t>(i)]) = x(i) / total;
  pi(anchor) = 1.0 / total;
  return pi;
}

// O(r) path for the one-step mixture chain, which only ever moves along the
// ring. Covers the single-aperiodic-class structure (every mixture with
// gamma in (0,1) and odd r); anything else falls back to the dense engine.
inline std::optional<RateComputation<double>> mixture_ring_computation(const GameSpec& spec,
                                                                       double gamma) {
  const int r = spec.r;
  const double p0 = to_double(spec.p0);
  const double p1 = to_double(spec.p1);
  std::vector<double> up(static_cast<std::size_t>(r));
  std::vector<double> down(static_cast<std::size_t>(r));
  up[0] = gamma * 0.5 + (1.0 - gamma) * p0;
  down[0] = gamma * 0.5 + (1.0 - gamma) * (1.0 - p0);
  for (int i = 1; i < r; ++i) {
    up[static_cast<std::size_t>(i)] = gamma * 0.5 + (1.0 - gamma) * p1;
    down[static_cast<std::size_t>(i)] = gamma * 0.5 + (1.0 - gamma) * (1.0 - p1);
  }

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    if (up[static_cast<std::size_t>(i)] > 0.0) adj[static_cast<std::size_t>(i)].push_back((i + 1) % r);
    if (down[static_cast<std::size_t>(i)] > 0.0)
      adj[static_cast<std::size_t>(i)].push_back((i + r - 1) % r);
  }
  RateComputation<double> out;
  out.classification = classify_adjacency(adj);
  if (out.classification.recurrent_classes.size() != 1 || out.classification.periods[0] != 1)
    return std::nullopt;

  const Vector<double> pi =
      ring_stationary(up, down, out.classification.recurrent_classes[0]);
  double mu = 0.0;
  for (int i = 0; i < r; ++i)
    mu += pi(i) * (up[static_cast<std::size_t>(i)] - down[static_cast<std::size_t>(i)]);
  out.class_rates = {mu};
  out.rate_for_start = Vector<double>::Constant(r, mu);
  return out;
}

inline RateComputation<double> mixture_computation_double(const GameSpec& spec, double gamma) {
  if (spec.r > 512) {
    if (std::optional<RateComputation<double>> fast = mixture_ring_computation(spec, gamma))
      return *std::move(fast);
  }
  const Matrix<double> pa = build_pa<double>(spec.r);
  const Matrix<double> pb = build_pb<double>(spec);
  const Eigen::MatrixXi w = build_payoff(spec.r);
  const Matrix<double> mix = gamma * pa + (1.0 - gamma) * pb;
  const Matrix<double> mix_dot = reward_matrix(mix, w);
  const std::vector<StepRef<double>> steps{{&mix, &mix_dot}};
  return schedule_rate(steps);
}

}  // namespace detail

/// Rate of profit of the random mixture gamma*A + (1-gamma)*B, treated as the
/// length-1 schedule with matrix gamma*P_A + (1-gamma)*P_B. Auto mode solves
/// exactly up to r = 512 and in double precision beyond, where six-digit
/// targets need only ~1e-9 accuracy.
inline RateReport mixture_rate(const GameSpec& spec, const Rational& gamma, int start = 0,
                               SolveMode mode = SolveMode::Auto) {
  if (gamma < Rational(0) || gamma > Rational(1))
    throw std::invalid_argument("gamma must lie in [0,1], got " + gamma.str());
  detail::check_start(start, spec.r);
  const bool exact = mode == SolveMode::Exact || (mode == SolveMode::Auto && spec.r <= 512);
  if (exact) {
    if (spec.r > 1024)
      throw std::invalid_argument("exact mixture solve is capped at r <= 1024; use the floating-point mode");
    const RationalMatrix pa = build_pa<Rational>(spec.r);
    const RationalMatrix pb = build_pb<Rational>(spec);
    const Eigen::MatrixXi w = build_payoff(spec.r);
    const RationalMatrix mix = gamma * pa + (Rational(1) - gamma) * pb;
    const RationalMatrix mix_dot = reward_matrix(mix, w);
    const std::vector<StepRef<Rational>> steps{{&mix, &mix_dot}};
    return detail::report_from_exact(schedule_rate(steps), start);
  }
  return detail::report_from_double(detail::mixture_computation_double(spec, to_double(gamma)),
                                    start);
}

/// Floating-point mixture rate for a double gamma, as used by the gamma
/// optimizer; start state 0.
inline double mixture_rate_double(const GameSpec& spec, double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("gamma must lie in [0,1]");
  return detail::mixture_computation_double(spec, gamma).rate_for_start(0);
}

/// Per-state expected one-step profit (P_game ∘ W) 1.
inline RationalVector profit_increment_vector(const GameSpec& spec, Game game) {
  const RationalMatrix p =
      game == Game::A ? build_pa<Rational>(spec.r) : build_pb<Rational>(spec);
  const Eigen::MatrixXi w = build_payoff(spec.r);
  return reward_matrix(p, w) * Vector<Rational>::Constant(spec.r, Rational(1));
}

}  // namespace parrondo

#endif  // PARRONDO_RATE_HPP
