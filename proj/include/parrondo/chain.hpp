#ifndef PARRONDO_CHAIN_HPP
#define PARRONDO_CHAIN_HPP

#include <Eigen/LU>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

/// The structural taxonomy of the t-step product chain. Case1..Case5 cover
/// the matrices arising from the mod-r game construction; anything else is
/// Other.
enum class ChainCase { Case1, Case2, Case3, Case4, Case5, Other };

inline const char* to_string(ChainCase c) {
  switch (c) {
    case ChainCase::Case1: return "Case1";
    case ChainCase::Case2: return "Case2";
    case ChainCase::Case3: return "Case3";
    case ChainCase::Case4: return "Case4";
    case ChainCase::Case5: return "Case5";
    default: return "Other";
  }
}

struct ChainClassification {
  std::vector<std::vector<int>> recurrent_classes;  // each sorted ascending
  std::vector<int> periods;                         // parallel to classes
  std::vector<int> transient_states;                // sorted ascending
  ChainCase case_label = ChainCase::Other;

  std::string describe() const {
    std::string s = std::to_string(recurrent_classes.size()) + " recurrent class(es), periods (";
    for (std::size_t i = 0; i < periods.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(periods[i]);
    }
    s += "), " + std::to_string(transient_states.size()) + " transient state(s)";
    return s;
  }
};

namespace detail {

// Iterative Tarjan over the positive-entry digraph.
inline std::vector<int> strongly_connected_components(
    const std::vector<std::vector<int>>& adj, int& component_count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  component_count = 0;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        const int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        const int v = f.v;
        if (lowlink[v] == index[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component[w] = component_count;
            if (w == v) break;
          }
          ++component_count;
        }
        call.pop_back();
        if (!call.empty())
          lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
      }
    }
  }
  return component;
}

// Period of a closed class: gcd of level discrepancies along a BFS from an
// arbitrary root inside the class.
inline int class_period(const std::vector<std::vector<int>>& adj,
                        const std::vector<int>& members) {
  std::vector<int> level(adj.size(), -1);
  std::vector<char> in_class(adj.size(), 0);
  for (int v : members) in_class[v] = 1;
  std::queue<int> q;
  q.push(members.front());
  level[members.front()] = 0;
  int g = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : adj[u]) {
      if (!in_class[w]) continue;
      if (level[w] == -1) {
        level[w] = level[u] + 1;
        q.push(w);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[w]));
      }
    }
  }
  return g == 0 ? 1 : g;
}

}  // namespace detail

/// Structural analysis of the positive-entry digraph of a stochastic matrix:
/// recurrent classes found as terminal strongly connected components, class
/// periods, transient states, and the case label.
inline ChainClassification classify_adjacency(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  int comp_count = 0;
  const std::vector<int> comp = detail::strongly_connected_components(adj, comp_count);

  std::vector<char> leaves(comp_count, 0);
  for (int i = 0; i < n; ++i)
    for (int j : adj[i])
      if (comp[j] != comp[i]) leaves[comp[i]] = 1;

  std::vector<std::vector<int>> classes(comp_count);
  for (int i = 0; i < n; ++i) classes[comp[i]].push_back(i);

  ChainClassification cls;
  for (int c = 0; c < comp_count; ++c) {
    if (leaves[c]) {
      cls.transient_states.insert(cls.transient_states.end(), classes[c].begin(),
                                  classes[c].end());
    } else {
      cls.recurrent_classes.push_back(classes[c]);
    }
  }
  std::sort(cls.transient_states.begin(), cls.transient_states.end());
  for (auto& rc : cls.recurrent_classes) std::sort(rc.begin(), rc.end());
  std::sort(cls.recurrent_classes.begin(), cls.recurrent_classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (const auto& rc : cls.recurrent_classes)
    cls.periods.push_back(detail::class_period(adj, rc));

  const std::size_t k = cls.recurrent_classes.size();
  const std::size_t transients = cls.transient_states.size();
  if (k == 1 && transients == 0) {
    if (cls.periods[0] == 1)
      cls.case_label = ChainCase::Case1;
    else if (cls.periods[0] == 2)
      cls.case_label = ChainCase::Case2;
  } else if (k == 1 && cls.recurrent_classes[0].size() == 2 && cls.periods[0] == 1) {
    cls.case_label = ChainCase::Case4;
  } else if (k == 2 && cls.periods[0] == 1 && cls.periods[1] == 1) {
    const bool two_absorbing = cls.recurrent_classes[0].size() == 1 &&
                               cls.recurrent_classes[1].size() == 1 && transients + 2 == static_cast<std::size_t>(n);
    cls.case_label = two_absorbing ? ChainCase::Case5 : ChainCase::Case3;
  }
  return cls;
}

template <class Scalar>
ChainClassification classify(const Matrix<Scalar>& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P(i, j) != Scalar(0)) adj[i].push_back(j);
  return classify_adjacency(adj);
}

/// Solves the square system A x = b. Exact Gaussian elimination for Rational
/// entries, partial-pivot LU for floating point.
template <class Scalar>
Vector<Scalar> linear_solve(Matrix<Scalar> A, Vector<Scalar> b) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return Eigen::PartialPivLU<Matrix<Scalar>>(A).solve(b);
  } else {
    const Index n = A.rows();
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index(0));
    for (Index col = 0; col < n; ++col) {
      Index pivot = -1;
      for (Index row = col; row < n; ++row)
        if (!(A(perm[row], col) == Scalar(0))) {
          pivot = row;
          break;
        }
      if (pivot == -1) throw std::domain_error("linear_solve: singular matrix");
      std::swap(perm[col], perm[pivot]);
      const Index p = perm[col];
      for (Index row = col + 1; row < n; ++row) {
        const Index q = perm[row];
        if (A(q, col) == Scalar(0)) continue;
        const Scalar factor = A(q, col) / A(p, col);
        A(q, col) = Scalar(0);
        for (Index j = col + 1; j < n; ++j)
          if (!(A(p, j) == Scalar(0))) A(q, j) -= factor * A(p, j);
        b(q) -= factor * b(p);
      }
    }
    Vector<Scalar> x(n);
    for (Index col = n - 1; col >= 0; --col) {
      const Index p = perm[col];
      Scalar acc = b(p);
      for (Index j = col + 1; j < n; ++j)
        if (!(A(p, j) == Scalar(0))) acc -= A(p, j) * x(j);
      x(col) = acc / A(p, col);
    }
    return x;
  }
}

namespace detail {

// Stationary system on a closed class: (P_c^T - I) x = 0 with the last
// equation replaced by sum(x) = 1. Nonsingular because the class is closed
// and communicating, so rank(P_c^T - I) = k-1 and 1 is outside its row space.
template <class Scalar>
Vector<Scalar> stationary_system_dense(const Matrix<Scalar>& P,
                                       const std::vector<int>& support) {
  const Index k = static_cast<Index>(support.size());
  Matrix<Scalar> A(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      A(i, j) = P(support[j], support[i]) - (i == j ? Scalar(1) : Scalar(0));
  Vector<Scalar> b = Vector<Scalar>::Zero(k);
  A.row(k - 1).setConstant(Scalar(1));
  b(k - 1) = Scalar(1);
  return linear_solve<Scalar>(std::move(A), std::move(b));
}

// Same distribution assembled sparse, for large chains with few nonzeros
// per row. Anchors the last class member at mass 1, solves the strictly
// sparse balance system for the rest, and normalizes; this keeps the
// factorization free of the dense fill a sum-to-one row would cause.
inline Vector<double> stationary_system_sparse(const Matrix<double>& P,
                                               const std::vector<int>& support) {
  const int k = static_cast<int>(support.size());
  if (k == 1) return Vector<double>::Ones(1);

  // B(j,i) = delta - P(s_i, s_j) over non-anchor states; rhs_j = P(anchor, s_j).
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(4 * k));
  Vector<double> rhs(k - 1);
  for (int j = 0; j + 1 < k; ++j) {
    rhs(j) = P(support[static_cast<std::size_t>(k - 1)], support[static_cast<std::size_t>(j)]);
    for (int i = 0; i + 1 < k; ++i) {
      const double v = (i == j ? 1.0 : 0.0) -
                       P(support[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(j)]);
      if (v != 0.0) triplets.emplace_back(j, i, v);
    }
  }
  Eigen::SparseMatrix<double> B(k - 1, k - 1);
  B.setFromTriplets(triplets.begin(), triplets.end());
  B.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(B);
  lu.factorize(B);
  if (lu.info() != Eigen::Success)
    throw std::domain_error("stationary: sparse factorization failed");
  const Vector<double> x = lu.solve(rhs);

  double total = 1.0;
  for (int i = 0; i + 1 < k; ++i) total += x(i);
  Vector<double> result(k);
  for (int i = 0; i + 1 < k; ++i) result(i) = x(i) / total;
  result(k - 1) = 1.0 / total;
  return result;
}

}  // namespace detail

/// Unique stationary distribution of P concentrated on `support`, which must
/// be one recurrent class of P (the whole space when P is irreducible).
/// Exact for Rational scalars.
template <class Scalar>
Vector<Scalar> stationary(const Matrix<Scalar>& P, const std::vector<int>& support) {
  const ChainClassification cls = classify(P);
  std::vector<int> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  const bool is_class =
      std::any_of(cls.recurrent_classes.begin(), cls.recurrent_classes.end(),
                  [&](const std::vector<int>& rc) { return rc == sorted; });
  if (!is_class)
    throw std::invalid_argument("stationary: support is not a recurrent class");

  Vector<Scalar> x;
  if constexpr (std::is_floating_point_v<Scalar>) {
    x = sorted.size() > 128 ? detail::stationary_system_sparse(P, sorted)
                            : detail::stationary_system_dense(P, sorted);
  } else {
    x = detail::stationary_system_dense(P, sorted);
  }

  Vector<Scalar> pi = Vector<Scalar>::Zero(P.rows());
  for (std::size_t i = 0; i < sorted.size(); ++i) pi(sorted[i]) = x(static_cast<Index>(i));
  return pi;
}

/// Probability of eventual absorption in `target_class` from each start
/// state, for a chain with exactly two recurrent classes.
template <class Scalar>
Vector<Scalar> absorption_probabilities(const Matrix<Scalar>& P,
                                        const std::vector<int>& target_class) {
  const ChainClassification cls = classify(P);
  if (cls.recurrent_classes.size() != 2)
    throw std::invalid_argument("absorption: chain must have exactly two recurrent classes, found " +
                                std::to_string(cls.recurrent_classes.size()));
  std::vector<int> sorted = target_class;
  std::sort(sorted.begin(), sorted.end());
  int target_idx = -1;
  for (int c = 0; c < 2; ++c)
    if (cls.recurrent_classes[c] == sorted) target_idx = c;
  if (target_idx == -1)
    throw std::invalid_argument("absorption: target is not a recurrent class");

  const int n = static_cast<int>(P.rows());
  Vector<Scalar> alpha = Vector<Scalar>::Zero(n);
  for (int v : cls.recurrent_classes[target_idx]) alpha(v) = Scalar(1);

  const std::vector<int>& transient = cls.transient_states;
  if (!transient.empty()) {
    const Index m = static_cast<Index>(transient.size());
    Matrix<Scalar> A(m, m);   // I - Q on the transient block
    Vector<Scalar> b(m);      // one-step hits of the target class
    for (Index i = 0; i < m; ++i) {
      Scalar hit(0);
      for (int v : cls.recurrent_classes[target_idx]) hit += P(transient[i], v);
      b(i) = hit;
      for (Index j = 0; j < m; ++j)
        A(i, j) = (i == j ? Scalar(1) : Scalar(0)) - P(transient[i], transient[j]);
    }
    const Vector<Scalar> x = linear_solve<Scalar>(std::move(A), std::move(b));
    for (Index i = 0; i < m; ++i) alpha(transient[i]) = x(i);
  }
  return alpha;
}

template <class Scalar>
Scalar absorption_probability(const Matrix<Scalar>& P, const std::vector<int>& target_class,
                              int start) {
  if (start < 0 || start >= P.rows())
    throw std::invalid_argument("absorption: start state out of range");
  return absorption_probabilities(P, target_class)(start);
}

}  // namespace parrondo

#endif  // PARRONDO_CHAIN_HPP
