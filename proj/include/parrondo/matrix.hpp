#ifndef PARRONDO_MATRIX_HPP
#define PARRONDO_MATRIX_HPP

#include <Eigen/Core>

#include "parrondo/rational.hpp"

namespace parrondo {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using Index = Eigen::Index;

inline Matrix<double> to_double(const RationalMatrix& m) {
  return m.unaryExpr([](const Rational& r) { return to_double(r); });
}

inline Vector<double> to_double(const RationalVector& v) {
  return v.unaryExpr([](const Rational& r) { return to_double(r); });
}

template <class Scalar>
bool is_row_stochastic(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) return false;
  const Scalar zero(0);
  const Scalar one(1);
  for (Index i = 0; i < m.rows(); ++i) {
    Scalar sum(0);
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) < zero || m(i, j) > one) return false;
      sum += m(i, j);
    }
    if (sum != one) return false;
  }
  return true;
}

}  // namespace parrondo

#endif  // PARRONDO_MATRIX_HPP
