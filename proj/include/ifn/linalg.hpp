#ifndef IFN_LINALG_HPP
#define IFN_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ifn/rational.hpp"

// Dense exact linear algebra over the rationals.

namespace ifn::linalg {

using Matrix = std::vector<std::vector<Rational>>;
using Vector = std::vector<Rational>;

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
/// Only the first `cols` columns are eligible as pivots, so an augmented
/// right-hand side can ride along in the trailing columns.
inline std::vector<std::size_t> reduce_rows(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col] == 0) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[row], m[pick]);
    const Rational lead = m[row][col];
    for (auto& v : m[row]) v /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) {
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Solves A x = b when the system is consistent, with free variables at 0.
inline std::optional<Vector> solve_consistent(const Matrix& a, const Vector& b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  const auto pivots = reduce_rows(aug, cols);
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) {
    if (aug[r][cols] != 0) return std::nullopt;
  }
  Vector x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

inline Vector multiply(const Matrix& a, const Vector& x) {
  Vector out(a.size(), Rational(0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (a[r][c] != 0 && x[c] != 0) out[r] += a[r][c] * x[c];
    }
  }
  return out;
}

struct LeastSquares {
  Vector x;
  Vector residual;  // A x - b
};

/// A least-squares solution of A x = b: the solution of the normal equations
/// AᵀA x = Aᵀb with every free variable set to 0.
///
/// AᵀA and A share a row space, so their reduced echelon forms have the same
/// pivot columns P. Fixing the free variables at 0 leaves A_Pᵀ A_P x_P = A_Pᵀ b,
/// a square nonsingular system of size rank(A). Solving that instead of the
/// full normal equations keeps the work proportional to rank, not to the
/// (possibly very large) number of columns.
inline LeastSquares least_squares(const Matrix& a, const Vector& b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix echelon = a;
  const auto pivots = reduce_rows(echelon, cols);

  const std::size_t k = pivots.size();
  Matrix normal(k, Vector(k + 1, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      Rational dot = 0;
      for (std::size_t r = 0; r < a.size(); ++r) dot += a[r][pivots[i]] * a[r][pivots[j]];
      normal[i][j] = dot;
      normal[j][i] = dot;
    }
    Rational rhs = 0;
    for (std::size_t r = 0; r < a.size(); ++r) rhs += a[r][pivots[i]] * b[r];
    normal[i][k] = rhs;
  }
  reduce_rows(normal, k);

  LeastSquares out;
  out.x.assign(cols, Rational(0));
  for (std::size_t i = 0; i < k; ++i) out.x[pivots[i]] = normal[i][k];
  out.residual = multiply(a, out.x);
  for (std::size_t r = 0; r < a.size(); ++r) out.residual[r] -= b[r];
  return out;
}

}  // namespace ifn::linalg

#endif  // IFN_LINALG_HPP
