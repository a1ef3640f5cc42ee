#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcp/matrix.hpp"

namespace lcp {

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination over Q.
inline RowEchelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, one column per free variable.
inline Matrix nullspace(const Matrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(m.cols(), basis);
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

/// Row-echelon cache for repeated "is v in span(columns)?" queries.
class SpanTest {
 public:
  explicit SpanTest(const Matrix& columns) : ambient_(columns.rows()) {
    RowEchelon e = rref(columns.transpose());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      rows_.push_back(e.reduced.row(r));
      pivots_.push_back(e.pivots[r]);
    }
  }

  std::size_t dimension() const noexcept { return rows_.size(); }

  /// v minus its component along the echelon rows; zero iff v is in the span.
  Vector residual(Vector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < ambient_; ++c)
        if (sgn(rows_[r][c]) != 0) v[c] -= f * rows_[r][c];
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(residual(v)); }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates c with basis * c = v, or nullopt when v is outside the span.
/// The basis must have full column rank.
inline std::optional<Vector> coordinates(const Matrix& basis, const Vector& v) {
  const std::size_t q = basis.cols();
  Matrix aug(basis.rows(), q + 1);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    for (std::size_t c = 0; c < q; ++c) aug(r, c) = basis(r, c);
    aug(r, q) = v[r];
  }
  const RowEchelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == q) return std::nullopt;
  Vector coords = zero_vector(q);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) coords[e.pivots[r]] = e.reduced(r, q);
  return coords;
}

/// Matrix of `endo` restricted to the invariant subspace spanned by the
/// columns of `basis`, in that basis; nullopt when the subspace is not invariant.
inline std::optional<Matrix> restrict_to(const Matrix& endo, const Matrix& basis) {
  const Matrix image = endo * basis;
  Matrix out(basis.cols(), basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    auto coords = coordinates(basis, image.col(c));
    if (!coords) return std::nullopt;
    out.set_col(c, *coords);
  }
  return out;
}

/// Positive definiteness of a symmetric matrix: every pivot of the
/// unpivoted LDL^T factorisation is positive (equivalently, all leading
/// principal minors are positive).
inline bool is_positive_definite(Matrix m) {
  if (!m.is_symmetric()) return false;
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(m(k, k)) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m(i, k)) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

/// Positive semidefiniteness of a symmetric matrix by symmetric pivoting on
/// positive diagonal entries. A zero diagonal entry forces its whole row to
/// vanish; a negative one certifies indefiniteness.
inline bool is_positive_semidefinite(Matrix m) {
  if (!m.is_symmetric()) return false;
  const std::size_t n = m.rows();
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(m(i, i)) < 0) return false;
      if (sgn(m(i, i)) > 0 && !pivot) pivot = i;
    }
    if (!pivot) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(m(i, j)) != 0) return false;
      return true;
    }
    const std::size_t k = *pivot;
    done[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(m(i, k)) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

}  // namespace lcp
