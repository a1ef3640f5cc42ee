#pragma once

#include "lcp/linalg.hpp"

namespace lcp {

/// Left-invariant metric: a symmetric positive definite Gram matrix on the
/// algebra's fixed basis. Positivity is checked exactly on construction.
class Metric {
 public:
  explicit Metric(Matrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw Error(ErrorKind::metric, "Gram matrix is not symmetric");
    if (!is_positive_definite(gram_))
      throw Error(ErrorKind::metric, "Gram matrix is not positive definite");
    inverse_ = *lcp::inverse(gram_);
  }

  static Metric identity(std::size_t n) { return Metric(Matrix::identity(n)); }

  std::size_t dim() const noexcept { return gram_.rows(); }
  const Matrix& gram() const noexcept { return gram_; }
  const Matrix& inverse_gram() const noexcept { return inverse_; }

  Rational inner(const Vector& x, const Vector& y) const { return bilinear(gram_, x, y); }
  Rational norm2(const Vector& x) const { return inner(x, x); }

  /// Same metric scaled by a positive rational.
  Metric scaled(const Rational& factor) const { return Metric(factor * gram_); }

  friend bool operator==(const Metric& a, const Metric& b) { return a.gram_ == b.gram_; }

 private:
  Matrix gram_;
  Matrix inverse_;
};

}  // namespace lcp
