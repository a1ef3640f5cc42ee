#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcp/linalg.hpp"
#include "lcp/metric.hpp"

namespace lcp {

/// Linear functional in coordinates of the dual basis.
struct OneForm {
  Vector coeffs;

  OneForm() = default;
  explicit OneForm(Vector c) : coeffs(std::move(c)) {}
  static OneForm zero(std::size_t n) { return OneForm(zero_vector(n)); }

  std::size_t size() const noexcept { return coeffs.size(); }
  Rational operator()(const Vector& x) const { return dot(coeffs, x); }
  const Rational& operator[](std::size_t i) const { return coeffs.at(i); }
  bool is_zero() const { return lcp::is_zero(coeffs); }

  friend bool operator==(const OneForm&, const OneForm&) = default;
};

inline OneForm operator*(const Rational& s, const OneForm& f) { return OneForm(s * f.coeffs); }

/// Subspace given by a basis matrix whose columns are linearly independent.
class Subspace {
 public:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {
    if (rank(basis_) != basis_.cols())
      throw Error(ErrorKind::malformed_input, "subspace basis is rank deficient");
  }

  static Subspace zero(std::size_t n) { return Subspace(Matrix(n, 0)); }
  static Subspace whole(std::size_t n) { return Subspace(Matrix::identity(n)); }

  /// Independent basis (row echelon) for the span of arbitrary vectors.
  static Subspace span_of(std::size_t n, const std::vector<Vector>& vectors) {
    if (vectors.empty()) return zero(n);
    Matrix rows(vectors.size(), n);
    for (std::size_t r = 0; r < vectors.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) rows(r, c) = vectors[r].at(c);
    const RowEchelon e = rref(std::move(rows));
    std::vector<Vector> basis;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
    return Subspace(Matrix::from_columns(n, basis));
  }

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }
  Vector vector(std::size_t a) const { return basis_.col(a); }

  bool contains(const Vector& v) const { return SpanTest(basis_).contains(v); }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
};

/// g-orthogonal complement of `u`.
inline Subspace orthogonal_complement(const Subspace& u, const Metric& metric) {
  if (u.dim() == 0) return Subspace::whole(u.ambient_dim());
  return Subspace(nullspace(u.basis().transpose() * metric.gram()));
}

/// A condition that failed, the basis indices it failed on, and the exact
/// residual that should have vanished.
struct Witness {
  std::string condition;
  std::size_t i = 0;
  std::size_t j = 0;
  Vector residual;
};

struct BracketEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Rational coeff;
};

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c(i,j,k) e_k. The constants are stored densely and
/// are not validated on construction; use validate_algebra.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Abelian algebra of the given dimension.
  explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, 0) {}

  /// From the full n*n*n constant array in (i,j,k) row-major order.
  static LieAlgebra from_constants(std::size_t dim, Vector constants) {
    if (constants.size() != dim * dim * dim)
      throw Error(ErrorKind::malformed_input, "structure constants must have shape n x n x n");
    LieAlgebra l(dim);
    l.c_ = std::move(constants);
    return l;
  }

  /// From entries with i < j; the j,i entries are filled by antisymmetry.
  static LieAlgebra from_brackets(std::size_t dim, const std::vector<BracketEntry>& entries) {
    LieAlgebra l(dim);
    for (const auto& e : entries) {
      if (e.i >= dim || e.j >= dim || e.k >= dim)
        throw Error(ErrorKind::malformed_input, "bracket index out of range");
      if (e.i >= e.j) throw Error(ErrorKind::malformed_input, "bracket entries need i < j");
      l.c_[l.index(e.i, e.j, e.k)] += e.coeff;
      l.c_[l.index(e.j, e.i, e.k)] -= e.coeff;
    }
    return l;
  }

  std::size_t dim() const noexcept { return dim_; }

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[index(i, j, k)];
  }
  void set_constant(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    c_[index(i, j, k)] = v;
  }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const Vector& v) {
    for (std::size_t k = 0; k < dim_; ++k) {
      c_[index(i, j, k)] = v[k];
      c_[index(j, i, k)] = -v[k];
    }
  }

  Vector basis_bracket(std::size_t i, std::size_t j) const {
    Vector v(dim_);
    for (std::size_t k = 0; k < dim_; ++k) v[k] = c_[index(i, j, k)];
    return v;
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (sgn(y[j]) == 0) continue;
        const Rational w = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c_[index(i, j, k)]) != 0) out[k] += w * c_[index(i, j, k)];
      }
    }
    return out;
  }

  /// Nonzero i < j entries in lexicographic (i, j, k) order.
  std::vector<BracketEntry> entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (sgn(c_[index(i, j, k)]) != 0) out.push_back({i, j, k, c_[index(i, j, k)]});
    return out;
  }

  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  void set_basis_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != dim_)
      throw Error(ErrorKind::malformed_input, "basis name count does not match dimension");
    names_ = std::move(names);
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dim_ + j) * dim_ + k;
  }

  std::size_t dim_ = 0;
  Vector c_;
  std::vector<std::string> names_;
};

struct JacobiViolation {
  std::size_t i, j, k;
  Vector jacobiator;
};

struct StructureReport {
  std::vector<std::array<std::size_t, 3>> antisymmetry_violations;  // (i, j, k) with c_ijk != -c_jik
  std::vector<JacobiViolation> jacobi_violations;                   // i < j < k

  bool valid() const { return antisymmetry_violations.empty() && jacobi_violations.empty(); }
};

inline StructureReport validate_algebra(const LieAlgebra& l) {
  StructureReport report;
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (l.constant(i, j, k) != -l.constant(j, i, k)) report.antisymmetry_violations.push_back({i, j, k});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        Vector jac = l.bracket(l.basis_bracket(i, j), ek) + l.bracket(l.basis_bracket(j, k), ei) +
                     l.bracket(l.basis_bracket(k, i), ej);
        if (!is_zero(jac)) report.jacobi_violations.push_back({i, j, k, std::move(jac)});
      }
  return report;
}

/// Matrix of y -> [x, y].
inline Matrix ad_matrix(const LieAlgebra& l, const Vector& x) {
  if (x.size() != l.dim()) throw Error(ErrorKind::malformed_input, "vector length does not match dimension");
  const std::size_t n = l.dim();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(l.constant(i, j, k)) != 0) m(k, j) += x[i] * l.constant(i, j, k);
  }
  return m;
}

inline Matrix ad_basis(const LieAlgebra& l, std::size_t i) { return ad_matrix(l, unit_vector(l.dim(), i)); }

/// H(x) = tr ad_x.
inline OneForm trace_form(const LieAlgebra& l) {
  Vector h = zero_vector(l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = 0; j < l.dim(); ++j) h[i] += l.constant(i, j, j);
  return OneForm(std::move(h));
}

inline bool is_unimodular(const LieAlgebra& l) { return trace_form(l).is_zero(); }

inline Matrix killing_form(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(ad_basis(l, i));
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  return k;
}

/// span{[a, b] : a in A, b in B}.
inline Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<Vector> images;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      Vector v = l.bracket(a.vector(i), b.vector(j));
      if (!is_zero(v)) images.push_back(std::move(v));
    }
  return Subspace::span_of(l.dim(), images);
}

inline Subspace derived_algebra(const LieAlgebra& l) {
  const Subspace all = Subspace::whole(l.dim());
  return bracket_span(l, all, all);
}

/// {z : [z, x] = 0 for all x}.
inline Subspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  // Row (j, k) of the system: sum_i z_i c(i, j, k) = 0.
  Matrix system(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) system(j * n + k, i) = l.constant(i, j, k);
  return Subspace(nullspace(system));
}

/// Lower central series of a subalgebra S (S, [S,S], [S,[S,S]], ...) reaches 0.
inline bool is_nilpotent_subalgebra(const LieAlgebra& l, const Subspace& s) {
  Subspace current = s;
  while (current.dim() > 0) {
    Subspace next = bracket_span(l, s, current);
    if (next.dim() == current.dim()) return false;
    current = std::move(next);
  }
  return true;
}

/// Derived series of a subalgebra S reaches 0.
inline bool is_solvable_subalgebra(const LieAlgebra& l, const Subspace& s) {
  Subspace current = s;
  while (current.dim() > 0) {
    Subspace next = bracket_span(l, current, current);
    if (next.dim() == current.dim()) return false;
    current = std::move(next);
  }
  return true;
}

/// Killing form negative semidefinite with kernel equal to the center.
inline bool is_compact_type(const LieAlgebra& l) {
  const Matrix kappa = killing_form(l);
  if (!is_positive_semidefinite(-kappa)) return false;
  const std::size_t kernel_dim = l.dim() - rank(kappa);
  return kernel_dim == center(l).dim();
}

struct StructuralFlags {
  bool abelian = false;
  bool solvable = false;
  bool nilpotent = false;
  bool unimodular = false;
  bool compact_type = false;
  std::size_t derived_dim = 0;
};

inline StructuralFlags structural_flags(const LieAlgebra& l) {
  const Subspace all = Subspace::whole(l.dim());
  StructuralFlags f;
  f.derived_dim = derived_algebra(l).dim();
  f.abelian = f.derived_dim == 0;
  f.solvable = is_solvable_subalgebra(l, all);
  f.nilpotent = is_nilpotent_subalgebra(l, all);
  f.unimodular = is_unimodular(l);
  f.compact_type = is_compact_type(l);
  return f;
}

struct SubspaceRelations {
  bool is_subalgebra = false;
  bool is_ideal = false;
  bool is_abelian = false;
  bool perp_is_subalgebra = false;
  bool is_nilpotent_ideal = false;
  std::vector<Witness> witnesses;
};

inline SubspaceRelations subspace_relations(const LieAlgebra& l, const Metric& metric, const Subspace& u) {
  if (u.ambient_dim() != l.dim() || metric.dim() != l.dim())
    throw Error(ErrorKind::malformed_input, "subspace, metric and algebra dimensions differ");
  const std::size_t n = l.dim();
  SubspaceRelations r;
  const SpanTest in_u(u.basis());

  r.is_subalgebra = true;
  r.is_abelian = true;
  for (std::size_t a = 0; a < u.dim(); ++a)
    for (std::size_t b = a + 1; b < u.dim(); ++b) {
      const Vector br = l.bracket(u.vector(a), u.vector(b));
      if (!is_zero(br)) r.is_abelian = false;
      Vector res = in_u.residual(br);
      if (!is_zero(res)) {
        r.is_subalgebra = false;
        r.witnesses.push_back({"subalgebra", a, b, std::move(res)});
      }
    }

  r.is_ideal = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < u.dim(); ++a) {
      Vector res = in_u.residual(l.bracket(unit_vector(n, i), u.vector(a)));
      if (!is_zero(res)) {
        r.is_ideal = false;
        r.witnesses.push_back({"ideal", i, a, std::move(res)});
      }
    }

  const Subspace perp = orthogonal_complement(u, metric);
  const SpanTest in_perp(perp.basis());
  r.perp_is_subalgebra = true;
  for (std::size_t a = 0; a < perp.dim(); ++a)
    for (std::size_t b = a + 1; b < perp.dim(); ++b) {
      Vector res = in_perp.residual(l.bracket(perp.vector(a), perp.vector(b)));
      if (!is_zero(res)) {
        r.perp_is_subalgebra = false;
        r.witnesses.push_back({"perp-subalgebra", a, b, std::move(res)});
      }
    }

  r.is_nilpotent_ideal = r.is_ideal && is_nilpotent_subalgebra(l, u);
  return r;
}

/// Structure constants of a subalgebra in the basis given by its columns.
inline LieAlgebra subalgebra(const LieAlgebra& l, const Subspace& s) {
  const std::size_t k = s.dim();
  LieAlgebra out(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      auto coords = coordinates(s.basis(), l.bracket(s.vector(a), s.vector(b)));
      if (!coords) throw Error(ErrorKind::malformed_input, "subspace is not a subalgebra");
      out.set_bracket(a, b, *coords);
    }
  return out;
}

/// Builds H semidirect R^q where basis vector i of H acts by alpha[i].
/// Basis order: the basis of H followed by the standard basis of R^q.
inline LieAlgebra semidirect_product(const LieAlgebra& h, std::size_t q, const std::vector<Matrix>& alpha) {
  const std::size_t m = h.dim();
  if (alpha.size() != m) throw Error(ErrorKind::malformed_input, "need one action matrix per basis vector");
  for (const auto& a : alpha)
    if (a.rows() != q || a.cols() != q) throw Error(ErrorKind::malformed_input, "action matrices must be q x q");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Matrix image(q, q);
      for (std::size_t k = 0; k < m; ++k)
        if (sgn(h.constant(i, j, k)) != 0) image += h.constant(i, j, k) * alpha[k];
      if (!(image == commutator(alpha[i], alpha[j])))
        throw Error(ErrorKind::representation, "alpha([e" + std::to_string(i) + ", e" + std::to_string(j) +
                                                   "]) != [alpha(e" + std::to_string(i) + "), alpha(e" +
                                                   std::to_string(j) + ")]");
    }
  LieAlgebra g(m + q);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) g.set_constant(i, j, k, h.constant(i, j, k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        const Rational& v = alpha[i](b, a);
        if (sgn(v) == 0) continue;
        g.set_constant(i, m + a, m + b, v);
        g.set_constant(m + a, i, m + b, -v);
      }
  return g;
}

struct ClosedForms {
  std::vector<OneForm> forms;  // row-reduced echelon basis of the annihilator of [g, g]
  std::vector<Vector> duals;   // forms[i](duals[j]) == (i == j)
};

inline ClosedForms closed_one_form_basis(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  const Subspace derived = derived_algebra(l);
  ClosedForms out;
  if (derived.dim() == n) return out;
  // Annihilator = {f : f . d = 0 for every derived basis vector d}.
  const Matrix ann = nullspace(derived.basis().transpose());
  const RowEchelon e = rref(ann.transpose());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    out.forms.emplace_back(e.reduced.row(r));
    out.duals.push_back(unit_vector(n, e.pivots[r]));
  }
  return out;
}

/// theta vanishes on every bracket of basis vectors; returns the first
/// offending pair otherwise.
inline std::optional<Witness> closedness_witness(const LieAlgebra& l, const OneForm& theta) {
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      const Rational v = theta(l.basis_bracket(i, j));
      if (sgn(v) != 0) return Witness{"closed", i, j, Vector{v}};
    }
  return std::nullopt;
}

inline bool is_closed(const LieAlgebra& l, const OneForm& theta) { return !closedness_witness(l, theta); }

}  // namespace lcp
