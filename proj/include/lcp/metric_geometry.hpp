#pragma once

#include <optional>
#include <vector>

#include "lcp/lie_algebra.hpp"

namespace lcp {

/// theta^sharp: the vector x with g(x, .) = theta.
inline Vector musical(const Metric& metric, const OneForm& theta) { return metric.inverse_gram() * theta.coeffs; }

/// x^flat = g(x, .).
inline OneForm musical_inv(const Metric& metric, const Vector& x) { return OneForm(metric.gram() * x); }

/// (u ^ w)(x) = g(u, x) w - g(w, x) u.
inline Matrix wedge_endo(const Metric& metric, const Vector& u, const Vector& w) {
  const Vector gu = metric.gram() * u;
  const Vector gw = metric.gram() * w;
  const std::size_t n = metric.dim();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = w[r] * gu[c] - u[r] * gw[c];
  return m;
}

/// g(Ax, y) = -g(x, Ay) for all x, y.
inline bool is_skew(const Metric& metric, const Matrix& a) {
  const Matrix ga = metric.gram() * a;
  return (ga + ga.transpose()).is_zero();
}

/// Left-invariant connection: maps[i] is the matrix of nabla_{e_i}.
struct Connection {
  std::vector<Matrix> maps;

  std::size_t dim() const noexcept { return maps.size(); }
  const Matrix& operator[](std::size_t i) const { return maps.at(i); }

  /// nabla_x for an arbitrary vector x.
  Matrix along(const Vector& x) const {
    Matrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (sgn(x[i]) != 0) m += x[i] * maps[i];
    return m;
  }

  friend bool operator==(const Connection&, const Connection&) = default;
};

inline void check_shapes(const LieAlgebra& l, const Metric& metric) {
  if (metric.dim() != l.dim()) throw Error(ErrorKind::malformed_input, "metric and algebra dimensions differ");
}

inline void check_shapes(const LieAlgebra& l, const Metric& metric, const OneForm& theta) {
  check_shapes(l, metric);
  if (theta.size() != l.dim()) throw Error(ErrorKind::malformed_input, "one-form and algebra dimensions differ");
}

/// Koszul formula: g(nabla_x y, z) = 1/2 (g([x,y],z) - g([x,z],y) - g([y,z],x)).
inline Connection levi_civita(const LieAlgebra& l, const Metric& metric) {
  check_shapes(l, metric);
  const std::size_t n = l.dim();
  const Matrix& gram = metric.gram();
  // lowered[i][j][k] = g([e_i, e_j], e_k)
  std::vector<Rational> lowered(n * n * n, 0);
  auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const Rational& c = l.constant(i, j, m);
        if (sgn(c) == 0) continue;
        for (std::size_t k = 0; k < n; ++k) lowered[at(i, j, k)] += c * gram(m, k);
      }
  Connection conn;
  conn.maps.reserve(n);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix koszul(n, n);  // koszul(k, j) = g(nabla_i e_j, e_k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        koszul(k, j) = half * (lowered[at(i, j, k)] - lowered[at(i, k, j)] - lowered[at(j, k, i)]);
    conn.maps.push_back(metric.inverse_gram() * koszul);
  }
  return conn;
}

namespace detail {

inline Connection weyl_from(const Connection& lc, const Metric& metric, const OneForm& theta) {
  const std::size_t n = metric.dim();
  const Vector sharp = musical(metric, theta);
  Connection conn;
  conn.maps.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    conn.maps.push_back(lc[i] + wedge_endo(metric, sharp, unit_vector(n, i)) + Matrix::scalar(n, theta[i]));
  return conn;
}

}  // namespace detail

/// Weyl connection with Lee form theta:
/// nabla^theta_x = nabla^g_x + theta ^ x + theta(x) Id.
inline Connection weyl_connection(const LieAlgebra& l, const Metric& metric, const OneForm& theta) {
  check_shapes(l, metric, theta);
  if (auto w = closedness_witness(l, theta))
    throw Error(ErrorKind::closedness, "theta does not vanish on [e" + std::to_string(w->i) + ", e" +
                                           std::to_string(w->j) + "]");
  Connection conn = detail::weyl_from(levi_civita(l, metric), metric, theta);
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (!is_skew(metric, conn[i] - Matrix::scalar(l.dim(), theta[i])))
      throw std::logic_error("Weyl connection lost conformal skewness");
  return conn;
}

/// R_{e_i,e_j} stored for every ordered pair.
struct CurvatureTensor {
  std::size_t n = 0;
  std::vector<Matrix> r;

  const Matrix& operator()(std::size_t i, std::size_t j) const { return r.at(i * n + j); }
  bool is_zero() const {
    for (const auto& m : r)
      if (!m.is_zero()) return false;
    return true;
  }
};

/// R_{x,y} = [nabla_x, nabla_y] - nabla_{[x,y]}.
inline CurvatureTensor curvature(const LieAlgebra& l, const Connection& conn) {
  const std::size_t n = l.dim();
  CurvatureTensor t{n, std::vector<Matrix>(n * n, Matrix(n, n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix rij = commutator(conn[i], conn[j]) - conn.along(l.basis_bracket(i, j));
      t.r[j * n + i] = -rij;
      t.r[i * n + j] = std::move(rij);
    }
  return t;
}

/// Ric(x, y) = trace of z -> R_{z,x} y, for the Levi-Civita connection.
inline Matrix ricci(const LieAlgebra& l, const Metric& metric) {
  const std::size_t n = l.dim();
  const CurvatureTensor r = curvature(l, levi_civita(l, metric));
  Matrix ric(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) ric(j, k) += r(i, j)(i, k);
  return ric;
}

/// [nabla_i, nabla_j] == nabla_{[e_i, e_j]} for every basis pair.
inline std::optional<Witness> representation_witness(const LieAlgebra& l, const Connection& conn) {
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Matrix res = commutator(conn[i], conn[j]) - conn.along(l.basis_bracket(i, j));
      if (!res.is_zero()) return Witness{"representation", i, j, res.flat()};
    }
  return std::nullopt;
}

/// (g, theta) is a conformally flat LCP structure: theta nonzero and closed,
/// and nabla^theta is a representation of the algebra on itself.
inline bool is_conformally_flat_structure(const LieAlgebra& l, const Metric& metric, const OneForm& theta) {
  check_shapes(l, metric, theta);
  if (theta.is_zero() || !is_closed(l, theta)) return false;
  return !representation_witness(l, weyl_connection(l, metric, theta));
}

struct CflatIdentityReport {
  bool curvature_identity = false;  // R^g expressed through theta and nabla^g theta
  bool norm_identity = false;       // |nabla^g theta|^2 == g(H, theta)
  bool nabla_theta_zero = false;
  Rational nabla_theta_norm2;
  Rational trace_form_pairing;
  std::vector<Witness> witnesses;
};

inline CflatIdentityReport check_cflat_identities(const LieAlgebra& l, const Metric& metric, const OneForm& theta) {
  if (!is_conformally_flat_structure(l, metric, theta))
    throw Error(ErrorKind::usage, "input is not a conformally flat LCP structure");
  const std::size_t n = l.dim();
  const Connection lc = levi_civita(l, metric);
  const CurvatureTensor r = curvature(l, lc);
  const Vector sharp = musical(metric, theta);
  const Rational theta2 = metric.norm2(sharp);

  std::vector<Vector> nabla_theta;  // nabla^g_{e_i} theta^sharp
  for (std::size_t i = 0; i < n; ++i) nabla_theta.push_back(lc[i] * sharp);

  CflatIdentityReport rep;
  rep.curvature_identity = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector ei = unit_vector(n, i), ej = unit_vector(n, j);
      Matrix rhs = -theta2 * wedge_endo(metric, ei, ej) + theta[i] * wedge_endo(metric, sharp, ej) -
                   theta[j] * wedge_endo(metric, sharp, ei) - wedge_endo(metric, nabla_theta[i], ej) +
                   wedge_endo(metric, nabla_theta[j], ei);
      Matrix res = r(i, j) - rhs;
      if (!res.is_zero()) {
        rep.curvature_identity = false;
        rep.witnesses.push_back({"curvature-identity", i, j, res.flat()});
      }
    }

  Rational norm2 = 0;
  const Matrix& ginv = metric.inverse_gram();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(ginv(i, j)) != 0) norm2 += ginv(i, j) * metric.inner(nabla_theta[i], nabla_theta[j]);
  rep.nabla_theta_norm2 = norm2;
  rep.trace_form_pairing = trace_form(l)(sharp);
  rep.norm_identity = rep.nabla_theta_norm2 == rep.trace_form_pairing;
  if (!rep.norm_identity)
    rep.witnesses.push_back({"norm-identity", 0, 0, Vector{rep.nabla_theta_norm2 - rep.trace_form_pairing}});
  rep.nabla_theta_zero = sgn(norm2) == 0;
  return rep;
}

struct MetricFlags {
  bool biinvariant = false;
  std::optional<Rational> constant_curvature;
};

inline MetricFlags metric_flags(const LieAlgebra& l, const Metric& metric) {
  check_shapes(l, metric);
  const std::size_t n = l.dim();
  MetricFlags flags;
  flags.biinvariant = true;
  for (std::size_t i = 0; i < n && flags.biinvariant; ++i) flags.biinvariant = is_skew(metric, ad_basis(l, i));

  const Connection lc = levi_civita(l, metric);
  const CurvatureTensor r = curvature(l, lc);
  // Probe vectors e_i and e_i + e_j polarise the sectional curvature form.
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(unit_vector(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) probes.push_back(unit_vector(n, i) + unit_vector(n, j));

  auto sectional_numerator = [&](const Vector& x, const Vector& y) {
    Matrix rxy(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(y[j]) != 0 && i != j) rxy += (x[i] * y[j]) * r(i, j);
    }
    return metric.inner(rxy * y, x);
  };

  std::optional<Rational> k0;
  for (std::size_t a = 0; a < probes.size(); ++a)
    for (std::size_t b = a + 1; b < probes.size(); ++b) {
      const Vector& x = probes[a];
      const Vector& y = probes[b];
      const Rational ip = metric.inner(x, y);
      const Rational area = metric.norm2(x) * metric.norm2(y) - ip * ip;
      const Rational num = sectional_numerator(x, y);
      if (sgn(area) == 0) {
        if (sgn(num) != 0) return flags;
        continue;
      }
      if (!k0) k0 = num / area;
      else if (num != *k0 * area) return flags;
    }
  flags.constant_curvature = k0 ? *k0 : Rational(0);
  if (!k0 && !r.is_zero()) flags.constant_curvature.reset();
  return flags;
}

}  // namespace lcp
