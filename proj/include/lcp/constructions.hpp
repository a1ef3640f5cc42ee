#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lcp/verify.hpp"

namespace lcp {

/// Representation of an algebra on R^q by matrices skew for the standard
/// inner product, one per basis vector.
struct OrthogonalRep {
  std::vector<Matrix> mats;

  static OrthogonalRep zero(std::size_t algebra_dim, std::size_t q) {
    return {std::vector<Matrix>(algebra_dim, Matrix(q, q))};
  }
};

inline void validate_rep(const LieAlgebra& h, const OrthogonalRep& beta, std::size_t q) {
  if (beta.mats.size() != h.dim())
    throw Error(ErrorKind::representation, "need one matrix per basis vector of the acting algebra");
  for (const auto& m : beta.mats) {
    if (m.rows() != q || m.cols() != q) throw Error(ErrorKind::representation, "representation matrices must be q x q");
    if (!(m + m.transpose()).is_zero()) throw Error(ErrorKind::representation, "representation matrix is not skew");
  }
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = i + 1; j < h.dim(); ++j) {
      Matrix image(q, q);
      for (std::size_t k = 0; k < h.dim(); ++k)
        if (sgn(h.constant(i, j, k)) != 0) image += h.constant(i, j, k) * beta.mats[k];
      if (!(image == commutator(beta.mats[i], beta.mats[j])))
        throw Error(ErrorKind::representation,
                    "representation identity fails on (e" + std::to_string(i) + ", e" + std::to_string(j) + ")");
    }
}

/// beta(x) = gamma(x) J, with J the rotation generator on coordinates
/// (first, first + 1) of R^q. A representation whenever gamma is closed.
inline OrthogonalRep rotation_rep(const LieAlgebra& h, const OneForm& gamma, std::size_t q, std::size_t first = 0) {
  if (first + 1 >= q) throw Error(ErrorKind::domain, "rotation block does not fit in R^q");
  OrthogonalRep beta = OrthogonalRep::zero(h.dim(), q);
  for (std::size_t i = 0; i < h.dim(); ++i) {
    beta.mats[i](first, first + 1) = -gamma[i];
    beta.mats[i](first + 1, first) = gamma[i];
  }
  return beta;
}

namespace detail {

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

inline std::vector<std::string> extended_names(const LieAlgebra& h, std::size_t q, const std::string& prefix) {
  std::vector<std::string> names = h.basis_names();
  if (names.empty())
    for (std::size_t i = 0; i < h.dim(); ++i) names.push_back("h" + std::to_string(i + 1));
  for (std::size_t a = 0; a < q; ++a) names.push_back(prefix + std::to_string(a + 1));
  return names;
}

inline void fail_closed(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("construction produced an invalid result: " + what);
}

}  // namespace detail

/// H semidirect R^q with alpha = xi Id + beta, metric h + standard, theta = xi
/// extended by zero and u = R^q. The result is an adapted LCP structure.
inline LcpCandidate lcp_semidirect(const LieAlgebra& h, const Metric& hm, const OneForm& xi, const OrthogonalRep& beta,
                                   std::size_t q) {
  check_shapes(h, hm, xi);
  if (q == 0) throw Error(ErrorKind::domain, "flat factor must have dimension at least 1");
  if (xi.is_zero()) throw Error(ErrorKind::closedness, "xi must be nonzero");
  if (!is_closed(h, xi)) throw Error(ErrorKind::closedness, "xi does not vanish on [h, h]");
  validate_rep(h, beta, q);

  const std::size_t m = h.dim();
  std::vector<Matrix> alpha;
  for (std::size_t i = 0; i < m; ++i) alpha.push_back(Matrix::scalar(q, xi[i]) + beta.mats[i]);
  LieAlgebra g = semidirect_product(h, q, alpha);
  g.set_basis_names(detail::extended_names(h, q, "u"));

  Vector theta = xi.coeffs;
  theta.resize(m + q, 0);
  Matrix u_basis(m + q, q);
  for (std::size_t a = 0; a < q; ++a) u_basis(m + a, a) = 1;
  LcpCandidate c{std::move(g), Metric(detail::direct_sum(hm.gram(), Matrix::identity(q))), OneForm(std::move(theta)),
                 Subspace(std::move(u_basis))};
  detail::fail_closed(validate_algebra(c.algebra).valid(), "semidirect product violates the Lie axioms");
  detail::fail_closed(verify(c).is_adapted, "semidirect extension is not adapted");
  return c;
}

/// The unimodular extension: xi = -(1/q) H^h.
inline LcpCandidate lcp_extension(const LieAlgebra& h, const Metric& hm, const OrthogonalRep& beta, std::size_t q) {
  if (q == 0) throw Error(ErrorKind::domain, "flat factor must have dimension at least 1");
  const OneForm trace = trace_form(h);
  if (trace.is_zero()) throw Error(ErrorKind::degenerate_xi, "acting algebra is unimodular, so xi would vanish");
  LcpCandidate c = lcp_semidirect(h, hm, Rational(-1, static_cast<long>(q)) * trace, beta, q);
  detail::fail_closed(is_unimodular(c.algebra), "LCP extension is not unimodular");
  return c;
}

/// K semidirect R^n with rho = theta_K Id + beta; stays conformally flat.
inline LcpCandidate cflat_extension(const LieAlgebra& k, const Metric& km, const OneForm& theta_k,
                                    const OrthogonalRep& beta, std::size_t n) {
  if (!is_conformally_flat_structure(k, km, theta_k))
    throw Error(ErrorKind::usage, "base is not a conformally flat LCP structure");
  validate_rep(k, beta, n);
  const std::size_t m = k.dim();
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < m; ++i) rho.push_back(Matrix::scalar(n, theta_k[i]) + beta.mats[i]);
  LieAlgebra g = semidirect_product(k, n, rho);
  g.set_basis_names(detail::extended_names(k, n, "y"));
  Vector theta = theta_k.coeffs;
  theta.resize(m + n, 0);
  LcpCandidate c{std::move(g), Metric(detail::direct_sum(km.gram(), Matrix::identity(n))), OneForm(std::move(theta)),
                 Subspace::whole(m + n)};
  detail::fail_closed(verify(c).is_conformally_flat, "extension is not conformally flat");
  return c;
}

/// Abelian R^p, p in {1, 2}, with u = everything.
inline LcpCandidate example_rp(std::size_t p, const Metric& metric, const OneForm& theta) {
  if (p != 1 && p != 2) throw Error(ErrorKind::domain, "only R^1 and R^2 carry these structures");
  if (metric.dim() != p || theta.size() != p) throw Error(ErrorKind::malformed_input, "metric or theta has wrong size");
  if (theta.is_zero()) throw Error(ErrorKind::domain, "theta must be nonzero");
  LieAlgebra l(p);
  l.set_basis_names(p == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"});
  LcpCandidate c{std::move(l), metric, theta, Subspace::whole(p)};
  detail::fail_closed(verify(c).is_conformally_flat, "R^p example is not conformally flat");
  return c;
}

/// su(2) in the basis [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2; Killing form -2 Id.
inline LieAlgebra su2() {
  LieAlgebra l = LieAlgebra::from_brackets(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {0, 2, 1, -1}});
  l.set_basis_names({"e1", "e2", "e3"});
  return l;
}

/// su(2) + R z, with z the last basis vector.
inline LieAlgebra su2_plus_r() {
  LieAlgebra l = LieAlgebra::from_brackets(4, {{0, 1, 2, 1}, {1, 2, 0, 1}, {0, 2, 1, -1}});
  l.set_basis_names({"e1", "e2", "e3", "z"});
  return l;
}

/// Conformally flat structure on su(2) + R: g = -mu kappa on su(2),
/// g(z, x) = -(1/lambda) g(x0, x), |z|^2 = (1/lambda^2)(1/(8 mu) + |x0|^2),
/// theta = g(lambda z + x0, .).
inline LcpCandidate example_su2r(const Rational& mu, const Rational& lambda, const Vector& x0) {
  if (sgn(mu) <= 0) throw Error(ErrorKind::metric, "mu must be positive for the metric to be positive definite");
  if (sgn(lambda) == 0) throw Error(ErrorKind::domain, "lambda must be nonzero");
  if (x0.size() != 3) throw Error(ErrorKind::malformed_input, "x0 must lie in su(2)");
  const Rational two_mu = 2 * mu;  // -mu kappa = 2 mu Id
  Matrix gram(4, 4);
  for (std::size_t i = 0; i < 3; ++i) {
    gram(i, i) = two_mu;
    gram(i, 3) = gram(3, i) = -two_mu * x0[i] / lambda;
  }
  const Rational x0_norm2 = two_mu * dot(x0, x0);
  gram(3, 3) = (Rational(1) / (8 * mu) + x0_norm2) / (lambda * lambda);
  Metric metric(gram);
  const Vector sharp{x0[0], x0[1], x0[2], lambda};
  OneForm theta = musical_inv(metric, sharp);
  LcpCandidate c{su2_plus_r(), metric, theta, Subspace::whole(4)};
  detail::fail_closed(theta[3] == Rational(1) / (8 * mu * lambda), "theta(z) != 1/(8 mu lambda)");
  detail::fail_closed(metric.norm2(sharp) == Rational(1) / (8 * mu), "|theta|^2 != 1/(8 mu)");
  detail::fail_closed(verify(c).is_conformally_flat, "su(2)+R example is not conformally flat");
  return c;
}

/// The solvable unimodular 3-dimensional example: the LCP extension of
/// span{b, p}, [b, p] = p, with q = 1. Brackets [b,p] = p, [b,u] = -u.
inline LcpCandidate example_sol3() {
  LieAlgebra h = LieAlgebra::from_brackets(2, {{0, 1, 1, 1}});
  h.set_basis_names({"b", "p"});
  LcpCandidate c = lcp_extension(h, Metric::identity(2), OrthogonalRep::zero(2, 1), 1);
  c.algebra.set_basis_names({"b", "p", "u"});
  return c;
}

/// so(3) acting on k = R b semidirect R^3 (b acts by -Id); basis
/// (A1, A2, A3, b, v1, v2, v3) with an orthonormal metric.
inline std::pair<LieAlgebra, Metric> so3_extension_base() {
  std::vector<BracketEntry> entries{{0, 1, 2, 1}, {1, 2, 0, 1}, {0, 2, 1, -1}};
  const LieAlgebra rot = su2();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (sgn(rot.constant(i, j, k)) != 0) entries.push_back({i, 4 + j, 4 + k, rot.constant(i, j, k)});
  for (std::size_t j = 0; j < 3; ++j) entries.push_back({3, 4 + j, 4 + j, -1});
  LieAlgebra h = LieAlgebra::from_brackets(7, entries);
  h.set_basis_names({"A1", "A2", "A3", "b", "v1", "v2", "v3"});
  return {std::move(h), Metric::identity(7)};
}

/// LCP extension of so3_extension_base() with beta = 0 and q = 3.
inline LcpCandidate example_so3() {
  auto [h, hm] = so3_extension_base();
  detail::fail_closed(trace_form(h) == OneForm(Vector{0, 0, 0, -3, 0, 0, 0}), "H^h != -3 b");
  return lcp_extension(h, hm, OrthogonalRep::zero(7, 3), 3);
}

namespace detail {

/// Basis of sl(d): E_ij (i != j) and E_ii - E_dd (i < d), in lexicographic order.
inline std::vector<Matrix> sl_basis(std::size_t d) {
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      Matrix m(d, d);
      m(i, j) = 1;
      if (i == j) m(d - 1, d - 1) = -1;
      basis.push_back(std::move(m));
    }
  return basis;
}

inline Vector sl_coordinates(const Matrix& x, std::size_t d) {
  Vector v;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      v.push_back(x(i, j));
    }
  return v;
}

}  // namespace detail

/// (sl(d) + R b) acting on R^{d^2+1} (x) R^2 by
/// N + t b -> diag(drho(N), 0) (x) Id_2 + t Id (x) diag(1, -1),
/// drho(N) X = -X N on d x d matrices X (row-major coordinates).
/// Basis: sl(d), b, then e_k (x) v_s with index 2k + s. u = e_{d^2+1} (x) v_1.
inline LcpCandidate example_sld(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::domain, "d must be at least 2");
  const std::size_t n = d * d;
  const std::vector<Matrix> sl = detail::sl_basis(d);
  const std::size_t s = sl.size();
  const std::size_t m = s + 1;
  const std::size_t q = 2 * (n + 1);

  LieAlgebra h(m);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b) {
      Vector v = detail::sl_coordinates(commutator(sl[a], sl[b]), d);
      v.push_back(0);
      h.set_bracket(a, b, v);
    }

  std::vector<Matrix> alpha;
  for (std::size_t a = 0; a < s; ++a) {
    Matrix act(q, q);
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          const Rational& nce = sl[a](c, e);
          if (sgn(nce) == 0) continue;
          // drho(N) E_{row,c} = -sum_e N_{c,e} E_{row,e}
          for (std::size_t t = 0; t < 2; ++t) act(2 * (row * d + e) + t, 2 * (row * d + c) + t) -= nce;
        }
    alpha.push_back(std::move(act));
  }
  Matrix act_b(q, q);
  for (std::size_t k = 0; k <= n; ++k) {
    act_b(2 * k, 2 * k) = 1;
    act_b(2 * k + 1, 2 * k + 1) = -1;
  }
  alpha.push_back(std::move(act_b));

  LieAlgebra g = semidirect_product(h, q, alpha);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (i == d - 1 && j == d - 1) continue;
      names.push_back(i == j ? "H" + std::to_string(i + 1) : "E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  names.push_back("b");
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t t = 0; t < 2; ++t) names.push_back("e" + std::to_string(k + 1) + "v" + std::to_string(t + 1));
  g.set_basis_names(std::move(names));

  const std::size_t dim = m + q;
  Vector theta = zero_vector(dim);
  theta[s] = 1;
  LcpCandidate c{std::move(g), Metric::identity(dim), OneForm(std::move(theta)),
                 Subspace(Matrix::from_columns(dim, {unit_vector(dim, m + 2 * n)}))};
  detail::fail_closed(validate_algebra(c.algebra).valid(), "sl(d) example violates the Lie axioms");
  detail::fail_closed(is_unimodular(c.algebra), "sl(d) example is not unimodular");
  detail::fail_closed(verify(c).is_adapted, "sl(d) example is not adapted");
  return c;
}

}  // namespace lcp
