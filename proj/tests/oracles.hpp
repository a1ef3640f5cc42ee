#pragma once

// Independent reference computations. These work straight from structure
// constants and Gram entries with plain loops, sharing nothing with the
// library beyond the Rational type and the LieAlgebra/Metric accessors.

#include <random>
#include <vector>

#include "lcp/constructions.hpp"

namespace oracle {

using lcp::Rational;
using Mat = std::vector<std::vector<Rational>>;
using Tensor3 = std::vector<std::vector<std::vector<Rational>>>;

inline Tensor3 tensor3(std::size_t n) { return Tensor3(n, Mat(n, std::vector<Rational>(n, 0))); }

inline Tensor3 constants(const lcp::LieAlgebra& l) {
  const std::size_t n = l.dim();
  Tensor3 c = tensor3(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j][k] = l.constant(i, j, k);
  return c;
}

inline Mat gram(const lcp::Metric& m) {
  const std::size_t n = m.dim();
  Mat g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = m.gram()(i, j);
  return g;
}

/// Gauss-Jordan inverse with full row swaps.
inline Mat invert(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Jacobiator of every ordered triple (i, j, k); returns the number of nonzero ones.
inline std::size_t jacobi_failures(const lcp::LieAlgebra& l) {
  const auto c = constants(l);
  const std::size_t n = l.dim();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          Rational s = 0;
          for (std::size_t p = 0; p < n; ++p)
            s += c[i][j][p] * c[p][k][m] + c[j][k][p] * c[p][i][m] + c[k][i][p] * c[p][j][m];
          if (s != 0) {
            ++bad;
            break;
          }
        }
  return bad;
}

/// H(e_i) = sum_k c_ik^k.
inline std::vector<Rational> trace_form(const lcp::LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<Rational> h(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) h[i] += l.constant(i, k, k);
  return h;
}

/// Christoffel symbols gamma[i][j][m]: nabla_{e_i} e_j = sum_m gamma[i][j][m] e_m,
/// from 2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
inline Tensor3 levi_civita(const lcp::LieAlgebra& l, const lcp::Metric& metric) {
  const std::size_t n = l.dim();
  const auto c = constants(l);
  const Mat g = gram(metric);
  const Mat gi = invert(g);
  auto gb = [&](std::size_t a, std::size_t b, std::size_t z) {  // g([e_a, e_b], e_z)
    Rational s = 0;
    for (std::size_t p = 0; p < n; ++p) s += c[a][b][p] * g[p][z];
    return s;
  };
  Tensor3 gamma = tensor3(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> low(n);  // g(nabla_i e_j, e_z)
      for (std::size_t z = 0; z < n; ++z) low[z] = (gb(i, j, z) - gb(j, z, i) + gb(z, i, j)) / 2;
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t z = 0; z < n; ++z) gamma[i][j][m] += gi[m][z] * low[z];
    }
  return gamma;
}

/// nabla^theta_x y = nabla^g_x y + theta(x) y + theta(y) x - g(x, y) theta^sharp, on basis vectors.
inline Tensor3 weyl(const lcp::LieAlgebra& l, const lcp::Metric& metric, const std::vector<Rational>& theta) {
  const std::size_t n = l.dim();
  Tensor3 w = oracle::levi_civita(l, metric);
  const Mat g = gram(metric);
  const Mat gi = invert(g);
  std::vector<Rational> sharp(n, 0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t z = 0; z < n; ++z) sharp[m] += gi[m][z] * theta[z];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      w[i][j][j] += theta[i];
      w[i][j][i] += theta[j];
      for (std::size_t m = 0; m < n; ++m) w[i][j][m] -= g[i][j] * sharp[m];
    }
  return w;
}

/// Ricci(e_j, e_k) = sum_i e_i-component of R(e_i, e_j) e_k, with the curvature of gamma.
inline Mat ricci(const lcp::LieAlgebra& l, const Tensor3& gamma) {
  const std::size_t n = l.dim();
  const auto c = constants(l);
  Mat ric(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (nabla_i nabla_j - nabla_j nabla_i - nabla_[i,j]) e_k, component i.
        Rational s = 0;
        for (std::size_t p = 0; p < n; ++p) {
          s += gamma[j][k][p] * gamma[i][p][i] - gamma[i][k][p] * gamma[j][p][i];
          s -= c[i][j][p] * gamma[p][k][i];
        }
        ric[j][k] += s;
      }
  return ric;
}

/// The LCP conditions written out on arbitrary vectors of the given bases,
/// with the Weyl connection from the oracle above. Returns true iff all hold.
inline bool lcp_conditions(const lcp::LcpCandidate& cand) {
  const lcp::LieAlgebra& l = cand.algebra;
  const std::size_t n = l.dim();
  const auto c = constants(l);
  const Mat g = gram(cand.metric);
  const auto& th = cand.theta.coeffs;
  const std::size_t q = cand.u.dim();
  if (q == 0) return false;
  bool nonzero = false;
  for (const auto& t : th) nonzero = nonzero || t != 0;
  if (!nonzero) return false;
  // theta vanishes on every bracket
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += c[i][j][k] * th[k];
      if (s != 0) return false;
    }

  auto vec = [&](const lcp::Matrix& basis, std::size_t a) {
    std::vector<Rational> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = basis(r, a);
    return v;
  };
  auto ip = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational s = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s += x[a] * g[a][b] * y[b];
    return s;
  };
  auto br = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    std::vector<Rational> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (x[i] != 0 && y[j] != 0)
          for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * c[i][j][k];
    return out;
  };
  auto form = [&](const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t a = 0; a < n; ++a) s += th[a] * x[a];
    return s;
  };

  std::vector<std::vector<Rational>> us, xs;
  for (std::size_t a = 0; a < q; ++a) us.push_back(vec(cand.u.basis(), a));
  // complement: kernel of z -> (g(u_a, z))_a, by elimination
  {
    lcp::Matrix rows(q, n);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Rational s = 0;
        for (std::size_t p = 0; p < n; ++p) s += us[a][p] * g[p][b];
        rows(a, b) = s;
      }
    const lcp::Matrix ns = lcp::nullspace(rows);
    for (std::size_t a = 0; a < ns.cols(); ++a) xs.push_back(vec(ns, a));
  }
  auto in_span = [&](const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v) {
    // v is in span(basis) iff v is g-orthogonal to the complement of that span, tested against all probes
    lcp::Matrix m(n, basis.size() + 1);
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t r = 0; r < n; ++r) m(r, a) = basis[a][r];
    const std::size_t before = lcp::rank(m);
    for (std::size_t r = 0; r < n; ++r) m(r, basis.size()) = v[r];
    return lcp::rank(m) == before;
  };

  // (1)
  for (const auto* set : {&us, &xs})
    for (const auto& a : *set)
      for (const auto& b : *set)
        if (!in_span(*set, br(a, b))) return false;
  // (2)
  for (const auto& u : us)
    for (const auto& x : xs)
      for (const auto& y : xs) {
        if (ip(br(u, x), y) + ip(br(u, y), x) != 2 * form(u) * ip(x, y)) return false;
      }
  for (const auto& x : xs)
    for (const auto& u : us)
      for (const auto& v : us)
        if (ip(br(x, u), v) + ip(br(x, v), u) != 2 * form(x) * ip(u, v)) return false;
  // (3) curvature of the Weyl connection kills u and nabla preserves u
  const Tensor3 w = oracle::weyl(l, cand.metric, th);
  auto nabla = [&](std::size_t i, const std::vector<Rational>& y) {
    std::vector<Rational> out(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0)
        for (std::size_t m = 0; m < n; ++m) out[m] += y[j] * w[i][j][m];
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& u : us)
      if (!in_span(us, nabla(i, u))) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& u : us) {
        std::vector<Rational> r = nabla(i, nabla(j, u));
        const auto t = nabla(j, nabla(i, u));
        for (std::size_t m = 0; m < n; ++m) r[m] -= t[m];
        for (std::size_t p = 0; p < n; ++p)
          if (c[i][j][p] != 0) {
            const auto s = nabla(p, u);
            for (std::size_t m = 0; m < n; ++m) r[m] -= c[i][j][p] * s[m];
          }
        for (const auto& x : r)
          if (x != 0) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Generators of non-unimodular solvable metric algebras.

struct Generated {
  lcp::LieAlgebra algebra;
  lcp::Metric metric;
  std::string family;
};

inline Rational small(std::mt19937& rng, int lo, int hi) {
  return Rational(std::uniform_int_distribution<int>(lo, hi)(rng));
}

/// Random positive definite Gram: L L^T + I with small integer lower-triangular L.
inline lcp::Metric random_metric(std::mt19937& rng, std::size_t n) {
  lcp::Matrix lo(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) lo(r, c) = small(rng, -1, 1);
  return lcp::Metric(lo * lo.transpose() + lcp::Matrix::identity(n));
}

/// R b semidirect R^k through a random integer D with nonzero trace.
inline Generated almost_abelian(std::mt19937& rng) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  lcp::Matrix d(k, k);
  do {
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) d(r, c) = small(rng, -2, 2);
  } while (d.trace() == 0);
  lcp::LieAlgebra l(k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    lcp::Vector image(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) image[1 + i] = d(i, j);
    l.set_bracket(0, 1 + j, image);
  }
  return {l, random_metric(rng, k + 1), "almost-abelian"};
}

/// R^2 acting diagonally on R^k.
inline Generated diagonal_action(std::mt19937& rng) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  std::vector<Rational> d1(k), d2(k);
  Rational total;
  do {
    total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      d1[j] = small(rng, -2, 2);
      d2[j] = small(rng, -2, 2);
      total += d1[j] * d1[j] + d2[j] * d2[j];
    }
    Rational t1 = 0, t2 = 0;
    for (std::size_t j = 0; j < k; ++j) {
      t1 += d1[j];
      t2 += d2[j];
    }
    if (t1 == 0 && t2 == 0) total = 0;
  } while (total == 0);
  lcp::LieAlgebra l(k + 2);
  for (std::size_t j = 0; j < k; ++j) {
    lcp::Vector a(k + 2, 0), b(k + 2, 0);
    a[2 + j] = d1[j];
    b[2 + j] = d2[j];
    l.set_bracket(0, 2 + j, a);
    l.set_bracket(1, 2 + j, b);
  }
  return {l, random_metric(rng, k + 2), "diagonal"};
}

/// Heisenberg (x, y, z) extended by a derivation b: [b,x] = a x, [b,y] = c y, [b,z] = (a+c) z.
inline Generated heisenberg(std::mt19937& rng) {
  Rational a, c;
  do {
    a = small(rng, -2, 2);
    c = small(rng, -2, 2);
  } while (a + c == 0);
  lcp::LieAlgebra l(4);
  l.set_bracket(1, 2, lcp::Vector{0, 0, 0, 1});
  l.set_bracket(0, 1, lcp::Vector{0, a, 0, 0});
  l.set_bracket(0, 2, lcp::Vector{0, 0, c, 0});
  l.set_bracket(0, 3, lcp::Vector{0, 0, 0, a + c});
  return {l, random_metric(rng, 4), "heisenberg"};
}

inline Generated random_base(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return almost_abelian(rng);
    case 1: return diagonal_action(rng);
    default: return heisenberg(rng);
  }
}

}  // namespace oracle
