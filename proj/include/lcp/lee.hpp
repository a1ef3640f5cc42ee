#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lcp/constructions.hpp"

namespace lcp {

struct LeeCandidate {
  std::vector<double> coeffs;  // in the dual basis
  std::size_t q = 0;           // flat dimension that produced it first
};

struct LeeEnumeration {
  std::vector<LeeCandidate> candidates;
  std::vector<OneForm> gammas;        // row-reduced basis of the closed forms
  std::vector<double> eigen_sums;     // the finite set of admissible traces
  std::string note;
};

namespace detail {

inline std::vector<double> real_parts_of_eigenvalues(const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      a(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i).real());
  return out;
}

/// Sorted values, merging any within tol of the previous kept value.
inline std::vector<double> dedupe(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values)
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  return out;
}

}  // namespace detail

/// Finite superset of the Lee forms of proper LCP structures on a unimodular
/// algebra: (1/q) sum_i r_i gamma_i with r_i a sum of at most n eigenvalues
/// (real parts) of the ad_{b_i} and 1 <= q <= n - 2. The zero form is omitted.
inline LeeEnumeration enumerate_lee_candidates(const LieAlgebra& l, double tol = 1e-9) {
  if (!is_unimodular(l)) throw Error(ErrorKind::usage, "Lee enumeration needs a unimodular algebra");
  const std::size_t n = l.dim();
  LeeEnumeration out;
  const ClosedForms closed = closed_one_form_basis(l);
  out.gammas = closed.forms;
  if (closed.forms.empty()) {
    out.note = "derived algebra is everything: no nonzero closed 1-forms";
    return out;
  }
  if (n < 3) {
    out.note = "dimension below 3: no proper flat subspace of dimension <= n - 2";
    return out;
  }

  std::vector<double> eigenvalues;
  for (const auto& b : closed.duals) {
    auto ev = detail::real_parts_of_eigenvalues(ad_matrix(l, b));
    eigenvalues.insert(eigenvalues.end(), ev.begin(), ev.end());
  }
  eigenvalues = detail::dedupe(std::move(eigenvalues), tol);

  std::vector<double> sums{0.0};
  std::vector<double> frontier{0.0};
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<double> next;
    for (double s : frontier)
      for (double e : eigenvalues) next.push_back(s + e);
    next = detail::dedupe(std::move(next), tol);
    sums.insert(sums.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  out.eigen_sums = detail::dedupe(std::move(sums), tol);

  const std::size_t s = closed.forms.size();
  std::vector<std::vector<double>> gamma_d(s, std::vector<double>(n));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < n; ++k) gamma_d[i][k] = closed.forms[i][k].get_d();

  auto close = [tol](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
  };

  std::vector<std::size_t> pick(s, 0);
  const std::size_t m = out.eigen_sums.size();
  for (std::size_t q = 1; q + 2 <= n; ++q) {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<double> form(n, 0.0);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < n; ++k) form[k] += out.eigen_sums[pick[i]] * gamma_d[i][k] / static_cast<double>(q);
      const bool zero = std::all_of(form.begin(), form.end(), [tol](double x) { return std::abs(x) <= tol; });
      const bool seen = std::any_of(out.candidates.begin(), out.candidates.end(),
                                    [&](const LeeCandidate& c) { return close(c.coeffs, form); });
      if (!zero && !seen) out.candidates.push_back({std::move(form), q});
      std::size_t i = 0;
      while (i < s && ++pick[i] == m) pick[i++] = 0;
      if (i == s) break;
    }
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const LeeCandidate& a, const LeeCandidate& b) { return a.coeffs < b.coeffs; });
  return out;
}

/// True when some candidate lies within tol of theta in every coordinate.
inline bool contains_form(const LeeEnumeration& e, const OneForm& theta, double tol = 1e-9) {
  return std::any_of(e.candidates.begin(), e.candidates.end(), [&](const LeeCandidate& c) {
    for (std::size_t k = 0; k < c.coeffs.size(); ++k)
      if (std::abs(c.coeffs[k] - theta[k].get_d()) > tol) return false;
    return true;
  });
}

/// Every nonzero closed form on su(2) + R is a conformally flat Lee form:
/// take mu = 1, lambda = 1/(8 theta(z)), x0 = 0.
inline LcpCandidate cflat_lee_realize(const LieAlgebra& l, const OneForm& theta) {
  if (!(l == su2_plus_r())) throw Error(ErrorKind::usage, "expected su(2) + R in its standard basis");
  if (theta.size() != 4) throw Error(ErrorKind::malformed_input, "theta must have 4 coefficients");
  if (!is_closed(l, theta)) throw Error(ErrorKind::closedness, "theta does not vanish on su(2)");
  if (sgn(theta[3]) == 0) throw Error(ErrorKind::closedness, "theta(z) must be nonzero");
  const Rational lambda = Rational(1) / (8 * theta[3]);
  LcpCandidate c = example_su2r(1, lambda, Vector{0, 0, 0});
  detail::fail_closed(c.theta == theta, "realised Lee form differs from the requested one");
  return c;
}

}  // namespace lcp
