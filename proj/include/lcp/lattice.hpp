#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "lcp/errors.hpp"

namespace lcp {

/// Numerical certificate that exp(t_m A), A = diag(1,-1,...,1,-1), is
/// conjugate to diag(E_m, ..., E_m) with E_m = [[0,-1],[1,m]] in SL(2,Z).
struct LatticeCertificate {
  int m = 0;
  int blocks = 0;
  double t_m = 0.0;
  std::array<std::array<std::int64_t, 2>, 2> E{};
  std::int64_t det_E = 0;
  std::int64_t trace_E = 0;
  Eigen::Matrix2d eigenvectors;  // columns (1, -mu_+), (1, -mu_-)
  Eigen::Matrix2d C;             // E_m = C^{-1} exp(t_m diag(1,-1)) C
  double residual = 0.0;         // max |C E C^{-1} - diag(e^t, e^-t)| over all blocks
  double identity_error = 0.0;   // |e^t + e^-t - m|
};

inline constexpr double kBockIdentityTolerance = 1e-12;
inline constexpr double kConjugacyTolerance = 1e-9;

/// t_m = ln((m + sqrt(m^2 - 4)) / 2), so that e^t + e^-t = m.
inline double bock_parameter(int m) {
  if (m < 3) throw Error(ErrorKind::domain, "m must be at least 3 (m = " + std::to_string(m) + ")");
  const double md = static_cast<double>(m);
  const double t = std::log((md + std::sqrt(md * md - 4.0)) / 2.0);
  if (std::abs(std::exp(t) + std::exp(-t) - md) > kBockIdentityTolerance)
    throw std::logic_error("e^t + e^-t drifted from m");
  return t;
}

inline LatticeCertificate companion_conjugacy(int m, int blocks) {
  if (m < 3) throw Error(ErrorKind::domain, "m must be at least 3 (m = " + std::to_string(m) + ")");
  if (blocks < 1) throw Error(ErrorKind::domain, "blocks must be at least 1");
  LatticeCertificate cert;
  cert.m = m;
  cert.blocks = blocks;
  cert.t_m = bock_parameter(m);
  cert.E = {{{0, -1}, {1, m}}};
  cert.det_E = cert.E[0][0] * cert.E[1][1] - cert.E[0][1] * cert.E[1][0];
  cert.trace_E = cert.E[0][0] + cert.E[1][1];

  const double md = static_cast<double>(m);
  const double root = std::sqrt(md * md - 4.0);
  const double mu_plus = (md + root) / 2.0;
  const double mu_minus = (md - root) / 2.0;
  cert.eigenvectors << 1.0, 1.0, -mu_plus, -mu_minus;
  cert.C = cert.eigenvectors.inverse();
  cert.identity_error = std::abs(std::exp(cert.t_m) + std::exp(-cert.t_m) - md);

  const auto size = static_cast<Eigen::Index>(2 * blocks);
  Eigen::MatrixXd block_e = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd block_c = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(size, size);
  Eigen::Matrix2d e;
  e << 0.0, -1.0, 1.0, md;
  for (Eigen::Index b = 0; b < blocks; ++b) {
    block_e.block<2, 2>(2 * b, 2 * b) = e;
    block_c.block<2, 2>(2 * b, 2 * b) = cert.C;
    flow(2 * b, 2 * b) = std::exp(cert.t_m);
    flow(2 * b + 1, 2 * b + 1) = std::exp(-cert.t_m);
  }
  const Eigen::MatrixXd conjugated = block_c * block_e * block_c.inverse();
  cert.residual = (conjugated - flow).cwiseAbs().maxCoeff();
  return cert;
}

inline bool certificate_ok(const LatticeCertificate& c) {
  return c.det_E == 1 && c.trace_E == c.m && c.identity_error <= kBockIdentityTolerance &&
         c.residual <= kConjugacyTolerance;
}

}  // namespace lcp
