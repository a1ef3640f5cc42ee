#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcp/metric_geometry.hpp"

namespace lcp {

/// (algebra, metric, Lee form, flat subspace). Shapes are checked by verify;
/// degenerate theta or u are reported there rather than rejected here.
struct LcpCandidate {
  LieAlgebra algebra;
  Metric metric;
  OneForm theta;
  Subspace u;
};

struct VerificationReport {
  bool theta_closed = false;
  bool theta_nonzero = false;
  bool u_nonzero = false;
  bool cond1_subalgebras = false;
  bool cond2_xu = false;
  bool cond3_representation = false;
  bool is_lcp = false;
  bool is_proper = false;
  bool is_adapted = false;
  bool is_conformally_flat = false;
  std::optional<bool> dim_bound_ok;
  std::optional<bool> trace_relations_ok;
  std::vector<Witness> witnesses;
};

inline void check_shapes(const LcpCandidate& c) {
  const std::size_t n = c.algebra.dim();
  if (c.metric.dim() != n || c.theta.size() != n || c.u.ambient_dim() != n)
    throw Error(ErrorKind::malformed_input, "candidate components have inconsistent dimensions");
}

/// Trace form of the subalgebra s evaluated on each of its basis vectors.
inline Vector subalgebra_trace_form(const LieAlgebra& l, const Subspace& s) {
  Vector h(s.dim());
  for (std::size_t a = 0; a < s.dim(); ++a) {
    auto restricted = restrict_to(ad_matrix(l, s.vector(a)), s.basis());
    if (!restricted) throw Error(ErrorKind::malformed_input, "subspace is not a subalgebra");
    h[a] = restricted->trace();
  }
  return h;
}

namespace detail {

inline bool trace_relations_hold(const LcpCandidate& c) {
  const std::size_t n = c.algebra.dim();
  const std::size_t q = c.u.dim();
  const Subspace perp = orthogonal_complement(c.u, c.metric);
  const Vector hu = subalgebra_trace_form(c.algebra, c.u);
  for (std::size_t a = 0; a < q; ++a)
    if (hu[a] != -Rational(static_cast<long>(n - q)) * c.theta(c.u.vector(a))) return false;
  const Vector hp = subalgebra_trace_form(c.algebra, perp);
  for (std::size_t a = 0; a < perp.dim(); ++a)
    if (hp[a] != -Rational(static_cast<long>(q)) * c.theta(perp.vector(a))) return false;
  return true;
}

}  // namespace detail

/// Checks the three algebraic LCP conditions and classifies the structure.
inline VerificationReport verify(const LcpCandidate& c) {
  check_shapes(c);
  const LieAlgebra& l = c.algebra;
  const Metric& g = c.metric;
  const std::size_t n = l.dim();
  const std::size_t q = c.u.dim();
  VerificationReport rep;

  if (auto w = closedness_witness(l, c.theta)) rep.witnesses.push_back(*w);
  else rep.theta_closed = true;
  rep.theta_nonzero = !c.theta.is_zero();
  rep.u_nonzero = q > 0;

  // (1) u and its orthogonal complement are subalgebras.
  SubspaceRelations rel = subspace_relations(l, g, c.u);
  rep.cond1_subalgebras = rel.is_subalgebra && rel.perp_is_subalgebra;
  for (auto& w : rel.witnesses)
    if (w.condition == "subalgebra" || w.condition == "perp-subalgebra") rep.witnesses.push_back(std::move(w));

  // (2) g([u,x],x) = theta(u)|x|^2 and g([x,u],u) = theta(x)|u|^2, polarised.
  const Subspace perp = orthogonal_complement(c.u, g);
  rep.cond2_xu = true;
  for (std::size_t a = 0; a < q; ++a) {
    const Vector u = c.u.vector(a);
    for (std::size_t x1 = 0; x1 < perp.dim(); ++x1)
      for (std::size_t x2 = x1; x2 < perp.dim(); ++x2) {
        const Vector x = perp.vector(x1), y = perp.vector(x2);
        const Rational res = g.inner(l.bracket(u, x), y) + g.inner(l.bracket(u, y), x) - 2 * c.theta(u) * g.inner(x, y);
        if (sgn(res) != 0) {
          rep.cond2_xu = false;
          rep.witnesses.push_back({"xu-first", a, x1, Vector{res}});
        }
      }
  }
  for (std::size_t x1 = 0; x1 < perp.dim(); ++x1) {
    const Vector x = perp.vector(x1);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a; b < q; ++b) {
        const Vector u = c.u.vector(a), v = c.u.vector(b);
        const Rational res = g.inner(l.bracket(x, u), v) + g.inner(l.bracket(x, v), u) - 2 * c.theta(x) * g.inner(u, v);
        if (sgn(res) != 0) {
          rep.cond2_xu = false;
          rep.witnesses.push_back({"xu-second", x1, a, Vector{res}});
        }
      }
  }

  // (3) u is nabla^theta-invariant and x -> nabla^theta_x|_u is a representation.
  rep.cond3_representation = true;
  if (q > 0) {
    const Connection weyl = detail::weyl_from(levi_civita(l, g), g, c.theta);
    const SpanTest in_u(c.u.basis());
    std::vector<Matrix> restricted;
    for (std::size_t i = 0; i < n && rep.cond3_representation; ++i) {
      for (std::size_t a = 0; a < q; ++a) {
        Vector res = in_u.residual(weyl[i] * c.u.vector(a));
        if (!is_zero(res)) {
          rep.cond3_representation = false;
          rep.witnesses.push_back({"parallel", i, a, std::move(res)});
          break;
        }
      }
      if (rep.cond3_representation) restricted.push_back(*restrict_to(weyl[i], c.u.basis()));
    }
    if (rep.cond3_representation) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          Matrix image(q, q);
          for (std::size_t k = 0; k < n; ++k)
            if (sgn(l.constant(i, j, k)) != 0) image += l.constant(i, j, k) * restricted[k];
          Matrix res = commutator(restricted[i], restricted[j]) - image;
          if (!res.is_zero()) {
            rep.cond3_representation = false;
            rep.witnesses.push_back({"representation", i, j, res.flat()});
          }
        }
    }
  }

  rep.is_lcp = rep.theta_closed && rep.theta_nonzero && rep.u_nonzero && rep.cond1_subalgebras && rep.cond2_xu &&
               rep.cond3_representation;
  rep.is_proper = rep.is_lcp && q < n;
  rep.is_conformally_flat = rep.is_lcp && q == n;
  if (rep.is_lcp) {
    rep.is_adapted = true;
    for (std::size_t a = 0; a < q; ++a)
      if (sgn(c.theta(c.u.vector(a))) != 0) rep.is_adapted = false;
  }
  if (rep.is_proper && is_unimodular(l)) {
    rep.dim_bound_ok = q + 2 <= n;
    rep.trace_relations_ok = detail::trace_relations_hold(c);
  }
  return rep;
}

/// theta(x) = tr(ad_x|_U) / dim U for a nonzero ideal U.
inline OneForm recover_theta(const LieAlgebra& l, const Subspace& u) {
  if (u.ambient_dim() != l.dim()) throw Error(ErrorKind::malformed_input, "subspace and algebra dimensions differ");
  if (u.dim() == 0) throw Error(ErrorKind::ideal, "the zero subspace carries no trace information");
  const std::size_t n = l.dim();
  const Rational q(static_cast<long>(u.dim()));
  Vector theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto restricted = restrict_to(ad_basis(l, i), u.basis());
    if (!restricted) throw Error(ErrorKind::ideal, "subspace is not an ideal (fails for e" + std::to_string(i) + ")");
    theta[i] = restricted->trace() / q;
  }
  return OneForm(std::move(theta));
}

struct KernelReport {
  bool abelian_ideal = false;
  bool perp_subalgebra = false;
  bool perp_compact_type = false;
  bool bracket_identity = false;      // [x, y] = nabla^theta_x y for y in the kernel
  bool perp_conformally_flat = false;  // restricted (g, theta) on the complement
  bool unimodular = false;
  bool compact_type = false;
  bool injective = false;
  bool equivalence_holds = false;  // unimodular <=> compact type <=> injective

  bool all() const {
    return abelian_ideal && perp_subalgebra && perp_compact_type && bracket_identity && perp_conformally_flat &&
           equivalence_holds;
  }
};

struct WeylKernel {
  Subspace kernel;
  KernelReport report;
};

/// Kernel of x -> nabla^theta_x for a conformally flat structure.
inline WeylKernel weyl_kernel(const LieAlgebra& l, const Metric& metric, const OneForm& theta) {
  const std::size_t n = l.dim();
  if (!is_conformally_flat_structure(l, metric, theta))
    throw Error(ErrorKind::usage, "weyl_kernel needs a conformally flat LCP structure");
  const Connection weyl = weyl_connection(l, metric, theta);
  Matrix system(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) system(r * n + c, i) = weyl[i](r, c);
  WeylKernel out{Subspace(nullspace(system)), {}};
  const Subspace& ker = out.kernel;
  KernelReport& rep = out.report;

  const SubspaceRelations rel = subspace_relations(l, metric, ker);
  rep.abelian_ideal = rel.is_ideal && rel.is_abelian;
  rep.perp_subalgebra = rel.perp_is_subalgebra;
  const Subspace perp = orthogonal_complement(ker, metric);
  if (rep.perp_subalgebra) {
    const LieAlgebra sub = subalgebra(l, perp);
    rep.perp_compact_type = is_compact_type(sub);
    const Metric sub_metric(perp.basis().transpose() * metric.gram() * perp.basis());
    const OneForm sub_theta(perp.basis().transpose() * theta.coeffs);
    rep.perp_conformally_flat = is_conformally_flat_structure(sub, sub_metric, sub_theta);
  }
  rep.bracket_identity = true;
  for (std::size_t i = 0; i < n && rep.bracket_identity; ++i)
    for (std::size_t a = 0; a < ker.dim(); ++a)
      if (l.bracket(unit_vector(n, i), ker.vector(a)) != weyl[i] * ker.vector(a)) {
        rep.bracket_identity = false;
        break;
      }
  rep.unimodular = is_unimodular(l);
  rep.compact_type = is_compact_type(l);
  rep.injective = ker.dim() == 0;
  rep.equivalence_holds = rep.unimodular == rep.compact_type && rep.compact_type == rep.injective;
  return out;
}

enum class CflatShape { R1, R2, SU2_R, Other };

inline const char* to_string(CflatShape s) {
  switch (s) {
    case CflatShape::R1: return "R1";
    case CflatShape::R2: return "R2";
    case CflatShape::SU2_R: return "SU2_R";
    case CflatShape::Other: return "OTHER";
  }
  return "OTHER";
}

/// Isomorphism-invariant fingerprint of the unimodular algebras that carry
/// conformally flat LCP structures: R, R^2 and su(2) + R.
inline CflatShape cflat_fingerprint(const LieAlgebra& l) {
  if (!is_unimodular(l)) throw Error(ErrorKind::usage, "cflat_fingerprint needs a unimodular algebra");
  const std::size_t n = l.dim();
  const Subspace derived = derived_algebra(l);
  if (n == 1) return CflatShape::R1;
  if (n == 2 && derived.dim() == 0) return CflatShape::R2;
  if (n != 4 || derived.dim() != 3) return CflatShape::Other;
  const LieAlgebra d = subalgebra(l, derived);
  if (!is_positive_definite(-killing_form(d))) return CflatShape::Other;
  const Subspace z = center(l);
  if (z.dim() != 1) return CflatShape::Other;
  if (derived.contains(z.vector(0))) return CflatShape::Other;
  return CflatShape::SU2_R;
}

}  // namespace lcp
