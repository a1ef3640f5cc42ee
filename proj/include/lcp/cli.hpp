#pragma once

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcp/io.hpp"
#include "lcp/lattice.hpp"
#include "lcp/lee.hpp"

namespace lcp {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::usage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::usage, "cannot write " + path);
  f << text;
}

inline Vector parse_rational_list(const std::string& s) {
  Vector out;
  for (const auto& piece : split_names(s)) out.push_back(parse_rational(piece));
  return out;
}

inline std::string format_double(double x, int digits = 10) {
  std::ostringstream ss;
  ss << std::setprecision(digits) << std::fixed << x;
  return ss.str();
}

inline std::string format_sci(double x) {
  std::ostringstream ss;
  ss << std::setprecision(3) << std::scientific << x;
  return ss.str();
}

struct ExampleArgs {
  std::string name;
  int p = 1;
  std::string theta;
  std::string mu = "1";
  std::string lambda = "1";
  std::string x0 = "0,0,0";
  int d = 2;
  std::string output;
};

inline CandidateDocument build_example(const ExampleArgs& a) {
  std::map<std::string, std::string> meta{{"name", a.name}};
  if (a.name == "rp") {
    if (a.p != 1 && a.p != 2) throw Error(ErrorKind::domain, "--p must be 1 or 2");
    const auto p = static_cast<std::size_t>(a.p);
    Vector theta = a.theta.empty() ? unit_vector(p, 0) : parse_rational_list(a.theta);
    if (theta.size() != p) throw Error(ErrorKind::malformed_input, "--theta needs " + std::to_string(p) + " entries");
    return {example_rp(p, Metric::identity(p), OneForm(theta)), meta};
  }
  if (a.name == "su2r") {
    const Vector x0 = parse_rational_list(a.x0);
    if (x0.size() != 3) throw Error(ErrorKind::malformed_input, "--x0 needs 3 entries");
    meta["mu"] = a.mu;
    meta["lambda"] = a.lambda;
    meta["x0"] = a.x0;
    return {example_su2r(parse_rational(a.mu), parse_rational(a.lambda), x0), meta};
  }
  if (a.name == "sol3") return {example_sol3(), meta};
  if (a.name == "so3") return {example_so3(), meta};
  if (a.name == "sld") {
    if (a.d < 2) throw Error(ErrorKind::domain, "--d must be at least 2");
    meta["d"] = std::to_string(a.d);
    return {example_sld(static_cast<std::size_t>(a.d)), meta};
  }
  throw Error(ErrorKind::usage, "unknown example " + a.name + " (expected rp, su2r, sol3, so3 or sld)");
}

}  // namespace detail

/// Entry point shared by the executable and the tests. Exit codes: 0 pass,
/// 1 verification failed, 2 input or usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify and construct LCP structures on metric Lie algebras", "lcp"};
  app.require_subcommand(1);

  std::string check_file;
  bool check_json = false;
  auto* check = app.add_subcommand("check", "verify a candidate document");
  check->add_option("file", check_file, "candidate document")->required();
  check->add_flag("--json", check_json, "machine-readable report");

  detail::ExampleArgs ex;
  auto* example = app.add_subcommand("example", "emit a built-in example document");
  example->add_option("name", ex.name, "rp, su2r, sol3, so3 or sld")->required();
  example->add_option("--p", ex.p, "dimension for rp (1 or 2)");
  example->add_option("--theta", ex.theta, "Lee form for rp, comma-separated rationals");
  example->add_option("--mu", ex.mu, "su2r scale");
  example->add_option("--lambda", ex.lambda, "su2r lambda");
  example->add_option("--x0", ex.x0, "su2r offset in su(2), comma-separated");
  example->add_option("--d", ex.d, "sld matrix size");
  example->add_option("-o,--output", ex.output, "output file (stdout if absent)");

  std::string h_file, beta_kind = "zero", extend_out;
  int q = 1;
  auto* extend = app.add_subcommand("extend", "unimodular LCP extension of a metric algebra");
  extend->set_help_flag("--help", "Print this help message and exit");
  extend->add_option("--h", h_file, "document holding the acting algebra and its metric")->required();
  extend->add_option("--q", q, "dimension of the flat factor")->required();
  extend->add_option("--beta", beta_kind, "zero or rotation")->check(CLI::IsMember({"zero", "rotation"}));
  extend->add_option("-o,--output", extend_out, "output file (stdout if absent)");

  std::string lee_file;
  double tol = 1e-9;
  auto* lee = app.add_subcommand("lee", "enumerate candidate Lee forms");
  lee->add_option("file", lee_file, "candidate document")->required();
  lee->add_option("--tol", tol, "matching tolerance");

  int m = 3, blocks = 1;
  auto* lattice = app.add_subcommand("lattice", "certificate for the companion-matrix conjugacy");
  lattice->add_option("--m", m, "integer m >= 3")->required();
  lattice->add_option("--blocks", blocks, "number of 2x2 blocks");

  std::vector<std::string> storage{"lcp"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*check) {
      const LcpCandidate c = parse_candidate(detail::read_file(check_file));
      const CheckOutcome o = check_candidate(c);
      out << (check_json ? o.document.dump(2) + "\n" : render_text(o));
      return exit_code(o);
    }
    if (*example) {
      detail::write_output(ex.output, serialize_document(detail::build_example(ex)), out);
      return 0;
    }
    if (*extend) {
      if (q < 1) throw Error(ErrorKind::domain, "--q must be at least 1");
      const auto uq = static_cast<std::size_t>(q);
      auto [h, hm] = parse_metric_algebra(detail::read_file(h_file));
      if (!validate_algebra(h).valid()) throw Error(ErrorKind::malformed_input, "acting algebra violates the Lie axioms");
      OrthogonalRep beta = OrthogonalRep::zero(h.dim(), uq);
      if (beta_kind == "rotation") {
        const ClosedForms closed = closed_one_form_basis(h);
        if (closed.forms.empty()) throw Error(ErrorKind::closedness, "no nonzero closed form to rotate by");
        beta = rotation_rep(h, closed.forms.front(), uq);
      }
      const LcpCandidate c = lcp_extension(h, hm, beta, uq);
      detail::write_output(extend_out, serialize_candidate(c, {{"name", "extension"}, {"beta", beta_kind}}), out);
      return 0;
    }
    if (*lee) {
      const LcpCandidate c = parse_candidate(detail::read_file(lee_file));
      const LeeEnumeration e = enumerate_lee_candidates(c.algebra, tol);
      out << "candidates: " << e.candidates.size() << "\n";
      if (!e.note.empty()) out << "note: " << e.note << "\n";
      bool found = false;
      for (const auto& cand : e.candidates) {
        bool match = true;
        for (std::size_t k = 0; k < cand.coeffs.size(); ++k)
          if (std::abs(cand.coeffs[k] - c.theta[k].get_d()) > tol) match = false;
        found = found || match;
        out << (match ? "* " : "  ") << "q=" << cand.q << " [";
        for (std::size_t k = 0; k < cand.coeffs.size(); ++k)
          out << (k ? ", " : "") << std::setprecision(12) << cand.coeffs[k];
        out << "]\n";
      }
      out << "theta_found: " << (found ? "true" : "false") << "\n";
      return 0;
    }
    if (*lattice) {
      const LatticeCertificate cert = companion_conjugacy(m, blocks);
      out << "m: " << cert.m << "\n"
          << "blocks: " << cert.blocks << "\n"
          << "t_m: " << detail::format_double(cert.t_m) << "\n"
          << "E: [[" << cert.E[0][0] << ", " << cert.E[0][1] << "], [" << cert.E[1][0] << ", " << cert.E[1][1] << "]]\n"
          << "det_E: " << cert.det_E << "\n"
          << "trace_E: " << cert.trace_E << "\n"
          << "C: [[" << detail::format_double(cert.C(0, 0)) << ", " << detail::format_double(cert.C(0, 1)) << "], ["
          << detail::format_double(cert.C(1, 0)) << ", " << detail::format_double(cert.C(1, 1)) << "]]\n"
          << "identity_error: " << detail::format_sci(cert.identity_error) << "\n"
          << "residual: " << detail::format_sci(cert.residual) << "\n"
          << "result: " << (certificate_ok(cert) ? "PASS" : "FAIL") << "\n";
      return certificate_ok(cert) ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace lcp
