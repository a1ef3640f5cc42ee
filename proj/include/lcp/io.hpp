#pragma once

#include "json.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lcp/verify.hpp"

namespace lcp {

/// A candidate together with the free-form string metadata of its document.
/// Basis names travel inside the algebra, not in meta.
struct CandidateDocument {
  LcpCandidate candidate;
  std::map<std::string, std::string> meta;
};

namespace detail {

using json = nlohmann::json;

inline const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields{"dim", "brackets", "metric", "theta", "u_basis", "meta"};
  return fields;
}

inline ParseError syntax_error(const std::string& text, std::size_t byte, const std::string& what) {
  // byte is 1-based and may point one past the end.
  std::size_t line = 1, column = 1;
  const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(what, line, column);
}

inline const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw Error(ErrorKind::parse, std::string("missing field ") + name);
  return *it;
}

inline Rational rational_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw Error(ErrorKind::malformed_input, where + ": rationals must be written as strings");
  return parse_rational(v.get_ref<const std::string&>());
}

inline Vector rational_row(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array()) throw Error(ErrorKind::parse, where + ": expected an array");
  if (v.size() != n)
    throw Error(ErrorKind::malformed_input,
                where + ": dimension mismatch (expected " + std::to_string(n) + ", got " + std::to_string(v.size()) + ")");
  Vector out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(rational_at(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::size_t index_at(const json& entry, const char* key, std::size_t n, std::size_t pos) {
  const std::string where = "brackets[" + std::to_string(pos) + "]." + key;
  auto it = entry.find(key);
  if (it == entry.end()) throw Error(ErrorKind::parse, "missing field " + where);
  if (!it->is_number_unsigned()) throw Error(ErrorKind::malformed_input, where + ": expected a non-negative integer");
  const auto value = it->get<std::uint64_t>();
  if (value >= n) throw Error(ErrorKind::malformed_input, where + ": index out of range");
  return static_cast<std::size_t>(value);
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct Parsed {
  std::size_t dim = 0;
  LieAlgebra algebra{0};
  std::optional<Metric> metric;
  std::optional<OneForm> theta;
  std::optional<Subspace> u;
  std::map<std::string, std::string> meta;
};

inline Parsed parse_fields(const std::string& text, bool require_all) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw syntax_error(text, e.byte, "syntax error");
  }
  if (!doc.is_object()) throw Error(ErrorKind::parse, "document must be a JSON object");
  for (const auto& item : doc.items())
    if (!known_fields().count(item.key())) throw Error(ErrorKind::parse, "unknown field " + item.key());

  Parsed p;
  const json& dim = field(doc, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::uint64_t>() == 0)
    throw Error(ErrorKind::malformed_input, "dim must be a positive integer");
  const std::size_t n = p.dim = dim.get<std::size_t>();

  const json& brackets = field(doc, "brackets");
  if (!brackets.is_array()) throw Error(ErrorKind::parse, "brackets: expected an array");
  std::vector<BracketEntry> entries;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t pos = 0; pos < brackets.size(); ++pos) {
    const json& e = brackets[pos];
    if (!e.is_object()) throw Error(ErrorKind::parse, "brackets[" + std::to_string(pos) + "]: expected an object");
    const std::size_t i = index_at(e, "i", n, pos), j = index_at(e, "j", n, pos), k = index_at(e, "k", n, pos);
    if (i >= j) throw Error(ErrorKind::malformed_input, "brackets[" + std::to_string(pos) + "]: need i < j");
    if (!seen.insert({i, j, k}).second)
      throw Error(ErrorKind::malformed_input, "brackets[" + std::to_string(pos) + "]: duplicate entry");
    auto coeff = e.find("coeff");
    if (coeff == e.end()) throw Error(ErrorKind::parse, "missing field brackets[" + std::to_string(pos) + "].coeff");
    entries.push_back({i, j, k, rational_at(*coeff, "brackets[" + std::to_string(pos) + "].coeff")});
  }
  p.algebra = LieAlgebra::from_brackets(n, entries);

  if (doc.contains("meta")) {
    const json& meta = doc["meta"];
    if (!meta.is_object()) throw Error(ErrorKind::parse, "meta: expected an object");
    for (const auto& item : meta.items()) {
      if (!item.value().is_string()) throw Error(ErrorKind::malformed_input, "meta." + item.key() + ": expected a string");
      p.meta[item.key()] = item.value().get<std::string>();
    }
    if (auto it = p.meta.find("basis_names"); it != p.meta.end()) {
      p.algebra.set_basis_names(split_names(it->second));
      p.meta.erase(it);
    }
  }

  const json& metric = field(doc, "metric");
  if (!metric.is_array()) throw Error(ErrorKind::parse, "metric: expected an array");
  if (metric.size() != n)
    throw Error(ErrorKind::malformed_input, "metric: dimension mismatch (expected " + std::to_string(n) + " rows)");
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < n; ++r) rows.push_back(rational_row(metric[r], n, "metric[" + std::to_string(r) + "]"));
  Matrix gram(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) gram(r, c) = rows[r][c];
  p.metric.emplace(std::move(gram));

  if (require_all || doc.contains("theta")) p.theta.emplace(rational_row(field(doc, "theta"), n, "theta"));
  if (require_all || doc.contains("u_basis")) {
    const json& ub = field(doc, "u_basis");
    if (!ub.is_array()) throw Error(ErrorKind::parse, "u_basis: expected an array");
    std::vector<Vector> cols;
    for (std::size_t a = 0; a < ub.size(); ++a) cols.push_back(rational_row(ub[a], n, "u_basis[" + std::to_string(a) + "]"));
    p.u.emplace(Matrix::from_columns(n, cols));
  }
  return p;
}

inline std::string quoted(const std::string& s) { return json(s).dump(); }

inline std::string rational_list(const Vector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += quoted(to_string(v[i]));
  }
  return out + "]";
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].find(',') != std::string::npos)
      throw Error(ErrorKind::malformed_input, "basis names may not contain commas");
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

}  // namespace detail

inline CandidateDocument parse_document(const std::string& text) {
  detail::Parsed p = detail::parse_fields(text, true);
  return {{std::move(p.algebra), std::move(*p.metric), std::move(*p.theta), std::move(*p.u)}, std::move(p.meta)};
}

inline LcpCandidate parse_candidate(const std::string& text) { return parse_document(text).candidate; }

/// Metric algebra from a document where theta and u_basis may be absent.
inline std::pair<LieAlgebra, Metric> parse_metric_algebra(const std::string& text) {
  detail::Parsed p = detail::parse_fields(text, false);
  return {std::move(p.algebra), std::move(*p.metric)};
}

/// Canonical text: fixed key order, lowest-terms rationals, one bracket per line.
inline std::string serialize_candidate(const LcpCandidate& c, const std::map<std::string, std::string>& meta = {}) {
  check_shapes(c);
  const std::size_t n = c.algebra.dim();
  std::ostringstream out;
  out << "{\n  \"dim\": " << n << ",\n  \"brackets\": [";
  const auto entries = c.algebra.entries();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& b = entries[e];
    out << (e ? ",\n    " : "\n    ") << "{\"i\": " << b.i << ", \"j\": " << b.j << ", \"k\": " << b.k
        << ", \"coeff\": " << detail::quoted(to_string(b.coeff)) << "}";
  }
  out << (entries.empty() ? "],\n" : "\n  ],\n");
  out << "  \"metric\": [";
  for (std::size_t r = 0; r < n; ++r) out << (r ? ",\n    " : "\n    ") << detail::rational_list(c.metric.gram().row(r));
  out << "\n  ],\n";
  out << "  \"theta\": " << detail::rational_list(c.theta.coeffs) << ",\n";
  out << "  \"u_basis\": [";
  for (std::size_t a = 0; a < c.u.dim(); ++a) out << (a ? ",\n    " : "\n    ") << detail::rational_list(c.u.vector(a));
  out << (c.u.dim() == 0 ? "],\n" : "\n  ],\n");

  std::map<std::string, std::string> all = meta;
  if (!c.algebra.basis_names().empty()) all["basis_names"] = detail::join_names(c.algebra.basis_names());
  out << "  \"meta\": {";
  bool first = true;
  for (const auto& [k, v] : all) {
    out << (first ? "" : ", ") << detail::quoted(k) << ": " << detail::quoted(v);
    first = false;
  }
  out << "}\n}\n";
  return out.str();
}

inline std::string serialize_document(const CandidateDocument& d) { return serialize_candidate(d.candidate, d.meta); }

/// Structural equality used for round trips (basis names included).
inline bool same_candidate(const LcpCandidate& a, const LcpCandidate& b) {
  return a.algebra == b.algebra && a.algebra.basis_names() == b.algebra.basis_names() && a.metric == b.metric &&
         a.theta == b.theta && a.u.basis() == b.u.basis();
}

// ---------------------------------------------------------------------------
// Reports

struct CheckOutcome {
  nlohmann::ordered_json document;
  bool is_lcp = false;
};

inline int exit_code(const CheckOutcome& o) { return o.is_lcp ? 0 : 1; }

namespace detail {

inline nlohmann::ordered_json rationals_json(const Vector& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& x : v) arr.push_back(to_string(x));
  return arr;
}

inline nlohmann::ordered_json witness_json(const Witness& w) {
  return {{"condition", w.condition}, {"i", w.i}, {"j", w.j}, {"residual", rationals_json(w.residual)}};
}

}  // namespace detail

/// Runs the structure check, verify, and whichever extras apply.
inline CheckOutcome check_candidate(const LcpCandidate& c) {
  using oj = nlohmann::ordered_json;
  check_shapes(c);
  CheckOutcome out;
  oj& doc = out.document;
  doc["dim"] = c.algebra.dim();
  doc["q"] = c.u.dim();

  const StructureReport structure = validate_algebra(c.algebra);
  doc["valid_algebra"] = structure.valid();
  if (!structure.valid()) {
    doc["is_lcp"] = false;
    auto ws = oj::array();
    for (const auto& v : structure.jacobi_violations)
      ws.push_back({{"condition", "jacobi"}, {"i", v.i}, {"j", v.j}, {"k", v.k}, {"residual", detail::rationals_json(v.jacobiator)}});
    for (const auto& a : structure.antisymmetry_violations)
      ws.push_back({{"condition", "antisymmetry"}, {"i", a[0]}, {"j", a[1]}, {"k", a[2]}, {"residual", oj::array()}});
    doc["witnesses"] = std::move(ws);
    return out;
  }

  const VerificationReport r = verify(c);
  out.is_lcp = r.is_lcp;
  doc["theta_closed"] = r.theta_closed;
  doc["theta_nonzero"] = r.theta_nonzero;
  doc["u_nonzero"] = r.u_nonzero;
  doc["cond1_subalgebras"] = r.cond1_subalgebras;
  doc["cond2_xu"] = r.cond2_xu;
  doc["cond3_representation"] = r.cond3_representation;
  doc["is_lcp"] = r.is_lcp;
  doc["proper"] = r.is_proper;
  doc["adapted"] = r.is_adapted;
  doc["conformally_flat"] = r.is_conformally_flat;
  const bool unimodular = is_unimodular(c.algebra);
  doc["unimodular"] = unimodular;
  doc["trace_form"] = detail::rationals_json(trace_form(c.algebra).coeffs);
  doc["dim_bound_ok"] = r.dim_bound_ok ? oj(*r.dim_bound_ok) : oj(nullptr);
  doc["trace_relations_ok"] = r.trace_relations_ok ? oj(*r.trace_relations_ok) : oj(nullptr);

  if (r.is_proper && subspace_relations(c.algebra, c.metric, c.u).is_ideal)
    doc["recovered_theta_matches"] = recover_theta(c.algebra, c.u) == c.theta;
  if (r.is_conformally_flat) {
    const CflatIdentityReport id = check_cflat_identities(c.algebra, c.metric, c.theta);
    doc["cflat_identities"] = id.curvature_identity && id.norm_identity;
    doc["nabla_theta_zero"] = id.nabla_theta_zero;
    doc["weyl_kernel_dim"] = weyl_kernel(c.algebra, c.metric, c.theta).kernel.dim();
    if (unimodular) doc["cflat_shape"] = to_string(cflat_fingerprint(c.algebra));
  }

  auto ws = oj::array();
  for (const auto& w : r.witnesses) ws.push_back(detail::witness_json(w));
  doc["witnesses"] = std::move(ws);
  return out;
}

/// "key: value" lines; witnesses one per line.
inline std::string render_text(const CheckOutcome& o) {
  std::ostringstream out;
  for (const auto& [key, value] : o.document.items()) {
    if (key == "witnesses") continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  for (const auto& w : o.document["witnesses"]) {
    out << "witness " << w["condition"].get<std::string>() << " (" << w["i"] << ", " << w["j"];
    if (w.contains("k")) out << ", " << w["k"];
    out << "): " << w["residual"].dump() << "\n";
  }
  out << "result: " << (o.is_lcp ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace lcp
