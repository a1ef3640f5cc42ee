#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lcp/cli.hpp"

using namespace lcp;
namespace fs = std::filesystem;

namespace {

const std::string kSol3 = R"({
  "dim": 3,
  "brackets": [
    {"i": 0, "j": 1, "k": 1, "coeff": "1"},
    {"i": 0, "j": 2, "k": 2, "coeff": "-1"}
  ],
  "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
  "theta": ["-1", "0", "0"],
  "u_basis": [["0", "0", "1"]]
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "lcp_io_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

std::vector<fs::path> shipped_documents() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(LCP_DATA_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Parse, Sol3DocumentVerifies) {
  const LcpCandidate c = parse_candidate(kSol3);
  EXPECT_EQ(c.algebra, example_sol3().algebra);
  EXPECT_TRUE(verify(c).is_lcp);
}

TEST(Parse, Errors) {
  try {
    parse_candidate(replace(kSol3, "\"coeff\": \"1\"", "\"coeff\": \"1/0\""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_input);
    EXPECT_NE(std::string(e.what()).find("malformed rational"), std::string::npos);
  }
  try {
    parse_candidate(replace(kSol3, "\"theta\": [\"-1\", \"0\", \"0\"],", ""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("missing field theta"), std::string::npos);
  }
  try {
    parse_candidate(replace(kSol3, "\"dim\": 3,\n", "\"dim\": 3\n"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
  try {
    parse_candidate(replace(kSol3, "[\"0\", \"0\", \"1\"]]", "[\"0\", \"1\"]]"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_input);
    EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
  }
  EXPECT_THROW(parse_candidate(replace(kSol3, "\"i\": 0, \"j\": 2", "\"i\": 2, \"j\": 0")), Error);
  EXPECT_THROW(parse_candidate(replace(kSol3, "\"i\": 0, \"j\": 2, \"k\": 2", "\"i\": 0, \"j\": 1, \"k\": 1")), Error);
  EXPECT_THROW(parse_candidate(replace(kSol3, "\"coeff\": \"1\"", "\"coeff\": 1")), Error);
  EXPECT_THROW(parse_candidate(replace(kSol3, "\"dim\": 3", "\"dim\": 3, \"extra\": 1")), Error);
  try {
    parse_candidate(replace(kSol3, "[\"1\", \"0\", \"0\"], [\"0\", \"1\"", "[\"-1\", \"0\", \"0\"], [\"0\", \"1\""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::metric);
  }
}

TEST(Serialize, CanonicalAndIdempotent) {
  const LcpCandidate c = parse_candidate(kSol3);
  const std::string once = serialize_candidate(c);
  const std::string twice = serialize_candidate(parse_candidate(once));
  EXPECT_EQ(once, twice);
  EXPECT_NE(once.find("{\"i\": 0, \"j\": 2, \"k\": 2, \"coeff\": \"-1\"}"), std::string::npos);

  const std::string messy = replace(kSol3, "\"coeff\": \"1\"", "\"coeff\": \"2/2\"");
  EXPECT_EQ(serialize_candidate(parse_candidate(messy)), once);
}

TEST(Serialize, RoundTripFactories) {
  for (const LcpCandidate& c : {example_sol3(), example_su2r(1, 1, Vector{1, 0, 0}), example_sld(2), example_so3()}) {
    const std::string text = serialize_candidate(c, {{"name", "x"}});
    const CandidateDocument back = parse_document(text);
    EXPECT_TRUE(same_candidate(back.candidate, c));
    EXPECT_EQ(back.meta.at("name"), "x");
    EXPECT_EQ(serialize_document(back), text);
  }
}

TEST(Serialize, RoundTripShippedDocuments) {
  std::size_t parsed = 0;
  for (const auto& path : shipped_documents()) {
    const std::string text = detail::read_file(path.string());
    std::optional<CandidateDocument> d;
    try {
      d = parse_document(text);
    } catch (const Error&) {
      continue;  // the deliberately malformed member of the corpus
    }
    ++parsed;
    EXPECT_EQ(serialize_document(*d), text) << path;
  }
  EXPECT_GE(parsed, 5u);
}

TEST(Report, JsonFieldsAndExitCodes) {
  const CheckOutcome ok = check_candidate(example_sol3());
  EXPECT_EQ(exit_code(ok), 0);
  EXPECT_EQ(ok.document["adapted"], true);
  EXPECT_EQ(ok.document["trace_relations_ok"], true);
  EXPECT_EQ(ok.document["recovered_theta_matches"], true);
  EXPECT_NE(render_text(ok).find("adapted: true"), std::string::npos);

  const CheckOutcome cf = check_candidate(example_su2r(1, 1, Vector{0, 0, 0}));
  EXPECT_EQ(cf.document["cflat_shape"], "SU2_R");
  EXPECT_EQ(cf.document["weyl_kernel_dim"], 0);

  const LcpCandidate r3{LieAlgebra(3), Metric::identity(3), OneForm(Vector{1, 0, 0}), Subspace::whole(3)};
  const CheckOutcome bad = check_candidate(r3);
  EXPECT_EQ(exit_code(bad), 1);
  EXPECT_FALSE(bad.document["witnesses"].empty());
}

TEST(Cli, CheckCorpus) {
  const CliRun pass = run({"check", std::string(LCP_DATA_DIR) + "/sol3.json"});
  EXPECT_EQ(pass.code, 0);
  EXPECT_NE(pass.out.find("adapted: true"), std::string::npos);

  const CliRun broken = run({"check", std::string(LCP_DATA_DIR) + "/broken.json"});
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.out.find("witness jacobi"), std::string::npos);

  const CliRun malformed = run({"check", std::string(LCP_DATA_DIR) + "/malformed.json"});
  EXPECT_EQ(malformed.code, 2);
  EXPECT_NE(malformed.err.find("line"), std::string::npos);

  const CliRun json = run({"check", std::string(LCP_DATA_DIR) + "/sol3.json", "--json"});
  EXPECT_EQ(json.code, 0);
  const auto doc = nlohmann::json::parse(json.out);
  EXPECT_EQ(doc["is_lcp"], true);

  EXPECT_EQ(run({"check", "/nonexistent/file.json"}).code, 2);
}

TEST(Cli, ExitCodeFollowsIsLcp) {
  for (const auto& path : shipped_documents()) {
    const CliRun r = run({"check", path.string(), "--json"});
    if (r.code == 2) continue;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(r.code == 0, doc["is_lcp"].get<bool>()) << path;
  }
}

TEST(Cli, ExamplesPassCheck) {
  const std::vector<std::vector<std::string>> cases{
      {"rp", "--p", "2", "--theta", "3,4"}, {"su2r", "--mu", "1/2", "--lambda", "2", "--x0", "1,0,0"},
      {"sol3"}, {"so3"}, {"sld", "--d", "2"}};
  for (const auto& args : cases) {
    const fs::path out = fs::temp_directory_path() / "lcp_io_tests" / (args[0] + ".json");
    fs::create_directories(out.parent_path());
    std::vector<std::string> full{"example"};
    full.insert(full.end(), args.begin(), args.end());
    full.push_back("-o");
    full.push_back(out.string());
    ASSERT_EQ(run(full).code, 0) << args[0];
    EXPECT_EQ(run({"check", out.string()}).code, 0) << args[0];
  }
  const CliRun stdout_doc = run({"example", "sol3"});
  EXPECT_EQ(stdout_doc.code, 0);
  EXPECT_TRUE(same_candidate(parse_candidate(stdout_doc.out), example_sol3()));
  EXPECT_EQ(run({"example", "nope"}).code, 2);
  EXPECT_EQ(run({"example", "rp", "--p", "3"}).code, 2);
}

TEST(Cli, Extend) {
  const fs::path h = temp_file("bp.json", R"({"dim": 2, "brackets": [{"i": 0, "j": 1, "k": 1, "coeff": "1"}],
    "metric": [["1", "0"], ["0", "1"]]})");
  const CliRun r = run({"extend", "--h", h.string(), "--q", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const LcpCandidate c = parse_candidate(r.out);
  EXPECT_EQ(c.algebra, example_sol3().algebra);

  const CliRun rot = run({"extend", "--h", h.string(), "--q", "2", "--beta", "rotation"});
  ASSERT_EQ(rot.code, 0) << rot.err;
  const LcpCandidate rc = parse_candidate(rot.out);
  EXPECT_TRUE(verify(rc).is_adapted);
  EXPECT_TRUE(is_unimodular(rc.algebra));

  const fs::path su = temp_file("su2.json", R"({"dim": 3, "brackets": [{"i": 0, "j": 1, "k": 2, "coeff": "1"},
    {"i": 0, "j": 2, "k": 1, "coeff": "-1"}, {"i": 1, "j": 2, "k": 0, "coeff": "1"}],
    "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})");
  EXPECT_EQ(run({"extend", "--h", su.string(), "--q", "1"}).code, 2);
  EXPECT_EQ(run({"extend", "--h", h.string(), "--q", "1", "--beta", "other"}).code, 2);
}

TEST(Cli, LeeAndLattice) {
  const CliRun lee = run({"lee", std::string(LCP_DATA_DIR) + "/sol3.json"});
  EXPECT_EQ(lee.code, 0);
  EXPECT_NE(lee.out.find("theta_found: true"), std::string::npos);
  EXPECT_NE(lee.out.find("* q=1 [-1, 0, 0]"), std::string::npos);

  const CliRun lat = run({"lattice", "--m", "3", "--blocks", "3"});
  EXPECT_EQ(lat.code, 0);
  EXPECT_NE(lat.out.find("t_m: 0.9624236501"), std::string::npos);
  EXPECT_NE(lat.out.find("result: PASS"), std::string::npos);
  EXPECT_EQ(run({"lattice", "--m", "2"}).code, 2);
}

TEST(Cli, Usage) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
