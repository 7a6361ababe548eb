#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "pclyap/cli.h"
#include "pclyap/json_io.h"
#include "test_support.h"

namespace pclyap {
namespace {

using testing::fixture;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pclyap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("pclyap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::filesystem::path dir_;
};

TEST_F(Cli, DeBruijnThenCheckComplete) {
  ASSERT_EQ(run({"graph", "debruijn", "-a", "a,b", "-k", "2", "-o", path("g.json")}).code, 0);
  const auto r = run({"graph", "check", "--complete", path("g.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("complete: true"), std::string::npos);
}

TEST_F(Cli, JsrUpperOnH) {
  const auto r = run({"jsr", "upper", "--graph", fixture("graph_H.json"), "--system",
                      fixture("reference_system.json"), "--tol", "1e-4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), 3.9174, 1e-3);
}

TEST_F(Cli, LonelyLoopIsNotPathComplete) {
  const auto r = run({"graph", "check", "--path-complete", fixture("lonely_loop.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness: b"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  auto r = run({"graph", "check", "--bogus", fixture("graph_H.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"graph", "check", "--complete", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"graph", "check", fixture("graph_H.json")}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, ErrorCodes) {
  EXPECT_EQ(run({"jsr", "upper", "--graph", fixture("lonely_loop.json"), "--system",
                 fixture("reference_system.json")}).code, 1);
  EXPECT_EQ(run({"graph", "check", "--complete", fixture("reference_system.json")}).code, 2);
  EXPECT_EQ(run({"jsr", "lower", "--system", fixture("reference_system.json"), "--max-len", "40"}).code, 3);
}

TEST_F(Cli, StateCapFromEnvironment) {
  ::setenv("PCLYAP_STATE_CAP", "2", 1);
  const auto r = run({"observer", "build", fixture("graph_C2.json")});
  ::unsetenv("PCLYAP_STATE_CAP");
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, JsonFormatAfterSubcommand) {
  const auto r = run({"jsr", "lower", "--system", fixture("reference_system.json"), "--max-len", "2",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::json::parse(r.out);
  EXPECT_NEAR(j.at("rho_lower").get<double>(), 3.9174, 1e-3);
}

TEST_F(Cli, CertificatePipeline) {
  ASSERT_EQ(run({"jsr", "upper", "--graph", fixture("graph_H.json"), "--system",
                 fixture("reference_system.json"), "-o", path("h.json")}).code, 0);
  EXPECT_EQ(run({"certificate", "verify", "--cert", path("h.json"), "--system",
                 fixture("reference_system.json")}).code, 0);

  auto result = io::read_json_file(path("h.json"));
  io::write_json_file(path("cert.json"), result["certificate"]);
  EXPECT_EQ(run({"certificate", "verify", "--cert", path("cert.json"), "--system",
                 fixture("reference_system.json")}).code, 0);

  auto broken = result["certificate"];
  for (auto& row : broken["P"]["[b]"]) {
    for (auto& v : row) v = -v.get<double>();
  }
  io::write_json_file(path("broken.json"), broken);
  EXPECT_EQ(run({"certificate", "verify", "--cert", path("broken.json"), "--system",
                 fixture("reference_system.json")}).code, 1);
  EXPECT_EQ(run({"decrease-check", "--cert", path("broken.json"), "--system",
                 fixture("reference_system.json")}).code, 1);

  EXPECT_EQ(run({"decrease-check", "--cert", path("h.json"), "--system", fixture("reference_system.json")}).code, 0);
  EXPECT_EQ(run({"decrease-check", "--cert", path("h.json"), "--system", fixture("reference_system.json"),
                 "--covering", fixture("covering_D.json")}).code, 0);

  ASSERT_EQ(run({"certificate", "lift", "--cert", path("h.json"), "-o", path("w.json")}).code, 0);
  const auto w = io::max_quadratic_from_json(io::read_json_file(path("w.json")));
  EXPECT_EQ(w.members.size(), observer_graph(testing::graph_h()).graph.node_count());
}

TEST_F(Cli, OutputsRoundTrip) {
  ASSERT_EQ(run({"observer", "build", fixture("graph_H.json"), "-o", path("obs.json")}).code, 0);
  ASSERT_EQ(run({"observer", "core", path("obs.json"), "-o", path("core.json")}).code, 0);
  EXPECT_EQ(run({"graph", "check", "--complete", "--deterministic", path("core.json")}).code, 0);

  ASSERT_EQ(run({"covering", "from-graph", fixture("graph_H.json"), "-o", path("cov.json")}).code, 0);
  EXPECT_EQ(run({"covering", "validate", path("cov.json")}).code, 0);
  ASSERT_EQ(run({"covering", "to-graph", path("cov.json"), "-o", path("back.json")}).code, 0);
  EXPECT_TRUE(testing::same_named_graph(io::graph_from_json(io::read_json_file(path("back.json"))),
                                        observer_graph(testing::graph_h()).graph));

  ASSERT_EQ(run({"graph", "dual", fixture("graph_H.json"), "-o", path("dual.json")}).code, 0);
  EXPECT_EQ(run({"graph", "check", "--deterministic", path("dual.json")}).code, 1);
  EXPECT_EQ(run({"graph", "check", "--path-complete", path("dual.json")}).code, 0);
}

TEST_F(Cli, CoveringValidateReportsWitness) {
  io::write_json_file(path("bad.json"), io::json::parse(R"({"alphabet": ["a", "b"],
      "members": [{"name": "[aa]", "stem": ["a", "a"]}, {"name": "[ab]", "stem": ["a", "b"]}]})"));
  const auto r = run({"covering", "validate", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("uncovered word: b"), std::string::npos);
}

TEST_F(Cli, Simulate) {
  const auto r = run({"simulate", "--system", fixture("reference_system.json"), "--word", "a", "--x0", "1,0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("x(1) = 3 -2"), std::string::npos);
  EXPECT_EQ(run({"simulate", "--system", fixture("reference_system.json"), "--word", "c", "--x0", "1,0"}).code, 2);
}

}  // namespace
}  // namespace pclyap
