#include <gtest/gtest.h>

#include "pclyap/error.h"
#include "pclyap/json_io.h"
#include "test_support.h"

namespace pclyap {
namespace {

using io::json;
using testing::ab;

TEST(GraphJson, RoundTrip) {
  const auto h = testing::graph_h();
  EXPECT_EQ(io::graph_from_json(io::to_json(h)), h);
}

TEST(GraphJson, RejectsUnknownKeys) {
  auto j = io::to_json(testing::graph_h());
  j["colour"] = "red";
  EXPECT_THROW(io::graph_from_json(j), InvalidInput);
}

TEST(GraphJson, RejectsMalformedEdges) {
  auto j = io::to_json(testing::graph_h());
  j["edges"].push_back(json::array({"[b]", "[b]"}));
  EXPECT_THROW(io::graph_from_json(j), InvalidInput);
}

TEST(AutomatonJson, RoundTrip) {
  const auto a = prefix_class_automaton(ab(), {"a", "b"});
  const auto back = io::automaton_from_json(io::to_json(a));
  EXPECT_EQ(back.graph(), a.graph());
  EXPECT_EQ(back.initial(), a.initial());
  EXPECT_EQ(back.accepting(), a.accepting());
}

TEST(ObserverJson, RoundTrip) {
  const auto obs = observer_graph(testing::graph_h());
  const auto back = io::observer_from_json(io::to_json(obs));
  EXPECT_EQ(back.graph, obs.graph);
  EXPECT_EQ(back.base, obs.base);
  EXPECT_EQ(back.root, obs.root);
  EXPECT_EQ(back.subsets, obs.subsets);
}

TEST(CoveringJson, RoundTrip) {
  const auto c = io::covering_from_json(io::read_json_file(testing::fixture("covering_D.json")));
  ASSERT_EQ(c.members.size(), 3u);
  EXPECT_EQ(c.members[2].stem, Word{"b"});
  const auto back = io::covering_from_json(io::to_json(c));
  EXPECT_EQ(io::to_json(back), io::to_json(c));

  const auto observed = observer_to_covering(testing::graph_h());
  EXPECT_EQ(io::to_json(io::covering_from_json(io::to_json(observed))), io::to_json(observed));
}

TEST(SystemJson, RoundTripAndDimension) {
  const auto sys = testing::reference_system();
  const auto back = io::system_from_json(io::to_json(sys));
  EXPECT_EQ(back.modes(), sys.modes());
  auto j = io::to_json(sys);
  j["dimension"] = 3;
  EXPECT_THROW(io::system_from_json(j), InvalidInput);
}

TEST(CertificateJson, RoundTripIsLossless) {
  const auto g = de_bruijn(ab(), 1);
  Eigen::MatrixXd p(2, 2);
  p << 1.0 / 3.0, 0.1, 0.1, 5.0 / 7.0;
  const QuadraticCertificate cert{g, {p, p * 2.0}, 3.14159, 1e-5};
  const auto back = io::certificate_from_json(io::to_json(cert));
  EXPECT_EQ(back.graph, g);
  EXPECT_EQ(back.P, cert.P);
  EXPECT_EQ(back.rho, cert.rho);
  EXPECT_EQ(back.margin, cert.margin);
}

TEST(MaxQuadraticJson, RoundTrip) {
  const MaxQuadraticFunction w{{"m", "n"},
                               {{"s"}, {"s", "t"}},
                               {{Eigen::MatrixXd::Identity(2, 2)},
                                {Eigen::MatrixXd::Identity(2, 2), 2 * Eigen::MatrixXd::Identity(2, 2)}}};
  const auto back = io::max_quadratic_from_json(io::to_json(w));
  EXPECT_EQ(back.members, w.members);
  EXPECT_EQ(back.sources, w.sources);
  EXPECT_EQ(back.forms, w.forms);
}

TEST(MatrixJson, RejectsRaggedRows) {
  EXPECT_THROW(io::matrix_from_json(json::parse("[[1, 2], [3]]")), InvalidInput);
  EXPECT_THROW(io::matrix_from_json(json::parse("[]")), InvalidInput);
}

TEST(Files, MissingFile) {
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), InvalidInput);
}

}  // namespace
}  // namespace pclyap
