#include <random>

#include <gtest/gtest.h>

#include "pclyap/error.h"
#include "pclyap/lyapunov.h"
#include "pclyap/observer.h"
#include "pclyap/sdp.h"
#include "test_support.h"

namespace pclyap {
namespace {

using testing::ab;
using testing::reference_system;

SwitchedLinearSystem scaled_identity_system(double s) {
  const Eigen::MatrixXd a = s * Eigen::MatrixXd::Identity(2, 2);
  return SwitchedLinearSystem(ab(), {a, a});
}

QuadraticCertificate identity_certificate(const LabeledGraph& g, double rho) {
  return {g, std::vector<Eigen::MatrixXd>(g.node_count(), Eigen::MatrixXd::Identity(2, 2)), rho, 0.0};
}

TEST(SwitchedLinearSystem, Validates) {
  EXPECT_THROW(SwitchedLinearSystem(ab(), {Eigen::MatrixXd::Identity(2, 2)}), InvalidInput);
  EXPECT_THROW(SwitchedLinearSystem(ab(), {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)}),
               InvalidInput);
  EXPECT_THROW(SwitchedLinearSystem(Alphabet({"a"}), {Eigen::MatrixXd::Zero(2, 3)}), InvalidInput);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(SwitchedLinearSystem(Alphabet({"a"}), {bad}), InvalidInput);
  EXPECT_EQ(reference_system().mode("a")(0, 1), 3.0);
}

TEST(MatrixHelpers, SpectralRadiusAndNorm) {
  const auto sys = reference_system();
  EXPECT_NEAR(spectral_radius(sys.mode("a")), 3.0, 1e-12);
  EXPECT_NEAR(operator_norm(Eigen::MatrixXd::Identity(3, 3) * 2.0), 2.0, 1e-12);
}

TEST(AssembleLmi, Counts) {
  const auto sys = reference_system();
  auto h = assemble_lmi(testing::graph_h(), sys, 3.9);
  EXPECT_EQ(h.variables.size(), 3u);
  EXPECT_EQ(h.constraints.size(), 9u);

  auto c2 = assemble_lmi(de_bruijn(ab(), 2), sys, 3.9);
  EXPECT_EQ(c2.variables.size(), 4u);
  EXPECT_EQ(c2.constraints.size(), 12u);

  const SwitchedLinearSystem one(Alphabet({"a"}), {Eigen::MatrixXd::Identity(2, 2)});
  const LabeledGraph loop(Alphabet({"a"}), {"s"}, std::vector<NamedEdge>{{"s", "s", "a"}});
  const auto p = assemble_lmi(loop, one, 1.0);
  EXPECT_EQ(p.variables.size(), 1u);
  EXPECT_EQ(p.constraints.size(), 2u);
  EXPECT_EQ(p.variables[0].trace, 2.0);
}

TEST(AssembleLmi, EvaluatesEdgeConstraint) {
  const auto sys = reference_system();
  const auto g = testing::graph_h();
  const double rho = 3.95;
  const auto lmi = assemble_lmi(g, sys, rho);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0, 1);
  std::vector<Eigen::MatrixXd> values;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    Eigen::MatrixXd m(2, 2);
    m << n(rng), n(rng), n(rng), n(rng);
    values.push_back(m + m.transpose());
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    const Eigen::MatrixXd& a = sys.mode(e.label);
    const Eigen::MatrixXd expected = rho * rho * values[e.source] - a.transpose() * values[e.dest] * a;
    EXPECT_TRUE(lmi.evaluate(g.node_count() + k, values).isApprox(expected, 1e-12));
  }
}

TEST(AssembleLmi, RejectsMismatch) {
  const SwitchedLinearSystem other(Alphabet({"x", "y"}),
                                   {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)});
  EXPECT_THROW(assemble_lmi(testing::graph_h(), other, 1.0), InvalidInput);
  EXPECT_THROW(assemble_lmi(testing::graph_h(), reference_system(), -1.0), InvalidInput);
}

TEST(VerifyCertificate, HalfIdentity) {
  const auto report = verify_certificate(identity_certificate(de_bruijn(ab(), 1), 1.0),
                                         scaled_identity_system(0.5));
  EXPECT_TRUE(report.passed);
  EXPECT_NEAR(report.margin, 0.75, 1e-12);
}

TEST(VerifyCertificate, DoubleIdentityFails) {
  const auto report = verify_certificate(identity_certificate(de_bruijn(ab(), 1), 1.0),
                                         scaled_identity_system(2.0));
  EXPECT_FALSE(report.passed);
  EXPECT_NEAR(report.margin, -3.0, 1e-12);
}

TEST(VerifyCertificate, SolverSolutionOnH) {
  const auto sys = reference_system();
  const auto g = testing::graph_h();
  const auto solution = probe_margin(g, sys, 3.92);
  ASSERT_GT(solution.margin, 0.0);
  const auto report = verify_certificate({g, solution.assignment, 3.92, 0.0}, sys);
  EXPECT_TRUE(report.passed);
  EXPECT_NEAR(report.margin, solution.margin, 1e-9);
}

TEST(VerifyCertificate, AsymmetryCap) {
  auto cert = identity_certificate(de_bruijn(ab(), 1), 1.0);
  cert.P[0](0, 1) = 1e-3;
  EXPECT_THROW(verify_certificate(cert, scaled_identity_system(0.5)), InvalidInput);
  cert.P[0](0, 1) = 1e-12;
  EXPECT_NO_THROW(verify_certificate(cert, scaled_identity_system(0.5)));
}

TEST(VerifyCertificate, ZeroMarginIsNotStrict) {
  const auto report = verify_certificate(identity_certificate(de_bruijn(ab(), 1), 1.0),
                                         scaled_identity_system(1.0));
  EXPECT_FALSE(report.passed);
}

TEST(LiftCertificate, SingletonObserverIsRelabeling) {
  const auto g = de_bruijn(ab(), 2);
  QuadraticCertificate cert = identity_certificate(g, 1.0);
  for (std::size_t i = 0; i < cert.P.size(); ++i) cert.P[i] *= static_cast<double>(i + 1);
  const auto obs = observer_graph(g);
  const auto w = lift_certificate(cert, obs);
  for (const auto& node : g.nodes()) {
    const auto m = w.find("{" + node + "}");
    ASSERT_TRUE(m.has_value()) << node;
    ASSERT_EQ(w.forms[*m].size(), 1u);
    EXPECT_EQ(w.forms[*m][0], cert.P[g.node_index(node)]);
  }
}

TEST(LiftCertificate, MaxOverSubset) {
  const auto g = de_bruijn(ab(), 1);
  QuadraticCertificate cert = identity_certificate(g, 1.0);
  cert.P[0] << 2, 0, 0, 1;
  cert.P[1] << 1, 0, 0, 3;
  const auto w = lift_certificate(cert, observer_graph(g));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd x(2);
    x << n(rng), n(rng);
    const double expected = std::max(x.dot(cert.P[0] * x), x.dot(cert.P[1] * x));
    EXPECT_NEAR(evaluate_mblf(w, "{[a],[b]}", x), expected, 1e-12);
  }
}

TEST(LiftCertificate, RejectsForeignObserver) {
  const auto cert = identity_certificate(de_bruijn(ab(), 1), 1.0);
  EXPECT_THROW(lift_certificate(cert, observer_graph(testing::graph_h())), InvalidInput);
}

TEST(EvaluateMblf, Examples) {
  const MaxQuadraticFunction w{{"m"}, {{"s"}}, {{Eigen::MatrixXd::Identity(2, 2)}}};
  EXPECT_EQ(evaluate_mblf(w, "m", Eigen::Vector2d(0, 0)), 0.0);
  EXPECT_EQ(evaluate_mblf(w, "m", Eigen::Vector2d(3, 4)), 25.0);
  EXPECT_THROW(evaluate_mblf(w, "nope", Eigen::Vector2d(3, 4)), InvalidInput);
}

TEST(ImpliedGamma, Value) { EXPECT_NEAR(implied_gamma(1.0, 2.0), 0.25, 1e-15); }

}  // namespace
}  // namespace pclyap
