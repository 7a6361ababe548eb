#include <gtest/gtest.h>

#include "pclyap/covering.h"
#include "pclyap/error.h"
#include "pclyap/observer.h"
#include "pclyap/sdp.h"
#include "pclyap/simulate.h"
#include "test_support.h"

namespace pclyap {
namespace {

using testing::ab;
using testing::reference_system;

TEST(Simulate, Examples) {
  const auto sys = reference_system();
  const auto t = simulate(sys, {"a"}, Eigen::Vector2d(1, 0));
  ASSERT_EQ(t.states.size(), 2u);
  EXPECT_EQ(t.states[1], Eigen::Vector2d(3, -2));

  EXPECT_EQ(simulate(sys, {}, Eigen::Vector2d(1, 2)).states.size(), 1u);

  const Eigen::Vector2d x0(0.3, -1.1);
  const auto whole = simulate(sys, {"a", "b"}, x0).states.back();
  const auto first = simulate(sys, {"a"}, x0).states.back();
  EXPECT_EQ(whole, simulate(sys, {"b"}, first).states.back());
  EXPECT_EQ(whole, word_product(sys, {"a", "b"}) * x0);

  EXPECT_THROW(simulate(sys, {"c"}, x0), InvalidInput);
  EXPECT_THROW(simulate(sys, {"a"}, Eigen::Vector3d(1, 2, 3)), InvalidInput);
}

TEST(JsrLowerBound, ReferenceSystem) {
  const auto sys = reference_system();
  const auto one = jsr_lower_bound(sys, 1);
  EXPECT_NEAR(one.rho_lower, 3.0, 1e-12);
  EXPECT_EQ(one.witness, Word{"a"});
  const auto two = jsr_lower_bound(sys, 2);
  EXPECT_NEAR(two.rho_lower, 3.9174, 1e-3);
  EXPECT_EQ(two.witness, (Word{"a", "b"}));
  Eigen::Matrix2d ab_product;
  ab_product << -15, -3, -2, 2;
  EXPECT_EQ(word_product(sys, {"b", "a"}), ab_product);
}

TEST(JsrLowerBound, Diagonal) {
  const SwitchedLinearSystem sys(Alphabet({"a"}), {Eigen::Vector2d(2.0, 0.5).asDiagonal().toDenseMatrix()});
  for (int len : {1, 3, 6}) EXPECT_NEAR(jsr_lower_bound(sys, len).rho_lower, 2.0, 1e-12);
}

TEST(JsrLowerBound, Caps) {
  EXPECT_THROW(jsr_lower_bound(reference_system(), 0), InvalidInput);
  EXPECT_THROW(jsr_lower_bound(reference_system(), 30), ResourceLimit);
}

class DecreaseCheck : public ::testing::Test {
 protected:
  void SetUp() override {
    result_ = std::make_unique<JsrBoundResult>(jsr_upper_bound(testing::graph_h(), sys_));
    options_.rho = result_->rho_upper;
    options_.rho_prime = 1.01 * result_->rho_upper;
  }
  SwitchedLinearSystem sys_ = reference_system();
  std::unique_ptr<JsrBoundResult> result_;
  DecreaseCheckOptions options_;
};

TEST_F(DecreaseCheck, ObserverLiftPasses) {
  const auto obs = observer_graph(result_->certificate.graph);
  const auto report = trajectory_decrease_check(lift_certificate(result_->certificate, obs),
                                                memory_structure(obs), sys_, options_);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.checks, 2000);
}

TEST_F(DecreaseCheck, CoveringPasses) {
  const auto c = io::covering_from_json(io::read_json_file(testing::fixture("covering_D.json")));
  const auto report = trajectory_decrease_check(as_max_quadratic(result_->certificate),
                                                memory_structure(c), sys_, options_);
  EXPECT_TRUE(report.passed());
}

TEST_F(DecreaseCheck, ZeroStateIsTrivial) {
  const auto obs = observer_graph(result_->certificate.graph);
  const auto report = trajectory_decrease_check(lift_certificate(result_->certificate, obs),
                                                memory_structure(obs), sys_, options_,
                                                Eigen::Vector2d::Zero());
  EXPECT_TRUE(report.passed());
  EXPECT_LE(report.worst_slack, 0.0);
}

TEST_F(DecreaseCheck, CorruptedCertificateFails) {
  auto cert = result_->certificate;
  cert.P[0] = -cert.P[0];
  const auto obs = observer_graph(cert.graph);
  const auto report = trajectory_decrease_check(lift_certificate(cert, obs), memory_structure(obs),
                                                sys_, options_);
  EXPECT_FALSE(report.passed());
  EXPECT_GE(report.violations + report.step_violations, 1);
}

TEST_F(DecreaseCheck, SeedIsReproducible) {
  const auto obs = observer_graph(result_->certificate.graph);
  const auto w = lift_certificate(result_->certificate, obs);
  const auto a = trajectory_decrease_check(w, memory_structure(obs), sys_, options_);
  const auto b = trajectory_decrease_check(w, memory_structure(obs), sys_, options_);
  EXPECT_EQ(a.worst_slack, b.worst_slack);
  EXPECT_EQ(a.worst_word, b.worst_word);
}

}  // namespace
}  // namespace pclyap
