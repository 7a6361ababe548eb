#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pclyap/covering.h"
#include "pclyap/lyapunov.h"
#include "pclyap/observer.h"

namespace pclyap {

struct Trajectory {
  /// states[k] = x(k); states.size() == word.size() + 1.
  std::vector<Eigen::VectorXd> states;
  /// σ(0), σ(1), ... in time order.
  Word word;
};

Trajectory simulate(const SwitchedLinearSystem& sys, const Word& word,
                    const Eigen::VectorXd& x0);

/// A_{w(K-1)} ··· A_{w(0)}.
Eigen::MatrixXd word_product(const SwitchedLinearSystem& sys, const Word& word);

struct JsrLowerBound {
  double rho_lower = 0.0;
  /// Shortest, then lexicographically first, maximizing word.
  Word witness;
};

inline constexpr std::size_t kDefaultWordCap = std::size_t{1} << 22;

/// max over words 1 ≤ |w| ≤ max_len of ρ(A_w)^(1/|w|), by exhaustive
/// enumeration. Throws ResourceLimit when more than `max_words` words
/// would be enumerated.
JsrLowerBound jsr_lower_bound(const SwitchedLinearSystem& sys, int max_len,
                              std::size_t max_words = kDefaultWordCap);

/// A memory graph over named members with a designated member containing ε.
/// Edge (B, C, h) means h·B ⊆ C.
struct MemoryStructure {
  LabeledGraph graph;
  NodeIndex start = 0;
};

/// Graph of the covering; start is the first member accepting ε.
MemoryStructure memory_structure(const CoveringFamily& c);
/// The observer itself; start is the root.
MemoryStructure memory_structure(const ObserverGraph& obs);

struct DecreaseCheckOptions {
  /// Certified rate ρ and the comparison rate ρ′ > ρ.
  double rho = 0.0;
  double rho_prime = 0.0;
  int trials = 100;
  int horizon = 20;
  std::uint64_t seed = 5489;
  /// Relative slack allowed on each inequality.
  double tolerance = 1e-9;
};

struct DecreaseReport {
  std::uint64_t seed = 0;
  int trials = 0;
  int horizon = 0;
  double gamma = 0.0;
  /// Sandwich constants min λ_min and max λ_max over all forms.
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  long checks = 0;
  /// W(B_k, x_k/ρ′^k) > γ^k W(B_0, x_0) along the first consistent chain.
  long violations = 0;
  /// W(B_{k+1}, y_{k+1}) > γ W(B_k, y_k) along the first chain.
  long step_violations = 0;
  /// One-step decrease failures on any alternative chain member.
  long alternative_violations = 0;
  /// |x_k/ρ′^k|² > (α₂/α₁) γ^k |x_0|²; only counted when α₁ > 0.
  long envelope_violations = 0;
  /// max over checks of (lhs − rhs) / max(1, |rhs|).
  double worst_slack = 0.0;
  std::optional<Word> worst_word;

  bool passed() const {
    return violations == 0 && step_violations == 0 && alternative_violations == 0 &&
           envelope_violations == 0 && alpha1 > 0.0;
  }
};

/// Samples x0 ~ N(0, I) and uniform words of length `horizon`, follows the
/// member chain B_0 ∋ ε, σ(k)·B_k ⊆ B_{k+1}, and checks the geometric
/// decrease of W on the system scaled by 1/ρ′.
DecreaseReport trajectory_decrease_check(const MaxQuadraticFunction& w,
                                         const MemoryStructure& structure,
                                         const SwitchedLinearSystem& sys,
                                         const DecreaseCheckOptions& options);

/// Checks from a fixed initial state instead of random samples.
DecreaseReport trajectory_decrease_check(const MaxQuadraticFunction& w,
                                         const MemoryStructure& structure,
                                         const SwitchedLinearSystem& sys,
                                         const DecreaseCheckOptions& options,
                                         const Eigen::VectorXd& x0);

}  // namespace pclyap
