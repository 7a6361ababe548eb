#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pclyap/graph.h"
#include "pclyap/lyapunov.h"

namespace pclyap {

/// Margins above this value certify strict feasibility.
inline constexpr double kFeasibilityThreshold = 1e-7;

enum class SolveStatus { kOptimal, kMaxIterations, kNumericalFailure };

std::string to_string(SolveStatus status);

struct SolverOptions {
  /// Stop once the barrier duality gap Σ dim(constraint)/τ drops below this.
  double gap_tolerance = 1e-10;
  int max_newton_iterations = 2000;
  /// Cap on Σ d(d+1)/2 over the matrix variables.
  std::size_t max_unknowns = 64;
};

struct MarginSolution {
  /// Smallest eigenvalue over all constraints at `assignment`.
  double margin = 0.0;
  std::vector<Eigen::MatrixXd> assignment;
  int iterations = 0;
  SolveStatus status = SolveStatus::kNumericalFailure;
};

/// Log-determinant barrier path following on
///   max t  s.t.  constraint_k(X) − t·I ≻ 0,  trace(X_v) fixed,
/// starting from X_v ∝ I. Every iterate is strictly feasible, so the returned
/// assignment always realizes the returned margin.
MarginSolution solve_margin(const LmiProblem& problem,
                            const SolverOptions& options = {});

struct Probe {
  double rho = 0.0;
  double margin = 0.0;
};

struct JsrOptions {
  /// Final bracket width on ρ.
  double tolerance = 1e-4;
  /// Solve on graphs that are not path-complete; the bound then certifies
  /// nothing about the system.
  bool allow_non_path_complete = false;
  SolverOptions solver;
  std::size_t max_subsets = kDefaultGraphSubsetCap;
};

struct JsrBoundResult {
  double rho_upper = 0.0;
  /// Largest probed ρ found infeasible (0 when none was).
  double rho_infeasible = 0.0;
  QuadraticCertificate certificate;
  std::vector<Probe> trace;
  double tolerance = 0.0;
};

/// Margin of the assembled LMI at a single ρ.
MarginSolution probe_margin(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                            double rho, const SolverOptions& options = {});

/// Bisection on ρ between max spectral radius and 1.01·max operator norm of
/// the modes. The returned certificate has passed verify_certificate.
JsrBoundResult jsr_upper_bound(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                               const JsrOptions& options = {});

}  // namespace pclyap
