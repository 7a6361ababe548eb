#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pclyap/graph.h"
#include "pclyap/observer.h"

namespace pclyap {

/// x(k+1) = A_{σ(k)} x(k), one square matrix per alphabet symbol.
class SwitchedLinearSystem {
 public:
  SwitchedLinearSystem(Alphabet alphabet, std::vector<Eigen::MatrixXd> modes);

  const Alphabet& alphabet() const { return alphabet_; }
  int dimension() const { return dimension_; }
  const std::vector<Eigen::MatrixXd>& modes() const { return modes_; }
  const Eigen::MatrixXd& mode(SymbolIndex i) const { return modes_.at(i); }
  const Eigen::MatrixXd& mode(const std::string& symbol) const;

 private:
  Alphabet alphabet_;
  int dimension_ = 0;
  std::vector<Eigen::MatrixXd> modes_;
};

/// Per-node quadratic forms x'P_s x on a graph, with rate ρ.
/// Valid when every P_s ≻ 0 and ρ²P_r − A_h'P_qA_h ≻ 0 for each edge (r,q,h).
struct QuadraticCertificate {
  LabeledGraph graph;
  std::vector<Eigen::MatrixXd> P;  // indexed by node
  double rho = 0.0;
  double margin = 0.0;
};

/// Symmetric positive-definiteness threshold used by verification: the
/// smallest eigenvalue must exceed max(1e-9·‖M‖₂, 1e-12).
double definiteness_threshold(const Eigen::MatrixXd& m);

/// Returns (P + P')/2. Throws InvalidInput when an entry of P − P' exceeds
/// 1e-8·max(1, max|P_ij|).
Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& p, const std::string& what);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);
double max_eigenvalue(const Eigen::MatrixXd& symmetric);
double spectral_radius(const Eigen::MatrixXd& a);
double operator_norm(const Eigen::MatrixXd& a);

// An affine symmetric-matrix expression Σ scale·Lᵀ X_v L over the
// declared variables.
struct LmiTerm {
  std::size_t variable;
  double scale;
  Eigen::MatrixXd map;
};

struct LmiConstraint {
  std::string label;
  int dimension = 0;
  std::vector<LmiTerm> terms;
};

struct LmiVariable {
  std::string name;
  int dimension = 0;
  /// Normalization trace(X) = trace.
  double trace = 0.0;
};

/// Maximize t subject to every constraint ⪰ t·I and the per-variable traces.
struct LmiProblem {
  std::vector<LmiVariable> variables;
  std::vector<LmiConstraint> constraints;

  Eigen::MatrixXd evaluate(std::size_t constraint,
                           const std::vector<Eigen::MatrixXd>& values) const;
  void validate() const;
};

/// Variables P_s per node; P_s ⪰ tI per node, then ρ²P_r − A_h'P_qA_h ⪰ tI
/// per edge in edge order; trace(P_s) = n.
LmiProblem assemble_lmi(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                        double rho);

struct ConstraintCheck {
  std::string label;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  bool ok() const { return min_eigenvalue > threshold; }
};

struct VerificationReport {
  std::vector<ConstraintCheck> nodes;
  std::vector<ConstraintCheck> edges;
  double margin = 0.0;
  bool passed = false;
};

/// Eigenvalue check of both inequality families. Independent of any solver.
VerificationReport verify_certificate(const QuadraticCertificate& cert,
                                      const SwitchedLinearSystem& sys);

/// γ = (ρ/ρ′)² certified for the system scaled by 1/ρ′.
inline double implied_gamma(double rho, double rho_prime) {
  return (rho / rho_prime) * (rho / rho_prime);
}

/// W(B, x) = max over the member's quadratic forms of x'Px.
struct MaxQuadraticFunction {
  std::vector<std::string> members;
  /// Names of the base nodes whose forms enter each member's maximum.
  std::vector<std::vector<std::string>> sources;
  std::vector<std::vector<Eigen::MatrixXd>> forms;

  std::optional<std::size_t> find(const std::string& member) const;
};

/// Assigns to each observer node the forms of the base nodes in its subset.
/// Throws InvalidInput when the observer was not built from cert.graph.
MaxQuadraticFunction lift_certificate(const QuadraticCertificate& cert,
                                      const ObserverGraph& obs);

/// One member per certificate node holding that node's single form.
MaxQuadraticFunction as_max_quadratic(const QuadraticCertificate& cert);

double evaluate_mblf(const MaxQuadraticFunction& w, std::size_t member,
                     const Eigen::VectorXd& x);
double evaluate_mblf(const MaxQuadraticFunction& w, const std::string& member,
                     const Eigen::VectorXd& x);

}  // namespace pclyap
