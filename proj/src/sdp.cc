#include "pclyap/sdp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pclyap/error.h"

namespace pclyap {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIterations:
      return "max-iterations";
    case SolveStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

namespace {

// Traceless symmetric basis of dimension d: e_ij + e_ji for i < j, then
// e_ii − e_{d-1,d-1} for i < d−1.
std::vector<Eigen::MatrixXd> traceless_basis(int d) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      e(i, j) = e(j, i) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  for (int i = 0; i + 1 < d; ++i) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
    e(i, i) = 1.0;
    e(d - 1, d - 1) = -1.0;
    basis.push_back(std::move(e));
  }
  return basis;
}

// The problem rewritten over z = (y, t): S_c(z) = F0_c + Σ y_i F_ci − t I.
struct AffineForm {
  struct Block {
    int dimension = 0;
    Eigen::MatrixXd constant;
    std::vector<std::pair<std::size_t, Eigen::MatrixXd>> slopes;
  };
  std::vector<Block> blocks;
  std::size_t parameters = 0;  // excludes t

  // Per variable: its parameters' offset and basis.
  std::vector<std::size_t> offset;
  std::vector<std::vector<Eigen::MatrixXd>> basis;
  std::vector<Eigen::MatrixXd> center;

  std::vector<Eigen::MatrixXd> variables(const Eigen::VectorXd& y) const {
    std::vector<Eigen::MatrixXd> out;
    for (std::size_t v = 0; v < center.size(); ++v) {
      Eigen::MatrixXd x = center[v];
      for (std::size_t k = 0; k < basis[v].size(); ++k) x += y(offset[v] + k) * basis[v][k];
      out.push_back(std::move(x));
    }
    return out;
  }

  Eigen::MatrixXd value(std::size_t c, const Eigen::VectorXd& z) const {
    const auto& b = blocks[c];
    Eigen::MatrixXd s = b.constant;
    for (const auto& [i, slope] : b.slopes) s += z(i) * slope;
    s.diagonal().array() -= z(parameters);
    return s;
  }
};

AffineForm affine_form(const LmiProblem& p) {
  AffineForm f;
  for (const auto& v : p.variables) {
    f.offset.push_back(f.parameters);
    f.basis.push_back(traceless_basis(v.dimension));
    f.center.push_back(Eigen::MatrixXd::Identity(v.dimension, v.dimension) *
                       (v.trace / v.dimension));
    f.parameters += f.basis.back().size();
  }
  for (const auto& c : p.constraints) {
    AffineForm::Block block;
    block.dimension = c.dimension;
    block.constant = Eigen::MatrixXd::Zero(c.dimension, c.dimension);
    std::vector<Eigen::MatrixXd> slope(f.parameters);
    std::vector<char> used(f.parameters, 0);
    for (const auto& term : c.terms) {
      const auto v = term.variable;
      block.constant += term.scale * term.map.transpose() * f.center[v] * term.map;
      for (std::size_t k = 0; k < f.basis[v].size(); ++k) {
        const std::size_t i = f.offset[v] + k;
        Eigen::MatrixXd m = term.scale * term.map.transpose() * f.basis[v][k] * term.map;
        if (used[i]) {
          slope[i] += m;
        } else {
          slope[i] = std::move(m);
          used[i] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < f.parameters; ++i) {
      if (used[i]) block.slopes.emplace_back(i, 0.5 * (slope[i] + slope[i].transpose()));
    }
    block.constant = 0.5 * (block.constant + block.constant.transpose());
    f.blocks.push_back(std::move(block));
  }
  return f;
}

constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Squared Newton decrement below which a point counts as centered.
constexpr double kCenteringDecrement = 1e-9;
constexpr double kRoundoffDecrement = 1e-4;
constexpr int kMaxStepsPerTau = 200;

// −τ t − Σ log det S_c, or +∞ outside the interior.
double barrier(const AffineForm& f, const Eigen::VectorXd& z, double tau) {
  double value = -tau * z(f.parameters);
  for (std::size_t c = 0; c < f.blocks.size(); ++c) {
    Eigen::LLT<Eigen::MatrixXd> llt(f.value(c, z));
    if (llt.info() != Eigen::Success) return kInfinity;
    const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
    for (int k = 0; k < diag.size(); ++k) {
      if (!(diag(k) > 0.0)) return kInfinity;
      value -= 2.0 * std::log(diag(k));
    }
  }
  return value;
}

double margin_at(const AffineForm& f, const LmiProblem& p, const Eigen::VectorXd& y) {
  const auto values = f.variables(y);
  double m = kInfinity;
  for (std::size_t c = 0; c < p.constraints.size(); ++c) {
    m = std::min(m, min_eigenvalue(p.evaluate(c, values)));
  }
  return m;
}

}  // namespace

MarginSolution solve_margin(const LmiProblem& problem, const SolverOptions& options) {
  problem.validate();
  std::size_t unknowns = 0;
  for (const auto& v : problem.variables) {
    unknowns += static_cast<std::size_t>(v.dimension) * (v.dimension + 1) / 2;
  }
  if (unknowns > options.max_unknowns) {
    throw ResourceLimit("LMI has " + std::to_string(unknowns) +
                        " scalar unknowns, cap is " + std::to_string(options.max_unknowns));
  }

  const AffineForm f = affine_form(problem);
  const std::size_t m = f.parameters + 1;
  const std::size_t t_index = f.parameters;
  double barrier_dimension = 0.0;
  for (const auto& b : f.blocks) barrier_dimension += b.dimension;

  MarginSolution out;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
  if (problem.constraints.empty()) {
    out.assignment = f.variables(z.head(f.parameters));
    out.margin = kInfinity;
    out.status = SolveStatus::kOptimal;
    return out;
  }
  z(t_index) = margin_at(f, problem, z.head(f.parameters)) - 1.0;

  auto finish = [&](SolveStatus status) {
    out.assignment = f.variables(z.head(f.parameters));
    out.margin = margin_at(f, problem, z.head(f.parameters));
    out.status = status;
    return out;
  };

  double tau = 1.0;
  double centered_gap = kInfinity;
  Eigen::VectorXd grad(m);
  Eigen::MatrixXd hess(m, m);
  std::vector<Eigen::MatrixXd> weighted;
  std::vector<std::size_t> index;
  while (true) {
    // Newton centering at the current τ.
    int steps_at_tau = 0;
    while (true) {
      if (out.iterations >= options.max_newton_iterations) {
        return finish(SolveStatus::kMaxIterations);
      }
      ++out.iterations;
      grad.setZero();
      hess.setZero();
      grad(t_index) = -tau;
      bool interior = true;
      for (std::size_t c = 0; c < f.blocks.size() && interior; ++c) {
        const auto& b = f.blocks[c];
        Eigen::LLT<Eigen::MatrixXd> llt(f.value(c, z));
        if (llt.info() != Eigen::Success) {
          interior = false;
          break;
        }
        const Eigen::MatrixXd inv =
            llt.solve(Eigen::MatrixXd::Identity(b.dimension, b.dimension));
        weighted.clear();
        index.clear();
        for (const auto& [i, slope] : b.slopes) {
          weighted.push_back(inv * slope);
          index.push_back(i);
        }
        weighted.push_back(-inv);
        index.push_back(t_index);
        for (std::size_t a = 0; a < weighted.size(); ++a) {
          grad(index[a]) -= weighted[a].trace();
          for (std::size_t d = a; d < weighted.size(); ++d) {
            const double h = weighted[a].cwiseProduct(weighted[d].transpose()).sum();
            hess(index[a], index[d]) += h;
            if (d != a) hess(index[d], index[a]) += h;
          }
        }
      }
      if (!interior) return finish(SolveStatus::kNumericalFailure);

      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = -ldlt.solve(grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        return finish(centered_gap <= 100 * options.gap_tolerance
                          ? SolveStatus::kOptimal
                          : SolveStatus::kNumericalFailure);
      }
      const double decrement = -grad.dot(step);
      if (decrement < kCenteringDecrement || ++steps_at_tau > kMaxStepsPerTau) break;

      const double current = barrier(f, z, tau);
      double alpha = 1.0;
      bool accepted = false;
      for (int halvings = 0; halvings < 60; ++halvings, alpha *= 0.5) {
        const Eigen::VectorXd trial = z + alpha * step;
        const double value = barrier(f, trial, tau);
        if (value < current && value <= current - 0.25 * alpha * decrement) {
          z = trial;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // No representable decrease: the barrier value has run out of digits.
        if (decrement < kRoundoffDecrement) break;
        return finish(centered_gap <= 100 * options.gap_tolerance
                          ? SolveStatus::kOptimal
                          : SolveStatus::kNumericalFailure);
      }
    }
    centered_gap = barrier_dimension / tau;
    if (centered_gap <= options.gap_tolerance) return finish(SolveStatus::kOptimal);
    tau *= 10.0;
  }
}

MarginSolution probe_margin(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                            double rho, const SolverOptions& options) {
  return solve_margin(assemble_lmi(g, sys, rho), options);
}

JsrBoundResult jsr_upper_bound(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                               const JsrOptions& options) {
  if (!(g.alphabet() == sys.alphabet())) {
    throw InvalidInput("graph and system alphabets differ");
  }
  if (!(options.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (!options.allow_non_path_complete) {
    if (auto word = unreadable_word(g, options.max_subsets)) throw NotPathComplete(*word);
  }

  std::vector<Probe> trace;
  double lo = 0.0, hi = 0.0;
  for (const auto& a : sys.modes()) {
    lo = std::max(lo, spectral_radius(a));
    hi = std::max(hi, operator_norm(a));
  }
  hi *= 1.01;
  if (!(hi > 0.0)) hi = 1.0;

  MarginSolution best;
  auto feasible = [&](double rho, MarginSolution* keep) {
    auto solution = probe_margin(g, sys, rho, options.solver);
    trace.push_back({rho, solution.margin});
    const bool ok = solution.margin > kFeasibilityThreshold;
    if (!ok && solution.status != SolveStatus::kOptimal) {
      throw NumericalFailure("margin solver ended with status " +
                             to_string(solution.status) + " at rho = " +
                             std::to_string(rho));
    }
    if (ok && keep) *keep = std::move(solution);
    return ok;
  };

  bool upper_ok = feasible(hi, &best);
  for (int widen = 0; !upper_ok && widen < 8; ++widen) {
    lo = std::max(lo, hi);
    hi *= 2.0;
    upper_ok = feasible(hi, &best);
  }
  if (!upper_ok) throw NumericalFailure("no feasible rho found below " + std::to_string(hi));

  if (lo > 0.0 && lo < hi) {
    // The spectral-radius seed is infeasible on path-complete graphs; on
    // other graphs walk it down until it is.
    int halvings = 0;
    MarginSolution candidate;
    while (lo > 0.0 && feasible(lo, &candidate)) {
      hi = lo;
      best = std::move(candidate);
      lo = ++halvings < 60 ? lo * 0.5 : 0.0;
    }
  } else if (lo >= hi) {
    lo = 0.0;
  }

  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    MarginSolution candidate;
    if (feasible(mid, &candidate)) {
      hi = mid;
      best = std::move(candidate);
    } else {
      lo = mid;
    }
  }

  QuadraticCertificate certificate{g, best.assignment, hi, 0.0};
  const auto report = verify_certificate(certificate, sys);
  if (!report.passed || !(report.margin > 0.0)) {
    throw NumericalFailure("solver certificate failed independent verification at rho = " +
                           std::to_string(hi));
  }
  certificate.margin = report.margin;
  return JsrBoundResult{hi, lo, std::move(certificate), std::move(trace),
                        options.tolerance};
}

}  // namespace pclyap
