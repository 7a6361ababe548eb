#include "pclyap/lyapunov.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pclyap/error.h"

namespace pclyap {

SwitchedLinearSystem::SwitchedLinearSystem(Alphabet alphabet,
                                           std::vector<Eigen::MatrixXd> modes)
    : alphabet_(std::move(alphabet)), modes_(std::move(modes)) {
  if (modes_.size() != alphabet_.size()) {
    throw InvalidInput("need exactly one matrix per symbol");
  }
  dimension_ = static_cast<int>(modes_.front().rows());
  if (dimension_ < 1) throw InvalidInput("system dimension must be positive");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].rows() != dimension_ || modes_[i].cols() != dimension_) {
      throw InvalidInput("mode '" + alphabet_.symbol(i) + "' is not " +
                         std::to_string(dimension_) + "x" +
                         std::to_string(dimension_));
    }
    if (!modes_[i].allFinite()) {
      throw InvalidInput("mode '" + alphabet_.symbol(i) + "' has non-finite entries");
    }
  }
}

const Eigen::MatrixXd& SwitchedLinearSystem::mode(const std::string& symbol) const {
  return modes_.at(alphabet_.index(symbol));
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double spectral_radius(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(a, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double definiteness_threshold(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  return std::max(1e-9 * norm, 1e-12);
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& p, const std::string& what) {
  if (p.rows() != p.cols()) throw InvalidInput(what + " is not square");
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw InvalidInput(what + " is not symmetric");
  }
  return 0.5 * (p + p.transpose());
}

Eigen::MatrixXd LmiProblem::evaluate(std::size_t constraint,
                                     const std::vector<Eigen::MatrixXd>& values) const {
  const auto& c = constraints.at(constraint);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(c.dimension, c.dimension);
  for (const auto& term : c.terms) {
    out += term.scale * term.map.transpose() * values.at(term.variable) * term.map;
  }
  return 0.5 * (out + out.transpose());
}

void LmiProblem::validate() const {
  for (const auto& v : variables) {
    if (v.dimension < 1) throw InvalidInput("variable '" + v.name + "' has no size");
  }
  for (const auto& c : constraints) {
    for (const auto& term : c.terms) {
      if (term.variable >= variables.size()) {
        throw InvalidInput("constraint '" + c.label + "' references an undeclared variable");
      }
      const int dim = variables[term.variable].dimension;
      if (term.map.rows() != dim || term.map.cols() != c.dimension) {
        throw InvalidInput("constraint '" + c.label + "' has a mis-shaped term");
      }
    }
  }
}

LmiProblem assemble_lmi(const LabeledGraph& g, const SwitchedLinearSystem& sys,
                        double rho) {
  if (!(g.alphabet() == sys.alphabet())) {
    throw InvalidInput("graph and system alphabets differ");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidInput("rho must be positive");
  const int n = sys.dimension();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  LmiProblem problem;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    problem.variables.push_back({"P" + g.node(s), n, static_cast<double>(n)});
  }
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    problem.constraints.push_back({"node " + g.node(s), n, {{s, 1.0, identity}}});
  }
  for (const auto& e : g.edges()) {
    const auto named = g.named(e);
    problem.constraints.push_back(
        {"edge (" + named.source + "," + named.dest + "," + named.label + ")", n,
         {{e.source, rho * rho, identity}, {e.dest, -1.0, sys.mode(e.label)}}});
  }
  return problem;
}

VerificationReport verify_certificate(const QuadraticCertificate& cert,
                                      const SwitchedLinearSystem& sys) {
  const auto& g = cert.graph;
  if (!(g.alphabet() == sys.alphabet())) {
    throw InvalidInput("certificate and system alphabets differ");
  }
  if (cert.P.size() != g.node_count()) {
    throw InvalidInput("certificate needs one matrix per node");
  }
  const int n = sys.dimension();
  std::vector<Eigen::MatrixXd> P;
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    if (cert.P[s].rows() != n || cert.P[s].cols() != n) {
      throw InvalidInput("P" + g.node(s) + " has the wrong shape");
    }
    P.push_back(symmetrized(cert.P[s], "P" + g.node(s)));
  }

  VerificationReport report;
  report.margin = std::numeric_limits<double>::infinity();
  auto check = [&](std::string label, const Eigen::MatrixXd& m) {
    ConstraintCheck c{std::move(label), min_eigenvalue(m), definiteness_threshold(m)};
    report.margin = std::min(report.margin, c.min_eigenvalue);
    return c;
  };
  for (NodeIndex s = 0; s < g.node_count(); ++s) {
    report.nodes.push_back(check("node " + g.node(s), P[s]));
  }
  const double rho2 = cert.rho * cert.rho;
  for (const auto& e : g.edges()) {
    const auto& a = sys.mode(e.label);
    Eigen::MatrixXd m = rho2 * P[e.source] - a.transpose() * P[e.dest] * a;
    m = 0.5 * (m + m.transpose());
    const auto named = g.named(e);
    report.edges.push_back(check(
        "edge (" + named.source + "," + named.dest + "," + named.label + ")", m));
  }
  report.passed =
      std::all_of(report.nodes.begin(), report.nodes.end(), [](auto& c) { return c.ok(); }) &&
      std::all_of(report.edges.begin(), report.edges.end(), [](auto& c) { return c.ok(); });
  return report;
}

std::optional<std::size_t> MaxQuadraticFunction::find(const std::string& member) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == member) return i;
  }
  return std::nullopt;
}

MaxQuadraticFunction lift_certificate(const QuadraticCertificate& cert,
                                      const ObserverGraph& obs) {
  if (!(obs.base == cert.graph)) {
    throw InvalidInput("observer was built from a different graph than the certificate");
  }
  if (cert.P.size() != cert.graph.node_count()) {
    throw InvalidInput("certificate needs one matrix per node");
  }
  MaxQuadraticFunction w;
  for (NodeIndex p = 0; p < obs.graph.node_count(); ++p) {
    w.members.push_back(obs.graph.node(p));
    std::vector<std::string> sources;
    std::vector<Eigen::MatrixXd> forms;
    for (NodeIndex s : obs.subsets[p]) {
      sources.push_back(cert.graph.node(s));
      forms.push_back(cert.P[s]);
    }
    w.sources.push_back(std::move(sources));
    w.forms.push_back(std::move(forms));
  }
  return w;
}

MaxQuadraticFunction as_max_quadratic(const QuadraticCertificate& cert) {
  MaxQuadraticFunction w;
  for (NodeIndex s = 0; s < cert.graph.node_count(); ++s) {
    w.members.push_back(cert.graph.node(s));
    w.sources.push_back({cert.graph.node(s)});
    w.forms.push_back({cert.P.at(s)});
  }
  return w;
}

double evaluate_mblf(const MaxQuadraticFunction& w, std::size_t member,
                     const Eigen::VectorXd& x) {
  const auto& forms = w.forms.at(member);
  if (forms.empty()) throw InvalidInput("member '" + w.members[member] + "' has no forms");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : forms) {
    if (p.rows() != x.size()) throw InvalidInput("state has the wrong dimension");
    best = std::max(best, x.dot(p * x));
  }
  return best;
}

double evaluate_mblf(const MaxQuadraticFunction& w, const std::string& member,
                     const Eigen::VectorXd& x) {
  auto index = w.find(member);
  if (!index) throw InvalidInput("unknown member '" + member + "'");
  return evaluate_mblf(w, *index, x);
}

}  // namespace pclyap
