#include "pclyap/simulate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "pclyap/error.h"

namespace pclyap {

Trajectory simulate(const SwitchedLinearSystem& sys, const Word& word,
                    const Eigen::VectorXd& x0) {
  if (x0.size() != sys.dimension()) {
    throw InvalidInput("initial state has dimension " + std::to_string(x0.size()) +
                       ", system has " + std::to_string(sys.dimension()));
  }
  const auto symbols = sys.alphabet().indices(word);
  Trajectory out{{x0}, word};
  for (SymbolIndex h : symbols) out.states.push_back(sys.mode(h) * out.states.back());
  return out;
}

Eigen::MatrixXd word_product(const SwitchedLinearSystem& sys, const Word& word) {
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(sys.dimension(), sys.dimension());
  for (SymbolIndex h : sys.alphabet().indices(word)) product = sys.mode(h) * product;
  return product;
}

JsrLowerBound jsr_lower_bound(const SwitchedLinearSystem& sys, int max_len,
                              std::size_t max_words) {
  if (max_len < 1) throw InvalidInput("max_len must be >= 1");
  const std::size_t s = sys.alphabet().size();
  std::size_t total = 0, level_size = 1;
  for (int len = 1; len <= max_len; ++len) {
    if (level_size > max_words / s) throw ResourceLimit("too many words to enumerate");
    level_size *= s;
    total += level_size;
    if (total > max_words) throw ResourceLimit("too many words to enumerate");
  }

  JsrLowerBound best{-1.0, {}};
  std::vector<std::pair<std::vector<SymbolIndex>, Eigen::MatrixXd>> level{
      {{}, Eigen::MatrixXd::Identity(sys.dimension(), sys.dimension())}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<std::vector<SymbolIndex>, Eigen::MatrixXd>> next;
    next.reserve(level.size() * s);
    for (const auto& [word, product] : level) {
      for (SymbolIndex h = 0; h < s; ++h) {
        auto extended = word;
        extended.push_back(h);
        Eigen::MatrixXd p = sys.mode(h) * product;
        const double value = std::pow(spectral_radius(p), 1.0 / len);
        if (value > best.rho_lower + 1e-12 * std::max(1.0, best.rho_lower)) {
          best = {value, sys.alphabet().names(extended)};
        }
        next.emplace_back(std::move(extended), std::move(p));
      }
    }
    level = std::move(next);
  }
  return best;
}

MemoryStructure memory_structure(const CoveringFamily& c) {
  auto graph = covering_to_graph(c);
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    if (accepts(c.members[i].language, {})) return {std::move(graph.graph), i};
  }
  throw InvalidInput("no covering member contains the empty word");
}

MemoryStructure memory_structure(const ObserverGraph& obs) {
  return {obs.graph, obs.root};
}

namespace {

struct Checker {
  const MaxQuadraticFunction& w;
  const MemoryStructure& structure;
  const SwitchedLinearSystem& sys;
  const DecreaseCheckOptions& options;
  std::vector<std::size_t> member_of;  // structure node -> w member
  DecreaseReport report;

  Checker(const MaxQuadraticFunction& w_, const MemoryStructure& s,
          const SwitchedLinearSystem& sys_, const DecreaseCheckOptions& o)
      : w(w_), structure(s), sys(sys_), options(o) {
    if (!(structure.graph.alphabet() == sys.alphabet())) {
      throw InvalidInput("memory structure and system alphabets differ");
    }
    if (!(options.rho > 0.0) || !(options.rho_prime > 0.0)) {
      throw InvalidInput("rates must be positive");
    }
    for (const auto& node : structure.graph.nodes()) {
      auto m = w.find(node);
      if (!m) throw InvalidInput("no function attached to member '" + node + "'");
      member_of.push_back(*m);
    }
    report.seed = options.seed;
    report.trials = options.trials;
    report.horizon = options.horizon;
    report.gamma = implied_gamma(options.rho, options.rho_prime);
    report.alpha1 = std::numeric_limits<double>::infinity();
    report.alpha2 = -std::numeric_limits<double>::infinity();
    for (const auto& forms : w.forms) {
      for (const auto& p : forms) {
        const Eigen::MatrixXd sym = 0.5 * (p + p.transpose());
        report.alpha1 = std::min(report.alpha1, min_eigenvalue(sym));
        report.alpha2 = std::max(report.alpha2, max_eigenvalue(sym));
      }
    }
    report.worst_slack = -std::numeric_limits<double>::infinity();
  }

  double value(NodeIndex node, const Eigen::VectorXd& x) const {
    return evaluate_mblf(w, member_of[node], x);
  }

  bool exceeds(double lhs, double rhs) const {
    return lhs - rhs > options.tolerance * std::max(std::abs(lhs), std::abs(rhs));
  }

  void run(const Eigen::VectorXd& x0, const std::vector<SymbolIndex>& symbols) {
    const double gamma = report.gamma;
    NodeIndex member = structure.start;
    const double w0 = value(member, x0);
    const double norm0 = x0.squaredNorm();
    Eigen::VectorXd y = x0;
    double decay = 1.0;
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      const SymbolIndex h = symbols[k];
      const auto next = structure.graph.successors(member, h);
      if (next.empty()) {
        throw InternalInvariant("member '" + structure.graph.node(member) +
                                "' has no successor under '" +
                                sys.alphabet().symbol(h) + "'");
      }
      const Eigen::VectorXd y_next = sys.mode(h) * y / options.rho_prime;
      const double current = value(member, y);
      for (std::size_t alt = 1; alt < next.size(); ++alt) {
        if (exceeds(value(next[alt], y_next), gamma * current)) {
          ++report.alternative_violations;
        }
      }
      member = next.front();
      y = y_next;
      decay *= gamma;

      const double lhs = value(member, y);
      if (exceeds(lhs, gamma * current)) ++report.step_violations;
      const double rhs = decay * w0;
      ++report.checks;
      if (exceeds(lhs, rhs)) ++report.violations;
      const double slack = (lhs - rhs) / std::max(1.0, std::abs(rhs));
      if (slack > report.worst_slack) {
        report.worst_slack = slack;
        report.worst_word = sys.alphabet().names(
            std::span<const SymbolIndex>(symbols.data(), k + 1));
      }
      if (report.alpha1 > 0.0) {
        const double envelope = report.alpha2 / report.alpha1 * decay * norm0;
        if (exceeds(y.squaredNorm(), envelope)) ++report.envelope_violations;
      }
    }
  }
};

}  // namespace

DecreaseReport trajectory_decrease_check(const MaxQuadraticFunction& w,
                                         const MemoryStructure& structure,
                                         const SwitchedLinearSystem& sys,
                                         const DecreaseCheckOptions& options) {
  Checker checker(w, structure, sys, options);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, sys.alphabet().size() - 1);
  for (int trial = 0; trial < options.trials; ++trial) {
    Eigen::VectorXd x0(sys.dimension());
    for (int i = 0; i < x0.size(); ++i) x0(i) = normal(rng);
    std::vector<SymbolIndex> symbols(options.horizon);
    for (auto& h : symbols) h = pick(rng);
    checker.run(x0, symbols);
  }
  return checker.report;
}

DecreaseReport trajectory_decrease_check(const MaxQuadraticFunction& w,
                                         const MemoryStructure& structure,
                                         const SwitchedLinearSystem& sys,
                                         const DecreaseCheckOptions& options,
                                         const Eigen::VectorXd& x0) {
  if (x0.size() != sys.dimension()) throw InvalidInput("initial state has the wrong dimension");
  Checker checker(w, structure, sys, options);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, sys.alphabet().size() - 1);
  for (int trial = 0; trial < options.trials; ++trial) {
    std::vector<SymbolIndex> symbols(options.horizon);
    for (auto& h : symbols) h = pick(rng);
    checker.run(x0, symbols);
  }
  return checker.report;
}

}  // namespace pclyap
