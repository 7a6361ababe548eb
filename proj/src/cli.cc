#include "pclyap/cli.h"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pclyap/automaton.h"
#include "pclyap/covering.h"
#include "pclyap/error.h"
#include "pclyap/graph.h"
#include "pclyap/json_io.h"
#include "pclyap/lyapunov.h"
#include "pclyap/observer.h"
#include "pclyap/sdp.h"
#include "pclyap/simulate.h"

namespace pclyap::cli {

namespace {

using io::json;

constexpr const char* kStateCapVariable = "PCLYAP_STATE_CAP";

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

struct Caps {
  std::size_t graph_subsets = kDefaultGraphSubsetCap;
  std::size_t automaton_states = kDefaultAutomatonStateCap;
};

Caps caps_from_environment() {
  Caps caps;
  if (const char* raw = std::getenv(kStateCapVariable)) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0) {
      throw InvalidInput(std::string(kStateCapVariable) + " must be a positive integer");
    }
    caps.graph_subsets = caps.automaton_states = static_cast<std::size_t>(value);
  }
  return caps;
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse '" + piece + "' as a number");
    }
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Certificates are accepted bare or wrapped in a `jsr upper` result.
QuadraticCertificate load_certificate(const std::string& path) {
  auto j = io::read_json_file(path);
  if (j.is_object() && j.contains("certificate") && j.contains("rho_upper")) {
    return io::certificate_from_json(j["certificate"]);
  }
  return io::certificate_from_json(j);
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Path-complete Lyapunov analysis of switched linear systems", "pclyap"};
    app.require_subcommand(1);
    app.add_option("--format", format_, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    // graph
    auto* graph = app.add_subcommand("graph", "Labeled graphs");
    graph->require_subcommand(1);
    auto* check = graph->add_subcommand("check", "Test a graph property (exit 1 if false)");
    check->add_flag("--path-complete", check_path_complete_, "Every word has a reading path");
    check->add_flag("--complete", check_complete_, "Every node has an edge per symbol");
    check->add_flag("--deterministic", check_deterministic_, "At most one edge per node and symbol");
    check->add_option("file", input_, "Graph JSON")->required()->check(CLI::ExistingFile);
    check->callback([this] { code_ = graph_check(); });

    auto* debruijn = graph->add_subcommand("debruijn", "De Bruijn graph of a given order");
    debruijn->add_option("-a,--alphabet", alphabet_, "Comma-separated symbols")
        ->required()->delimiter(',');
    debruijn->add_option("-k,--order", order_, "Word length")->required();
    debruijn->add_option("-o,--output", output_, "Output file (default stdout)");
    debruijn->callback([this] { code_ = emit(io::to_json(de_bruijn(Alphabet(alphabet_), order_))); });

    auto* dual_cmd = graph->add_subcommand("dual", "Reverse every edge");
    dual_cmd->add_option("file", input_, "Graph JSON")->required()->check(CLI::ExistingFile);
    dual_cmd->add_option("-o,--output", output_, "Output file (default stdout)");
    dual_cmd->callback([this] { code_ = emit(io::to_json(dual(load_graph()))); });

    // observer
    auto* observer = app.add_subcommand("observer", "Observer (subset) construction");
    observer->require_subcommand(1);
    auto* build = observer->add_subcommand("build", "Observer graph of a path-complete graph");
    build->add_option("file", input_, "Graph JSON")->required()->check(CLI::ExistingFile);
    build->add_option("-o,--output", output_, "Output file (default stdout)");
    build->callback([this] { code_ = emit(io::to_json(observer_graph(load_graph(), caps_.graph_subsets))); });

    auto* core = observer->add_subcommand("core", "Closed strongly connected part of the observer");
    core->add_option("file", input_, "Graph or observer JSON")->required()->check(CLI::ExistingFile);
    core->add_option("-o,--output", output_, "Output file (default stdout)");
    core->callback([this] { code_ = emit(io::to_json(observer_core(load_observer()))); });

    // covering
    auto* covering = app.add_subcommand("covering", "Covering families of languages");
    covering->require_subcommand(1);
    auto* validate = covering->add_subcommand("validate", "Check the covering conditions (exit 1 if invalid)");
    validate->add_option("file", input_, "Covering JSON")->required()->check(CLI::ExistingFile);
    validate->callback([this] { code_ = covering_validate(); });

    auto* to_graph = covering->add_subcommand("to-graph", "Graph induced by a covering family");
    to_graph->add_option("file", input_, "Covering JSON")->required()->check(CLI::ExistingFile);
    to_graph->add_option("-o,--output", output_, "Output file (default stdout)");
    to_graph->callback([this] {
      code_ = emit(io::to_json(covering_to_graph(load_covering(), caps_.automaton_states).graph));
    });

    auto* from_graph = covering->add_subcommand("from-graph", "Covering family of a path-complete graph's observer");
    from_graph->add_option("file", input_, "Graph JSON")->required()->check(CLI::ExistingFile);
    from_graph->add_option("-o,--output", output_, "Output file (default stdout)");
    from_graph->callback([this] {
      code_ = emit(io::to_json(observer_to_covering(load_graph(), caps_.graph_subsets)));
    });

    // jsr
    auto* jsr = app.add_subcommand("jsr", "Joint spectral radius bounds");
    jsr->require_subcommand(1);
    auto* upper = jsr->add_subcommand("upper", "Quadratic path-complete upper bound by bisection");
    upper->add_option("--graph", graph_path_, "Graph JSON")->required()->check(CLI::ExistingFile);
    upper->add_option("--system", system_path_, "System JSON")->required()->check(CLI::ExistingFile);
    upper->add_option("--tol", tolerance_, "Bisection tolerance on rho")->check(CLI::PositiveNumber);
    upper->add_flag("--allow-non-path-complete", allow_non_path_complete_,
                    "Solve even if the graph is not path-complete");
    upper->add_option("-o,--output", output_, "Write the result JSON here");
    upper->callback([this] { code_ = jsr_upper(); });

    auto* lower = jsr->add_subcommand("lower", "Brute-force lower bound over products");
    lower->add_option("--system", system_path_, "System JSON")->required()->check(CLI::ExistingFile);
    lower->add_option("--max-len", max_len_, "Longest word length")->required()->check(CLI::PositiveNumber);
    lower->callback([this] { code_ = jsr_lower(); });

    // certificate
    auto* certificate = app.add_subcommand("certificate", "Quadratic certificates");
    certificate->require_subcommand(1);
    auto* verify = certificate->add_subcommand("verify", "Eigenvalue check (exit 1 if it fails)");
    verify->add_option("--cert", cert_path_, "Certificate or jsr result JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("--system", system_path_, "System JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("--rho-prime", rho_prime_, "Report the implied gamma for this rate");
    verify->callback([this] { code_ = certificate_verify(); });

    auto* lift = certificate->add_subcommand("lift", "Max-of-quadratics function on the observer");
    lift->add_option("--cert", cert_path_, "Certificate or jsr result JSON")->required()->check(CLI::ExistingFile);
    lift->add_option("-o,--output", output_, "Output file (default stdout)");
    lift->callback([this] { code_ = certificate_lift(); });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Trajectory under a switching word");
    sim->add_option("--system", system_path_, "System JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--word", word_, "Switching word, e.g. ab or a,b");
    sim->add_option("--x0", x0_, "Initial state, comma-separated")->required();
    sim->callback([this] { code_ = run_simulate(); });

    // decrease-check
    auto* decrease = app.add_subcommand("decrease-check", "Sampled geometric decrease along memory chains");
    decrease->add_option("--cert", cert_path_, "Certificate or jsr result JSON")->required()->check(CLI::ExistingFile);
    decrease->add_option("--system", system_path_, "System JSON")->required()->check(CLI::ExistingFile);
    decrease->add_option("--covering", covering_path_,
                         "Covering whose graph the certificate lives on (default: lift to the observer)")
        ->check(CLI::ExistingFile);
    decrease->add_option("--rho-prime-factor", rho_prime_factor_, "rho' = factor * rho")->check(CLI::PositiveNumber);
    decrease->add_option("--rho-prime", rho_prime_, "rho' (overrides the factor)")->check(CLI::PositiveNumber);
    decrease->add_option("--trials", trials_, "Random trials")->check(CLI::NonNegativeNumber);
    decrease->add_option("--horizon", horizon_, "Steps per trial")->check(CLI::NonNegativeNumber);
    decrease->add_option("--seed", seed_, "Random seed");
    decrease->add_option("--x0", x0_, "Fixed initial state instead of random samples");
    decrease->callback([this] { code_ = decrease_check(); });

    // Global options may follow the subcommand.
    std::vector<CLI::App*> pending{&app};
    while (!pending.empty()) {
      CLI::App* a = pending.back();
      pending.pop_back();
      for (CLI::App* sub : a->get_subcommands({})) {
        sub->fallthrough();
        pending.push_back(sub);
      }
    }

    try {
      caps_ = caps_from_environment();
      app.parse(argc, argv);
      return code_;
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      err_ << app.help();
      return kUsage;
    } catch (const NotPathComplete& e) {
      err_ << "error: " << e.what() << "\n";
      return kPropertyFalse;
    } catch (const InvalidInput& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kResource;
    }
  }

 private:
  bool json_output() const { return format_ == "json"; }

  int emit(const json& j) {
    if (output_.empty()) {
      out_ << j.dump(2) << '\n';
    } else {
      io::write_json_file(output_, j);
    }
    return kSuccess;
  }

  LabeledGraph load_graph() { return io::graph_from_json(io::read_json_file(input_)); }

  ObserverGraph load_observer() {
    auto j = io::read_json_file(input_);
    if (j.is_object() && j.contains("root")) return io::observer_from_json(j);
    return observer_graph(io::graph_from_json(j), caps_.graph_subsets);
  }

  CoveringFamily load_covering() {
    return io::covering_from_json(io::read_json_file(input_));
  }

  SwitchedLinearSystem load_system() {
    return io::system_from_json(io::read_json_file(system_path_));
  }

  int graph_check() {
    if (!check_path_complete_ && !check_complete_ && !check_deterministic_) {
      throw CLI::ValidationError("graph check", "choose --path-complete, --complete or --deterministic");
    }
    const auto g = load_graph();
    bool all = true;
    json report = json::object();
    if (check_complete_) {
      const bool ok = is_complete(g);
      all = all && ok;
      report["complete"] = ok;
      if (!json_output()) out_ << "complete: " << (ok ? "true" : "false") << '\n';
    }
    if (check_deterministic_) {
      const bool ok = is_deterministic(g);
      all = all && ok;
      report["deterministic"] = ok;
      if (!json_output()) out_ << "deterministic: " << (ok ? "true" : "false") << '\n';
    }
    if (check_path_complete_) {
      const auto witness = unreadable_word(g, caps_.graph_subsets);
      all = all && !witness;
      report["path_complete"] = !witness;
      if (witness) report["witness"] = format_word(g.alphabet(), *witness);
      if (!json_output()) {
        out_ << "path-complete: " << (witness ? "false" : "true") << '\n';
        if (witness) out_ << "witness: " << format_word(g.alphabet(), *witness) << '\n';
      }
    }
    if (json_output()) out_ << report.dump(2) << '\n';
    return all ? kSuccess : kPropertyFalse;
  }

  int covering_validate() {
    const auto c = load_covering();
    const auto report = validate_covering(c, caps_.automaton_states);
    if (json_output()) {
      out_ << io::to_json(c, report).dump(2) << '\n';
    } else {
      out_ << "covers S*: " << (report.covers ? "true" : "false") << '\n';
      if (report.uncovered_word) {
        out_ << "uncovered word: " << format_word(c.alphabet, *report.uncovered_word) << '\n';
      }
      out_ << "closed under prepending: " << (report.closed ? "true" : "false") << '\n';
      if (report.unclosed) {
        out_ << "no member contains " << c.alphabet.symbol(report.unclosed->second) << "·"
             << c.members[report.unclosed->first].name << '\n';
      }
      out_ << "valid: " << (report.valid() ? "true" : "false") << '\n';
    }
    return report.valid() ? kSuccess : kPropertyFalse;
  }

  int jsr_upper() {
    const auto g = io::graph_from_json(io::read_json_file(graph_path_));
    const auto sys = load_system();
    JsrOptions options;
    options.tolerance = tolerance_;
    options.allow_non_path_complete = allow_non_path_complete_;
    options.max_subsets = caps_.graph_subsets;
    if (allow_non_path_complete_ && !is_path_complete(g, caps_.graph_subsets)) {
      err_ << "warning: graph is not path-complete; the bound certifies nothing\n";
    }
    const auto result = jsr_upper_bound(g, sys, options);
    const auto j = io::to_json(result);
    if (!output_.empty()) io::write_json_file(output_, j);
    if (json_output()) {
      out_ << j.dump(2) << '\n';
    } else {
      out_ << fmt(result.rho_upper) << '\n';
    }
    return kSuccess;
  }

  int jsr_lower() {
    const auto sys = load_system();
    const auto bound = jsr_lower_bound(sys, max_len_);
    if (json_output()) {
      out_ << io::to_json(sys.alphabet(), bound).dump(2) << '\n';
    } else {
      out_ << fmt(bound.rho_lower) << " " << format_word(sys.alphabet(), bound.witness) << '\n';
    }
    return kSuccess;
  }

  int certificate_verify() {
    const auto cert = load_certificate(cert_path_);
    const auto sys = load_system();
    const auto report = verify_certificate(cert, sys);
    if (json_output()) {
      auto j = io::to_json(report, cert.rho);
      if (rho_prime_) j["gamma"] = implied_gamma(cert.rho, *rho_prime_);
      out_ << j.dump(2) << '\n';
    } else {
      for (const auto* list : {&report.nodes, &report.edges}) {
        for (const auto& c : *list) {
          out_ << (c.ok() ? "ok   " : "FAIL ") << c.label << "  lambda_min " << fmt(c.min_eigenvalue) << '\n';
        }
      }
      out_ << "margin: " << fmt(report.margin) << '\n';
      if (rho_prime_) out_ << "gamma at rho' " << fmt(*rho_prime_) << ": " << fmt(implied_gamma(cert.rho, *rho_prime_)) << '\n';
      out_ << (report.passed ? "verified" : "not verified") << '\n';
    }
    return report.passed ? kSuccess : kPropertyFalse;
  }

  int certificate_lift() {
    const auto cert = load_certificate(cert_path_);
    const auto obs = observer_graph(cert.graph, caps_.graph_subsets);
    return emit(io::to_json(lift_certificate(cert, obs)));
  }

  int run_simulate() {
    const auto sys = load_system();
    const auto trajectory = simulate(sys, parse_word(sys.alphabet(), word_), parse_vector(x0_));
    if (json_output()) {
      out_ << io::to_json(trajectory, sys.alphabet()).dump(2) << '\n';
    } else {
      for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
        out_ << "x(" << k << ") =";
        for (int i = 0; i < trajectory.states[k].size(); ++i) out_ << ' ' << fmt(trajectory.states[k](i));
        out_ << '\n';
      }
    }
    return kSuccess;
  }

  int decrease_check() {
    const auto cert = load_certificate(cert_path_);
    const auto sys = load_system();
    DecreaseCheckOptions options;
    options.rho = cert.rho;
    options.rho_prime = rho_prime_ ? *rho_prime_ : rho_prime_factor_ * cert.rho;
    options.trials = trials_;
    options.horizon = horizon_;
    options.seed = seed_;

    std::optional<MemoryStructure> structure;
    std::optional<MaxQuadraticFunction> w;
    if (!covering_path_.empty()) {
      const auto c = io::covering_from_json(io::read_json_file(covering_path_));
      structure.emplace(memory_structure(c));
      w.emplace(as_max_quadratic(cert));
    } else {
      const auto obs = observer_graph(cert.graph, caps_.graph_subsets);
      structure.emplace(memory_structure(obs));
      w.emplace(lift_certificate(cert, obs));
    }
    const auto report = x0_.empty()
                            ? trajectory_decrease_check(*w, *structure, sys, options)
                            : trajectory_decrease_check(*w, *structure, sys, options, parse_vector(x0_));
    if (json_output()) {
      out_ << io::to_json(sys.alphabet(), report).dump(2) << '\n';
    } else {
      out_ << "seed: " << report.seed << '\n'
           << "gamma: " << fmt(report.gamma) << '\n'
           << "checks: " << report.checks << '\n'
           << "violations: " << report.violations << '\n'
           << "step violations: " << report.step_violations << '\n'
           << "alternative-chain violations: " << report.alternative_violations << '\n'
           << "envelope violations: " << report.envelope_violations << '\n'
           << "worst slack: " << fmt(report.worst_slack) << '\n'
           << (report.passed() ? "passed" : "FAILED") << '\n';
    }
    return report.passed() ? kSuccess : kPropertyFalse;
  }

  std::ostream& out_;
  std::ostream& err_;
  int code_ = kSuccess;
  Caps caps_;

  std::string format_ = "text";
  std::string input_, output_, graph_path_, system_path_, cert_path_, covering_path_;
  std::string word_, x0_;
  std::vector<std::string> alphabet_;
  int order_ = 1;
  int max_len_ = 1;
  bool check_path_complete_ = false;
  bool check_complete_ = false;
  bool check_deterministic_ = false;
  bool allow_non_path_complete_ = false;
  double tolerance_ = 1e-4;
  std::optional<double> rho_prime_;
  double rho_prime_factor_ = 1.01;
  int trials_ = 100;
  int horizon_ = 20;
  std::uint64_t seed_ = 5489;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(argc, argv);
}

}  // namespace pclyap::cli
