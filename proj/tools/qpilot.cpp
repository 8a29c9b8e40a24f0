#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qpilot/bench.hpp"
#include "qpilot/compile.hpp"
#include "qpilot/error.hpp"
#include "qpilot/metrics.hpp"
#include "qpilot/qaoa_router.hpp"
#include "qpilot/schedule.hpp"
#include "qpilot/statevector.hpp"

using namespace qpilot;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

// Marks failures that should exit with kInvalid rather than kIoError.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) {
    throw InvalidArgument("cannot write " + path);
  }
}

FpqaConfig load_config(const std::string& path, std::size_t n, std::size_t width) {
  if (!path.empty()) {
    return json::parse(read_file(path)).get<FpqaConfig>();
  }
  return FpqaConfig::for_qubits(n, width);
}

Schedule load_schedule(const std::string& path) {
  return json::parse(read_file(path)).get<Schedule>();
}

NoiseParams noise_from(double f1, double f2, double t2, double t0) {
  NoiseParams p{f1, f2, t2, t0};
  p.check();
  return p;
}

json report(const Schedule& s, const NoiseParams& noise) {
  const Metrics m = evaluate(s);
  json j = m;
  j["mean_parallelism"] = m.mean_parallelism();
  j["epsilon"] = error_rate(m, noise);
  j["epsilon_gate_count"] = error_rate(m, noise, ExponentMode::GateCount);
  return j;
}

void require_valid(const Schedule& s) {
  const auto v = validate(s);
  if (v.empty()) {
    return;
  }
  std::ostringstream os;
  os << v.size() << " violation(s); first at stage " << v.front().stage << ": "
     << to_string(v.front().kind) << " " << v.front().detail;
  throw ValidationFailure(os.str());
}

Circuit reference_circuit(const Problem& p, double gamma) {
  if (const auto* c = std::get_if<Circuit>(&p)) {
    return *c;
  }
  if (const auto* ps = std::get_if<std::vector<PauliString>>(&p)) {
    return pauli_evolution_circuit(*ps);
  }
  return qaoa_circuit(std::get<EdgeSet>(p), gamma);
}

std::string problem_text(const Problem& p) {
  if (const auto* c = std::get_if<Circuit>(&p)) {
    return to_qasm(*c);
  }
  if (const auto* ps = std::get_if<std::vector<PauliString>>(&p)) {
    std::ostringstream os;
    os.precision(17);
    for (const PauliString& s : *ps) {
      os << s.str() << ' ' << s.angle << '\n';
    }
    return os.str();
  }
  return to_edge_list(std::get<EdgeSet>(p));
}

Schedule compile_with(const Problem& p, const std::string& router, const FpqaConfig& cfg,
                      double gamma) {
  if (router.empty()) {
    return compile(p, cfg, gamma);
  }
  if (router_from_string(router) != default_router(p)) {
    throw InvalidArgument("router " + router + " does not accept this input");
  }
  return compile(p, cfg, gamma);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compiler for field-programmable qubit arrays with flying ancillas"};
  app.require_subcommand(1);

  double f1 = 0.999;
  double f2 = 0.999;
  double t2 = 1.5;
  double t0 = 300e-6;
  auto add_noise = [&](CLI::App* sub) {
    sub->add_option("--f1", f1, "single-qubit gate fidelity");
    sub->add_option("--f2", f2, "two-qubit gate fidelity");
    sub->add_option("--t2", t2, "coherence time in seconds");
    sub->add_option("--t0", t0, "full-diagonal move time in seconds");
  };

  std::string input;
  std::string router;
  std::string config_path;
  std::string out;
  std::size_t width = 0;
  double gamma = 0.1;

  auto* c_compile = app.add_subcommand("compile", "route a .qasm, .pauli or .edges file");
  c_compile->add_option("input", input, "problem file")->required();
  c_compile->add_option("--router", router, "generic, qsim or qaoa")
      ->check(CLI::IsMember({"generic", "qsim", "qaoa"}));
  c_compile->add_option("--config", config_path, "FpqaConfig JSON");
  c_compile->add_option("--width", width, "array width when no config is given");
  c_compile->add_option("--gamma", gamma, "QAOA angle; also the default Pauli angle");
  c_compile->add_option("--out", out, "schedule JSON (default stdout)");

  std::string kind = "random";
  std::size_t n = 10;
  std::uint64_t seed = 1;
  std::size_t factor = 2;
  std::size_t count = 100;
  double p = 0.1;
  std::size_t k = 3;
  std::string problem_out;
  auto* c_bench = app.add_subcommand("bench", "generate, compile and report one benchmark instance");
  c_bench->add_option("--kind", kind, "random, qsim, qaoa-random or qaoa-regular")
      ->check(CLI::IsMember({"random", "qsim", "qaoa-random", "qaoa-regular"}));
  c_bench->add_option("--n", n, "qubits")->check(CLI::PositiveNumber);
  c_bench->add_option("--seed", seed, "generator seed");
  c_bench->add_option("--factor", factor, "CNOTs per qubit (random)");
  c_bench->add_option("--count", count, "Pauli strings (qsim)");
  c_bench->add_option("--p", p, "Pauli or edge probability");
  c_bench->add_option("--k", k, "degree (qaoa-regular)");
  c_bench->add_option("--width", width, "array width");
  c_bench->add_option("--gamma", gamma, "QAOA angle");
  c_bench->add_option("--problem-out", problem_out, "write the generated problem file");
  c_bench->add_option("--out", out, "write the schedule JSON");
  add_noise(c_bench);

  std::string schedule_path;
  auto* c_verify = app.add_subcommand("verify", "check a schedule against its problem on the oracle");
  c_verify->add_option("problem", input, "problem file")->required();
  c_verify->add_option("schedule", schedule_path, "schedule JSON")->required();
  c_verify->add_option("--gamma", gamma, "QAOA angle used at compile time");
  std::size_t n_random = 20;
  c_verify->add_option("--inputs", n_random, "random product inputs");

  std::vector<std::size_t> widths{8, 16, 32, 64, 128};
  auto* c_sweep = app.add_subcommand("sweep", "recompile over array widths and print CSV");
  c_sweep->add_option("input", input, "problem file")->required();
  c_sweep->add_option("--widths", widths, "comma separated widths")->delimiter(',');
  c_sweep->add_option("--gamma", gamma, "QAOA angle");
  c_sweep->add_option("--out", out, "CSV output (default stdout)");
  add_noise(c_sweep);

  std::string csv_out;
  auto* c_stats = app.add_subcommand("stats", "metrics JSON and movement CSV for a schedule");
  c_stats->add_option("schedule", schedule_path, "schedule JSON")->required();
  c_stats->add_option("--csv", csv_out, "movement CSV output");
  add_noise(c_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (*c_compile) {
      const Problem prob = load_problem(input, gamma);
      const FpqaConfig cfg = load_config(config_path, problem_qubits(prob), width);
      const Schedule s = compile_with(prob, router, cfg, gamma);
      write_output(out, json(s).dump() + "\n");
      require_valid(s);
    } else if (*c_bench) {
      Problem prob;
      if (kind == "random") {
        prob = random_circuit(n, factor * n, seed);
      } else if (kind == "qsim") {
        prob = random_pauli_strings(n, count, p, seed, gamma);
      } else if (kind == "qaoa-random") {
        prob = random_graph(n, p, seed);
      } else {
        prob = random_regular_graph(n, k, seed);
      }
      if (!problem_out.empty()) {
        write_output(problem_out, problem_text(prob));
      }
      const NoiseParams noise = noise_from(f1, f2, t2, t0);
      const Schedule s = compile(prob, FpqaConfig::for_qubits(n, width), gamma);
      require_valid(s);
      if (!out.empty()) {
        write_output(out, json(s).dump() + "\n");
      }
      std::cout << report(s, noise).dump(2) << "\n";
    } else if (*c_verify) {
      const Problem prob = load_problem(input, gamma);
      const Schedule s = load_schedule(schedule_path);
      require_valid(s);
      const double fid = equivalence(reference_circuit(prob, gamma), s, n_random);
      std::cout << json{{"fidelity", fid}}.dump() << "\n";
      if (fid < 1 - 1e-9) {
        throw ValidationFailure("schedule is not equivalent to the problem");
      }
    } else if (*c_sweep) {
      const Problem prob = load_problem(input, gamma);
      const auto sw = sweep_array_width(prob, widths, noise_from(f1, f2, t2, t0));
      write_output(out, sweep_csv(sw));
      if (const auto best = argmin_width(sw)) {
        std::cerr << "argmin width " << *best << "\n";
      }
    } else if (*c_stats) {
      const Schedule s = load_schedule(schedule_path);
      require_valid(s);
      std::cout << report(s, noise_from(f1, f2, t2, t0)).dump(2) << "\n";
      if (!csv_out.empty()) {
        write_output(csv_out, movement_csv(s));
      }
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "qpilot: " << e.what() << "\n";
    return kInvalid;
  } catch (const InvalidScheduleError& e) {
    std::cerr << "qpilot: " << e.what() << "\n";
    return kInvalid;
  } catch (const AncillaLeakError& e) {
    std::cerr << "qpilot: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "qpilot: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
