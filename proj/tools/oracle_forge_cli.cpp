// oracle_forge: synthesize circuits for a goal unitary, run batch
// experiments, verify circuits, benchmark the block kernel, brute-force
// minimal costs.
//
// Exit codes: 0 success, 1 usage/config error, 2 no success (evolution
// exhausted max_gen, verify verdict negative, or brute force found nothing).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracle_forge/brute_force.hpp"
#include "oracle_forge/hqea.hpp"
#include "oracle_forge/targets.hpp"

namespace of = oracle_forge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoSuccess = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

struct GoalOptions {
  std::string goal;
  std::string goal_file;
  std::size_t qubits = 2;  // only for the identity goal
  std::vector<std::string> gates;
  std::string gate_file;

  void add_to(CLI::App& app) {
    app.add_option("--goal", goal, "Built-in goal: swap, entangle2, entangle3, controlled_s, identity");
    app.add_option("--goal-file", goal_file, "Goal JSON file")->check(CLI::ExistingFile);
    app.add_option("--qubits", qubits, "Register size for the identity goal")->check(CLI::Range(1, 10));
    app.add_option("--gates", gates, "Restrict the gate set (e.g. H,CNOT)")->delimiter(',');
    app.add_option("--gate-file", gate_file, "Extra gates (JSON)")->check(CLI::ExistingFile);
  }

  of::GoalSpec load_goal() const {
    if (goal.empty() == goal_file.empty()) throw UsageError("give exactly one of --goal / --goal-file");
    return goal_file.empty() ? of::builtin_goal(goal, qubits) : of::load_goal(goal_file);
  }

  std::string goal_label() const { return goal.empty() ? std::filesystem::path(goal_file).stem().string() : goal; }

  of::GateSet load_gates() const {
    of::GateSet gs = of::GateSet::standard();
    if (!gate_file.empty()) gs = gs.extended(of::load_gate_extensions(gate_file));
    if (!gates.empty()) gs = gs.select(gates);
    return gs;
  }
};

struct EvolveOptions {
  std::vector<double> satcost{6};
  std::vector<double> punish{20};
  std::size_t g = 6;
  double award = 1;
  double eps = 1e-6;
  std::size_t max_gen = 100;
  std::size_t pop = 20;
  std::size_t measurements = 10;
  double mutation = 0.02;
  std::uint64_t seed = 1;
  std::size_t runs = 20;

  void add_to(CLI::App& app, bool sweep) {
    auto* s = app.add_option("--satcost", satcost, "Satisfying cost");
    auto* p = app.add_option("--punish", punish, "Punish factor");
    if (sweep) {
      s->delimiter(',');
      p->delimiter(',');
      app.add_option("--runs", runs, "Runs per configuration (seeds seed..seed+runs-1)");
    } else {
      s->expected(1);
      p->expected(1);
    }
    app.add_option("--g", g, "Maximal number of gates");
    app.add_option("--award", award, "Award factor");
    app.add_option("--eps", eps, "Correctness tolerance");
    app.add_option("--max-gen", max_gen, "Maximal generation");
    app.add_option("--pop", pop, "Number of Q-chromosomes");
    app.add_option("--measurements", measurements, "Measurements per Q-chromosome per generation");
    app.add_option("--mutation", mutation, "Per-bit mutation probability");
    app.add_option("--seed", seed, "Random seed (base seed for batches)");
  }

  of::HqeaParams params(double sat, double pun) const {
    if (g == 0) throw UsageError("--g must be >= 1");
    of::HqeaParams p;
    p.pop_size = pop;
    p.measurements = measurements;
    p.max_gen = max_gen;
    p.mutation_prob = mutation;
    p.seed = seed;
    p.fitness = {.satcost = sat, .award = award, .punish = pun, .eps = eps};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

void write_generation_csv(const std::vector<of::GenerationRecord>& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "gen,best_fitness,best_correctness,best_cost\n";
  for (const auto& r : log)
    out << r.gen << ',' << num(r.best_fitness) << ',' << num(r.best_correctness) << ',' << r.best_cost << '\n';
}

int cmd_synth(const GoalOptions& go, const EvolveOptions& eo, const std::string& out_dir) {
  const of::GoalSpec goal = go.load_goal();
  const of::GateSet gs = go.load_gates();
  const of::HqeaParams params = eo.params(eo.satcost.front(), eo.punish.front());
  const of::RunResult r = of::evolve(goal, gs, eo.g, params);

  std::cout << of::render_ascii(r.best.circuit, gs);
  std::cout << "cost:        " << r.best.eval.allcost << "\n"
            << "correctness: " << num(r.best.eval.correctness, "%.12f") << "\n"
            << "fitness:     " << num(r.best.eval.fitness, "%.6f") << "\n"
            << "generation:  "
            << (r.generation_found ? std::to_string(*r.generation_found) : "none") << " of "
            << r.generations_run << "\n"
            << "success:     " << (r.success ? "yes" : "no") << "\n";

  const auto dir = prepare_out_dir(out_dir);
  of::save_circuit(r.best.circuit, gs, params.cost, dir / "circuit.json");
  write_generation_csv(r.log, dir / "generations.csv");
  return r.success ? kExitOk : kExitNoSuccess;
}

int cmd_experiment(const GoalOptions& go, const EvolveOptions& eo, const std::string& csv_path) {
  const of::GoalSpec goal = go.load_goal();
  const of::GateSet gs = go.load_gates();
  if (eo.runs == 0) throw UsageError("--runs must be >= 1");

  std::ostringstream csv;
  csv << "goal,satcost,g,max_gen,punish,AS,ST,OT\n";
  std::printf("%-14s %8s %4s %8s %8s %8s %4s %4s\n", "goal", "satcost", "g", "max_gen", "punish", "AS", "ST",
              "OT");
  for (double sat : eo.satcost)
    for (double pun : eo.punish) {
      const auto stats = of::run_batch(goal, gs, eo.g, eo.params(sat, pun), eo.runs, eo.seed);
      const std::string ot = stats.ot ? std::to_string(*stats.ot) : "";
      std::printf("%-14s %8s %4zu %8zu %8s %8.2f %4zu %4s\n", go.goal_label().c_str(), num(sat, "%g").c_str(),
                  eo.g, eo.max_gen, num(pun, "%g").c_str(), stats.as, stats.st, ot.c_str());
      csv << go.goal_label() << ',' << num(sat, "%g") << ',' << eo.g << ',' << eo.max_gen << ','
          << num(pun, "%g") << ',' << num(stats.as, "%.6g") << ',' << stats.st << ',' << ot << '\n';
    }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << csv.str();
  }
  return kExitOk;
}

int cmd_verify(const GoalOptions& go, const std::string& circuit_path, std::optional<double> satcost, double eps) {
  const of::GoalSpec goal = go.load_goal();
  const of::GateSet gs = go.load_gates();
  of::Circuit circ;
  try {
    circ = of::load_circuit(circuit_path, gs);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed circuit JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (circ.qubits != goal.qubits)
    throw UsageError("circuit has " + std::to_string(circ.qubits) + " qubits, goal has " +
                     std::to_string(goal.qubits));
  const double corr = of::correctness(of::circuit_unitary(circ, gs), goal);
  const unsigned cost = of::allcost(circ, gs);
  const bool correct = corr >= 1.0 - eps;
  const bool ok = correct && (!satcost || cost <= *satcost);

  std::cout << of::render_ascii(circ, gs);
  std::cout << "correctness: " << num(corr, "%.12f") << "\n"
            << "cost:        " << cost << "\n";
  if (satcost) std::cout << "satcost:     " << num(*satcost, "%g") << "\n";
  std::cout << "verdict:     " << (ok ? "success" : "failure") << "\n";
  return ok ? kExitOk : kExitNoSuccess;
}

int cmd_bench(const std::vector<std::size_t>& dims, std::size_t max_product, std::size_t repeat,
              const std::string& csv_path) {
  for (auto d : dims)
    if (!of::is_power_of_two(d)) throw UsageError("dims must be powers of two");
  std::ostringstream csv;
  csv << "m,n,k,structured_count,naive_count,predicted_speedup,wall_ns_structured,wall_ns_naive\n";
  of::Rng rng = of::make_stream(2024, 0);
  auto random_matrix = [&](std::size_t n) {
    std::vector<of::Complex> e(n * n);
    for (auto& z : e) z = {of::uniform01(rng) - 0.5, of::uniform01(rng) - 0.5};
    return of::Matrix(n, std::move(e));
  };
  using clock = std::chrono::steady_clock;
  for (auto m : dims)
    for (auto n : dims)
      for (auto k : dims) {
        if (m * n * k > max_product) continue;
        const of::StructuredOperator op{m, random_matrix(n), k};
        const of::Matrix b = random_matrix(m * n * k);
        const of::Matrix dense = of::embed_dense(op);
        of::MulCounter fast, slow;
        of::apply_structured(op, b, &fast);
        of::mat_mul_naive(dense, b, &slow);
        auto t0 = clock::now();
        for (std::size_t r = 0; r < repeat; ++r) of::apply_structured(op, b);
        auto t1 = clock::now();
        for (std::size_t r = 0; r < repeat; ++r) of::mat_mul_naive(dense, b);
        auto t2 = clock::now();
        const auto ns = [&](auto a, auto z) {
          return std::chrono::duration_cast<std::chrono::nanoseconds>(z - a).count() / static_cast<long long>(repeat);
        };
        csv << m << ',' << n << ',' << k << ',' << fast.count << ',' << slow.count << ','
            << (of::speedup_predicted(m, n, k) ? "true" : "false") << ',' << ns(t0, t1) << ',' << ns(t1, t2)
            << '\n';
      }
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << csv.str();
  }
  return kExitOk;
}

int cmd_brute(const GoalOptions& go, std::size_t max_gates, std::uint64_t budget, double eps) {
  const of::GoalSpec goal = go.load_goal();
  const of::GateSet gs = go.load_gates();
  of::SearchOptions opts;
  opts.eps = eps;
  opts.budget = budget;
  of::SearchReport r;
  try {
    r = of::min_cost_search(goal, max_gates, gs, opts);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  std::cout << of::report_to_json(r, gs, opts.cost_model).dump(2) << "\n";
  if (r.witness) std::cout << of::render_ascii(*r.witness, gs);
  return r.min_cost ? kExitOk : kExitNoSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolve quantum circuits for a goal unitary"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  GoalOptions goal_opts;
  EvolveOptions evo_opts;
  std::string out_dir = ".";
  std::string csv_path;

  auto* synth = app.add_subcommand("synth", "Run one evolution and write circuit.json + generations.csv");
  goal_opts.add_to(*synth);
  evo_opts.add_to(*synth, false);
  synth->add_option("--out-dir", out_dir, "Directory for circuit.json and generations.csv");

  GoalOptions exp_goal;
  EvolveOptions exp_evo;
  auto* experiment = app.add_subcommand("experiment", "Batch runs; one AS/ST/OT row per (satcost, punish)");
  exp_goal.add_to(*experiment);
  exp_evo.add_to(*experiment, true);
  experiment->add_option("--csv", csv_path, "Also write the table as CSV");

  GoalOptions ver_goal;
  std::string circuit_path;
  std::optional<double> ver_satcost;
  double ver_eps = 1e-6;
  auto* verify = app.add_subcommand("verify", "Correctness and cost of a circuit JSON against a goal");
  ver_goal.add_to(*verify);
  verify->add_option("--circuit", circuit_path, "Circuit JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--satcost", ver_satcost, "Cost bound for the verdict");
  verify->add_option("--eps", ver_eps, "Correctness tolerance");

  std::vector<std::size_t> dims{1, 2, 4, 8};
  std::size_t max_product = 64, repeat = 3;
  std::string bench_csv;
  auto* bench = app.add_subcommand("bench-matmul", "Block kernel vs dense multiply: counts and timings");
  bench->add_option("--dims", dims, "Candidate m, n, k values")->delimiter(',');
  bench->add_option("--max-product", max_product, "Skip triples with m*n*k above this");
  bench->add_option("--repeat", repeat, "Timing repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "Write CSV here instead of stdout");

  GoalOptions brute_goal;
  std::size_t max_gates = 3;
  std::uint64_t budget = 100'000'000;
  double brute_eps = 1e-6;
  auto* brute = app.add_subcommand("brute", "Exhaustive minimal-cost search");
  brute_goal.add_to(*brute);
  brute->add_option("--max-gates", max_gates, "Maximal number of non-wire gates");
  brute->add_option("--budget", budget, "Refuse searches larger than this many circuits");
  brute->add_option("--eps", brute_eps, "Correctness tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(goal_opts, evo_opts, out_dir);
    if (*experiment) return cmd_experiment(exp_goal, exp_evo, csv_path);
    if (*verify) return cmd_verify(ver_goal, circuit_path, ver_satcost, ver_eps);
    if (*bench) return cmd_bench(dims, max_product, repeat, bench_csv);
    if (*brute) return cmd_brute(brute_goal, max_gates, budget, brute_eps);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
