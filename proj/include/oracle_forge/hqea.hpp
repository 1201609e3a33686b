#pragma once

// Hybrid quantum-inspired evolutionary algorithm.
//
// Each individual is a vector of Q-bits (alpha, beta), alpha^2 + beta^2 = 1.
// Per generation every Q-chromosome is measured `measurements` times (bit i
// is 1 with probability beta_i^2); measured strings receive per-bit classical
// mutation, are decoded and evaluated, and the chromosome keeps its best
// sample. The global best is elitist. Every chromosome whose best sample is
// strictly worse than the global best rotates each Q-bit by delta_theta toward
// the global best's bit value. Angles are clamped to [c, pi/2 - c] with
// c = 0.01 rad, so no Q-bit collapses to a definite value.
//
// Randomness: std::mt19937_64, one stream per chromosome, seeded from
// std::seed_seq{seed_lo, seed_hi, chromosome_index}. Uniform doubles are built
// from the top 53 bits, so runs are bit-identical across platforms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "oracle_forge/codec.hpp"
#include "oracle_forge/evaluator.hpp"

namespace oracle_forge {

using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline constexpr double kAngleClamp = 0.01;

struct QBit {
  double alpha = std::numbers::sqrt2 / 2;
  double beta = std::numbers::sqrt2 / 2;

  double angle() const { return std::atan2(beta, alpha); }
  double prob_one() const { return beta * beta; }

  static QBit from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
};

/// Rotates by +/- delta toward |1> (toward_one) or |0>.
inline QBit rotate_toward(QBit q, bool toward_one, double delta, bool clamp = true) {
  double theta = q.angle() + (toward_one ? delta : -delta);
  if (clamp) theta = std::clamp(theta, kAngleClamp, std::numbers::pi / 2 - kAngleClamp);
  return QBit::from_angle(theta);
}

struct QChromosome {
  std::vector<QBit> qbits;
};

inline Chromosome observe(const QChromosome& q, Rng& rng) {
  Chromosome c;
  c.bits.reserve(q.qbits.size());
  for (const auto& b : q.qbits) c.bits.push_back(uniform01(rng) < b.prob_one() ? 1 : 0);
  return c;
}

struct HqeaParams {
  std::size_t pop_size = 20;
  std::size_t measurements = 10;
  std::size_t max_gen = 100;
  double delta_theta = 0.01 * std::numbers::pi;
  double mutation_prob = 0.02;
  bool clamp = true;
  std::uint64_t seed = 0;
  FitnessParams fitness{};
  CostModel cost{};

  void validate() const {
    if (pop_size == 0 || measurements == 0 || max_gen == 0)
      throw std::invalid_argument("pop_size, measurements and max_gen must be >= 1");
    if (!(delta_theta >= 0)) throw std::invalid_argument("delta_theta must be >= 0");
    if (!(mutation_prob >= 0 && mutation_prob <= 1))
      throw std::invalid_argument("mutation_prob must lie in [0, 1]");
    fitness.validate();
  }
};

inline std::vector<QChromosome> init_population(std::size_t pop_size, std::size_t bits) {
  return std::vector<QChromosome>(pop_size, QChromosome{std::vector<QBit>(bits)});
}

struct Candidate {
  Chromosome bits;
  Circuit circuit;
  EvalResult eval;
};

struct GenerationRecord {
  std::size_t gen = 0;
  double best_fitness = 0.0;
  double best_correctness = 0.0;
  unsigned best_cost = 0;
};

struct RunResult {
  bool success = false;
  Candidate best;
  std::optional<std::size_t> generation_found;
  std::size_t generations_run = 0;
  std::vector<GenerationRecord> log;
};

/// One evolutionary run. `step()` advances a generation; `run()` loops until
/// success or max_gen.
class HqeaRun {
 public:
  HqeaRun(GoalSpec goal, GateSet gs, std::size_t max_gates, HqeaParams params)
      : goal_(std::move(goal)),
        gs_(std::move(gs)),
        layout_(CodecLayout::make(goal_.qubits, max_gates, gs_)),
        params_(params) {
    params_.validate();
    population_ = init_population(params_.pop_size, layout_.chromosome_bits());
    rngs_.reserve(params_.pop_size);
    for (std::size_t i = 0; i < params_.pop_size; ++i) rngs_.push_back(make_stream(params_.seed, i));
  }

  const CodecLayout& layout() const noexcept { return layout_; }
  const std::vector<QChromosome>& population() const noexcept { return population_; }
  const std::optional<Candidate>& best() const noexcept { return best_; }
  std::size_t generation() const noexcept { return generation_; }
  const std::vector<GenerationRecord>& log() const noexcept { return log_; }

  bool best_is_success() const { return best_ && is_success(best_->eval, params_.fitness); }

  Candidate evaluate_bits(Chromosome bits) const {
    Circuit circ = decode(bits, layout_, gs_);
    EvalResult e = evaluate(circ, goal_, gs_, params_.cost, params_.fitness);
    return {std::move(bits), std::move(circ), std::move(e)};
  }

  /// Advances one generation and returns this generation's best sample.
  Candidate step() {
    ++generation_;
    std::vector<Candidate> local(population_.size());
    for (std::size_t c = 0; c < population_.size(); ++c) local[c] = sample_chromosome(c);

    std::size_t gen_best = 0;
    for (std::size_t c = 1; c < local.size(); ++c)
      if (local[c].eval.fitness < local[gen_best].eval.fitness) gen_best = c;
    if (!best_ || local[gen_best].eval.fitness < best_->eval.fitness) best_ = local[gen_best];

    const auto& target = best_->bits.bits;
    for (std::size_t c = 0; c < population_.size(); ++c) {
      if (!(best_->eval.fitness < local[c].eval.fitness)) continue;
      auto& qbits = population_[c].qbits;
      for (std::size_t i = 0; i < qbits.size(); ++i)
        qbits[i] = rotate_toward(qbits[i], target[i] != 0, params_.delta_theta, params_.clamp);
    }

    log_.push_back({generation_, best_->eval.fitness, best_->eval.correctness, best_->eval.allcost});
    return local[gen_best];
  }

  RunResult run() {
    RunResult r;
    while (generation_ < params_.max_gen) {
      step();
      if (best_is_success()) {
        r.generation_found = generation_;
        break;
      }
    }
    r.success = best_is_success();
    r.best = *best_;
    r.generations_run = generation_;
    r.log = log_;
    return r;
  }

 private:
  Candidate sample_chromosome(std::size_t c) {
    Rng& rng = rngs_[c];
    std::optional<Candidate> best;
    for (std::size_t s = 0; s < params_.measurements; ++s) {
      Chromosome bits = observe(population_[c], rng);
      for (auto& b : bits.bits)
        if (uniform01(rng) < params_.mutation_prob) b ^= 1;
      Candidate cand = evaluate_bits(std::move(bits));
      if (!best || cand.eval.fitness < best->eval.fitness) best = std::move(cand);
    }
    return std::move(*best);
  }

  GoalSpec goal_;
  GateSet gs_;
  CodecLayout layout_;
  HqeaParams params_;
  std::vector<QChromosome> population_;
  std::vector<Rng> rngs_;
  std::optional<Candidate> best_;
  std::size_t generation_ = 0;
  std::vector<GenerationRecord> log_;
};

inline RunResult evolve(const GoalSpec& goal, const GateSet& gs, std::size_t max_gates,
                        const HqeaParams& params) {
  return HqeaRun(goal, gs, max_gates, params).run();
}

struct BatchStats {
  std::size_t runs = 0;
  std::size_t st = 0;       // successes
  double as = 0.0;          // mean generation_found over successes, 0 if none
  std::optional<std::size_t> ot;  // successes at the goal's known optimal cost
};

inline BatchStats aggregate(const std::vector<RunResult>& results, std::optional<unsigned> optimal_cost) {
  BatchStats s;
  s.runs = results.size();
  std::size_t gen_sum = 0, optimal = 0;
  for (const auto& r : results) {
    if (!r.success) continue;
    ++s.st;
    gen_sum += *r.generation_found;
    if (optimal_cost && r.best.eval.allcost == *optimal_cost) ++optimal;
  }
  if (s.st) s.as = static_cast<double>(gen_sum) / static_cast<double>(s.st);
  if (optimal_cost) s.ot = optimal;
  return s;
}

/// Worker cap: ORACLE_FORGE_THREADS if set and positive, else hardware threads.
inline std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORACLE_FORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

/// Runs with seeds base_seed + i; results are indexed by run, so the outcome
/// does not depend on the thread count.
inline std::vector<RunResult> run_batch_results(const GoalSpec& goal, const GateSet& gs,
                                                std::size_t max_gates, HqeaParams params,
                                                std::size_t n_runs, std::uint64_t base_seed,
                                                std::size_t threads = worker_count()) {
  if (n_runs == 0) throw std::invalid_argument("run_batch: need at least one run");
  params.validate();
  std::vector<RunResult> results(n_runs);
  auto worker = [&](std::size_t first) {
    for (std::size_t i = first; i < n_runs; i += threads) {
      HqeaParams p = params;
      p.seed = base_seed + i;
      results[i] = evolve(goal, gs, max_gates, p);
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, n_runs);
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  return results;
}

inline BatchStats run_batch(const GoalSpec& goal, const GateSet& gs, std::size_t max_gates,
                            const HqeaParams& params, std::size_t n_runs, std::uint64_t base_seed,
                            std::size_t threads = worker_count()) {
  return aggregate(run_batch_results(goal, gs, max_gates, params, n_runs, base_seed, threads),
                   goal.optimal_cost);
}

}  // namespace oracle_forge
