#pragma once

#include "sparseuot/matroid.hpp"
#include "sparseuot/problem.hpp"

namespace sparseuot {

struct GreedyStep {
  std::pair<int, int> chosen{-1, -1};
  int candidate_count = 0;
  double f_value = 0.0;
  double objective = 0.0;
  int solver_iterations = 0;
};

struct GreedyResult {
  SupportSet support;
  SparsePlan plan;
  std::vector<GreedyStep> trace;
  double f_value = 0.0;
  double objective = 0.0;
  bool converged = true;   // all inner solves converged
  int solver_calls = 0;    // restricted solves performed over the whole run
};

// How matroid OMP picks from the best base each iteration. Uniform random is
// the published rule; MaxScore makes uniform-matroid runs match omp_greedy.
enum class PickRule { UniformRandom, MaxScore };

// Classical greedy: each iteration maximizes the marginal gain
// F(S u {u}) - F(S) over all remaining elements (one restricted solve per
// candidate), ties toward the lowest linear index.
GreedyResult classical_greedy(const ProblemInstance& instance, int k,
                              const SolverConfig& config);

// Vanilla OMP: pick argmax of g = -grad U(gamma_S) over all remaining
// elements, then re-solve on the grown support.
GreedyResult omp_greedy(const ProblemInstance& instance, int k,
                        const SolverConfig& config, bool early_stop = false);

// Stochastic OMP: like omp_greedy, but the argmax runs over a random subset
// of ceil((mn/K) log(1/epsilon)) remaining elements, sampled uniformly
// without replacement. Iteration i draws from a generator seeded by
// splitmix64(seed, i), so traces are reproducible regardless of scheduling.
GreedyResult stochastic_omp(const ProblemInstance& instance, int k,
                            const SolverConfig& config, bool early_stop = false);

// Matroid OMP: rank(matroid) iterations; each picks an element of the best
// base of the contraction M/S (uniformly at random under the default rule)
// and re-solves.
GreedyResult matroid_omp(const ProblemInstance& instance,
                         const MatroidConstraint& matroid,
                         const SolverConfig& config,
                         PickRule pick = PickRule::UniformRandom);

}  // namespace sparseuot
