#include "sparseuot/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sparseuot {

namespace {

void check_k(const ProblemInstance& instance, int k) {
  if (k < 1 || k > instance.rows() * instance.cols()) {
    throw InputError("sparsity level must satisfy 1 <= K <= m*n");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-iteration stream split: independent of how candidate scoring is
// scheduled, iteration i always sees the same generator state.
std::mt19937_64 iteration_rng(std::uint64_t seed, int iteration) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(iteration)));
}

std::vector<std::pair<int, int>> remaining_elements(const ProblemInstance& instance,
                                                    const SupportSet& s) {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(instance.rows()) * instance.cols() - s.size());
  for (int i = 0; i < instance.rows(); ++i) {
    for (int j = 0; j < instance.cols(); ++j) {
      if (!s.contains(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

// Argmax with ties toward the lowest linear index; candidates must be given
// with their scores.
int argmax_by_score(const std::vector<std::pair<int, int>>& candidates,
                    const std::vector<double>& scores, int n_cols) {
  int best = -1;
  long best_linear = 0;
  for (int k = 0; k < static_cast<int>(candidates.size()); ++k) {
    const long linear =
        static_cast<long>(candidates[k].first) * n_cols + candidates[k].second;
    if (best < 0 || scores[k] > scores[best] ||
        (scores[k] == scores[best] && linear < best_linear)) {
      best = k;
      best_linear = linear;
    }
  }
  return best;
}

}  // namespace

GreedyResult classical_greedy(const ProblemInstance& instance, int k,
                              const SolverConfig& config) {
  check_k(instance, k);
  GreedyResult result;
  result.plan = SparsePlan::zero();
  double f_current = 0.0;

  for (int iter = 0; iter < k; ++iter) {
    const auto candidates = remaining_elements(instance, result.support);
    int best = -1;
    long best_linear = 0;
    RestrictedSolveResult best_solve;
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
      const auto [i, j] = candidates[c];
      const SupportSet grown = result.support.with_element(i, j);
      RestrictedSolveResult solved =
          solve_restricted(instance, grown, result.plan, config);
      ++result.solver_calls;
      result.converged = result.converged && solved.converged;
      const long linear = static_cast<long>(i) * instance.cols() + j;
      if (best < 0 || solved.objective < best_solve.objective ||
          (solved.objective == best_solve.objective && linear < best_linear)) {
        best = c;
        best_linear = linear;
        best_solve = std::move(solved);
      }
    }
    const auto [bi, bj] = candidates[best];
    result.support.insert(bi, bj);
    result.plan = best_solve.plan;
    f_current = instance.const0 - best_solve.objective;
    result.trace.push_back({{bi, bj},
                            static_cast<int>(candidates.size()),
                            f_current,
                            best_solve.objective,
                            best_solve.iterations});
  }
  result.f_value = f_current;
  result.objective = instance.const0 - f_current;
  return result;
}

namespace {

// Shared loop for the OMP family: `select` returns the candidate set for the
// current iteration (gradient already applied as scores).
GreedyResult omp_loop(const ProblemInstance& instance, int k,
                      const SolverConfig& config, bool early_stop,
                      bool stochastic) {
  check_k(instance, k);
  if (stochastic && !(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw InputError("stochastic OMP requires epsilon in (0, 1)");
  }
  GreedyResult result;
  result.plan = SparsePlan::zero();
  const int total = instance.rows() * instance.cols();
  const double sample_real =
      stochastic ? (static_cast<double>(total) / k) * std::log(1.0 / config.epsilon)
                 : 0.0;

  for (int iter = 0; iter < k; ++iter) {
    auto candidates = remaining_elements(instance, result.support);
    if (stochastic) {
      const int want = std::min<int>(
          static_cast<int>(std::ceil(sample_real)), static_cast<int>(candidates.size()));
      auto rng = iteration_rng(config.seed, iter);
      // Partial Fisher-Yates: the first `want` entries become the sample.
      for (int t = 0; t < want; ++t) {
        std::uniform_int_distribution<int> dist(t, static_cast<int>(candidates.size()) - 1);
        std::swap(candidates[t], candidates[dist(rng)]);
      }
      candidates.resize(want);
    }

    const GradientEvaluator grad(instance, result.plan);
    std::vector<double> scores(candidates.size());
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
      scores[c] = -grad.at(candidates[c].first, candidates[c].second);
    }
    const int pick = argmax_by_score(candidates, scores, instance.cols());
    if (early_stop && scores[pick] <= config.support_tol) break;

    const auto [i, j] = candidates[pick];
    result.support.insert(i, j);
    RestrictedSolveResult solved =
        solve_restricted(instance, result.support, result.plan, config);
    ++result.solver_calls;
    result.converged = result.converged && solved.converged;
    result.plan = solved.plan;
    result.trace.push_back({{i, j},
                            static_cast<int>(candidates.size()),
                            instance.const0 - solved.objective,
                            solved.objective,
                            solved.iterations});
  }
  result.f_value = result.trace.empty() ? 0.0 : result.trace.back().f_value;
  result.objective = instance.const0 - result.f_value;
  return result;
}

}  // namespace

GreedyResult omp_greedy(const ProblemInstance& instance, int k,
                        const SolverConfig& config, bool early_stop) {
  return omp_loop(instance, k, config, early_stop, /*stochastic=*/false);
}

GreedyResult stochastic_omp(const ProblemInstance& instance, int k,
                            const SolverConfig& config, bool early_stop) {
  return omp_loop(instance, k, config, early_stop, /*stochastic=*/true);
}

GreedyResult matroid_omp(const ProblemInstance& instance,
                         const MatroidConstraint& matroid,
                         const SolverConfig& config, PickRule pick) {
  if (matroid.ground_rows() != instance.rows() ||
      matroid.ground_cols() != instance.cols()) {
    throw InputError("matroid ground set does not match the instance");
  }
  GreedyResult result;
  result.plan = SparsePlan::zero();
  const int k = matroid.rank();

  for (int iter = 0; iter < k; ++iter) {
    const GradientEvaluator grad(instance, result.plan);
    int queries = 0;
    const SupportSet base = best_base_of_contraction(
        matroid, result.support, [&](int i, int j) {
          ++queries;
          return -grad.at(i, j);
        });
    if (base.empty()) break;

    std::pair<int, int> chosen;
    if (pick == PickRule::UniformRandom) {
      auto rng = iteration_rng(config.seed, iter);
      std::uniform_int_distribution<int> dist(0, base.size() - 1);
      chosen = base.elements()[dist(rng)];
    } else {
      // Raw gradient (as in the OMP selection rule), ties by linear index.
      const auto& el = base.elements();
      std::vector<double> scores(el.size());
      for (int c = 0; c < base.size(); ++c) {
        scores[c] = -grad.at(el[c].first, el[c].second);
      }
      chosen = el[argmax_by_score(el, scores, instance.cols())];
    }

    result.support.insert(chosen.first, chosen.second);
    RestrictedSolveResult solved =
        solve_restricted(instance, result.support, result.plan, config);
    ++result.solver_calls;
    result.converged = result.converged && solved.converged;
    result.plan = solved.plan;
    result.trace.push_back({chosen, queries, instance.const0 - solved.objective,
                            solved.objective, solved.iterations});
  }
  result.f_value = result.trace.empty() ? 0.0 : result.trace.back().f_value;
  result.objective = instance.const0 - result.f_value;
  return result;
}

}  // namespace sparseuot
