#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sparseuot/duality.hpp"
#include "sparseuot/greedy.hpp"

namespace sparseuot {

enum class Algorithm { Classical, Omp, StochasticOmp, MatroidOmp };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm algo);

// Dispatch to the selected support-selection algorithm. `budget` is the
// global cardinality K for the first three and the per-column K2 for
// matroid OMP.
GreedyResult run_algorithm(const ProblemInstance& instance, Algorithm algo,
                           int budget, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Process-flexibility design (profit-maximizing sparse topology).

struct SpfdInstance {
  Eigen::MatrixXd profit;                        // m x n
  Eigen::VectorXd supplies;                      // length m
  std::vector<Eigen::VectorXd> demand_samples;   // z vectors of length n
  int edge_budget = 0;                           // l

  int rows() const { return static_cast<int>(profit.rows()); }
  int cols() const { return static_cast<int>(profit.cols()); }
  int samples() const { return static_cast<int>(demand_samples.size()); }
};

// Fixed-seed synthetic generator: uniform supplies, i.i.d. uniform demand
// samples, i.i.d. uniform profits.
SpfdInstance generate_spfd_instance(int m, int n, int z, int edge_budget,
                                    std::uint64_t seed);

struct SpfdEdge {
  int i = 0;
  int j = 0;
  double score = 0.0;  // profit * aggregate mass
};

struct SpfdResult {
  std::vector<SpfdEdge> topology;   // top-l edges of P .* sum_i gamma_i
  double expected_profit = 0.0;     // <P, aggregate> over the topology
  int per_sample_budget = 0;        // floor(l / z)
  std::vector<int> per_sample_nnz;
};

// Solves z independent sparsity-constrained transport instances (profit
// turned into the cost max(P) - P, normalized), aggregates the plans, and
// keeps the top-l edges. The mass on the selected topology is not
// re-optimized. Identity Gram matrices are used: plants and products are
// categorical, which corresponds to the Kronecker delta kernel.
SpfdResult run_spfd(const SpfdInstance& instance, double lambda1, double lambda2,
                    Algorithm algo, const SolverConfig& config);

// ---------------------------------------------------------------------------
// Gradient flow of a source cloud toward a target cloud.

struct FlowConfig {
  double learning_rate = 0.01;
  int iterations = 100;
  int sparsity = 0;  // plan cardinality K; 0 defaults to the source count
};

struct FlowResult {
  std::vector<Eigen::MatrixXd> positions;  // iterations + 1 snapshots
  std::vector<double> mmd2;                // squared MMD to target per snapshot
};

// Euler updates on the source positions: each iteration solves the sparse
// transport problem between the current source and the target (unnormalized
// squared-Euclidean cost), then moves each source point along the analytic
// derivative of the <C, gamma> term with the plan held fixed. Masses stay
// fixed. Throws NumericalError with the iteration index on divergence.
FlowResult run_gradient_flow(const PointCloud& source, const Eigen::VectorXd& source_w,
                             const PointCloud& target, const Eigen::VectorXd& target_w,
                             const KernelSpec& kernel, double lambda1, double lambda2,
                             const FlowConfig& flow, const SolverConfig& solver,
                             Algorithm algo = Algorithm::Omp);

// ---------------------------------------------------------------------------
// Duality-gap grid report.

struct GapRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double primal = 0.0;
  double gap = 0.0;
};

// One matroid-OMP solve plus certificate per (lambda1, lambda2) cell; rows
// come back in grid order regardless of evaluation order.
std::vector<GapRow> run_duality_grid(const CostMatrix& cost, const GramMatrix& g1,
                                     const GramMatrix& g2, const Eigen::VectorXd& mu,
                                     const Eigen::VectorXd& nu,
                                     const std::vector<double>& lambda1_grid,
                                     const std::vector<double>& lambda2_grid,
                                     int k2, const SolverConfig& config);

std::string gap_rows_to_json(const std::vector<GapRow>& rows);
std::string gap_rows_to_table(const std::vector<GapRow>& rows);

}  // namespace sparseuot
