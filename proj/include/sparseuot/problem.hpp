#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sparseuot/geometry.hpp"
#include "sparseuot/types.hpp"

namespace sparseuot {

// Everything the transport objective needs, with the plan-independent
// quantities precomputed once: a = G1*mu, b = G2*nu and
// const0 = lambda1*(mu'G1 mu + nu'G2 nu).
struct ProblemInstance {
  CostMatrix cost;
  GramMatrix gram_source;  // m x m
  GramMatrix gram_target;  // n x n
  Eigen::VectorXd mu;      // length m, >= 0
  Eigen::VectorXd nu;      // length n, >= 0
  double lambda1 = 1.0;    // > 0
  double lambda2 = 0.0;    // >= 0

  Eigen::VectorXd a;   // G1 * mu
  Eigen::VectorXd b;   // G2 * nu
  double const0 = 0.0; // objective at the zero plan

  int rows() const { return cost.rows(); }
  int cols() const { return cost.cols(); }
};

ProblemInstance make_instance(CostMatrix cost, GramMatrix gram_source,
                              GramMatrix gram_target, Eigen::VectorXd mu,
                              Eigen::VectorXd nu, double lambda1,
                              double lambda2);

// Set of (row, col) index pairs kept sorted and duplicate-free.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<std::pair<int, int>> elements);

  bool empty() const { return elements_.empty(); }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::pair<int, int>>& elements() const { return elements_; }

  bool contains(int i, int j) const;
  // Position of (i, j) in the sorted element order, or -1.
  int index_of(int i, int j) const;
  void insert(int i, int j);
  SupportSet with_element(int i, int j) const;

  bool operator==(const SupportSet& other) const {
    return elements_ == other.elements_;
  }

 private:
  std::vector<std::pair<int, int>> elements_;
};

// Nonnegative values over a support set; entries off the support are zero.
struct SparsePlan {
  SupportSet support;
  Eigen::VectorXd values;  // aligned with support.elements()

  SparsePlan() = default;
  SparsePlan(SupportSet s, Eigen::VectorXd v);

  static SparsePlan zero() { return SparsePlan{}; }

  double value_at(int i, int j) const;
  // Row sums gamma*1 and column sums gamma'*1 as dense vectors.
  Eigen::VectorXd row_sums(int m) const;
  Eigen::VectorXd col_sums(int n) const;
  int nnz(double tol = kSupportTol) const;
};

struct SolverConfig {
  int max_iter = 1000;
  double rel_tol = 1e-10;
  double support_tol = kSupportTol;
  std::uint64_t seed = 0;
  double epsilon = 0.01;  // stochastic candidate-set parameter, in (0,1)
};

struct RestrictedSolveResult {
  SparsePlan plan;
  double objective = 0.0;
  bool converged = true;
  int iterations = 0;
  double kkt_residual = 0.0;
};

struct CurvatureDiagnostics {
  double u_lower = 0.0;     // restricted strong-convexity lower bound
  double u_tilde1 = 0.0;    // one-coordinate smoothness bound
  double alpha_lower = 0.0; // min(1, u_lower / u_tilde1)
  bool reliable = true;     // false when a Gram matrix is degenerate
};

// Transport objective evaluated through the support-restricted expansion;
// never materializes a dense m x n plan.
double objective(const ProblemInstance& instance, const SparsePlan& plan);

// Partial derivatives at the requested indices. Row/column sums of the plan
// are formed once; each requested entry then costs O(|I_S| + |J_S|).
Eigen::VectorXd gradient(const ProblemInstance& instance,
                         const SparsePlan& plan, const SupportSet& at);

// Lazy per-entry gradient: the plan's row/column sums are formed at
// construction, after which each query costs O(|I_S| + |J_S|).
class GradientEvaluator {
 public:
  GradientEvaluator(const ProblemInstance& instance, const SparsePlan& plan);
  double at(int i, int j) const;

 private:
  const ProblemInstance& instance_;
  const SparsePlan& plan_;
  Eigen::VectorXd row_sums_;
  Eigen::VectorXd col_sums_;
  std::vector<int> active_rows_;
  std::vector<int> active_cols_;
};

// Smoothness constant used as the APGD step denominator.
double smoothness_bound(const ProblemInstance& instance);

// Accelerated projected gradient descent on the support-restricted problem,
// fixed step 1/L, momentum restart on objective increase.
RestrictedSolveResult solve_restricted(const ProblemInstance& instance,
                                       const SupportSet& support,
                                       const std::optional<SparsePlan>& warm_start,
                                       const SolverConfig& config);

// Memo for F values within one greedy run, keyed on the canonical sorted
// support encoding.
class SetFunctionCache {
 public:
  std::optional<double> lookup(const SupportSet& support) const;
  void store(const SupportSet& support, double value);
  int solver_calls = 0;  // restricted solves actually performed

 private:
  std::map<std::vector<std::int64_t>, double> values_;
};

// F(S) = U(0) - min_{supp(gamma) <= S, gamma >= 0} U(gamma). Empty support
// returns exactly 0 without invoking the solver.
double set_function_value(const ProblemInstance& instance,
                          const SupportSet& support, const SolverConfig& config,
                          SetFunctionCache* cache = nullptr);

// Eigenvalue-derived curvature bounds and the submodularity-ratio lower
// bound for sparsity level K.
CurvatureDiagnostics curvature(const ProblemInstance& instance, int sparsity_k);

}  // namespace sparseuot
