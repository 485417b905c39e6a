#pragma once

#include <string>

#include "sparseuot/problem.hpp"

namespace sparseuot {

// K-sparse nonnegative conjugate maximizer and value.
struct ConjugateResult {
  double value = 0.0;
  Eigen::VectorXd maximizer;
};

struct PrimalResult {
  double value = 0.0;           // U(gamma), finite even when infeasible
  bool feasible = true;          // per-column sparsity respected
  int violating_column = -1;     // first column over budget, when infeasible
};

struct DualCertificate {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  bool feasible = true;
};

// max_{z >= 0, ||z||_0 <= K} <w, z> - (lambda2/2) ||z||^2. Closed form via
// the top-K entries of w (descending, ties toward the lowest index).
ConjugateResult sparse_conjugate(const Eigen::VectorXd& w, int k, double lambda2);

// Primal objective with the per-column K2-sparsity indicator: equals the
// transport objective when feasible, otherwise flags the violating column
// while still reporting the finite objective value.
PrimalResult primal_objective(const ProblemInstance& instance,
                              const SparsePlan& plan, int k2);

// Dual objective; the inverse-Gram quadratic forms are evaluated by solving
// SPD systems with diagonal jitter escalation, never by explicit inverses.
double dual_objective(const ProblemInstance& instance, const Eigen::VectorXd& alpha,
                      const Eigen::VectorXd& beta, int k2);

// Closed-form dual candidate for a feasible plan:
// alpha = 2 lambda1 G1 (mu - gamma 1), beta = 2 lambda1 G2 (nu - gamma' 1).
std::pair<Eigen::VectorXd, Eigen::VectorXd> dual_certificate(
    const ProblemInstance& instance, const SparsePlan& plan);

// Assembles the full certificate. Requires lambda2 > 0 and a K2-feasible
// plan; throws InputError naming the violating column otherwise.
DualCertificate duality_gap(const ProblemInstance& instance,
                            const SparsePlan& plan, int k2);

std::string certificate_to_json(const DualCertificate& cert);

}  // namespace sparseuot
