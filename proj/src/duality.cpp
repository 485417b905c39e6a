#include "sparseuot/duality.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace sparseuot {

ConjugateResult sparse_conjugate(const Eigen::VectorXd& w, int k, double lambda2) {
  const int m = static_cast<int>(w.size());
  if (k < 1 || k > m) throw InputError("sparse_conjugate requires 1 <= K <= dim");
  if (!(lambda2 > 0.0)) {
    throw InputError("sparse_conjugate requires lambda2 > 0 (conjugate unbounded)");
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int p, int q) {
    if (w(p) != w(q)) return w(p) > w(q);
    return p < q;
  });

  ConjugateResult res;
  res.maximizer = Eigen::VectorXd::Zero(m);
  for (int r = 0; r < k; ++r) {
    const int idx = order[r];
    const double pos = std::max(0.0, w(idx));
    res.maximizer(idx) = pos / lambda2;
    res.value += pos * pos;
  }
  res.value /= 2.0 * lambda2;
  return res;
}

PrimalResult primal_objective(const ProblemInstance& instance,
                              const SparsePlan& plan, int k2) {
  if (k2 < 1 || k2 > instance.rows()) {
    throw InputError("primal_objective requires 1 <= K2 <= m");
  }
  PrimalResult res;
  res.value = objective(instance, plan);

  std::vector<int> per_col(instance.cols(), 0);
  const auto& el = plan.support.elements();
  for (int k = 0; k < plan.support.size(); ++k) {
    if (plan.values(k) > kSupportTol) {
      const int j = el[k].second;
      if (++per_col[j] > k2 && res.feasible) {
        res.feasible = false;
        res.violating_column = j;
      }
    }
  }
  return res;
}

namespace {

// x' G^{-1} x via an SPD factorization, escalating diagonal jitter from
// 1e-10 by x10 up to 1e-6 when the factorization fails.
double inverse_quadratic_form(const Eigen::MatrixXd& gram,
                              const Eigen::VectorXd& x) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success) return x.dot(llt.solve(x));
  const int n = static_cast<int>(gram.rows());
  for (double jitter = 1e-10; jitter <= 1e-6; jitter *= 10.0) {
    llt.compute(gram + jitter * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) return x.dot(llt.solve(x));
  }
  throw NumericalError("Gram factorization failed even with diagonal jitter");
}

}  // namespace

double dual_objective(const ProblemInstance& instance, const Eigen::VectorXd& alpha,
                      const Eigen::VectorXd& beta, int k2) {
  if (alpha.size() != instance.rows() || beta.size() != instance.cols()) {
    throw InputError("dual variable lengths do not match the instance");
  }
  if (k2 < 1 || k2 > instance.rows()) {
    throw InputError("dual_objective requires 1 <= K2 <= m");
  }
  if (!(instance.lambda2 > 0.0)) {
    throw InputError("dual objective requires lambda2 > 0");
  }
  double value = alpha.dot(instance.mu) + beta.dot(instance.nu);
  value -= inverse_quadratic_form(instance.gram_source.entries, alpha) /
           (4.0 * instance.lambda1);
  value -= inverse_quadratic_form(instance.gram_target.entries, beta) /
           (4.0 * instance.lambda1);
  for (int j = 0; j < instance.cols(); ++j) {
    const Eigen::VectorXd w =
        alpha.array() + beta(j) - instance.cost.entries.col(j).array();
    value -= sparse_conjugate(w, k2, instance.lambda2).value;
  }
  return value;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> dual_certificate(
    const ProblemInstance& instance, const SparsePlan& plan) {
  const Eigen::VectorXd row_residual = instance.mu - plan.row_sums(instance.rows());
  const Eigen::VectorXd col_residual = instance.nu - plan.col_sums(instance.cols());
  return {2.0 * instance.lambda1 * (instance.gram_source.entries * row_residual),
          2.0 * instance.lambda1 * (instance.gram_target.entries * col_residual)};
}

DualCertificate duality_gap(const ProblemInstance& instance,
                            const SparsePlan& plan, int k2) {
  if (!(instance.lambda2 > 0.0)) {
    throw InputError("duality certificate unavailable: requires lambda2 > 0");
  }
  const PrimalResult primal = primal_objective(instance, plan, k2);
  if (!primal.feasible) {
    throw InputError("duality_gap: plan violates the K2 constraint in column " +
                     std::to_string(primal.violating_column));
  }
  DualCertificate cert;
  std::tie(cert.alpha, cert.beta) = dual_certificate(instance, plan);
  cert.primal = primal.value;
  cert.dual = dual_objective(instance, cert.alpha, cert.beta, k2);
  cert.gap = cert.primal - cert.dual;
  cert.feasible = true;
  return cert;
}

std::string certificate_to_json(const DualCertificate& cert) {
  nlohmann::json j;
  j["primal"] = cert.primal;
  j["dual"] = cert.dual;
  j["gap"] = cert.gap;
  j["alpha"] = std::vector<double>(cert.alpha.data(), cert.alpha.data() + cert.alpha.size());
  j["beta"] = std::vector<double>(cert.beta.data(), cert.beta.data() + cert.beta.size());
  j["feasible"] = cert.feasible;
  return j.dump(2);
}

}  // namespace sparseuot
