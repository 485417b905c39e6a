#include "sparseuot/problem.hpp"

#include <algorithm>
#include <cmath>

namespace sparseuot {

namespace {
// First-order accuracy required of the restricted solver: componentwise
// min(gamma_u, grad_u) within this bound over the support.
constexpr double kKktTol = 1e-6;
}  // namespace

ProblemInstance make_instance(CostMatrix cost, GramMatrix gram_source,
                              GramMatrix gram_target, Eigen::VectorXd mu,
                              Eigen::VectorXd nu, double lambda1,
                              double lambda2) {
  const int m = cost.rows();
  const int n = cost.cols();
  if (m < 1 || n < 1) throw InputError("cost matrix is empty");
  if (!cost.entries.allFinite() || cost.entries.minCoeff() < 0.0) {
    throw InputError("cost matrix must be finite and nonnegative");
  }
  if (gram_source.size() != m) throw InputError("source Gram size != cost rows");
  if (gram_target.size() != n) throw InputError("target Gram size != cost cols");
  if (mu.size() != m || nu.size() != n) {
    throw InputError("marginal weight lengths do not match cost matrix");
  }
  if (!mu.allFinite() || !nu.allFinite() || mu.minCoeff() < 0.0 ||
      nu.minCoeff() < 0.0) {
    throw InputError("marginal weights must be finite and nonnegative");
  }
  if (!(lambda1 > 0.0)) throw InputError("lambda1 must be > 0");
  if (lambda2 < 0.0) throw InputError("lambda2 must be >= 0");

  ProblemInstance inst;
  inst.cost = std::move(cost);
  inst.gram_source = std::move(gram_source);
  inst.gram_target = std::move(gram_target);
  inst.mu = std::move(mu);
  inst.nu = std::move(nu);
  inst.lambda1 = lambda1;
  inst.lambda2 = lambda2;
  inst.a = inst.gram_source.entries * inst.mu;
  inst.b = inst.gram_target.entries * inst.nu;
  inst.const0 = lambda1 * (inst.mu.dot(inst.a) + inst.nu.dot(inst.b));
  return inst;
}

SupportSet::SupportSet(std::vector<std::pair<int, int>> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw InputError("support set contains duplicate indices");
  }
}

bool SupportSet::contains(int i, int j) const { return index_of(i, j) >= 0; }

int SupportSet::index_of(int i, int j) const {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(),
                                   std::make_pair(i, j));
  if (it == elements_.end() || *it != std::make_pair(i, j)) return -1;
  return static_cast<int>(it - elements_.begin());
}

void SupportSet::insert(int i, int j) {
  const auto it = std::lower_bound(elements_.begin(), elements_.end(),
                                   std::make_pair(i, j));
  if (it != elements_.end() && *it == std::make_pair(i, j)) {
    throw InputError("support set already contains the index");
  }
  elements_.insert(it, {i, j});
}

SupportSet SupportSet::with_element(int i, int j) const {
  SupportSet out = *this;
  out.insert(i, j);
  return out;
}

SparsePlan::SparsePlan(SupportSet s, Eigen::VectorXd v)
    : support(std::move(s)), values(std::move(v)) {
  if (values.size() != support.size()) {
    throw InputError("plan values length does not match support size");
  }
  if (values.size() > 0 && (!values.allFinite() || values.minCoeff() < 0.0)) {
    throw InputError("plan values must be finite and nonnegative");
  }
}

double SparsePlan::value_at(int i, int j) const {
  const int k = support.index_of(i, j);
  return k < 0 ? 0.0 : values(k);
}

Eigen::VectorXd SparsePlan::row_sums(int m) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
  const auto& el = support.elements();
  for (int k = 0; k < support.size(); ++k) r(el[k].first) += values(k);
  return r;
}

Eigen::VectorXd SparsePlan::col_sums(int n) const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  const auto& el = support.elements();
  for (int k = 0; k < support.size(); ++k) s(el[k].second) += values(k);
  return s;
}

int SparsePlan::nnz(double tol) const {
  int count = 0;
  for (int k = 0; k < values.size(); ++k) {
    if (values(k) > tol) ++count;
  }
  return count;
}

namespace {

// Support-restricted view of the quadratic: the objective and gradient in
// terms of z in R^{|S|} touch only the I_S x I_S and J_S x J_S Gram blocks.
struct RestrictedData {
  std::vector<int> rows;     // I_S, sorted unique
  std::vector<int> cols;     // J_S, sorted unique
  std::vector<int> row_of;   // element k -> position in rows
  std::vector<int> col_of;   // element k -> position in cols
  Eigen::MatrixXd g1;        // Gram block over I_S
  Eigen::MatrixXd g2;        // Gram block over J_S
  Eigen::VectorXd c;         // cost per element
  Eigen::VectorXd a;         // a restricted to I_S
  Eigen::VectorXd b;         // b restricted to J_S
};

RestrictedData build_restricted(const ProblemInstance& inst,
                                const SupportSet& support) {
  const auto& el = support.elements();
  RestrictedData d;
  for (const auto& [i, j] : el) {
    if (i < 0 || i >= inst.rows() || j < 0 || j >= inst.cols()) {
      throw InputError("support index out of range");
    }
    d.rows.push_back(i);
    d.cols.push_back(j);
  }
  std::sort(d.rows.begin(), d.rows.end());
  d.rows.erase(std::unique(d.rows.begin(), d.rows.end()), d.rows.end());
  std::sort(d.cols.begin(), d.cols.end());
  d.cols.erase(std::unique(d.cols.begin(), d.cols.end()), d.cols.end());

  const int nr = static_cast<int>(d.rows.size());
  const int nc = static_cast<int>(d.cols.size());
  const int ns = support.size();

  d.row_of.resize(ns);
  d.col_of.resize(ns);
  for (int k = 0; k < ns; ++k) {
    d.row_of[k] = static_cast<int>(
        std::lower_bound(d.rows.begin(), d.rows.end(), el[k].first) -
        d.rows.begin());
    d.col_of[k] = static_cast<int>(
        std::lower_bound(d.cols.begin(), d.cols.end(), el[k].second) -
        d.cols.begin());
  }

  d.g1.resize(nr, nr);
  for (int p = 0; p < nr; ++p)
    for (int q = 0; q < nr; ++q)
      d.g1(p, q) = inst.gram_source.entries(d.rows[p], d.rows[q]);
  d.g2.resize(nc, nc);
  for (int p = 0; p < nc; ++p)
    for (int q = 0; q < nc; ++q)
      d.g2(p, q) = inst.gram_target.entries(d.cols[p], d.cols[q]);

  d.c.resize(ns);
  d.a.resize(nr);
  d.b.resize(nc);
  for (int k = 0; k < ns; ++k) d.c(k) = inst.cost.entries(el[k].first, el[k].second);
  for (int p = 0; p < nr; ++p) d.a(p) = inst.a(d.rows[p]);
  for (int p = 0; p < nc; ++p) d.b(p) = inst.b(d.cols[p]);
  return d;
}

// Row and column sums of z over the restricted index maps.
void accumulate_sums(const RestrictedData& d, const Eigen::VectorXd& z,
                     Eigen::VectorXd& r, Eigen::VectorXd& s) {
  r.setZero(static_cast<Eigen::Index>(d.rows.size()));
  s.setZero(static_cast<Eigen::Index>(d.cols.size()));
  for (int k = 0; k < z.size(); ++k) {
    r(d.row_of[k]) += z(k);
    s(d.col_of[k]) += z(k);
  }
}

double restricted_objective(const ProblemInstance& inst, const RestrictedData& d,
                            const Eigen::VectorXd& z) {
  Eigen::VectorXd r, s;
  accumulate_sums(d, z, r, s);
  double val = inst.const0 + d.c.dot(z);
  val += inst.lambda1 * (r.dot(d.g1 * r) - 2.0 * d.a.dot(r));
  val += inst.lambda1 * (s.dot(d.g2 * s) - 2.0 * d.b.dot(s));
  val += 0.5 * inst.lambda2 * z.squaredNorm();
  return val;
}

Eigen::VectorXd restricted_gradient(const ProblemInstance& inst,
                                    const RestrictedData& d,
                                    const Eigen::VectorXd& z) {
  Eigen::VectorXd r, s;
  accumulate_sums(d, z, r, s);
  const Eigen::VectorXd g1r = d.g1 * r;
  const Eigen::VectorXd g2s = d.g2 * s;
  Eigen::VectorXd g(z.size());
  for (int k = 0; k < z.size(); ++k) {
    g(k) = d.c(k) +
           2.0 * inst.lambda1 *
               (g1r(d.row_of[k]) + g2s(d.col_of[k]) - d.a(d.row_of[k]) -
                d.b(d.col_of[k])) +
           inst.lambda2 * z(k);
  }
  return g;
}

double kkt_residual(const Eigen::VectorXd& z, const Eigen::VectorXd& g) {
  double worst = 0.0;
  for (int k = 0; k < z.size(); ++k) {
    worst = std::max(worst, std::abs(std::min(z(k), g(k))));
  }
  return worst;
}

}  // namespace

double objective(const ProblemInstance& instance, const SparsePlan& plan) {
  if (plan.support.empty()) return instance.const0;
  const RestrictedData d = build_restricted(instance, plan.support);
  return restricted_objective(instance, d, plan.values);
}

GradientEvaluator::GradientEvaluator(const ProblemInstance& instance,
                                     const SparsePlan& plan)
    : instance_(instance),
      plan_(plan),
      row_sums_(plan.row_sums(instance.rows())),
      col_sums_(plan.col_sums(instance.cols())) {
  // Only the rows/columns touched by the plan contribute to the gamma terms.
  for (int i = 0; i < row_sums_.size(); ++i)
    if (row_sums_(i) != 0.0) active_rows_.push_back(i);
  for (int j = 0; j < col_sums_.size(); ++j)
    if (col_sums_(j) != 0.0) active_cols_.push_back(j);
}

double GradientEvaluator::at(int i, int j) const {
  if (i < 0 || i >= instance_.rows() || j < 0 || j >= instance_.cols()) {
    throw InputError("gradient index out of range");
  }
  double row_term = 0.0;
  for (int p : active_rows_) {
    row_term += instance_.gram_source.entries(i, p) * row_sums_(p);
  }
  double col_term = 0.0;
  for (int q : active_cols_) {
    col_term += instance_.gram_target.entries(j, q) * col_sums_(q);
  }
  return instance_.cost.entries(i, j) +
         2.0 * instance_.lambda1 * (row_term + col_term) -
         2.0 * instance_.lambda1 * (instance_.a(i) + instance_.b(j)) +
         instance_.lambda2 * plan_.value_at(i, j);
}

Eigen::VectorXd gradient(const ProblemInstance& instance,
                         const SparsePlan& plan, const SupportSet& at) {
  const GradientEvaluator eval(instance, plan);
  Eigen::VectorXd out(at.size());
  const auto& el = at.elements();
  for (int k = 0; k < at.size(); ++k) {
    out(k) = eval.at(el[k].first, el[k].second);
  }
  return out;
}

double smoothness_bound(const ProblemInstance& instance) {
  return 2.0 * instance.lambda1 *
             (instance.cols() * instance.gram_source.eig_max +
              instance.rows() * instance.gram_target.eig_max) +
         instance.lambda2;
}

RestrictedSolveResult solve_restricted(const ProblemInstance& instance,
                                       const SupportSet& support,
                                       const std::optional<SparsePlan>& warm_start,
                                       const SolverConfig& config) {
  RestrictedSolveResult res;
  if (support.empty()) {
    res.plan = SparsePlan::zero();
    res.objective = instance.const0;
    return res;
  }
  const RestrictedData d = build_restricted(instance, support);
  const int ns = support.size();

  Eigen::VectorXd z = Eigen::VectorXd::Zero(ns);
  if (warm_start.has_value()) {
    const auto& el = support.elements();
    for (int k = 0; k < ns; ++k) {
      z(k) = std::max(0.0, warm_start->value_at(el[k].first, el[k].second));
    }
  }

  const double step = 1.0 / smoothness_bound(instance);
  Eigen::VectorXd z_prev = z;
  Eigen::VectorXd y = z;
  double t = 1.0;
  double f_prev = restricted_objective(instance, d, z);
  double f = f_prev;
  bool converged = false;
  int it = 0;
  for (; it < config.max_iter; ++it) {
    Eigen::VectorXd g = restricted_gradient(instance, d, y);
    z = (y - step * g).cwiseMax(0.0);
    f = restricted_objective(instance, d, z);
    if (f > f_prev) {
      // Restart: drop momentum and take a plain projected step, which is
      // non-increasing at step 1/L.
      t = 1.0;
      y = z_prev;
      g = restricted_gradient(instance, d, y);
      z = (y - step * g).cwiseMax(0.0);
      f = restricted_objective(instance, d, z);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = z + ((t - 1.0) / t_next) * (z - z_prev);
    const bool settled =
        std::abs(f_prev - f) <= config.rel_tol * std::max(1.0, std::abs(f));
    z_prev = z;
    f_prev = f;
    t = t_next;
    if (settled) {
      const Eigen::VectorXd gz = restricted_gradient(instance, d, z);
      if (kkt_residual(z, gz) <= kKktTol) {
        converged = true;
        ++it;
        break;
      }
    }
  }

  res.plan = SparsePlan(support, z);
  res.objective = f;
  res.converged = converged;
  res.iterations = it;
  res.kkt_residual = kkt_residual(z, restricted_gradient(instance, d, z));
  return res;
}

std::optional<double> SetFunctionCache::lookup(const SupportSet& support) const {
  std::vector<std::int64_t> key;
  key.reserve(support.size());
  for (const auto& [i, j] : support.elements()) {
    key.push_back(static_cast<std::int64_t>(i) << 32 | static_cast<std::uint32_t>(j));
  }
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void SetFunctionCache::store(const SupportSet& support, double value) {
  std::vector<std::int64_t> key;
  key.reserve(support.size());
  for (const auto& [i, j] : support.elements()) {
    key.push_back(static_cast<std::int64_t>(i) << 32 | static_cast<std::uint32_t>(j));
  }
  values_[std::move(key)] = value;
}

double set_function_value(const ProblemInstance& instance,
                          const SupportSet& support, const SolverConfig& config,
                          SetFunctionCache* cache) {
  if (support.empty()) return 0.0;
  if (cache != nullptr) {
    if (const auto hit = cache->lookup(support)) return *hit;
  }
  const RestrictedSolveResult solved =
      solve_restricted(instance, support, std::nullopt, config);
  const double value = instance.const0 - solved.objective;
  if (cache != nullptr) {
    cache->store(support, value);
    ++cache->solver_calls;
  }
  return value;
}

CurvatureDiagnostics curvature(const ProblemInstance& instance, int sparsity_k) {
  if (sparsity_k < 1) throw InputError("sparsity level must be >= 1");
  const double e01 = instance.gram_source.eig_min;
  const double e02 = instance.gram_target.eig_min;
  const double diag1 = instance.gram_source.entries.diagonal().maxCoeff();
  const double diag2 = instance.gram_target.entries.diagonal().maxCoeff();

  CurvatureDiagnostics diag;
  diag.u_lower = instance.lambda1 * (e01 * instance.cols() + e02 * instance.rows()) +
                 0.5 * instance.lambda2;
  diag.u_tilde1 = 2.0 * instance.lambda1 * (diag1 + diag2) + instance.lambda2;
  diag.alpha_lower = std::min(1.0, diag.u_lower / diag.u_tilde1);
  diag.reliable = !instance.gram_source.degenerate && !instance.gram_target.degenerate;
  return diag;
}

}  // namespace sparseuot
