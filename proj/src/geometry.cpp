#include "sparseuot/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

namespace sparseuot {

namespace {
constexpr double kDegenerateEig = 1e-10;
}

PointCloud::PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {
  if (points.rows() < 1 || points.cols() < 1) {
    throw InputError("point cloud must have at least one point and one dimension");
  }
  if (!points.allFinite()) {
    throw InputError("point cloud contains non-finite coordinates");
  }
}

KernelSpec::KernelSpec(KernelFamily f, double s2) : family(f), sigma2(s2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw InputError("kernel bandwidth must be strictly positive and finite");
  }
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "rbf") return KernelFamily::Rbf;
  if (name == "imq") return KernelFamily::Imq;
  if (name == "imq-v2") return KernelFamily::ImqV2;
  throw InputError("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Rbf: return "rbf";
    case KernelFamily::Imq: return "imq";
    case KernelFamily::ImqV2: return "imq-v2";
  }
  return "?";
}

namespace {

double kernel_from_sqdist(const KernelSpec& spec, double d2) {
  switch (spec.family) {
    case KernelFamily::Rbf:
      return std::exp(-d2 / (2.0 * spec.sigma2));
    case KernelFamily::Imq:
      return 1.0 / std::sqrt(spec.sigma2 + d2);
    case KernelFamily::ImqV2:
      return std::sqrt(spec.sigma2 / (1.0 + d2));
  }
  return 0.0;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
  if (x.size() != y.size()) {
    throw InputError("kernel_eval: point dimensions differ");
  }
  return kernel_from_sqdist(spec, (x - y).squaredNorm());
}

GramMatrix gram_matrix(const KernelSpec& spec, const PointCloud& cloud) {
  const int n = cloud.count();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = kernel_from_sqdist(spec, 0.0);
    for (int j = i + 1; j < n; ++j) {
      const double d2 = (cloud.points.row(i) - cloud.points.row(j)).squaredNorm();
      const double v = kernel_from_sqdist(spec, d2);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return gram_from_matrix(std::move(g));
}

GramMatrix gram_from_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw InputError("Gram matrix must be square and nonempty");
  }
  if (!entries.allFinite()) {
    throw InputError("Gram matrix contains non-finite entries");
  }
  if ((entries - entries.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("Gram matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(entries, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite()) {
    throw NumericalError("eigenvalue computation failed on Gram matrix");
  }
  GramMatrix gram;
  gram.entries = std::move(entries);
  gram.eig_min = eig.eigenvalues().minCoeff();
  gram.eig_max = eig.eigenvalues().maxCoeff();
  gram.degenerate = gram.eig_min <= kDegenerateEig;
  return gram;
}

double median_heuristic(const PointCloud& source, const PointCloud& target) {
  if (source.dim() != target.dim()) {
    throw InputError("median_heuristic: clouds have different dimensions");
  }
  const int m = source.count();
  const int n = target.count();
  const int total = m + n;
  if (total < 2) {
    throw InputError("median_heuristic: need at least two pooled points");
  }
  Eigen::MatrixXd pooled(total, source.dim());
  pooled.topRows(m) = source.points;
  pooled.bottomRows(n) = target.points;

  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(total) * (total - 1) / 2);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      sq.push_back((pooled.row(i) - pooled.row(j)).squaredNorm());
    }
  }
  // Lower of the two middle values for even counts.
  const std::size_t mid = (sq.size() - 1) / 2;
  std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(mid), sq.end());
  const double med = sq[mid];
  if (!(med > 0.0)) {
    throw InputError("median_heuristic: zero bandwidth (too many identical points)");
  }
  return med;
}

CostMatrix cost_matrix(CostKind kind, const PointCloud& source,
                       const PointCloud& target, bool normalize) {
  if (source.dim() != target.dim()) {
    throw InputError("cost_matrix: clouds have different dimensions");
  }
  const int m = source.count();
  const int n = target.count();
  Eigen::MatrixXd c(m, n);
  if (kind == CostKind::SquaredEuclidean) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        c(i, j) = (source.points.row(i) - target.points.row(j)).squaredNorm();
      }
    }
  } else {
    Eigen::VectorXd sn = source.points.rowwise().norm();
    Eigen::VectorXd tn = target.points.rowwise().norm();
    if (sn.minCoeff() <= 0.0 || tn.minCoeff() <= 0.0) {
      throw InputError("cost_matrix: cosine cost undefined for zero-norm points");
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double sim =
            source.points.row(i).dot(target.points.row(j)) / (sn(i) * tn(j));
        c(i, j) = 1.0 - sim;
      }
    }
    c = c.cwiseMax(0.0);  // clamp -0.0/rounding residue
  }
  if (normalize) {
    const double mx = c.maxCoeff();
    if (mx > 0.0) c /= mx;
  }
  return CostMatrix{std::move(c)};
}

double mmd_squared(const KernelSpec& spec, const PointCloud& x,
                   const Eigen::VectorXd& wx, const PointCloud& y,
                   const Eigen::VectorXd& wy) {
  if (wx.size() != x.count() || wy.size() != y.count()) {
    throw InputError("mmd_squared: weight lengths do not match clouds");
  }
  double acc = 0.0;
  for (int i = 0; i < x.count(); ++i) {
    for (int j = 0; j < x.count(); ++j) {
      const double d2 = (x.points.row(i) - x.points.row(j)).squaredNorm();
      acc += wx(i) * wx(j) * kernel_from_sqdist(spec, d2);
    }
  }
  for (int i = 0; i < y.count(); ++i) {
    for (int j = 0; j < y.count(); ++j) {
      const double d2 = (y.points.row(i) - y.points.row(j)).squaredNorm();
      acc += wy(i) * wy(j) * kernel_from_sqdist(spec, d2);
    }
  }
  for (int i = 0; i < x.count(); ++i) {
    for (int j = 0; j < y.count(); ++j) {
      const double d2 = (x.points.row(i) - y.points.row(j)).squaredNorm();
      acc -= 2.0 * wx(i) * wy(j) * kernel_from_sqdist(spec, d2);
    }
  }
  return acc;
}

}  // namespace sparseuot
