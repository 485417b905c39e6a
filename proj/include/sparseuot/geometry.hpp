#pragma once

#include <Eigen/Dense>

#include "sparseuot/types.hpp"

namespace sparseuot {

// A set of d-dimensional points, one per row.
struct PointCloud {
  Eigen::MatrixXd points;

  PointCloud() = default;
  explicit PointCloud(Eigen::MatrixXd pts);

  int count() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
};

enum class KernelFamily { Rbf, Imq, ImqV2 };

struct KernelSpec {
  KernelFamily family = KernelFamily::Rbf;
  double sigma2 = 1.0;  // bandwidth, > 0

  KernelSpec() = default;
  KernelSpec(KernelFamily f, double s2);
};

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

// Symmetric kernel matrix with its extreme eigenvalues cached at
// construction. `degenerate` is set when eig_min <= 1e-10 (duplicate or
// near-duplicate points).
struct GramMatrix {
  Eigen::MatrixXd entries;
  double eig_min = 0.0;
  double eig_max = 0.0;
  bool degenerate = false;

  int size() const { return static_cast<int>(entries.rows()); }
};

enum class CostKind { SquaredEuclidean, Cosine };

struct CostMatrix {
  Eigen::MatrixXd entries;  // m x n, nonnegative

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

GramMatrix gram_matrix(const KernelSpec& spec, const PointCloud& cloud);

// Wraps a user-supplied symmetric matrix, computing the cached eigenvalues.
GramMatrix gram_from_matrix(Eigen::MatrixXd entries);

// Median of squared Euclidean distances over all unordered distinct index
// pairs of the pooled source+target points. Even count takes the lower of
// the two middle values. Throws InputError when the median is zero.
double median_heuristic(const PointCloud& source, const PointCloud& target);

CostMatrix cost_matrix(CostKind kind, const PointCloud& source,
                       const PointCloud& target, bool normalize);

// Squared MMD between two weighted clouds under the given kernel.
double mmd_squared(const KernelSpec& spec, const PointCloud& x,
                   const Eigen::VectorXd& wx, const PointCloud& y,
                   const Eigen::VectorXd& wy);

}  // namespace sparseuot
