#pragma once

#include <string>

#include "sparseuot/geometry.hpp"
#include "sparseuot/problem.hpp"

namespace sparseuot {

// Numeric CSV, one row per line, comma-separated, optional single header
// line. Throws InputError with the offending line number on malformed input.
Eigen::MatrixXd read_csv_matrix(const std::string& path);

PointCloud read_point_cloud(const std::string& path);

// One weight per line; must match `expected` entries.
Eigen::VectorXd read_weights(const std::string& path, int expected);

Eigen::VectorXd uniform_weights(int n);

// COO plan text: header "i,j,value", 0-based indices, entries above tol
// only, printed with round-trip-exact formatting.
void write_plan_coo(const std::string& path, const SparsePlan& plan,
                    double tol = kSupportTol);

SparsePlan read_plan_coo(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sparseuot
