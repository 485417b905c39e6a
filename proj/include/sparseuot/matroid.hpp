#pragma once

#include <functional>

#include "sparseuot/problem.hpp"

namespace sparseuot {

// Uniform (global cardinality K1) or partition (per-column cardinality K2)
// independence structure over the index set of an m x n matrix.
class MatroidConstraint {
 public:
  enum class Kind { Uniform, Partition };

  static MatroidConstraint uniform(int k1, int m, int n);
  static MatroidConstraint partition(int k2, int m, int n);

  Kind kind() const { return kind_; }
  int budget() const { return budget_; }  // K1 or K2
  int ground_rows() const { return m_; }
  int ground_cols() const { return n_; }
  // Size of every base: K1 for uniform, n*K2 for partition.
  int rank() const;

 private:
  MatroidConstraint(Kind kind, int budget, int m, int n);
  Kind kind_;
  int budget_;
  int m_, n_;
};

bool is_independent(const MatroidConstraint& matroid, const SupportSet& s);

// Score oracle over ground elements; called at most once per candidate.
using ScoreFn = std::function<double(int i, int j)>;

// Maximal independent set of the contraction M/S maximizing the thresholded
// score sum Sum_u max(0, score(u)). Ties break toward the lowest linear
// index i*n + j; zero-scored elements are still included to keep the set
// maximal. Throws InputError when S itself is dependent.
SupportSet best_base_of_contraction(const MatroidConstraint& matroid,
                                    const SupportSet& s, const ScoreFn& score);

}  // namespace sparseuot
