#include "sparseuot/matroid.hpp"

#include <algorithm>
#include <vector>

namespace sparseuot {

MatroidConstraint::MatroidConstraint(Kind kind, int budget, int m, int n)
    : kind_(kind), budget_(budget), m_(m), n_(n) {}

MatroidConstraint MatroidConstraint::uniform(int k1, int m, int n) {
  if (m < 1 || n < 1) throw InputError("matroid ground set is empty");
  if (k1 < 1 || k1 > m * n) throw InputError("uniform matroid requires 1 <= K1 <= m*n");
  return MatroidConstraint(Kind::Uniform, k1, m, n);
}

MatroidConstraint MatroidConstraint::partition(int k2, int m, int n) {
  if (m < 1 || n < 1) throw InputError("matroid ground set is empty");
  if (k2 < 1 || k2 > m) throw InputError("partition matroid requires 1 <= K2 <= m");
  return MatroidConstraint(Kind::Partition, k2, m, n);
}

int MatroidConstraint::rank() const {
  return kind_ == Kind::Uniform ? budget_ : budget_ * n_;
}

bool is_independent(const MatroidConstraint& matroid, const SupportSet& s) {
  for (const auto& [i, j] : s.elements()) {
    if (i < 0 || i >= matroid.ground_rows() || j < 0 || j >= matroid.ground_cols()) {
      throw InputError("support element outside the matroid ground set");
    }
  }
  if (matroid.kind() == MatroidConstraint::Kind::Uniform) {
    return s.size() <= matroid.budget();
  }
  std::vector<int> per_col(matroid.ground_cols(), 0);
  for (const auto& [i, j] : s.elements()) {
    if (++per_col[j] > matroid.budget()) return false;
  }
  return true;
}

namespace {

// Sorts candidates by thresholded score descending, lowest linear index on
// ties, and keeps the first `capacity`.
void take_top(std::vector<std::pair<int, int>>& candidates, const ScoreFn& score,
              int n_cols, int capacity, SupportSet& out) {
  struct Scored {
    double value;
    long linear;
    std::pair<int, int> element;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (const auto& e : candidates) {
    const double v = std::max(0.0, score(e.first, e.second));
    scored.push_back({v, static_cast<long>(e.first) * n_cols + e.second, e});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.linear < b.linear;
  });
  const int take = std::min<int>(capacity, static_cast<int>(scored.size()));
  for (int k = 0; k < take; ++k) {
    out.insert(scored[k].element.first, scored[k].element.second);
  }
}

}  // namespace

SupportSet best_base_of_contraction(const MatroidConstraint& matroid,
                                    const SupportSet& s, const ScoreFn& score) {
  if (!is_independent(matroid, s)) {
    throw InputError("best_base_of_contraction: S is dependent");
  }
  const int m = matroid.ground_rows();
  const int n = matroid.ground_cols();
  SupportSet base;

  if (matroid.kind() == MatroidConstraint::Kind::Uniform) {
    const int capacity = matroid.budget() - s.size();
    if (capacity <= 0) return base;
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(static_cast<std::size_t>(m) * n - s.size());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!s.contains(i, j)) candidates.emplace_back(i, j);
      }
    }
    take_top(candidates, score, n, capacity, base);
    return base;
  }

  std::vector<int> used(n, 0);
  for (const auto& [i, j] : s.elements()) ++used[j];
  for (int j = 0; j < n; ++j) {
    const int capacity = matroid.budget() - used[j];
    if (capacity <= 0) continue;
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(m);
    for (int i = 0; i < m; ++i) {
      if (!s.contains(i, j)) candidates.emplace_back(i, j);
    }
    take_top(candidates, score, n, capacity, base);
  }
  return base;
}

}  // namespace sparseuot
