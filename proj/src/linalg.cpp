#include "wonder/linalg.hpp"

#include <algorithm>
#include <string>

namespace wonder {

SparseMat::SparseMat(Index rows, Index cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMat: negative shape");
  for (auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("SparseMat: entry (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") out of range");
    if (!e.value.is_zero()) entries_.push_back(std::move(e));
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].row == entries_[i - 1].row && entries_[i].col == entries_[i - 1].col)
      throw std::invalid_argument("SparseMat: duplicate entry at (" +
                                  std::to_string(entries_[i].row) + ", " +
                                  std::to_string(entries_[i].col) + ")");
}

SparseMat SparseMat::from_dense(const RatMatrix& m) {
  std::vector<Entry> es;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) es.push_back({r, c, m(r, c)});
  return SparseMat(m.rows(), m.cols(), std::move(es));
}

SparseMat SparseMat::identity(Index n) {
  std::vector<Entry> es;
  for (Index i = 0; i < n; ++i) es.push_back({i, i, Rat(1)});
  return SparseMat(n, n, std::move(es));
}

RatMatrix SparseMat::to_dense() const {
  RatMatrix m = zero_matrix<Rat>(rows_, cols_);
  for (const auto& e : entries_) m(e.row, e.col) = e.value;
  return m;
}

bool operator==(const SparseMat& a, const SparseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size())
    return false;
  for (size_t i = 0; i < a.entries_.size(); ++i) {
    const auto &x = a.entries_[i], &y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

Index rank(const SparseMat& m) { return rank<Rat>(m.to_dense()); }

std::vector<RatVector> nullspace_basis(const SparseMat& m) {
  return nullspace_basis<Rat>(m.to_dense());
}

std::optional<RatVector> solve(const SparseMat& m, const RatVector& rhs) {
  return solve<Rat>(m.to_dense(), rhs);
}

}  // namespace wonder
