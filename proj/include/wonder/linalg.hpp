#pragma once

// Exact linear algebra over a field. Everything here is templated on the
// scalar so the same kernels run on Rat (the production field) and on any
// other exact field type used in tests.

#include "wonder/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

namespace wonder {

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rat>;
using RatVector = Vector<Rat>;

template <class Scalar>
Matrix<Scalar> zero_matrix(Index rows, Index cols) {
  return Matrix<Scalar>::Constant(rows, cols, Scalar(0));
}

template <class Scalar>
Vector<Scalar> zero_vector(Index n) {
  return Vector<Scalar>::Constant(n, Scalar(0));
}

template <class Scalar>
Vector<Scalar> unit_vector(Index n, Index i) {
  Vector<Scalar> v = zero_vector<Scalar>(n);
  v(i) = Scalar(1);
  return v;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != typename Derived::Scalar(0)) return false;
  return true;
}

/// Reduced row echelon form together with the pivot columns.
template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;
};

template <class Scalar>
Echelon<Scalar> row_reduce(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Index j = c; j < cols; ++j)
      if (m(r, j) != Scalar(0)) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      for (Index j = c; j < cols; ++j)
        if (m(r, j) != Scalar(0)) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const Matrix<Scalar>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<Index>(row_reduce(m).pivots.size());
}

/// Basis of the right kernel {v : m v = 0}; size is cols - rank.
template <class Scalar>
std::vector<Vector<Scalar>> nullspace_basis(const Matrix<Scalar>& m) {
  const Index cols = m.cols();
  std::vector<Vector<Scalar>> basis;
  if (m.rows() == 0) {
    for (Index c = 0; c < cols; ++c) basis.push_back(unit_vector<Scalar>(cols, c));
    return basis;
  }
  const auto ech = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index c : ech.pivots) is_pivot[static_cast<size_t>(c)] = true;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    Vector<Scalar> v = zero_vector<Scalar>(cols);
    v(free) = Scalar(1);
    for (size_t r = 0; r < ech.pivots.size(); ++r)
      v(ech.pivots[r]) = -ech.reduced(static_cast<Index>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of {w : w^T m = 0}.
template <class Scalar>
std::vector<Vector<Scalar>> left_nullspace_basis(const Matrix<Scalar>& m) {
  return nullspace_basis<Scalar>(m.transpose());
}

/// One exact solution of m x = rhs, or nullopt when the system is
/// inconsistent. Free variables are set to zero.
template <class Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& m, const Vector<Scalar>& rhs) {
  if (rhs.size() != m.rows())
    throw std::invalid_argument("solve: rhs length does not match row count");
  const Index rows = m.rows(), cols = m.cols();
  Matrix<Scalar> aug(rows, cols + 1);
  aug.leftCols(cols) = m;
  aug.col(cols) = rhs;
  const auto ech = row_reduce(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == cols) return std::nullopt;
  Vector<Scalar> x = zero_vector<Scalar>(cols);
  for (size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.reduced(static_cast<Index>(r), cols);
  return x;
}

/// Solver for many right-hand sides against one matrix: reduces once and
/// answers each query by back-substitution against the stored echelon form.
template <class Scalar>
class Solver {
public:
  explicit Solver(const Matrix<Scalar>& m) : rows_(m.rows()), cols_(m.cols()) {
    Matrix<Scalar> aug(rows_, cols_ + rows_);
    aug.leftCols(cols_) = m;
    aug.rightCols(rows_) = Matrix<Scalar>::Identity(rows_, rows_);
    auto ech = row_reduce(aug);
    for (Index p : ech.pivots)
      if (p < cols_) pivots_.push_back(p);
    transform_ = ech.reduced.rightCols(rows_);
  }

  Index rank() const { return static_cast<Index>(pivots_.size()); }

  std::optional<Vector<Scalar>> solve(const Vector<Scalar>& rhs) const {
    if (rhs.size() != rows_)
      throw std::invalid_argument("Solver::solve: rhs length does not match row count");
    const Vector<Scalar> t = transform_ * rhs;
    for (Index r = rank(); r < rows_; ++r)
      if (t(r) != Scalar(0)) return std::nullopt;
    Vector<Scalar> x = zero_vector<Scalar>(cols_);
    for (size_t r = 0; r < pivots_.size(); ++r) x(pivots_[r]) = t(static_cast<Index>(r));
    return x;
  }

private:
  Index rows_, cols_;
  std::vector<Index> pivots_;
  Matrix<Scalar> transform_;
};

/// Triplet-storage sparse rational matrix. Construction rejects duplicate
/// positions and out-of-range indices; explicit zeros are dropped.
class SparseMat {
public:
  struct Entry {
    Index row;
    Index col;
    Rat value;
  };

  SparseMat() = default;
  SparseMat(Index rows, Index cols, std::vector<Entry> entries = {});

  static SparseMat from_dense(const RatMatrix& m);
  static SparseMat identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  RatMatrix to_dense() const;

  friend bool operator==(const SparseMat& a, const SparseMat& b);

private:
  Index rows_ = 0, cols_ = 0;
  std::vector<Entry> entries_;  // sorted by (row, col)
};

Index rank(const SparseMat& m);
std::vector<RatVector> nullspace_basis(const SparseMat& m);
std::optional<RatVector> solve(const SparseMat& m, const RatVector& rhs);

}  // namespace wonder
