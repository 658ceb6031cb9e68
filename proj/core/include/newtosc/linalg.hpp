#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "newtosc/rational.hpp"

namespace newtosc {

// Dense matrix of exact rationals, row-major.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static Mat identity(std::size_t n);
  static Mat from_columns(const std::vector<Tuple>& cols);
  static Mat from_rows(const std::vector<Tuple>& rows);
  static Mat from_rows_rat(const std::vector<RatVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Mat transpose() const;
  RatVec column(std::size_t j) const;
  RatVec row(std::size_t i) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> data_;
};

Mat operator*(const Mat& a, const Mat& b);
RatVec operator*(const Mat& a, const RatVec& x);

Rat det(const Mat& m);

// Fraction-free determinant of the square matrix with the given columns.
Int det_columns(const std::vector<Tuple>& cols);

// Unique solution of a x = b. Throws SingularMatrixError when a is singular
// (or not square).
RatVec solve(const Mat& a, const RatVec& b);

Mat inverse(const Mat& a);

std::size_t rank(const Mat& a);

// Basis of the right kernel {x : a x = 0}.
std::vector<RatVec> nullspace(const Mat& a);

// Dimension of the affine hull of a nonempty point set.
std::size_t affine_dim(const std::vector<Tuple>& pts);

// Scales a nonzero rational vector to a primitive integer vector, keeping
// direction.
Tuple to_primitive_integer(const RatVec& v);

// Diagonal of the Smith normal form of the integer matrix with the given
// rows; entries are nonnegative with d1 | d2 | ... and trailing zeros for
// rank deficiency.
std::vector<Int> snf_diagonal(const std::vector<Tuple>& rows);

// True when the tuples are independent and extend to a basis of the integer
// lattice (all Smith invariants equal 1).
bool is_unimodular_family(const std::vector<Tuple>& gens);

// Calls fn with every size-k index subset of {0..m-1}, lexicographically.
void for_each_combination(std::size_t m, std::size_t k,
                          const std::function<void(
                              const std::vector<std::size_t>&)>& fn);

// Integer vector orthogonal to the n-1 given rows, zero iff the rows are
// dependent. Sign follows the cofactor expansion, not a fixed orientation.
Tuple orthogonal_vector(const std::vector<Tuple>& rows, std::size_t n);

}  // namespace newtosc
