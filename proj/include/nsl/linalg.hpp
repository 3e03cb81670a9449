#pragma once

#include <vector>

#include "nsl/errors.hpp"
#include "nsl/rational.hpp"

namespace nsl {

// Dense matrix over exact rationals. Just enough for the section-space
// oracles: rank, kernel basis, products.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {
    require(rows >= 0 && cols >= 0, Errc::Domain, "RatMat: negative shape");
  }

  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  RatMat operator*(const RatMat& rhs) const;

  // Gaussian elimination over Q; exact.
  int rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }

  // Basis of the right kernel, one column vector per basis element.
  std::vector<std::vector<Rat>> kernel_basis() const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace nsl
