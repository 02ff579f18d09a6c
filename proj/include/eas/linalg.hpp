#pragma once

#include <cstdint>
#include <vector>

#include "eas/rational.hpp"

namespace eas {

// Dense row-major double matrix. Sized for association-scheme work
// (|Delta| <= q+1 and the q^2 x q^2 graph oracle at small q), not BLAS scale.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n, double scale = 1.0) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(Matrix a);

// Multiset equality up to per-element tolerance (sorts copies).
bool multisets_close(std::vector<double> a, std::vector<double> b, double tol);

// Exact integer matrix; products accumulate in 128 bits and throw if an
// entry leaves the int64 range.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Matrix to_double() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Int128 trace_of_power(const IntMatrix& a, int ell);

}  // namespace eas
