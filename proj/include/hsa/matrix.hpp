#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "hsa/errors.hpp"
#include "hsa/field.hpp"

namespace hsa {

/// Dense row-major matrix of field elements. Entries are raw values in
/// [0, q); all arithmetic goes through a PrimeField passed to the free
/// functions below.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  Matrix(std::initializer_list<std::initializer_list<uint32_t>> rows);

  static Matrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  uint32_t& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
  uint32_t at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

  uint32_t* row_ptr(size_t r) { return e_.data() + r * cols_; }
  const uint32_t* row_ptr(size_t r) const { return e_.data() + r * cols_; }

  /// Appends one row; on the first append to an empty matrix this fixes the
  /// column count.
  void append_row(const std::vector<uint32_t>& row);

  void swap_rows(size_t a, size_t b);

  bool operator==(const Matrix& other) const = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint32_t> e_;
};

/// Rank over F_q by exact Gaussian elimination (first-nonzero pivoting).
size_t mat_rank(const PrimeField& f, Matrix m);

/// Solves A x = b for square nonsingular A; throws SingularMatrix otherwise,
/// DimensionMismatch when shapes disagree.
Matrix mat_solve(const PrimeField& f, Matrix a, Matrix b);

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

/// Stacks b below a; an empty operand passes the other through.
Matrix vstack(const Matrix& a, const Matrix& b);

/// Copy of the column range [begin, end).
Matrix take_cols(const Matrix& m, size_t begin, size_t end);

std::vector<uint32_t> mat_vec(const PrimeField& f, const Matrix& a,
                              const std::vector<uint32_t>& x);

}  // namespace hsa
