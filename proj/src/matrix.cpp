#include "hsa/matrix.hpp"

#include <string>
#include <utility>

namespace hsa {

Matrix::Matrix(std::initializer_list<std::initializer_list<uint32_t>> rows) {
  for (const auto& r : rows) append_row(std::vector<uint32_t>(r));
}

Matrix Matrix::identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void Matrix::append_row(const std::vector<uint32_t>& row) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = row.size();
  } else if (row.size() != cols_) {
    throw DimensionMismatch("append_row: expected " + std::to_string(cols_) +
                            " columns, got " + std::to_string(row.size()));
  }
  e_.insert(e_.end(), row.begin(), row.end());
  ++rows_;
}

void Matrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
}

namespace {

// In-place row echelon pass; returns the pivot count.
size_t eliminate(const PrimeField& f, Matrix& m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(r, pivot);
    const uint32_t scale = f.inv(m.at(r, c));
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), scale);
    for (size_t i = r + 1; i < m.rows(); ++i) {
      const uint32_t lead = m.at(i, c);
      if (lead == 0) continue;
      for (size_t j = c; j < m.cols(); ++j) {
        m.at(i, j) = f.sub(m.at(i, j), f.mul(lead, m.at(r, j)));
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

size_t mat_rank(const PrimeField& f, Matrix m) {
  if (m.empty()) return 0;
  return eliminate(f, m);
}

Matrix mat_solve(const PrimeField& f, Matrix a, Matrix b) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("mat_solve: A must be square");
  }
  if (b.rows() != a.rows()) {
    throw DimensionMismatch("mat_solve: b row count mismatch");
  }
  const size_t n = a.rows();
  // Forward elimination on the augmented system.
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    while (pivot < n && a.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix("mat_solve: singular system");
    a.swap_rows(c, pivot);
    b.swap_rows(c, pivot);
    const uint32_t scale = f.inv(a.at(c, c));
    for (size_t j = c; j < n; ++j) a.at(c, j) = f.mul(a.at(c, j), scale);
    for (size_t j = 0; j < b.cols(); ++j) b.at(c, j) = f.mul(b.at(c, j), scale);
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const uint32_t lead = a.at(i, c);
      if (lead == 0) continue;
      for (size_t j = c; j < n; ++j) {
        a.at(i, j) = f.sub(a.at(i, j), f.mul(lead, a.at(c, j)));
      }
      for (size_t j = 0; j < b.cols(); ++j) {
        b.at(i, j) = f.sub(b.at(i, j), f.mul(lead, b.at(c, j)));
      }
    }
  }
  return b;
}

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const uint32_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) out.at(j, i) = m.at(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
  Matrix out = a;
  for (size_t i = 0; i < b.rows(); ++i) {
    out.append_row(std::vector<uint32_t>(b.row_ptr(i), b.row_ptr(i) + b.cols()));
  }
  return out;
}

Matrix take_cols(const Matrix& m, size_t begin, size_t end) {
  Matrix out(m.rows(), end - begin);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = begin; j < end; ++j) out.at(i, j - begin) = m.at(i, j);
  }
  return out;
}

std::vector<uint32_t> mat_vec(const PrimeField& f, const Matrix& a,
                              const std::vector<uint32_t>& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("mat_vec: shape mismatch");
  std::vector<uint32_t> out(a.rows(), 0);
  for (size_t i = 0; i < a.rows(); ++i) {
    uint64_t acc = 0;
    for (size_t j = 0; j < a.cols(); ++j) {
      acc += uint64_t(a.at(i, j)) * x[j] % f.q();
    }
    out[i] = f.reduce(acc);
  }
  return out;
}

}  // namespace hsa
