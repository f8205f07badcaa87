#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "torushh/rational.hpp"

namespace torushh {

using SparseRow = std::map<std::size_t, Rational>;

// Row-major sparse matrix over Q. Zero entries are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<Vec>& rows, std::size_t cols);
  static SparseMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Rational get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  const SparseRow& row(std::size_t r) const { return data_[r]; }

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Rational& s) const;
  Vec apply(const Vec& x) const;
  Vec column(std::size_t c) const;
  std::vector<Vec> to_dense() const;

  bool operator==(const SparseMatrix& o) const;
  bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

  // Embeds `block` with its (0,0) entry at (r0, c0).
  void place(const SparseMatrix& block, std::size_t r0, std::size_t c0, const Rational& s = 1);

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseRow> data_;
};

// Reduced row echelon form. Rows are inserted in order; each row is reduced
// against earlier pivots and its first surviving entry becomes its pivot.
struct Echelon {
  std::vector<std::size_t> pivot_cols;  // ascending
  std::vector<SparseRow> rows;          // rows[k] has leading 1 at pivot_cols[k], fully reduced
  std::size_t cols = 0;
};

Echelon rref(const SparseMatrix& m);
std::size_t rank(const SparseMatrix& m);

// Kernel basis of m : Q^cols -> Q^rows, one vector per free column (ascending).
std::vector<Vec> kernel(const SparseMatrix& m);
// Column indices of m whose columns form a basis of the image.
std::vector<std::size_t> image_pivot_columns(const SparseMatrix& m);

// Solves m x = b. Returns false when inconsistent; free variables set to 0.
bool solve(const SparseMatrix& m, const Vec& b, Vec& x);

}  // namespace torushh
