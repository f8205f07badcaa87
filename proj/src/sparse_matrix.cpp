#include "torushh/sparse_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace torushh {

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, Rational(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vec>& rows, std::size_t cols) {
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (sgn(rows[r][c]) != 0) m.data_[r].emplace(c, rows[r][c]);
  return m;
}

SparseMatrix SparseMatrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  SparseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r)
      if (sgn(cols[c][r]) != 0) m.data_[r].emplace(c, cols[c][r]);
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
  if (sgn(v) == 0)
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
  if (sgn(v) == 0) return;
  auto [it, fresh] = data_[r].emplace(c, v);
  if (!fresh) {
    it->second += v;
    if (sgn(it->second) == 0) data_[r].erase(it);
  }
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
  SparseMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [k, a] : data_[r])
      for (const auto& [c, b] : o.data_[k]) p.add(r, c, a * b);
  return p;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch in sum");
  SparseMatrix s = *this;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : o.data_[r]) s.add(r, c, v);
  return s;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
  SparseMatrix m(rows_, cols_);
  if (sgn(s) == 0) return m;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) m.data_[r].emplace(c, v * s);
  return m;
}

Vec SparseMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: size mismatch");
  Vec y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
  return y;
}

Vec SparseMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = get(r, c);
  return v;
}

std::vector<Vec> SparseMatrix::to_dense() const {
  std::vector<Vec> d(rows_, Vec(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) d[r][c] = v;
  return d;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

void SparseMatrix::place(const SparseMatrix& block, std::size_t r0, std::size_t c0, const Rational& s) {
  for (std::size_t r = 0; r < block.rows_; ++r)
    for (const auto& [c, v] : block.data_[r]) add(r0 + r, c0 + c, v * s);
}

std::string SparseMatrix::str() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << get(r, c).get_str();
    os << "]\n";
  }
  return os.str();
}

namespace {

// row -= f * pivot_row
void axpy(SparseRow& row, const Rational& f, const SparseRow& piv) {
  for (const auto& [c, v] : piv) {
    auto [it, fresh] = row.emplace(c, -f * v);
    if (!fresh) {
      it->second -= f * v;
      if (sgn(it->second) == 0) row.erase(it);
    }
  }
}

}  // namespace

Echelon rref(const SparseMatrix& m) {
  Echelon e;
  e.cols = m.cols();
  std::map<std::size_t, std::size_t> where;  // pivot col -> index into e.rows
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseRow row = m.row(r);
    auto it = row.begin();
    while (it != row.end()) {
      auto pw = where.find(it->first);
      if (pw == where.end()) {
        ++it;
        continue;
      }
      std::size_t col = it->first;
      Rational f = it->second;
      axpy(row, f, e.rows[pw->second]);
      it = row.upper_bound(col);
    }
    if (row.empty()) continue;
    std::size_t pc = row.begin()->first;
    Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    // keep earlier pivot rows reduced with respect to the new pivot
    for (auto& pr : e.rows) {
      auto hit = pr.find(pc);
      if (hit != pr.end()) {
        Rational f = hit->second;
        axpy(pr, f, row);
      }
    }
    where.emplace(pc, e.rows.size());
    e.rows.push_back(std::move(row));
    e.pivot_cols.push_back(pc);
  }
  // order rows by pivot column
  std::vector<std::size_t> idx(e.rows.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return e.pivot_cols[a] < e.pivot_cols[b]; });
  Echelon sorted;
  sorted.cols = e.cols;
  for (auto i : idx) {
    sorted.pivot_cols.push_back(e.pivot_cols[i]);
    sorted.rows.push_back(std::move(e.rows[i]));
  }
  return sorted;
}

std::size_t rank(const SparseMatrix& m) {
  // rank is invariant under transposition; eliminate along the shorter side
  if (m.cols() < m.rows()) return rref(m.transpose()).pivot_cols.size();
  return rref(m).pivot_cols.size();
}

std::vector<Vec> kernel(const SparseMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      auto it = e.rows[k].find(f);
      if (it != e.rows[k].end()) v[e.pivot_cols[k]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::size_t> image_pivot_columns(const SparseMatrix& m) { return rref(m).pivot_cols; }

bool solve(const SparseMatrix& m, const Vec& b, Vec& x) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
  SparseMatrix aug(m.rows(), m.cols() + 1);
  aug.place(m, 0, 0);
  for (std::size_t r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
  Echelon e = rref(aug);
  x.assign(m.cols(), Rational(0));
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    if (e.pivot_cols[k] == m.cols()) return false;
    auto it = e.rows[k].find(m.cols());
    if (it != e.rows[k].end()) x[e.pivot_cols[k]] = it->second;
  }
  return true;
}

}  // namespace torushh
