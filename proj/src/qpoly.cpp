#include "torushh/qpoly.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace torushh {

QPoly::QPoly(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::monomial(const Rational& c, int exp) {
  if (exp < 0) throw std::invalid_argument("QPoly::monomial: negative exponent");
  std::vector<Rational> v(static_cast<std::size_t>(exp) + 1);
  v[exp] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

int QPoly::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return static_cast<int>(k);
  return -1;
}

Rational QPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
  return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly QPoly::truncated(int K) const {
  if (static_cast<int>(c_.size()) <= K) return *this;
  return QPoly(std::vector<Rational>(c_.begin(), c_.begin() + std::max(K, 0)));
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly r = *this;
  Rational inv = 1 / lead();
  for (auto& x : r.c_) x *= inv;
  return r;
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    Rational c = c_[k];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (k == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << "q";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
  if (b.is_zero()) throw std::domain_error("QPoly division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  std::vector<Rational> qv(r.size() > static_cast<std::size_t>(db) ? r.size() - db : 0);
  Rational inv = 1 / b.lead();
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] * inv;
    qv[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  quo = QPoly(std::move(qv));
  rem = QPoly(std::move(r));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly qq, r;
    divmod(x, y, qq, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!r1.is_zero()) {
    QPoly qq, r;
    divmod(r0, r1, qq, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - qq * s1, t2 = t0 - qq * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = 0;
    t = 0;
    return r0;
  }
  Rational inv = 1 / r0.lead();
  s = s0 * QPoly(inv);
  t = t0 * QPoly(inv);
  return r0 * QPoly(inv);
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("PolyMatrix: shape mismatch");
  PolyMatrix p(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const QPoly& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols; ++j)
        if (!o(k, j).is_zero()) p(i, j) += x * o(k, j);
    }
  return p;
}

bool PolyMatrix::is_zero() const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Elementary operations that keep a transform and its inverse in sync.
struct ColOps {
  PolyMatrix& A;
  PolyMatrix& V;
  PolyMatrix& Vinv;
  // col_i -= f * col_j
  void sub(std::size_t i, std::size_t j, const QPoly& f) {
    if (f.is_zero()) return;
    for (std::size_t r = 0; r < A.rows; ++r)
      if (!A(r, j).is_zero()) A(r, i) -= f * A(r, j);
    for (std::size_t r = 0; r < V.rows; ++r)
      if (!V(r, j).is_zero()) V(r, i) -= f * V(r, j);
    for (std::size_t c = 0; c < Vinv.cols; ++c)
      if (!Vinv(i, c).is_zero()) Vinv(j, c) += f * Vinv(i, c);
  }
  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv(i, c), Vinv(j, c));
  }
  void scale(std::size_t i, const Rational& s) {
    for (std::size_t r = 0; r < A.rows; ++r) A(r, i) *= QPoly(s);
    for (std::size_t r = 0; r < V.rows; ++r) V(r, i) *= QPoly(s);
    Rational inv = 1 / s;
    for (std::size_t c = 0; c < Vinv.cols; ++c) Vinv(i, c) *= QPoly(inv);
  }
};

struct RowOps {
  PolyMatrix& A;
  PolyMatrix& U;
  PolyMatrix& Uinv;
  // row_i -= f * row_j
  void sub(std::size_t i, std::size_t j, const QPoly& f) {
    if (f.is_zero()) return;
    for (std::size_t c = 0; c < A.cols; ++c)
      if (!A(j, c).is_zero()) A(i, c) -= f * A(j, c);
    for (std::size_t c = 0; c < U.cols; ++c)
      if (!U(j, c).is_zero()) U(i, c) -= f * U(j, c);
    for (std::size_t r = 0; r < Uinv.rows; ++r)
      if (!Uinv(r, i).is_zero()) Uinv(r, j) += f * Uinv(r, i);
  }
  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
  }
  void scale(std::size_t i, const Rational& s) {
    for (std::size_t c = 0; c < A.cols; ++c) A(i, c) *= QPoly(s);
    for (std::size_t c = 0; c < U.cols; ++c) U(i, c) *= QPoly(s);
    Rational inv = 1 / s;
    for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, i) *= QPoly(inv);
  }
};

}  // namespace

ColumnReduction column_reduce(const PolyMatrix& A0) {
  PolyMatrix A = A0;
  ColumnReduction out;
  out.V = PolyMatrix::identity(A.cols);
  out.Vinv = PolyMatrix::identity(A.cols);
  ColOps ops{A, out.V, out.Vinv};
  std::size_t k = 0;
  for (std::size_t r = 0; r < A.rows && k < A.cols; ++r) {
    for (;;) {
      // smallest-degree nonzero entry of row r among columns >= k
      std::size_t best = A.cols;
      for (std::size_t c = k; c < A.cols; ++c)
        if (!A(r, c).is_zero() && (best == A.cols || A(r, c).degree() < A(r, best).degree())) best = c;
      if (best == A.cols) break;
      ops.swap(k, best);
      bool clean = true;
      for (std::size_t c = k + 1; c < A.cols; ++c) {
        if (A(r, c).is_zero()) continue;
        QPoly qq, rem;
        divmod(A(r, c), A(r, k), qq, rem);
        ops.sub(c, k, qq);
        if (!rem.is_zero()) clean = false;
      }
      if (clean) {
        ops.scale(k, 1 / A(r, k).lead());
        ++k;
        break;
      }
    }
  }
  out.rank = k;
  return out;
}

SmithForm smith(const PolyMatrix& A0) {
  PolyMatrix A = A0;
  SmithForm out;
  out.U = PolyMatrix::identity(A.rows);
  out.Uinv = PolyMatrix::identity(A.rows);
  out.W = PolyMatrix::identity(A.cols);
  PolyMatrix Winv = PolyMatrix::identity(A.cols);
  RowOps rows{A, out.U, out.Uinv};
  ColOps cols{A, out.W, Winv};
  std::size_t n = std::min(A.rows, A.cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t bi = A.rows, bj = A.cols;
      for (std::size_t i = t; i < A.rows; ++i)
        for (std::size_t j = t; j < A.cols; ++j)
          if (!A(i, j).is_zero() && (bi == A.rows || A(i, j).degree() < A(bi, bj).degree())) {
            bi = i;
            bj = j;
          }
      if (bi == A.rows) {
        out.diag.resize(t);
        goto done;
      }
      rows.swap(t, bi);
      cols.swap(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < A.rows; ++i) {
        if (A(i, t).is_zero()) continue;
        QPoly qq, rem;
        divmod(A(i, t), A(t, t), qq, rem);
        rows.sub(i, t, qq);
        if (!rem.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < A.cols; ++j) {
        if (A(t, j).is_zero()) continue;
        QPoly qq, rem;
        divmod(A(t, j), A(t, t), qq, rem);
        cols.sub(j, t, qq);
        if (!rem.is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < A.rows && divides; ++i)
        for (std::size_t j = t + 1; j < A.cols; ++j) {
          if (A(i, j).is_zero()) continue;
          QPoly qq, rem;
          divmod(A(i, j), A(t, t), qq, rem);
          if (!rem.is_zero()) {
            rows.sub(t, i, QPoly(-1));  // row_t += row_i
            divides = false;
            break;
          }
        }
      if (!divides) continue;
      rows.scale(t, 1 / A(t, t).lead());
      out.diag.push_back(A(t, t));
      break;
    }
  }
done:
  return out;
}

}  // namespace torushh
