#pragma once

#include <string>
#include <vector>

#include "torushh/rational.hpp"

namespace torushh {

// Univariate polynomial over Q in the deformation variable q.
// coeffs[k] is the coefficient of q^k; trailing zeros are trimmed.
class QPoly {
 public:
  QPoly() = default;
  QPoly(const Rational& c);  // NOLINT: constants convert implicitly
  QPoly(int c) : QPoly(Rational(c)) {}
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly monomial(const Rational& c, int exp);
  static QPoly q() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  int valuation() const;                                           // q-adic; -1 for zero
  const Rational& lead() const { return c_.back(); }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_unit() const { return c_.size() == 1; }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator-() const;
  QPoly operator*(const QPoly& o) const;
  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return c_ != o.c_; }

  QPoly truncated(int K) const;  // drop q^k for k >= K
  Rational eval(const Rational& x) const;
  QPoly monic() const;
  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic, gcd(0,0) = 0
// g = s*a + t*b with g monic gcd
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);

// Dense matrix over Q[q].
struct PolyMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<QPoly> a;
  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static PolyMatrix identity(std::size_t n);
  QPoly& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const QPoly& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  PolyMatrix operator*(const PolyMatrix& o) const;
  bool operator==(const PolyMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool is_zero() const;
};

// Column Hermite-style reduction: A * V = [H | 0] with V unimodular.
// Returns r = number of nonzero columns of H. The last cols-r columns of V
// form a basis of ker A (a saturated free submodule).
struct ColumnReduction {
  std::size_t rank = 0;
  PolyMatrix V, Vinv;
};
ColumnReduction column_reduce(const PolyMatrix& A);

// Smith form U * A * W = diag(d_1, ..., d_r, 0, ...) with d_i | d_{i+1}, monic.
struct SmithForm {
  std::vector<QPoly> diag;
  PolyMatrix U, Uinv, W;
};
SmithForm smith(const PolyMatrix& A);

}  // namespace torushh
