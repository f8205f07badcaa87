#include "torushh/torus_hh.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"

namespace torushh {

namespace {

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Rational parse_entry(const ojson& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw ConfigError("bad rational '" + v.get<std::string>() + "'");
    }
  }
  throw ConfigError("matrix entries must be integers or rational strings");
}

Vec parse_vec(const ojson& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw ConfigError(what + ": expected an array of length " + std::to_string(n));
  Vec v;
  for (const auto& x : j) v.push_back(parse_entry(x));
  return v;
}

ojson vec_json(const Vec& v) {
  ojson a = ojson::array();
  for (const auto& x : v) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) a.push_back(x.get_num().get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

std::vector<Vec> inverse_2x2(const std::vector<Vec>& g) {
  Rational det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (sgn(det) == 0) throw NotAutomorphism("singular 2x2 matrix");
  return {{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}};
}

// Conjugation X -> g X g^{-1} on 2x2 matrices, restricted to the basis `cells`
// of matrix units (r, c).
TestAlgebra matrix_units(const std::vector<std::pair<int, int>>& cells, const std::vector<Vec>& g, std::string name) {
  TestAlgebra A;
  A.name = std::move(name);
  A.n = cells.size();
  auto idx = [&](int r, int c) -> int {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] == std::pair{r, c}) return static_cast<int>(i);
    return -1;
  };
  A.mult.assign(A.n, std::vector<Vec>(A.n, zero_vec(A.n)));
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t j = 0; j < A.n; ++j)
      if (cells[i].second == cells[j].first) A.mult[i][j][idx(cells[i].first, cells[j].second)] = 1;
  A.unit = zero_vec(A.n);
  A.unit[idx(0, 0)] = 1;
  A.unit[idx(1, 1)] = 1;
  auto gi = inverse_2x2(g);
  A.phi = SparseMatrix(A.n, A.n);
  for (std::size_t j = 0; j < A.n; ++j) {
    auto [a, b] = cells[j];
    // g E_ab g^{-1} = sum_{r,c} g[r][a] gi[b][c] E_rc
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        Rational v = g[r][a] * gi[b][c];
        if (sgn(v) == 0) continue;
        int k = idx(r, c);
        if (k < 0) throw NotAutomorphism("conjugation leaves the subalgebra");
        A.phi.add(k, j, v);
      }
  }
  return A;
}

// Solution space dimension of a homogeneous system given by rows.
std::size_t nullity(const std::vector<Vec>& rows, std::size_t cols) {
  if (rows.empty()) return cols;
  return cols - rank(SparseMatrix::from_dense(rows, cols));
}

// Index arithmetic for tuples over an alphabet of size m.
std::size_t ipow(std::size_t m, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= m;
  return r;
}

struct BarData {
  std::size_t N = 0, m = 0;
  std::vector<std::size_t> comp;  // algebra basis index of each letter
  std::size_t pivot = 0;
  bool normalized = true;
  Vec unit;
  // projection of an algebra vector onto the letters (drops the unit component)
  Vec project(const Vec& x) const {
    if (!normalized) return x;
    Rational lambda = x[pivot] / unit[pivot];
    Vec c(m);
    for (std::size_t l = 0; l < m; ++l) c[l] = x[comp[l]] - lambda * unit[comp[l]];
    return c;
  }
};

BarData bar_data(const TestAlgebra& A, bool normalized) {
  BarData b;
  b.N = A.n;
  b.normalized = normalized;
  b.unit = A.unit;
  if (normalized) {
    while (sgn(A.unit[b.pivot]) == 0) ++b.pivot;
    for (std::size_t i = 0; i < A.n; ++i)
      if (i != b.pivot) b.comp.push_back(i);
  } else {
    b.comp.resize(A.n);
    std::iota(b.comp.begin(), b.comp.end(), 0);
  }
  b.m = b.comp.size();
  return b;
}

std::vector<std::size_t> decode(std::size_t code, std::size_t m, int n) {
  std::vector<std::size_t> t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = code % m;
    code /= m;
  }
  return t;
}

std::size_t encode(const std::vector<std::size_t>& t, std::size_t m, std::size_t from, std::size_t to) {
  std::size_t c = 0;
  for (std::size_t i = from; i < to; ++i) c = c * m + t[i];
  return c;
}

SparseMatrix hochschild_d(const TestAlgebra& A, const SparseMatrix& psi, const BarData& b, int n) {
  const std::size_t N = b.N, m = b.m;
  const std::size_t rows_t = ipow(m, n + 1), cols_t = ipow(m, n);
  std::vector<std::vector<SparseRow>> out(rows_t);
  std::vector<Vec> psi_cols(m);
  for (std::size_t l = 0; l < m; ++l) psi_cols[l] = psi.column(b.comp[l]);
  parallel_for(rows_t, [&](std::size_t code) {
    auto s = decode(code, m, n + 1);
    auto& rows = out[code];
    rows.assign(N, SparseRow{});
    auto put = [&](std::size_t k, std::size_t col, const Rational& v) {
      if (sgn(v) == 0) return;
      auto& cell = rows[k][col];
      cell += v;
      if (sgn(cell) == 0) rows[k].erase(col);
    };
    // a_1 f(a_2, ..., a_{n+1})
    {
      std::size_t tail = encode(s, m, 1, n + 1);
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) put(k, tail * N + j, A.mult[b.comp[s[0]]][j][k]);
    }
    // sum_i (-1)^i f(..., a_i a_{i+1}, ...)
    for (int i = 1; i <= n; ++i) {
      Vec prod = b.project(A.mult[b.comp[s[i - 1]]][b.comp[s[i]]]);
      Rational sign = (i % 2 == 0) ? 1 : -1;
      for (std::size_t l = 0; l < m; ++l) {
        if (sgn(prod[l]) == 0) continue;
        std::vector<std::size_t> t;
        for (int p = 0; p < i - 1; ++p) t.push_back(s[p]);
        t.push_back(l);
        for (int p = i + 1; p <= n; ++p) t.push_back(s[p]);
        std::size_t col = encode(t, m, 0, t.size());
        for (std::size_t j = 0; j < N; ++j) put(j, col * N + j, sign * prod[l]);
      }
    }
    // (-1)^{n+1} f(a_1, ..., a_n) psi(a_{n+1})
    {
      std::size_t head = encode(s, m, 0, n);
      Rational sign = ((n + 1) % 2 == 0) ? 1 : -1;
      for (std::size_t j = 0; j < N; ++j) {
        Vec v = A.mul(A.basis(j), psi_cols[s[n]]);
        for (std::size_t k = 0; k < N; ++k) put(k, head * N + j, sign * v[k]);
      }
    }
  });
  SparseMatrix M(rows_t * N, cols_t * N);
  for (std::size_t code = 0; code < rows_t; ++code)
    for (std::size_t k = 0; k < N; ++k)
      for (const auto& [c, v] : out[code][k]) M.set(code * N + k, c, v);
  return M;
}

// (φ·f)(a_1..a_n) = φ(f(φ^{-1}a_1, ..., φ^{-1}a_n))
Vec act_on_cochain(const TestAlgebra& A, const BarData& b, const SparseMatrix& phi, const SparseMatrix& phi_inv,
                   const Vec& f, int n) {
  const std::size_t N = b.N, m = b.m;
  std::vector<Vec> qbar(m);  // qbar[s] = letters of φ^{-1}(letter s)
  for (std::size_t s = 0; s < m; ++s) qbar[s] = b.project(phi_inv.column(b.comp[s]));
  Vec F = f;
  const std::size_t total = ipow(m, n);
  for (int p = 0; p < n; ++p) {
    Vec G = zero_vec(F.size());
    const std::size_t stride = ipow(m, n - 1 - p) * N;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t sp = (code / ipow(m, n - 1 - p)) % m;
      std::size_t base = code * N - sp * stride;
      for (std::size_t t = 0; t < m; ++t) {
        const Rational& c = qbar[sp][t];
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < N; ++j) G[code * N + j] += c * F[base + t * stride + j];
      }
    }
    F = std::move(G);
  }
  Vec out = zero_vec(F.size());
  for (std::size_t code = 0; code < total; ++code) {
    Vec x(F.begin() + static_cast<std::ptrdiff_t>(code * N), F.begin() + static_cast<std::ptrdiff_t>((code + 1) * N));
    Vec y = phi.apply(x);
    for (std::size_t k = 0; k < N; ++k) out[code * N + k] = y[k];
  }
  (void)A;
  return out;
}

void check_automorphism(const TestAlgebra& A, const SparseMatrix& psi, const std::string& what) {
  if (psi.rows() != A.n || psi.cols() != A.n) throw NotAutomorphism(what + " has the wrong shape");
  if (rank(psi) != A.n) throw NotAutomorphism(what + " is not invertible");
  if (psi.apply(A.unit) != A.unit) throw NotAutomorphism(what + " does not fix the unit");
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t j = 0; j < A.n; ++j)
      if (psi.apply(A.mult[i][j]) != A.mul(psi.column(i), psi.column(j)))
        throw NotAutomorphism(what + "(e" + std::to_string(i) + " e" + std::to_string(j) + ") != product of images");
}

}  // namespace

Vec TestAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = zero_vec(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational c = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(mult[i][j][k]) != 0) out[k] += c * mult[i][j][k];
    }
  }
  return out;
}

Vec TestAlgebra::basis(std::size_t i) const {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

SparseMatrix TestAlgebra::phi_power(int k) const {
  SparseMatrix base = k >= 0 ? phi : inverse(phi);
  SparseMatrix r = SparseMatrix::identity(n);
  for (int i = 0; i < std::abs(k); ++i) r = base * r;
  return r;
}

void TestAlgebra::validate() const {
  if (mult.size() != n || unit.size() != n) throw NotAssociative(name + ": structure constants have the wrong shape");
  for (const auto& row : mult) {
    if (row.size() != n) throw NotAssociative(name + ": structure constants have the wrong shape");
    for (const auto& v : row)
      if (v.size() != n) throw NotAssociative(name + ": structure constants have the wrong shape");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mul(unit, basis(i)) != basis(i) || mul(basis(i), unit) != basis(i))
      throw NotAssociative(name + ": unit law fails on e" + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (mul(mult[i][j], basis(k)) != mul(basis(i), mult[j][k]))
          throw NotAssociative(name + ": (e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k) +
                               " != e" + std::to_string(i) + " (e" + std::to_string(j) + " e" + std::to_string(k) + ")");
  check_automorphism(*this, phi, name + ": phi");
}

TestAlgebra TestAlgebra::change_basis(const SparseMatrix& P) const {
  SparseMatrix Pi = inverse(P);
  TestAlgebra B;
  B.name = name;
  B.n = n;
  B.mult.assign(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B.mult[i][j] = Pi.apply(mul(P.column(i), P.column(j)));
  B.unit = Pi.apply(unit);
  B.phi = Pi * phi * P;
  return B;
}

ojson TestAlgebra::to_json() const {
  ojson j;
  j["name"] = name;
  j["dim"] = n;
  j["unit"] = vec_json(unit);
  ojson m = ojson::array();
  for (std::size_t i = 0; i < n; ++i) {
    ojson row = ojson::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(vec_json(mult[i][k]));
    m.push_back(row);
  }
  j["mult"] = m;
  ojson p = ojson::array();
  for (const auto& row : phi.to_dense()) p.push_back(vec_json(row));
  j["phi"] = p;
  return j;
}

TestAlgebra TestAlgebra::from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("unit") || !j.contains("mult"))
    throw ConfigError("algebra JSON needs dim, unit, mult (and optionally phi, name)");
  TestAlgebra A;
  A.name = j.value("name", std::string("algebra"));
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) throw ConfigError("dim must be a positive integer");
  A.n = j["dim"].get<std::size_t>();
  A.unit = parse_vec(j["unit"], A.n, "unit");
  const auto& m = j["mult"];
  if (!m.is_array() || m.size() != A.n) throw ConfigError("mult must be dim x dim x dim");
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != A.n) throw ConfigError("mult must be dim x dim x dim");
    std::vector<Vec> r;
    for (const auto& v : row) r.push_back(parse_vec(v, A.n, "mult entry"));
    A.mult.push_back(std::move(r));
  }
  if (j.contains("phi")) {
    const auto& p = j["phi"];
    if (!p.is_array() || p.size() != A.n) throw ConfigError("phi must be dim x dim");
    std::vector<Vec> rows;
    for (const auto& r : p) rows.push_back(parse_vec(r, A.n, "phi row"));
    A.phi = SparseMatrix::from_dense(rows, A.n);
  } else {
    A.phi = SparseMatrix::identity(A.n);
  }
  A.validate();
  return A;
}

TestAlgebra TestAlgebra::ground_field() { return split(1, {0}); }

TestAlgebra TestAlgebra::split(std::size_t m, const std::vector<std::size_t>& perm) {
  TestAlgebra A;
  A.n = m;
  A.name = "Q^" + std::to_string(m);
  A.mult.assign(m, std::vector<Vec>(m, zero_vec(m)));
  for (std::size_t i = 0; i < m; ++i) A.mult[i][i][i] = 1;
  A.unit = Vec(m, Rational(1));
  A.phi = SparseMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) A.phi.set(perm.at(i), i, 1);
  return A;
}

TestAlgebra TestAlgebra::truncated_poly(std::size_t k, const Rational& c) {
  TestAlgebra A;
  A.n = k;
  A.name = "Q[x]/x^" + std::to_string(k);
  A.mult.assign(k, std::vector<Vec>(k, zero_vec(k)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; i + j < k; ++j) A.mult[i][j][i + j] = 1;
  A.unit = zero_vec(k);
  A.unit[0] = 1;
  A.phi = SparseMatrix(k, k);
  Rational p = 1;
  for (std::size_t i = 0; i < k; ++i) {
    A.phi.set(i, i, p);
    p *= c;
  }
  return A;
}

TestAlgebra TestAlgebra::upper_triangular(const std::vector<Vec>& g) {
  return matrix_units({{0, 0}, {0, 1}, {1, 1}}, g, "T2");
}

TestAlgebra TestAlgebra::matrix2(const std::vector<Vec>& g) {
  return matrix_units({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, g, "M2");
}

TestAlgebra TestAlgebra::kronecker(const std::vector<Vec>& g) {
  // basis e1, e2, a, b with arrows 1 -> 2: e2 a = a = a e1
  TestAlgebra A;
  A.n = 4;
  A.name = "Kronecker";
  A.mult.assign(4, std::vector<Vec>(4, zero_vec(4)));
  A.mult[0][0][0] = 1;
  A.mult[1][1][1] = 1;
  for (std::size_t arrow : {2u, 3u}) {
    A.mult[1][arrow][arrow] = 1;
    A.mult[arrow][0][arrow] = 1;
  }
  A.unit = Vec{1, 1, 0, 0};
  inverse_2x2(g);  // singular check
  A.phi = SparseMatrix(4, 4);
  A.phi.set(0, 0, 1);
  A.phi.set(1, 1, 1);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < 2; ++r)
      if (sgn(g[r][c]) != 0) A.phi.set(2 + r, 2 + c, g[r][c]);
  return A;
}

TestAlgebra TestAlgebra::wreath(const TestAlgebra& B) {
  TestAlgebra A;
  const std::size_t m = B.n;
  A.n = 2 * m;
  A.name = B.name + " wr Z/2";
  A.mult.assign(A.n, std::vector<Vec>(A.n, zero_vec(A.n)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        A.mult[i][j][k] = B.mult[i][j][k];
        A.mult[m + i][m + j][m + k] = B.mult[i][j][k];
      }
  A.unit = zero_vec(A.n);
  for (std::size_t i = 0; i < m; ++i) A.unit[i] = A.unit[m + i] = B.unit[i];
  A.phi = SparseMatrix(A.n, A.n);
  const SparseMatrix bt = B.phi.transpose();
  for (std::size_t i = 0; i < m; ++i) {
    A.phi.set(m + i, i, 1);  // (e_i, 0) -> (0, e_i)
    for (const auto& [r, v] : bt.row(i)) A.phi.set(r, m + i, v);  // (0, e_i) -> (phi_B e_i, 0)
  }
  return A;
}

SparseMatrix inverse(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw NotAutomorphism("non-square matrix has no inverse");
  const std::size_t n = m.rows();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = zero_vec(n), x;
    e[i] = 1;
    if (!solve(m, e, x)) throw NotAutomorphism("matrix is singular");
    cols.push_back(std::move(x));
  }
  return SparseMatrix::from_columns(cols, n);
}

BigradedComplex bar_complex(const TestAlgebra& A, const SparseMatrix& psi, int n_max, bool normalized) {
  BarData b = bar_data(A, normalized);
  BigradedComplex c;
  c.truncated = true;
  for (int n = 0; n <= n_max + 1; ++n) {
    std::size_t d = ipow(b.m, n) * b.N;
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) labels[i] = "c" + std::to_string(n) + "_" + std::to_string(i);
    c.set_block(n, 0, std::move(labels));
  }
  for (int n = 0; n <= n_max; ++n) {
    SparseMatrix M = hochschild_d(A, psi, b, n);
    if (!M.is_zero()) c.diff[{n, 0}] = QMatrix(std::move(M));
  }
  return c;
}

HHAlgebra hh_algebra(const TestAlgebra& A, const SparseMatrix& psi, int n_max, bool normalized) {
  A.validate();
  check_automorphism(A, psi, "psi");
  if (A.phi * psi != psi * A.phi) throw NotAutomorphism("psi does not commute with phi");
  BarData b = bar_data(A, normalized);
  BigradedComplex c = bar_complex(A, psi, n_max, normalized);
  SparseMatrix phi_inv = inverse(A.phi);
  HHAlgebra h;
  h.dims.resize(n_max + 1);
  h.reps.resize(n_max + 1);
  h.phi_action.resize(n_max + 1);
  h.invariants.resize(n_max + 1);
  h.coinvariants.resize(n_max + 1);
  parallel_for(static_cast<std::size_t>(n_max + 1), [&](std::size_t nn) {
    int n = static_cast<int>(nn);
    auto coh = cohomology(c, n, 0);
    h.dims[n] = coh.dim;
    h.reps[n] = coh.reps;
    std::vector<Vec> cols;
    for (const auto& r : coh.reps) cols.push_back(class_coordinates(c, n, 0, act_on_cochain(A, b, A.phi, phi_inv, r, n)));
    SparseMatrix P = SparseMatrix::from_columns(cols, coh.dim);
    h.phi_action[n] = P;
    std::size_t r = coh.dim == 0 ? 0 : rank(P - SparseMatrix::identity(coh.dim));
    h.invariants[n] = coh.dim - r;
    h.coinvariants[n] = coh.dim - r;
  });
  return h;
}

std::size_t twisted_center_dim(const TestAlgebra& A, const SparseMatrix& psi) {
  // unknown m; equations a m - m psi(a) = 0 for a = e_i
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < A.n; ++i) {
    Vec pa = psi.column(i);
    for (std::size_t k = 0; k < A.n; ++k) {
      Vec row = zero_vec(A.n);
      for (std::size_t j = 0; j < A.n; ++j) row[j] = A.mult[i][j][k] - A.mul(A.basis(j), pa)[k];
      rows.push_back(std::move(row));
    }
  }
  return nullity(rows, A.n);
}

std::size_t center_dim(const TestAlgebra& A) { return twisted_center_dim(A, SparseMatrix::identity(A.n)); }

std::size_t outer_derivation_dim(const TestAlgebra& A) {
  // unknowns D(e_j)_k at index j*n + k; D(e_i e_j) = D(e_i) e_j + e_i D(e_j)
  const std::size_t n = A.n;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec row = zero_vec(n * n);
        for (std::size_t l = 0; l < n; ++l) row[l * n + k] += A.mult[i][j][l];  // D(e_i e_j)
        for (std::size_t l = 0; l < n; ++l) {
          row[i * n + l] -= A.mult[l][j][k];  // D(e_i)_l e_l e_j
          row[j * n + l] -= A.mult[i][l][k];  // e_i D(e_j)_l e_l
        }
        rows.push_back(std::move(row));
      }
  std::size_t der = nullity(rows, n * n);
  std::size_t inn = n - center_dim(A);
  return der - inn;
}

HHTable mapping_torus_hh(const TestAlgebra& A, const SparseMatrix& psi, int degree_max, bool deformed, int K) {
  HHAlgebra h = hh_algebra(A, psi, degree_max);
  HHTable t;
  t.params["table"] = "mapping_torus";
  t.params["algebra"] = A.name;
  t.params["degree_max"] = degree_max;
  t.params["deformed"] = deformed;
  t.params["K"] = deformed ? K : 1;
  t.params["coefficients"] = deformed ? "free rank over Q[q]/q^K" : "dimension over Q";
  auto inv = [&](int n) -> std::size_t { return n >= 0 ? h.invariants[n] : 0; };
  auto coinv = [&](int n) -> std::size_t { return n >= 0 ? h.coinvariants[n] : 0; };
  for (int n = 0; n <= degree_max; ++n) {
    HHEntry e;
    e.deg = n;
    e.wt = 0;
    auto push = [&](std::size_t count, const std::string& label) {
      for (std::size_t i = 0; i < count; ++i) e.basis.push_back(label + "#" + std::to_string(i));
    };
    push(inv(n), "HH^" + std::to_string(n) + "(A)^phi");
    push(inv(n - 1), "gamma_O*HH^" + std::to_string(n - 1) + "(A)^phi");
    push(coinv(n - 1), "gamma_2*HH^" + std::to_string(n - 1) + "(A)_phi");
    push(coinv(n - 2), "gamma_O*gamma_2*HH^" + std::to_string(n - 2) + "(A)_phi");
    e.dim = e.basis.size();
    t.entries.push_back(std::move(e));
  }
  return t;
}

std::vector<std::size_t> mapping_torus_cocone_dims(const HHAlgebra& h, int degree_max) {
  BigradedComplex E;
  std::vector<std::size_t> off;
  auto hdim = [&](int n) -> std::size_t { return n >= 0 && n < static_cast<int>(h.dims.size()) ? h.dims[n] : 0; };
  for (int n = 0; n <= degree_max; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < hdim(n); ++i) labels.push_back("HH" + std::to_string(n) + "_" + std::to_string(i));
    for (std::size_t i = 0; i < hdim(n - 1); ++i) labels.push_back("gO*HH" + std::to_string(n - 1) + "_" + std::to_string(i));
    if (!labels.empty()) E.set_block(n, 0, std::move(labels));
  }
  ChainMap f{&E, &E, {}};
  for (int n = 0; n <= degree_max; ++n) {
    std::size_t d = E.dim(n, 0);
    if (d == 0) continue;
    SparseMatrix T(d, d);
    if (hdim(n)) T.place(h.phi_action[n], 0, 0);
    if (n >= 1 && hdim(n - 1)) T.place(h.phi_action[n - 1], hdim(n), hdim(n));
    f.comp[{n, 0}] = QMatrix(T - SparseMatrix::identity(d));
  }
  BigradedComplex cone = cocone(f);
  std::vector<std::size_t> dims;
  for (int n = 0; n <= degree_max; ++n) dims.push_back(cohomology(cone, n, 0).dim);
  return dims;
}

GrowthTable growth_table(const TestAlgebra& A, int k_max, int degree_max) {
  GrowthTable g;
  g.algebra = A.name;
  g.degree_max = degree_max;
  g.rows.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    HHTable t = mapping_torus_hh(A, A.phi_power(k), degree_max);
    for (int n = 0; n <= degree_max; ++n) g.rows[k].push_back(t.dim(n, 0));
  }
  return g;
}

ojson GrowthTable::to_json() const {
  ojson j;
  j["table"] = "growth";
  j["algebra"] = algebra;
  j["degree_max"] = degree_max;
  ojson rs = ojson::array();
  for (std::size_t k = 0; k < rows.size(); ++k) rs.push_back({{"k", k}, {"dims", rows[k]}});
  j["rows"] = rs;
  return j;
}

std::string GrowthTable::to_csv() const {
  std::ostringstream os;
  os << "k";
  for (int n = 0; n <= degree_max; ++n) os << ",HH" << n;
  os << "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << k;
    for (auto d : rows[k]) os << "," << d;
    os << "\n";
  }
  return os.str();
}

namespace {

std::size_t invariant_center_dim(const TestAlgebra& A) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < A.n; ++i)
    for (std::size_t k = 0; k < A.n; ++k) {
      Vec row = zero_vec(A.n);
      for (std::size_t j = 0; j < A.n; ++j) row[j] = A.mult[i][j][k] - A.mult[j][i][k];
      rows.push_back(std::move(row));
    }
  SparseMatrix P = A.phi - SparseMatrix::identity(A.n);
  for (const auto& r : P.to_dense()) rows.push_back(r);
  return nullity(rows, A.n);
}

std::vector<Vec> random_invertible(std::mt19937_64& rng, bool upper) {
  std::uniform_int_distribution<int> d(-2, 2);
  while (true) {
    std::vector<Vec> g{{d(rng), d(rng)}, {upper ? 0 : d(rng), d(rng)}};
    if (sgn(g[0][0] * g[1][1] - g[0][1] * g[1][0]) != 0) return g;
  }
}

TestAlgebra random_base(std::mt19937_64& rng, int family) {
  std::uniform_int_distribution<int> coin(0, 5);
  switch (family) {
    case 0: {
      std::size_t m = 1 + rng() % 4;
      std::vector<std::size_t> perm(m);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      return TestAlgebra::split(m, perm);
    }
    case 1: {
      static const Rational cs[] = {Rational(2), Rational(-1), Rational(3), Rational(1, 2), Rational(1), Rational(-2)};
      return TestAlgebra::truncated_poly(2 + rng() % 2, cs[coin(rng)]);
    }
    case 2: return TestAlgebra::upper_triangular(random_invertible(rng, true));
    case 3: return TestAlgebra::matrix2(random_invertible(rng, false));
    case 4: return TestAlgebra::kronecker(random_invertible(rng, false));
    default: {
      int sub = static_cast<int>(rng() % 3);
      if (sub == 0) return TestAlgebra::wreath(TestAlgebra::ground_field());
      if (sub == 1) return TestAlgebra::wreath(TestAlgebra::truncated_poly(2, Rational(coin(rng) % 2 == 0 ? 2 : -1)));
      return TestAlgebra::wreath(TestAlgebra::split(2, {1, 0}));
    }
  }
}

SparseMatrix random_basis_change(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  SparseMatrix L = SparseMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < r; ++c) L.set(r, c, d(rng));
  SparseMatrix P(n, n);
  for (std::size_t i = 0; i < n; ++i) P.set(perm[i], i, 1);
  return P * L;
}

}  // namespace

AlgebraBatch random_test_algebras(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgebraBatch out;
  while (out.algebras.size() < count) {
    int family = static_cast<int>(rng() % 6);
    TestAlgebra B = random_base(rng, family);
    TestAlgebra A = B.change_basis(random_basis_change(rng, B.n));
    A.validate();
    if (invariant_center_dim(A) != 1) {
      ++out.discarded;
      continue;
    }
    A.name = B.name + "#" + std::to_string(out.algebras.size());
    out.algebras.push_back(std::move(A));
  }
  return out;
}

// ---- smash-product chunk ----

ObjectPtr TorusChunk::shifted(std::size_t obj, int g) const { return g == 0 ? objects[obj] : translate(objects[obj], g); }

std::vector<int> TorusChunk::extra_degrees(std::size_t b1, std::size_t b2) const {
  int d = objects[b2]->component - objects[b1]->component;
  return {d - 1, d, d + 1};
}

TorusChunk build_torus_chunk(const TestAlgebra& A, int lo, int hi, int depth) {
  if (hi < lo || hi - lo + 1 > 4) throw OutOfWindow("torus chunk window must hold 1..4 components");
  A.validate();
  TorusChunk ch;
  ch.A = A;
  ch.lo = lo;
  ch.hi = hi;
  ch.depth = depth;
  for (int i = lo; i <= hi; ++i)
    for (int a : {-1, 0}) ch.objects.push_back(build_resolution(i, a, depth));
  return ch;
}

void ChunkMorphism::add(const ChunkKey& k, const Vec& x) {
  if (torushh::is_zero(x)) return;
  auto [it, fresh] = coeffs.emplace(k, x);
  if (!fresh) {
    for (std::size_t i = 0; i < x.size(); ++i) it->second[i] += x[i];
    if (torushh::is_zero(it->second)) coeffs.erase(it);
  }
}

ChunkMorphism chunk_plus(const ChunkMorphism& a, const ChunkMorphism& b, const Rational& s) {
  ChunkMorphism out = a;
  for (const auto& [k, x] : b.coeffs) {
    Vec y = x;
    for (auto& v : y) v *= s;
    out.add(k, y);
  }
  return out;
}

ChunkMorphism chunk_identity(const TorusChunk& ch, std::size_t obj) {
  ChunkMorphism id{obj, obj, 0, {}};
  for (std::size_t a = 0; a < ch.objects[obj]->cells.size(); ++a) id.add(ChunkKey{0, a, a, Monomial{}}, ch.A.unit);
  return id;
}

ChunkMorphism chunk_compose(const TorusChunk& ch, const ChunkMorphism& h, const ChunkMorphism& f) {
  if (h.src != f.dst) throw std::invalid_argument("chunk_compose: morphisms are not composable");
  ChunkMorphism out{f.src, h.dst, f.deg + h.deg, {}};
  std::map<int, SparseMatrix> phis;
  auto phi_g = [&](int g) -> const SparseMatrix& {
    auto it = phis.find(g);
    if (it == phis.end()) it = phis.emplace(g, ch.A.phi_power(g)).first;
    return it->second;
  };
  for (const auto& [kf, x] : f.coeffs) {
    ObjectPtr fsrc = ch.shifted(f.src, kf.g);
    for (const auto& [kh, y] : h.coeffs) {
      if (kh.a != kf.b) continue;
      int gp = kh.g;
      ObjectPtr res_src = ch.shifted(f.src, kf.g + gp);
      RingElement fm = translate(RingElement(fsrc->cells[kf.a].chart, kf.m), -gp);
      RingElement hm(ch.shifted(h.src, gp)->cells[kh.a].chart, kh.m);
      RingElement prod = restrict_to(hm, res_src->cells[kf.a].chart) * fm;
      Vec xa = ch.A.mul(y, phi_g(gp).apply(x));
      for (const auto& [m, c] : prod.terms()) {
        Vec v = xa;
        for (auto& e : v) e *= c;
        out.add(ChunkKey{kf.g + gp, kf.a, kh.b, m}, v);
      }
    }
  }
  return out;
}

ChunkMorphism chunk_d(const TorusChunk& ch, const ChunkMorphism& f) {
  ChunkMorphism out{f.src, f.dst, f.deg + 1, {}};
  std::map<std::pair<int, std::size_t>, HomElement> parts;
  for (const auto& [k, x] : f.coeffs) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(x[j]) == 0) continue;
      auto key = std::pair{k.g, j};
      auto it = parts.find(key);
      if (it == parts.end())
        it = parts.emplace(key, HomElement{ch.shifted(f.src, k.g), ch.objects[f.dst], f.deg, {}}).first;
      it->second.add(k.a, k.b, RingElement(it->second.src->cells[k.a].chart, k.m, x[j]));
    }
  }
  for (const auto& [key, e] : parts) {
    HomElement de = hom_d(e);
    for (const auto& [cp, fn] : de.entries)
      for (const auto& [m, c] : fn.terms()) {
        Vec v = zero_vec(ch.A.n);
        v[key.second] = c;
        out.add(ChunkKey{key.first, cp.first, cp.second, m}, v);
      }
  }
  return out;
}

ChunkMorphism random_chunk_morphism(const TorusChunk& ch, std::size_t src, std::size_t dst, int deg, int wt,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  ChunkMorphism out{src, dst, deg, {}};
  for (int g : ch.extra_degrees(src, dst)) {
    TateHomComplex h = hom_complex(ch.shifted(src, g), ch.objects[dst], Window{deg, deg, wt, wt});
    auto it = h.basis.find({deg, wt});
    if (it == h.basis.end()) continue;
    for (const auto& be : it->second) {
      int c = d(rng);
      if (c == 0) continue;
      Vec x(ch.A.n);
      for (auto& v : x) v = d(rng) * c;
      out.add(ChunkKey{g, be.a, be.b, be.gen}, x);
    }
  }
  return out;
}

ChunkMorphism gamma2(const ChunkMorphism& f) {
  ChunkMorphism out{f.src, f.dst, f.deg, {}};
  for (const auto& [k, x] : f.coeffs) {
    if (k.g == 0) continue;
    Vec y = x;
    for (auto& v : y) v *= k.g;
    out.add(k, y);
  }
  return out;
}

void verify_gamma2_closed(const TorusChunk& ch, const std::vector<std::pair<ChunkMorphism, ChunkMorphism>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [h, f] = pairs[i];
    ChunkMorphism lhs = gamma2(chunk_compose(ch, h, f));
    ChunkMorphism rhs = chunk_plus(chunk_compose(ch, gamma2(h), f), chunk_compose(ch, h, gamma2(f)));
    if (!(lhs == rhs)) throw NotClosed("gamma_2 fails the derivation rule on pair " + std::to_string(i));
    for (const ChunkMorphism* x : {&h, &f})
      if (!(chunk_d(ch, gamma2(*x)) == gamma2(chunk_d(ch, *x))))
        throw NotClosed("gamma_2 does not commute with d on pair " + std::to_string(i));
  }
}

std::size_t chunk_hom_dim(const TorusChunk& ch, std::size_t src, std::size_t dst, int deg, int weight_band) {
  std::size_t total = 0;
  for (int g : ch.extra_degrees(src, dst)) {
    ObjectPtr s = ch.shifted(src, g);
    if (std::abs(s->component - ch.objects[dst]->component) >= 2) continue;
    total += rhom(s, ch.objects[dst], std::max(deg, 0), weight_band).dims[deg];
  }
  return total * ch.A.n;
}

GammaReport gamma_classes(const TestAlgebra& A) {
  HHAlgebra h = hh_algebra(A, SparseMatrix::identity(A.n), 1);
  if (h.invariants[1] != 0) throw std::invalid_argument("gamma_classes needs HH^1(A)^phi = 0");
  BigradedComplex bar = bar_complex(A, SparseMatrix::identity(A.n), 1);
  Vec unit_class = class_coordinates(bar, 0, 0, A.unit);
  const std::size_t d0 = h.dims[0], d1 = h.dims[1];
  // E^0 = HH^0, E^1 = HH^1 ⊕ γ_O·HH^0, with T = φ_* on each summand
  BigradedComplex E;
  std::vector<std::string> l0, l1;
  for (std::size_t i = 0; i < d0; ++i) l0.push_back("HH0_" + std::to_string(i));
  for (std::size_t i = 0; i < d1; ++i) l1.push_back("HH1_" + std::to_string(i));
  for (std::size_t i = 0; i < d0; ++i) l1.push_back("gO*HH0_" + std::to_string(i));
  E.set_block(0, 0, l0);
  E.set_block(1, 0, l1);
  ChainMap f{&E, &E, {}};
  f.comp[{0, 0}] = QMatrix(h.phi_action[0] - SparseMatrix::identity(d0));
  SparseMatrix T1(d1 + d0, d1 + d0);
  if (d1) T1.place(h.phi_action[1], 0, 0);
  T1.place(h.phi_action[0], d1, d1);
  f.comp[{1, 0}] = QMatrix(T1 - SparseMatrix::identity(d1 + d0));
  BigradedComplex cone = cocone(f);
  // cocone^1 = E^1 ⊕ E^0
  Vec gphi = zero_vec(d1 + d0 + d0), g2 = zero_vec(d1 + d0 + d0);
  for (std::size_t i = 0; i < d0; ++i) {
    gphi[d1 + i] = unit_class[i];
    g2[d1 + d0 + i] = unit_class[i];
  }
  GammaReport r;
  r.hh1_dim = cohomology(cone, 1, 0).dim;
  r.gamma_phi = class_coordinates(cone, 1, 0, gphi);
  r.gamma2 = class_coordinates(cone, 1, 0, g2);
  r.span_rank = rank(SparseMatrix::from_columns({r.gamma_phi, r.gamma2}, r.hh1_dim));
  // projection to E^1 (zero differential): the class is the E^1 component itself
  r.gamma2_projection_zero = is_zero(Vec(g2.begin(), g2.begin() + static_cast<std::ptrdiff_t>(d1 + d0)));
  r.gamma_phi_projection_nonzero = !is_zero(Vec(gphi.begin(), gphi.begin() + static_cast<std::ptrdiff_t>(d1 + d0)));
  return r;
}

ojson GammaReport::to_json() const {
  ojson j;
  j["hh1_dim"] = hh1_dim;
  j["span_rank"] = span_rank;
  j["gamma2_projection_zero"] = gamma2_projection_zero;
  j["gamma_phi_projection_nonzero"] = gamma_phi_projection_nonzero;
  j["gamma_phi"] = vec_json(gamma_phi);
  j["gamma_2"] = vec_json(gamma2);
  return j;
}

}  // namespace torushh
