#include "torushh/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "torushh/errors.hpp"

namespace torushh {

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(SparseMatrix m0) : rows(m0.rows()), cols(m0.cols()) {
  if (!m0.is_zero()) coeff.push_back(std::move(m0));
}

SparseMatrix QMatrix::at(std::size_t k) const {
  if (k < coeff.size()) return coeff[k];
  return SparseMatrix(rows, cols);
}

void QMatrix::add(std::size_t r, std::size_t c, const QPoly& v) {
  for (int k = 0; k <= v.degree(); ++k) {
    if (sgn(v.coeff(k)) == 0) continue;
    while (coeff.size() <= static_cast<std::size_t>(k)) coeff.emplace_back(rows, cols);
    coeff[k].add(r, c, v.coeff(k));
  }
}

QPoly QMatrix::get(std::size_t r, std::size_t c) const {
  std::vector<Rational> v(coeff.size());
  for (std::size_t k = 0; k < coeff.size(); ++k) v[k] = coeff[k].get(r, c);
  return QPoly(std::move(v));
}

bool QMatrix::is_zero() const {
  for (const auto& m : coeff)
    if (!m.is_zero()) return false;
  return true;
}

int QMatrix::max_power() const {
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k)
    if (!coeff[k].is_zero()) return k;
  return -1;
}

QMatrix QMatrix::mul(const QMatrix& o, int K) const {
  if (cols != o.rows) throw std::invalid_argument("QMatrix: shape mismatch");
  QMatrix p(rows, o.cols);
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (coeff[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeff.size() && static_cast<int>(i + j) < K; ++j) {
      if (o.coeff[j].is_zero()) continue;
      while (p.coeff.size() <= i + j) p.coeff.emplace_back(rows, o.cols);
      p.coeff[i + j] = p.coeff[i + j] + coeff[i] * o.coeff[j];
    }
  }
  p.normalize();
  return p;
}

QMatrix QMatrix::plus(const QMatrix& o) const {
  if (rows != o.rows || cols != o.cols) throw std::invalid_argument("QMatrix: shape mismatch in sum");
  QMatrix s(rows, cols);
  std::size_t n = std::max(coeff.size(), o.coeff.size());
  for (std::size_t k = 0; k < n; ++k) s.coeff.push_back(at(k) + o.at(k));
  s.normalize();
  return s;
}

QMatrix QMatrix::scaled(const Rational& x) const {
  QMatrix s(rows, cols);
  for (const auto& m : coeff) s.coeff.push_back(m.scaled(x));
  s.normalize();
  return s;
}

QMatrix QMatrix::shifted(int k) const {
  QMatrix s(rows, cols);
  for (int i = 0; i < k; ++i) s.coeff.emplace_back(rows, cols);
  for (const auto& m : coeff) s.coeff.push_back(m);
  s.normalize();
  return s;
}

QMatrix QMatrix::truncated(int K) const {
  QMatrix s = *this;
  if (static_cast<int>(s.coeff.size()) > K) s.coeff.resize(std::max(K, 0));
  s.normalize();
  return s;
}

void QMatrix::place(const QMatrix& block, std::size_t r0, std::size_t c0, const Rational& s) {
  for (std::size_t k = 0; k < block.coeff.size(); ++k) {
    if (block.coeff[k].is_zero()) continue;
    while (coeff.size() <= k) coeff.emplace_back(rows, cols);
    coeff[k].place(block.coeff[k], r0, c0, s);
  }
}

PolyMatrix QMatrix::to_poly() const {
  PolyMatrix p(rows, cols);
  for (std::size_t k = 0; k < coeff.size(); ++k)
    for (std::size_t r = 0; r < rows; ++r)
      for (const auto& [c, v] : coeff[k].row(r)) p(r, c) += QPoly::monomial(v, static_cast<int>(k));
  return p;
}

bool QMatrix::equals(const QMatrix& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  std::size_t n = std::max(coeff.size(), o.coeff.size());
  for (std::size_t k = 0; k < n; ++k)
    if (at(k) != o.at(k)) return false;
  return true;
}

void QMatrix::normalize() {
  while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
}

// ---------------------------------------------------------- BigradedComplex

namespace {
const std::vector<std::string> kNoLabels;
}

std::size_t BigradedComplex::dim(int deg, int wt) const {
  auto it = blocks.find({deg, wt});
  return it == blocks.end() ? 0 : it->second.size();
}

const std::vector<std::string>& BigradedComplex::labels(int deg, int wt) const {
  auto it = blocks.find({deg, wt});
  return it == blocks.end() ? kNoLabels : it->second;
}

void BigradedComplex::set_block(int deg, int wt, std::vector<std::string> l) { blocks[{deg, wt}] = std::move(l); }

QMatrix BigradedComplex::d(int deg, int wt) const {
  auto it = diff.find({deg, wt});
  if (it != diff.end()) return it->second;
  return QMatrix(dim(deg + 1, wt), dim(deg, wt));
}

QMatrix BigradedComplex::curv(int deg, int wt) const {
  auto it = curvature.find({deg, wt});
  if (it != curvature.end()) return it->second;
  return QMatrix(dim(deg + 2, wt), dim(deg, wt));
}

std::vector<int> BigradedComplex::weights() const {
  std::set<int> s;
  for (const auto& [k, v] : blocks) s.insert(k.second);
  return {s.begin(), s.end()};
}

std::vector<int> BigradedComplex::degrees() const {
  std::set<int> s;
  for (const auto& [k, v] : blocks) s.insert(k.first);
  return {s.begin(), s.end()};
}

std::optional<Bidegree> BigradedComplex::check_curvature() const {
  for (const auto& [bd, lab] : blocks) {
    auto [deg, wt] = bd;
    if (dim(deg + 2, wt) == 0 || lab.empty()) continue;
    QMatrix dd = d(deg + 1, wt).mul(d(deg, wt), K);
    QMatrix qc = curv(deg, wt).shifted(1).truncated(K);
    if (!dd.equals(qc)) return bd;
  }
  return std::nullopt;
}

// -------------------------------------------------------------- cohomology

namespace {

// Q-linear expansion of a Q[q]/(q^{L+1}) matrix; index j*n + i for e_i q^j.
SparseMatrix expand(const QMatrix& m, int L) {
  std::size_t n = static_cast<std::size_t>(L) + 1;
  SparseMatrix e(m.rows * n, m.cols * n);
  for (std::size_t k = 0; k < m.coeff.size() && static_cast<int>(k) <= L; ++k)
    for (std::size_t r = 0; r < m.rows; ++r)
      for (const auto& [c, v] : m.coeff[k].row(r))
        for (std::size_t j = 0; j + k < n; ++j) e.set((j + k) * m.rows + r, j * m.cols + c, v);
  return e;
}

struct Level {
  SparseMatrix prev, cur;
};

Level level_maps(const BigradedComplex& c, int deg, int wt, int q_level) {
  if (q_level < 0) throw std::invalid_argument("cohomology: negative q level");
  Level l{expand(c.d(deg - 1, wt), q_level), expand(c.d(deg, wt), q_level)};
  if (l.prev.cols() > 0 && l.cur.rows() > 0 && !(l.cur * l.prev).is_zero())
    throw CurvedComplex("d∘d does not vanish at q-order " + std::to_string(q_level) + " in degree " +
                        std::to_string(deg) + ", weight " + std::to_string(wt));
  return l;
}

struct RepData {
  std::vector<Vec> image;  // image basis
  std::vector<Vec> reps;
};

RepData rep_data(const Level& l) {
  RepData out;
  std::vector<Vec> ker = kernel(l.cur);
  for (auto col : image_pivot_columns(l.prev)) out.image.push_back(l.prev.column(col));
  std::vector<Vec> cols = out.image;
  cols.insert(cols.end(), ker.begin(), ker.end());
  std::size_t n = l.cur.cols();
  for (auto pc : image_pivot_columns(SparseMatrix::from_columns(cols, n)))
    if (pc >= out.image.size()) out.reps.push_back(ker[pc - out.image.size()]);
  return out;
}

}  // namespace

CohomologyResult cohomology(const BigradedComplex& c, int deg, int wt, int q_level) {
  Level l = level_maps(c, deg, wt, q_level);
  RepData rd = rep_data(l);
  CohomologyResult r;
  r.dim = rd.reps.size();
  r.reps = std::move(rd.reps);
  return r;
}

Vec expand_vector(const std::vector<QPoly>& v, int q_level) {
  Vec out(v.size() * (q_level + 1));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int j = 0; j <= q_level; ++j) out[j * v.size() + i] = v[i].coeff(j);
  return out;
}

Vec class_coordinates(const BigradedComplex& c, int deg, int wt, const Vec& z, int q_level) {
  Level l = level_maps(c, deg, wt, q_level);
  if (!is_zero(l.cur.apply(z))) throw NotClosed("class_coordinates: vector is not a cocycle");
  RepData rd = rep_data(l);
  std::vector<Vec> cols = rd.image;
  cols.insert(cols.end(), rd.reps.begin(), rd.reps.end());
  Vec x;
  if (!solve(SparseMatrix::from_columns(cols, z.size()), z, x))
    throw std::logic_error("class_coordinates: cocycle outside span of image and representatives");
  return Vec(x.begin() + static_cast<std::ptrdiff_t>(rd.image.size()), x.end());
}

RingCohomology ring_cohomology(const BigradedComplex& c, int deg, int wt) {
  RingCohomology out;
  std::size_t n = c.dim(deg, wt);
  if (n == 0) return out;
  PolyMatrix A = c.d(deg, wt).to_poly();
  PolyMatrix B = c.d(deg - 1, wt).to_poly();
  if (A.rows > 0 && B.cols > 0 && !(A * B).is_zero())
    throw CurvedComplex("ring_cohomology: d∘d != 0 over Q[q] in degree " + std::to_string(deg));
  ColumnReduction cr = column_reduce(A);
  std::size_t r = cr.rank, k = n - r;
  PolyMatrix coords = cr.Vinv * B;
  PolyMatrix Bk(k, B.cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) {
      if (i < r) {
        if (!coords(i, j).is_zero()) throw std::logic_error("ring_cohomology: image not inside kernel");
      } else {
        Bk(i - r, j) = coords(i, j);
      }
    }
  PolyMatrix Kb(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) Kb(i, j) = cr.V(i, r + j);
  SmithForm sf = smith(Bk);
  PolyMatrix G = Kb * sf.Uinv;
  auto column = [&](std::size_t j) {
    std::vector<QPoly> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = G(i, j);
    // fix the sign: first nonzero entry has positive leading coefficient
    for (const auto& x : v)
      if (!x.is_zero()) {
        if (sgn(x.lead()) < 0)
          for (auto& y : v) y = -y;
        break;
      }
    return v;
  };
  for (std::size_t j = 0; j < k; ++j) {
    if (j < sf.diag.size()) {
      if (sf.diag[j].is_unit()) continue;
      out.torsion.push_back(sf.diag[j]);
      out.torsion_valuations.push_back(sf.diag[j].valuation());
      out.torsion_generators.push_back(column(j));
    } else {
      out.free_generators.push_back(column(j));
    }
  }
  out.free_rank = out.free_generators.size();
  return out;
}

// -------------------------------------------------------------- cocone

QMatrix ChainMap::at(int deg, int wt) const {
  auto it = comp.find({deg, wt});
  if (it != comp.end()) return it->second;
  return QMatrix(dst->dim(deg, wt), src->dim(deg, wt));
}

BigradedComplex cocone(const ChainMap& f) {
  const BigradedComplex& C = *f.src;
  const BigradedComplex& D = *f.dst;
  BigradedComplex out;
  out.K = std::max(C.K, D.K);
  out.truncated = C.truncated || D.truncated;

  for (const auto& [bd, m] : f.comp) {
    if (m.rows != D.dim(bd.first, bd.second) || m.cols != C.dim(bd.first, bd.second))
      throw NotChainMap("chain map component has wrong shape at degree " + std::to_string(bd.first));
  }
  std::set<Bidegree> keys;
  for (const auto& [bd, l] : C.blocks) keys.insert(bd);
  for (const auto& [bd, l] : D.blocks) keys.insert({bd.first + 1, bd.second});
  // f_{n+1} dC_n == dD_n f_n
  for (const auto& [bd, l] : C.blocks) {
    auto [n, w] = bd;
    QMatrix lhs = f.at(n + 1, w).mul(C.d(n, w), out.K);
    QMatrix rhs = D.d(n, w).mul(f.at(n, w), out.K);
    if (!lhs.equals(rhs))
      throw NotChainMap("f does not commute with d at degree " + std::to_string(n) + ", weight " + std::to_string(w));
  }
  for (const auto& [n, w] : keys) {
    std::vector<std::string> lab;
    for (const auto& s : C.labels(n, w)) lab.push_back("C:" + s);
    for (const auto& s : D.labels(n - 1, w)) lab.push_back("D:" + s);
    out.set_block(n, w, std::move(lab));
  }
  for (const auto& [n, w] : keys) {
    std::size_t cs = C.dim(n, w), ds = D.dim(n - 1, w);
    std::size_t ct = C.dim(n + 1, w), dt = D.dim(n, w);
    if (ct + dt == 0) continue;
    QMatrix m(ct + dt, cs + ds);
    m.place(C.d(n, w), 0, 0);
    m.place(f.at(n, w), ct, 0);
    m.place(D.d(n - 1, w), ct, cs, -1);
    m.normalize();
    if (!m.is_zero()) out.diff[{n, w}] = std::move(m);
    if (!C.curvature.empty() || !D.curvature.empty()) {
      std::size_t c2 = C.dim(n + 2, w), d2 = D.dim(n + 1, w);
      QMatrix cv(c2 + d2, cs + ds);
      cv.place(C.curv(n, w), 0, 0);
      cv.place(D.curv(n - 1, w), c2, cs);
      cv.normalize();
      if (!cv.is_zero()) out.curvature[{n, w}] = std::move(cv);
    }
  }
  return out;
}

// ---------------------------------------------------------- hom / tensor

namespace {

struct Range {
  int lo, hi;
};

Range deg_range(const BigradedComplex& c) {
  auto d = c.degrees();
  if (d.empty()) return {0, -1};
  return {d.front(), d.back()};
}

Range wt_range(const BigradedComplex& c) {
  auto w = c.weights();
  if (w.empty()) return {0, -1};
  return {w.front(), w.back()};
}

}  // namespace

BigradedComplex hom_complex(const BigradedComplex& C, const BigradedComplex& D, std::optional<Window> window) {
  if ((C.truncated || D.truncated) && !window)
    throw WindowRequired("hom_complex: truncated input needs an explicit (degree, weight) window");
  BigradedComplex out;
  out.K = std::max(C.K, D.K);
  out.truncated = C.truncated || D.truncated;
  Range cd = deg_range(C), dd = deg_range(D), cw = wt_range(C), dw = wt_range(D);
  Window win = window ? *window : Window{dd.lo - cd.hi, dd.hi - cd.lo, dw.lo - cw.hi, dw.hi - cw.lo};
  // one extra degree on each side so cohomology inside the window is exact
  int nlo = win.deg_lo - 1, nhi = win.deg_hi + 1;

  // offsets[(n,w)][(p,v)] = start index of Hom(C^{p,v}, D^{p+n,v+w})
  std::map<Bidegree, std::map<Bidegree, std::size_t>> offsets;
  for (int n = nlo; n <= nhi; ++n)
    for (int w = win.wt_lo; w <= win.wt_hi; ++w) {
      std::vector<std::string> lab;
      auto& off = offsets[{n, w}];
      for (const auto& [pv, cl] : C.blocks) {
        auto [p, v] = pv;
        const auto& dl = D.labels(p + n, v + w);
        if (cl.empty() || dl.empty()) continue;
        off[pv] = lab.size();
        for (const auto& a : dl)
          for (const auto& b : cl) lab.push_back("[" + b + "->" + a + "]");
      }
      if (!lab.empty()) out.set_block(n, w, std::move(lab));
    }

  auto index = [&](int n, int w, Bidegree pv, std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    auto it = offsets.find({n, w});
    if (it == offsets.end()) return std::nullopt;
    auto jt = it->second.find(pv);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second + a * C.dim(pv.first, pv.second) + b;
  };

  bool curved = !C.curvature.empty() || !D.curvature.empty();
  for (int n = nlo; n < nhi; ++n)
    for (int w = win.wt_lo; w <= win.wt_hi; ++w) {
      std::size_t src = out.dim(n, w), dst = out.dim(n + 1, w);
      if (src == 0) continue;
      QMatrix m(dst, src);
      QMatrix cv(out.dim(n + 2, w), src);
      Rational sign = (n % 2 == 0) ? 1 : -1;
      for (const auto& [pv, off] : offsets[{n, w}]) {
        auto [p, v] = pv;
        std::size_t nc = C.dim(p, v), nd = D.dim(p + n, v + w);
        QMatrix dD = D.d(p + n, v + w);       // D^{p+n} -> D^{p+n+1}
        QMatrix dC = C.d(p - 1, v);           // C^{p-1} -> C^p
        QMatrix cD = D.curv(p + n, v + w);    // D^{p+n} -> D^{p+n+2}
        QMatrix cC = C.curv(p - 2, v);        // C^{p-2} -> C^p
        for (std::size_t a = 0; a < nd; ++a)
          for (std::size_t b = 0; b < nc; ++b) {
            std::size_t col = off + a * nc + b;
            // d∘E_ab : C^p -> D^{p+n+1}
            for (std::size_t a2 = 0; a2 < dD.rows; ++a2) {
              QPoly x = dD.get(a2, a);
              if (x.is_zero()) continue;
              if (auto row = index(n + 1, w, pv, a2, b)) m.add(*row, col, x);
            }
            // E_ab∘d : C^{p-1} -> D^{p+n}
            for (std::size_t b2 = 0; b2 < dC.cols; ++b2) {
              QPoly x = dC.get(b, b2);
              if (x.is_zero()) continue;
              if (auto row = index(n + 1, w, {p - 1, v}, a, b2)) m.add(*row, col, QPoly(-sign) * x);
            }
            if (!curved) continue;
            for (std::size_t a2 = 0; a2 < cD.rows; ++a2) {
              QPoly x = cD.get(a2, a);
              if (x.is_zero()) continue;
              if (auto row = index(n + 2, w, pv, a2, b)) cv.add(*row, col, x);
            }
            for (std::size_t b2 = 0; b2 < cC.cols; ++b2) {
              QPoly x = cC.get(b, b2);
              if (x.is_zero()) continue;
              if (auto row = index(n + 2, w, {p - 2, v}, a, b2)) cv.add(*row, col, -x);
            }
          }
      }
      m.normalize();
      cv.normalize();
      if (!m.is_zero()) out.diff[{n, w}] = std::move(m);
      if (!cv.is_zero()) out.curvature[{n, w}] = std::move(cv);
    }
  return out;
}

BigradedComplex tensor_complex(const BigradedComplex& C, const BigradedComplex& D) {
  BigradedComplex out;
  out.K = std::max(C.K, D.K);
  out.truncated = C.truncated || D.truncated;
  // offsets[(n,w)][(p,a)] = start of C^{p,a} ⊗ D^{n-p,w-a}
  std::map<Bidegree, std::map<Bidegree, std::size_t>> offsets;
  for (const auto& [pa, cl] : C.blocks)
    for (const auto& [qb, dl] : D.blocks) {
      if (cl.empty() || dl.empty()) continue;
      Bidegree nw{pa.first + qb.first, pa.second + qb.second};
      auto& lab = out.blocks[nw];
      offsets[nw][pa] = lab.size();
      for (const auto& x : cl)
        for (const auto& y : dl) lab.push_back(x + "(x)" + y);
    }
  auto index = [&](Bidegree nw, Bidegree pa, std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    auto it = offsets.find(nw);
    if (it == offsets.end()) return std::nullopt;
    auto jt = it->second.find(pa);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second + i * D.dim(nw.first - pa.first, nw.second - pa.second) + j;
  };
  bool curved = !C.curvature.empty() || !D.curvature.empty();
  for (const auto& [nw, offs] : offsets) {
    auto [n, w] = nw;
    QMatrix m(out.dim(n + 1, w), out.dim(n, w));
    QMatrix cv(out.dim(n + 2, w), out.dim(n, w));
    for (const auto& [pa, off] : offs) {
      auto [p, a] = pa;
      int qd = n - p, b = w - a;
      std::size_t nc = C.dim(p, a), nd = D.dim(qd, b);
      QMatrix dC = C.d(p, a), dD = D.d(qd, b);
      QMatrix cC = C.curv(p, a), cD = D.curv(qd, b);
      Rational sign = (p % 2 == 0) ? 1 : -1;
      for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
          std::size_t col = off + i * nd + j;
          for (std::size_t i2 = 0; i2 < dC.rows; ++i2) {
            QPoly x = dC.get(i2, i);
            if (x.is_zero()) continue;
            if (auto row = index({n + 1, w}, {p + 1, a}, i2, j)) m.add(*row, col, x);
          }
          for (std::size_t j2 = 0; j2 < dD.rows; ++j2) {
            QPoly x = dD.get(j2, j);
            if (x.is_zero()) continue;
            if (auto row = index({n + 1, w}, {p, a}, i, j2)) m.add(*row, col, QPoly(sign) * x);
          }
          if (!curved) continue;
          for (std::size_t i2 = 0; i2 < cC.rows; ++i2) {
            QPoly x = cC.get(i2, i);
            if (x.is_zero()) continue;
            if (auto row = index({n + 2, w}, {p + 2, a}, i2, j)) cv.add(*row, col, x);
          }
          for (std::size_t j2 = 0; j2 < cD.rows; ++j2) {
            QPoly x = cD.get(j2, j);
            if (x.is_zero()) continue;
            if (auto row = index({n + 2, w}, {p, a}, i, j2)) cv.add(*row, col, x);
          }
        }
    }
    m = m.truncated(out.K);
    cv = cv.truncated(out.K);
    if (!m.is_zero()) out.diff[nw] = std::move(m);
    if (!cv.is_zero()) out.curvature[nw] = std::move(cv);
  }
  return out;
}

}  // namespace torushh
