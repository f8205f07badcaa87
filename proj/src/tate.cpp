#include "torushh/tate.hpp"

#include <algorithm>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"

namespace torushh {

namespace {

Monomial weight_generator(const ChartRing& r, int wt) {
  if (r.kind == ChartKind::NodalU && wt >= 0) return Monomial{0, wt, 0};
  return Monomial{-wt, 0, 0};
}

bool same_object(const ResolvedObject& a, const ResolvedObject& b) {
  return a.component == b.component && a.twist == b.twist && a.deformed == b.deformed && a.K == b.K &&
         a.cells == b.cells && a.d == b.d;
}

RingElement shift_q_down(const RingElement& f) {
  RingElement out(f.ring());
  for (const auto& [m, c] : f.terms()) out.add_term(Monomial{m.x, m.y, m.q - 1}, c);
  return out;
}

}  // namespace

std::string ResolvedObject::name() const {
  std::string s = "O_C" + std::to_string(component);
  if (twist != 0) s += "(" + std::to_string(twist) + ")";
  return s;
}

std::size_t ResolvedObject::cell_index(const std::string& n) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].name == n) return i;
  throw std::out_of_range("no cell " + n + " in " + name());
}

ObjectPtr build_resolution(int component, int twist, int depth, bool deformed, int K, ComponentWindow window) {
  if (component < window.lo || component > window.hi)
    throw OutOfWindow("component " + std::to_string(component) + " outside [" + std::to_string(window.lo) + ", " +
                      std::to_string(window.hi) + "]");
  if (depth < 1) throw OutOfWindow("resolution depth must be >= 1");
  if (twist != 0 && twist != -1) throw OutOfWindow("twist must be 0 or -1");
  auto obj = std::make_shared<ResolvedObject>();
  obj->component = component;
  obj->twist = twist;
  obj->depth = depth;
  obj->deformed = deformed;
  obj->K = deformed ? K : 1;
  const int Kq = obj->K;
  const ChartRing V = ChartRing::torus(component, deformed, Kq);
  const ChartRing UL = ChartRing::nodal(component - 1, deformed, Kq);  // X_{i-1}, Y_i
  const ChartRing UR = ChartRing::nodal(component, deformed, Kq);      // X_i, Y_{i+1}
  const std::size_t T = obj->tail_length();

  // horizontal arrow V -> (L0, R0). For twist -1 the right trivialization is
  // moved by X_i^{-1}, which makes Hom(O(-1), O) two-dimensional in degree 0.
  const Monomial hL{}, hR = twist == 0 ? Monomial{} : Monomial{-1, 0, 0};
  const int sL0 = 0;
  const int sV = weight(hL) + sL0;
  const int sR0 = sV - weight(hR);

  obj->cells.push_back({"V", V, -1, sV});
  const std::size_t l0 = obj->cells.size();
  int s = sL0;
  for (std::size_t k = 0; k <= T; ++k) {
    // L_k -> L_{k-1}: X_{i-1} for k odd, Y_i for k even
    if (k > 0) s += (k % 2 == 1) ? -1 : 1;
    obj->cells.push_back({"L" + std::to_string(k), UL, -static_cast<int>(k), s});
  }
  const std::size_t r0 = obj->cells.size();
  s = sR0;
  for (std::size_t k = 0; k <= T; ++k) {
    // R_k -> R_{k-1}: Y_{i+1} for k odd, X_i for k even
    if (k > 0) s += (k % 2 == 1) ? 1 : -1;
    obj->cells.push_back({"R" + std::to_string(k), UR, -static_cast<int>(k), s});
  }
  obj->d.emplace(CellPair{0, l0}, RingElement(V, hL));
  obj->d.emplace(CellPair{0, r0}, RingElement(V, hR));
  for (std::size_t k = 1; k <= T; ++k) {
    obj->d.emplace(CellPair{l0 + k, l0 + k - 1}, RingElement(UL, k % 2 == 1 ? Monomial{1, 0, 0} : Monomial{0, 1, 0}));
    obj->d.emplace(CellPair{r0 + k, r0 + k - 1}, RingElement(UR, k % 2 == 1 ? Monomial{0, 1, 0} : Monomial{1, 0, 0}));
  }
  return obj;
}

ObjectPtr translate(const ObjectPtr& obj, int steps) {
  auto t = std::make_shared<ResolvedObject>(*obj);
  t->component += steps;
  for (auto& c : t->cells) c.chart = translate(c.chart, -steps);
  for (auto& [k, f] : t->d) f = translate(f, -steps);
  return t;
}

bool chart_contained(const ChartRing& a, const ChartRing& b) {
  if (a.kind == b.kind && a.index == b.index) return true;
  return a.kind == ChartKind::TorusV && b.kind == ChartKind::NodalU && (b.index == a.index || b.index == a.index - 1);
}

RingElement restrict_to(const RingElement& f, const ChartRing& target) {
  const ChartRing& r = f.ring();
  if (r.kind == target.kind && r.index == target.index) return f;
  if (!chart_contained(target, r)) throw std::logic_error("restriction to a chart outside " + r.token());
  return localize_to_V(f, target.index == r.index ? Side::Right : Side::Left);
}

void HomElement::add(std::size_t a, std::size_t b, const RingElement& f) {
  if (f.is_zero()) return;
  auto [it, fresh] = entries.emplace(CellPair{a, b}, f);
  if (!fresh) {
    it->second = it->second + f;
    if (it->second.is_zero()) entries.erase(it);
  }
}

HomElement HomElement::operator+(const HomElement& o) const {
  HomElement s = *this;
  for (const auto& [k, f] : o.entries) s.add(k.first, k.second, f);
  return s;
}

HomElement HomElement::operator-(const HomElement& o) const { return *this + o.scaled(-1); }

HomElement HomElement::scaled(const Rational& c) const {
  HomElement s{src, dst, deg, {}};
  for (const auto& [k, f] : entries) s.add(k.first, k.second, f.scaled(c));
  return s;
}

bool HomElement::operator==(const HomElement& o) const {
  return deg == o.deg && entries == o.entries && same_object(*src, *o.src) && same_object(*dst, *o.dst);
}

std::string HomElement::str() const {
  if (entries.empty()) return "0";
  std::string s;
  for (const auto& [k, f] : entries) {
    if (!s.empty()) s += "; ";
    s += src->cells[k.first].name + "->" + dst->cells[k.second].name + ": " + f.str();
  }
  return s;
}

HomElement identity(const ObjectPtr& obj) {
  HomElement e{obj, obj, 0, {}};
  for (std::size_t i = 0; i < obj->cells.size(); ++i) e.add(i, i, RingElement::constant(obj->cells[i].chart, 1));
  return e;
}

HomElement differential(const ObjectPtr& obj) { return HomElement{obj, obj, 1, obj->d}; }

HomElement compose(const HomElement& g, const HomElement& f) {
  if (!same_object(*g.src, *f.dst)) throw std::invalid_argument("compose: " + g.src->name() + " != " + f.dst->name());
  HomElement out{f.src, g.dst, f.deg + g.deg, {}};
  // index g by its source cell
  std::map<std::size_t, std::vector<std::pair<std::size_t, const RingElement*>>> by_src;
  for (const auto& [k, h] : g.entries) by_src[k.first].push_back({k.second, &h});
  for (const auto& [k, fab] : f.entries) {
    auto it = by_src.find(k.second);
    if (it == by_src.end()) continue;
    for (const auto& [c, gbc] : it->second) out.add(k.first, c, restrict_to(*gbc, fab.ring()) * fab);
  }
  return out;
}

HomElement hom_d(const HomElement& phi) {
  HomElement left = compose(differential(phi.dst), phi);
  HomElement right = compose(phi, differential(phi.src));
  return phi.deg % 2 == 0 ? left - right : left + right;
}

HomElement translate(const HomElement& phi, int steps) {
  HomElement t{translate(phi.src, steps), translate(phi.dst, steps), phi.deg, {}};
  for (const auto& [k, f] : phi.entries) t.add(k.first, k.second, translate(f, -steps));
  return t;
}

HomElement curvature(const ObjectPtr& obj) {
  HomElement c{obj, obj, 2, {}};
  if (!obj->deformed || obj->K < 2) return c;
  for (const char* side : {"L", "R"})
    for (std::size_t k = 2; k <= obj->tail_length(); ++k) {
      std::size_t a = obj->cell_index(side + std::to_string(k)), b = obj->cell_index(side + std::to_string(k - 2));
      c.add(a, b, RingElement::constant(obj->cells[a].chart, 1));
    }
  return c;
}

CurvatureReport verify_curvature(const ObjectPtr& obj) {
  HomElement d = differential(obj);
  HomElement dd = compose(d, d);
  CurvatureReport rep;
  rep.c = HomElement{obj, obj, 2, {}};
  auto where = [&](const CellPair& k) { return obj->cells[k.first].name + "->" + obj->cells[k.second].name; };
  const bool has_q = obj->deformed && obj->K >= 2;
  std::optional<Rational> lambda;
  for (const auto& [k, f] : dd.entries) {
    for (const auto& [m, c] : f.terms())
      if (!has_q || m.q == 0)
        throw CurvatureMismatch("cell " + where(k) + ": d^2 = " + f.str() + " is not divisible by q");
    RingElement ck = shift_q_down(f);
    if (ck.terms().size() != 1 || ck.terms().begin()->first != Monomial{})
      throw CurvatureMismatch("cell " + where(k) + ": d^2/q = " + ck.str() + " is not a scalar");
    const Rational& v = ck.terms().begin()->second;
    if (lambda && *lambda != v)
      throw CurvatureMismatch("cell " + where(k) + ": d^2/q = " + v.get_str() + " differs from " + lambda->get_str());
    lambda = v;
    rep.c.add(k.first, k.second, ck);
    rep.tail_cells.push_back(obj->cells[k.first].name);
  }
  if (has_q) {
    HomElement expected = curvature(obj).scaled(lambda.value_or(0));
    for (const auto& [k, f] : expected.entries)
      if (!rep.c.entries.count(k)) throw CurvatureMismatch("cell " + where(k) + ": d^2 vanishes on a tail cell");
    if (!lambda || *lambda == 0) throw CurvatureMismatch("deformed resolution with d^2 = 0");
  }
  rep.multiple = lambda.value_or(0);
  return rep;
}

std::vector<QPoly> TateHomComplex::to_vector(const HomElement& phi, int deg, int wt) const {
  auto it = basis.find({deg, wt});
  std::size_t n = it == basis.end() ? 0 : it->second.size();
  std::vector<QPoly> v(n);
  if (phi.deg != deg) throw std::invalid_argument("to_vector: degree mismatch");
  for (const auto& [k, f] : phi.entries) {
    for (const auto& [m, c] : f.terms()) {
      int w = weight(m) + phi.dst->cells[k.second].shift - phi.src->cells[k.first].shift;
      if (w != wt) continue;
      Monomial g{m.x, m.y, 0};
      std::size_t idx = n;
      for (std::size_t i = 0; i < n; ++i)
        if (it->second[i].a == k.first && it->second[i].b == k.second && it->second[i].gen == g) idx = i;
      if (idx == n) throw std::logic_error("to_vector: component outside the window");
      v[idx] += QPoly::monomial(c, m.q);
    }
  }
  return v;
}

HomElement TateHomComplex::from_vector(const std::vector<QPoly>& v, int deg, int wt) const {
  HomElement e{src, dst, deg, {}};
  const auto& bs = basis.at({deg, wt});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& coeffs = v[i].coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Monomial m = bs[i].gen;
      m.q = static_cast<int>(k);
      e.add(bs[i].a, bs[i].b, RingElement(src->cells[bs[i].a].chart, m, coeffs[k]));
    }
  }
  return e;
}

TateHomComplex hom_complex(const ObjectPtr& src, const ObjectPtr& dst, const Window& win) {
  if (src->deformed != dst->deformed || src->K != dst->K)
    throw std::invalid_argument("hom_complex: objects differ in deformation data");
  TateHomComplex h;
  h.src = src;
  h.dst = dst;
  h.cx.K = src->K;
  h.cx.truncated = true;
  std::vector<Bidegree> keys;
  for (int n = win.deg_lo - 1; n <= win.deg_hi + 1; ++n)
    for (int w = win.wt_lo; w <= win.wt_hi; ++w) keys.push_back({n, w});
  for (const auto& [n, w] : keys) {
    std::vector<TateHomComplex::BasisElt> bs;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < src->cells.size(); ++a)
      for (std::size_t b = 0; b < dst->cells.size(); ++b) {
        const Cell &ca = src->cells[a], &cb = dst->cells[b];
        if (cb.deg - ca.deg != n || !chart_contained(ca.chart, cb.chart)) continue;
        Monomial g = weight_generator(ca.chart, w - cb.shift + ca.shift);
        bs.push_back({a, b, g});
        labels.push_back(ca.name + "->" + cb.name + "*" + RingElement(ca.chart, g).str());
      }
    if (bs.empty()) continue;
    h.cx.set_block(n, w, std::move(labels));
    h.basis[{n, w}] = std::move(bs);
  }
  HomElement c_src = curvature(src), c_dst = curvature(dst);
  std::vector<Bidegree> present;
  for (const auto& [bd, l] : h.basis) present.push_back(bd);
  std::vector<QMatrix> dm(present.size()), cm(present.size());
  parallel_for(present.size(), [&](std::size_t i) {
    auto [n, w] = present[i];
    const auto& bs = h.basis.at(present[i]);
    bool has_d = h.basis.count({n + 1, w}) > 0, has_c = src->deformed && h.basis.count({n + 2, w}) > 0;
    if (has_d) dm[i] = QMatrix(h.cx.dim(n + 1, w), bs.size());
    if (has_c) cm[i] = QMatrix(h.cx.dim(n + 2, w), bs.size());
    for (std::size_t j = 0; j < bs.size(); ++j) {
      HomElement e{src, dst, n, {}};
      e.add(bs[j].a, bs[j].b, RingElement(src->cells[bs[j].a].chart, bs[j].gen));
      if (has_d) {
        auto col = h.to_vector(hom_d(e), n + 1, w);
        for (std::size_t r = 0; r < col.size(); ++r)
          if (!col[r].is_zero()) dm[i].add(r, j, col[r]);
      }
      if (has_c) {
        auto col = h.to_vector(compose(c_dst, e) - compose(e, c_src), n + 2, w);
        for (std::size_t r = 0; r < col.size(); ++r)
          if (!col[r].is_zero()) cm[i].add(r, j, col[r]);
      }
    }
  });
  for (std::size_t i = 0; i < present.size(); ++i) {
    dm[i].normalize();
    cm[i].normalize();
    if (!dm[i].is_zero()) h.cx.diff[present[i]] = std::move(dm[i]);
    if (!cm[i].is_zero()) h.cx.curvature[present[i]] = std::move(cm[i]);
  }
  return h;
}

RHomTable rhom(const ObjectPtr& src, const ObjectPtr& dst, int deg_max, int weight_band) {
  RHomTable t;
  t.src = src->name();
  t.dst = dst->name();
  t.depth = src->depth;
  t.trust_hi = 2 * t.depth - 4;
  t.weight_band = weight_band;
  // hom^{-1} needs target cells one step below the source's last cell, so the
  // target is resolved one period deeper; only the source truncation remains.
  ObjectPtr deep = build_resolution(dst->component, dst->twist, src->depth + 1, dst->deformed, dst->K,
                                    ComponentWindow{dst->component, dst->component});
  TateHomComplex h = hom_complex(src, deep, Window{0, deg_max, -weight_band, weight_band});
  std::vector<Bidegree> keys;
  for (int n = 0; n <= deg_max; ++n)
    for (int w = -weight_band; w <= weight_band; ++w) keys.push_back({n, w});
  std::vector<std::size_t> out(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { out[i] = cohomology(h.cx, keys[i].first, keys[i].second).dim; });
  t.dims.assign(deg_max + 1, 0);
  t.by_weight.resize(deg_max + 1);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (out[i] == 0) continue;
    t.dims[keys[i].first] += out[i];
    t.by_weight[keys[i].first][keys[i].second] = out[i];
  }
  for (int n = 0; n <= deg_max; ++n) t.trusted.push_back(n <= t.trust_hi);
  return t;
}

ojson RHomTable::to_json() const {
  ojson j;
  j["source"] = src;
  j["target"] = dst;
  j["depth"] = depth;
  j["trust_window"] = {0, trust_hi};
  j["weight_band"] = weight_band;
  ojson rows = ojson::array();
  for (std::size_t n = 0; n < dims.size(); ++n) {
    ojson r;
    r["degree"] = n;
    r["dim"] = dims[n];
    ojson bw = ojson::object();
    for (const auto& [w, d] : by_weight[n]) bw[std::to_string(w)] = d;
    r["weights"] = bw;
    r["trusted"] = static_cast<bool>(trusted[n]);
    rows.push_back(r);
  }
  j["degrees"] = rows;
  return j;
}

}  // namespace torushh
