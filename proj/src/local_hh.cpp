#include "torushh/local_hh.hpp"

#include <optional>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"

namespace torushh {

namespace {

std::string power(const char* name, int e) {
  if (e == 0) return "";
  if (e == 1) return name;
  return std::string(name) + "^" + std::to_string(e);
}

// Normal form of a monomial on the chart: returns the monomial and the power
// of q it absorbed, or nullopt if it vanishes.
std::optional<std::pair<DgaMono, int>> normalize(const ChartRing& r, DgaMono m) {
  if (m.e > 1 || m.f > 1 || m.e < 0 || m.f < 0 || m.k < 0) return std::nullopt;
  int qp = 0;
  switch (r.kind) {
    case ChartKind::NodalU: {
      if (m.a < 0 || m.b < 0) return std::nullopt;
      int s = std::min(m.a, m.b);
      if (s > 0) {
        if (!r.deformed) return std::nullopt;
        m.a -= s;
        m.b -= s;
        qp = s;
      }
      break;
    }
    case ChartKind::TorusV:
      if (m.b != 0 || m.f != 0 || m.k != 0) return std::nullopt;
      break;
    case ChartKind::EndLine:
      if (m.k != 0) return std::nullopt;
      if (r.side == Side::Left ? (m.a != 0 || m.e != 0 || m.b < 0) : (m.b != 0 || m.f != 0 || m.a < 0))
        return std::nullopt;
      break;
  }
  if (qp >= r.q_order()) return std::nullopt;
  return std::pair{m, qp};
}

void add_to(DgaElement& x, const DgaMono& m, const QPoly& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = x.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) x.erase(it);
  }
}

// c * m in the chart, normalized and truncated
void add_normalized(DgaElement& x, const ChartRing& r, const DgaMono& m, const QPoly& c) {
  auto nf = normalize(r, m);
  if (!nf) return;
  QPoly v = (c * QPoly::monomial(1, nf->second)).truncated(r.q_order());
  add_to(x, nf->first, v);
}

}  // namespace

std::string dga_label(const DgaMono& m) {
  std::string s = power("X", m.a) + power("Y", m.b) + (m.e ? "X*" : "") + (m.f ? "Y*" : "") + power("B", m.k);
  return s.empty() ? "1" : s;
}

namespace {
template <class Terms>
std::string terms_str(const Terms& x) {
  if (x.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : x) {
    std::string lab = dga_label(m);
    std::string term;
    bool neg = false;
    if (c.degree() == 0) {
      Rational v = c.lead();
      neg = sgn(v) < 0;
      Rational a = abs(v);
      term = a == 1 ? lab : a.get_str() + "*" + lab;
    } else if (c.coeffs().size() == static_cast<std::size_t>(c.degree() + 1) && c.valuation() == c.degree()) {
      Rational v = c.lead();
      neg = sgn(v) < 0;
      term = QPoly::monomial(abs(v), c.degree()).str() + "*" + lab;
    } else {
      term = "(" + c.str() + ")*" + lab;
    }
    if (first) s += neg ? "-" + term : term;
    else s += (neg ? " - " : " + ") + term;
    first = false;
  }
  return s;
}
}  // namespace

std::string dga_str(const DgaElement& x) { return terms_str(x); }

std::vector<DgaMono> dga_basis(const ChartRing& r, int deg, int wt) {
  std::vector<DgaMono> out;
  if (deg < 0) return out;
  switch (r.kind) {
    case ChartKind::NodalU:
      for (int k = 0; 2 * k <= deg; ++k)
        for (auto [e, f] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
          if (e + f + 2 * k != deg) continue;
          int t = wt - e + f;  // b - a
          DgaMono m{t >= 0 ? 0 : -t, t >= 0 ? t : 0, e, f, k};
          out.push_back(m);
        }
      break;
    case ChartKind::TorusV:
      if (deg <= 1) out.push_back({deg - wt, 0, deg, 0, 0});
      break;
    case ChartKind::EndLine:
      if (deg > 1) break;
      if (r.side == Side::Left) {
        if (wt + deg >= 0) out.push_back({0, wt + deg, 0, deg, 0});
      } else {
        if (deg - wt >= 0) out.push_back({deg - wt, 0, deg, 0, 0});
      }
      break;
  }
  return out;
}

DgaElement dga_differential(const ChartRing& r, const DgaMono& m) {
  DgaElement out;
  if (r.kind != ChartKind::NodalU) return out;
  if (m.e == 1 && m.f == 0) add_normalized(out, r, {m.a, m.b + 1, 0, 0, m.k + 1}, 1);
  if (m.e == 0 && m.f == 1) add_normalized(out, r, {m.a + 1, m.b, 0, 0, m.k + 1}, 1);
  if (m.e == 1 && m.f == 1) {
    add_normalized(out, r, {m.a, m.b + 1, 0, 1, m.k + 1}, 1);
    add_normalized(out, r, {m.a + 1, m.b, 1, 0, m.k + 1}, -1);
  }
  return out;
}

DgaElement dga_apply_d(const ChartRing& r, const DgaElement& x) {
  DgaElement out;
  for (const auto& [m, c] : x)
    for (const auto& [m2, c2] : dga_differential(r, m)) add_to(out, m2, (c * c2).truncated(r.q_order()));
  return out;
}

DgaElement dga_multiply(const ChartRing& r, const DgaElement& x, const DgaElement& y) {
  DgaElement out;
  for (const auto& [m1, c1] : x)
    for (const auto& [m2, c2] : y) {
      if (m1.e + m2.e > 1 || m1.f + m2.f > 1) continue;
      // reorder X*^e1 Y*^f1 X*^e2 Y*^f2 -> X*^{e1+e2} Y*^{f1+f2}
      int sign = (m1.f * m2.e) % 2 ? -1 : 1;
      DgaMono m{m1.a + m2.a, m1.b + m2.b, m1.e + m2.e, m1.f + m2.f, m1.k + m2.k};
      add_normalized(out, r, m, c1 * c2 * QPoly(sign));
    }
  return out;
}

std::size_t ChartCC::index_of(const DgaMono& m) const {
  auto it = basis.find({m.deg(), m.wt()});
  if (it != basis.end())
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (it->second[i] == m) return i;
  throw std::out_of_range("monomial " + dga_label(m) + " outside the computed window");
}

Vec ChartCC::to_vec(const DgaElement& x, int deg, int wt) const {
  Vec v(cx.dim(deg, wt));
  for (const auto& [m, c] : x) {
    if (m.deg() != deg || m.wt() != wt) throw std::invalid_argument("to_vec: element not homogeneous");
    v[index_of(m)] = c.coeff(0);
  }
  return v;
}

std::vector<QPoly> ChartCC::to_poly_vec(const DgaElement& x, int deg, int wt) const {
  std::vector<QPoly> v(cx.dim(deg, wt));
  for (const auto& [m, c] : x) {
    if (m.deg() != deg || m.wt() != wt) throw std::invalid_argument("to_poly_vec: element not homogeneous");
    v[index_of(m)] = c;
  }
  return v;
}

DgaElement ChartCC::from_vec(const Vec& v, int deg, int wt) const {
  DgaElement x;
  const auto& b = basis.at({deg, wt});
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) x[b[i]] = QPoly(v[i]);
  return x;
}

DgaElement ChartCC::from_poly_vec(const std::vector<QPoly>& v, int deg, int wt) const {
  DgaElement x;
  const auto& b = basis.at({deg, wt});
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) x[b[i]] = v[i];
  return x;
}

std::string ChartCC::str(const std::vector<QPoly>& v, int deg, int wt) const {
  std::vector<std::pair<DgaMono, QPoly>> terms;
  const auto& b = basis.at({deg, wt});
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) terms.emplace_back(b[i], v[i]);
  return terms_str(terms);
}

std::string ChartCC::str(const Vec& v, int deg, int wt) const {
  std::vector<QPoly> p(v.begin(), v.end());
  return str(p, deg, wt);
}

ChartCC build_chart_cc(const ChartRing& chart, int degree_max, int wt_lo, int wt_hi) {
  ChartCC cc;
  cc.chart = chart;
  cc.cx.K = chart.q_order();
  cc.cx.truncated = true;
  for (int deg = 0; deg <= degree_max + 1; ++deg)
    for (int wt = wt_lo; wt <= wt_hi; ++wt) {
      auto b = dga_basis(chart, deg, wt);
      if (b.empty()) continue;
      std::vector<std::string> labels;
      for (const auto& m : b) labels.push_back(dga_label(m));
      cc.cx.set_block(deg, wt, std::move(labels));
      cc.basis[{deg, wt}] = std::move(b);
    }
  for (const auto& [bd, mons] : cc.basis) {
    auto [deg, wt] = bd;
    if (deg > degree_max) continue;
    auto tgt = cc.basis.find({deg + 1, wt});
    if (tgt == cc.basis.end()) continue;
    QMatrix m(tgt->second.size(), mons.size());
    for (std::size_t j = 0; j < mons.size(); ++j)
      for (const auto& [m2, c] : dga_differential(chart, mons[j])) m.add(cc.index_of(m2), j, c);
    m.normalize();
    if (!m.is_zero()) cc.cx.diff[bd] = std::move(m);
  }
  return cc;
}

BigradedComplex build_local_cc(bool deformed, int K, int degree_max, int weight_band) {
  return build_chart_cc(ChartRing::nodal(0, deformed, K), degree_max, -weight_band, weight_band).cx;
}

HHTable local_hh_table(bool deformed, int K, int degree_max, int weight_band) {
  ChartRing chart = ChartRing::nodal(0, deformed, K);
  ChartCC cc = build_chart_cc(chart, degree_max, -weight_band, weight_band);
  HHTable t;
  t.params["table"] = "local";
  t.params["chart"] = chart.token();
  t.params["deformed"] = deformed;
  t.params["K"] = chart.q_order();
  t.params["degree_max"] = degree_max;
  t.params["weight_band"] = weight_band;
  t.params["coefficients"] = deformed ? "free rank over Q[q]" : "dimension over Q";
  std::vector<Bidegree> keys;
  for (int deg = 0; deg <= degree_max; ++deg)
    for (int wt = -weight_band; wt <= weight_band; ++wt) keys.push_back({deg, wt});
  t.entries.resize(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) {
    auto [deg, wt] = keys[i];
    HHEntry& e = t.entries[i];
    e.deg = deg;
    e.wt = wt;
    if (!deformed) {
      auto h = cohomology(cc.cx, deg, wt);
      e.dim = h.dim;
      for (const auto& r : h.reps) e.basis.push_back(cc.str(r, deg, wt));
    } else {
      auto h = ring_cohomology(cc.cx, deg, wt);
      e.dim = h.free_rank;
      for (const auto& g : h.free_generators) e.basis.push_back(cc.str(g, deg, wt));
      for (std::size_t j = 0; j < h.torsion.size(); ++j)
        e.torsion.push_back(cc.str(h.torsion_generators[j], deg, wt) + " ann " +
                            h.torsion[j].str());
    }
  });
  std::erase_if(t.entries, [](const HHEntry& e) { return e.dim == 0 && e.torsion.empty(); });
  return t;
}

DgaElement localize_dga(const ChartRing& chart, Side side, const DgaMono& m) {
  DgaElement out;
  ChartRing target = localized_chart(chart, side);
  switch (chart.kind) {
    case ChartKind::NodalU:
      if (side == Side::Right) {
        // X -> X, Y -> q X^{-1}, X* -> X*, Y* -> 0, B -> 0
        if (m.f || m.k) return out;
        if (!chart.deformed && m.b > 0) return out;
        add_normalized(out, target, {m.a - m.b, 0, m.e, 0, 0}, QPoly::monomial(1, m.b));
      } else {
        // Y -> X^{-1}, X -> q X, Y* -> -X^2 X*, X* -> 0, B -> 0
        if (m.e || m.k) return out;
        if (!chart.deformed && m.a > 0) return out;
        add_normalized(out, target, {m.a - m.b + 2 * m.f, 0, m.f, 0, 0},
                       QPoly::monomial(m.f ? -1 : 1, m.a));
      }
      break;
    case ChartKind::EndLine:
      if (chart.side == Side::Left)
        add_normalized(out, target, {-m.b + 2 * m.f, 0, m.f, 0, 0}, QPoly(m.f ? -1 : 1));
      else
        add_normalized(out, target, m, QPoly(1));
      break;
    case ChartKind::TorusV:
      add_normalized(out, target, m, QPoly(1));
      break;
  }
  return out;
}

DgaElement localize_dga(const ChartRing& chart, Side side, const DgaElement& x) {
  DgaElement out;
  ChartRing target = localized_chart(chart, side);
  for (const auto& [m, c] : x)
    for (const auto& [m2, c2] : localize_dga(chart, side, m)) add_to(out, m2, (c * c2).truncated(target.q_order()));
  return out;
}

DgaElement localization_on_hh(const ChartRing& chart, const DgaElement& cls, Side side) {
  verify_closed(chart, cls);
  return localize_dga(chart, side, cls);
}

RingElement weight_derivation(const RingElement& f) {
  RingElement out(f.ring());
  for (const auto& [m, c] : f.terms()) out.add_term(m, c * weight(m));
  return out;
}

DgaElement weight_cocycle_class(const ChartRing& chart) {
  // HKR: a derivation D goes to sum over generators g of D(g) g*
  DgaElement out;
  auto add_gen = [&](const Monomial& g, bool is_x) {
    RingElement dg = weight_derivation(RingElement(chart, g));
    for (const auto& [m, c] : dg.terms()) {
      DgaMono dm{m.x, m.y, is_x ? 1 : 0, is_x ? 0 : 1, 0};
      if (chart.kind == ChartKind::TorusV) dm = {m.x, 0, 1, 0, 0};
      add_normalized(out, chart, dm, QPoly::monomial(c, m.q));
    }
  };
  switch (chart.kind) {
    case ChartKind::NodalU:
      add_gen({1, 0, 0}, true);
      add_gen({0, 1, 0}, false);
      break;
    case ChartKind::TorusV:
      add_gen({1, 0, 0}, true);
      break;
    case ChartKind::EndLine:
      if (chart.side == Side::Left) add_gen({0, 1, 0}, false);
      else add_gen({1, 0, 0}, true);
      break;
  }
  return out;
}

void verify_closed(const ChartRing& chart, const DgaElement& x) {
  DgaElement dx = dga_apply_d(chart, x);
  if (!dx.empty()) throw NotClosed("d(" + dga_str(x) + ") = " + dga_str(dx));
}

}  // namespace torushh
