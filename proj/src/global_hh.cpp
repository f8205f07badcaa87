#include "torushh/global_hh.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"

namespace torushh {

namespace {

// Direct sum of chart models; offsets[(d,w)][s] = start of summand s.
BigradedComplex direct_sum(const std::vector<ChartCC>& parts, std::map<Bidegree, std::vector<std::size_t>>& offsets) {
  BigradedComplex out;
  out.truncated = true;
  std::set<Bidegree> keys;
  for (const auto& p : parts) {
    out.K = std::max(out.K, p.cx.K);
    for (const auto& [bd, l] : p.cx.blocks) keys.insert(bd);
  }
  for (const auto& bd : keys) {
    std::vector<std::string> lab;
    auto& off = offsets[bd];
    for (const auto& p : parts) {
      off.push_back(lab.size());
      for (const auto& s : p.cx.labels(bd.first, bd.second)) lab.push_back(p.chart.token() + "|" + s);
    }
    out.set_block(bd.first, bd.second, std::move(lab));
  }
  for (const auto& bd : keys) {
    auto [d, w] = bd;
    if (out.dim(d + 1, w) == 0) continue;
    QMatrix m(out.dim(d + 1, w), out.dim(d, w));
    for (std::size_t s = 0; s < parts.size(); ++s) {
      if (parts[s].cx.dim(d, w) == 0 || parts[s].cx.dim(d + 1, w) == 0) continue;
      m.place(parts[s].cx.d(d, w), offsets.at({d + 1, w})[s], offsets.at(bd)[s]);
    }
    m.normalize();
    if (!m.is_zero()) out.diff[bd] = std::move(m);
  }
  return out;
}

std::string combination(const std::vector<std::string>& labels, const std::vector<QPoly>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string coef;
    bool neg = false;
    if (v[i].degree() == 0) {
      neg = sgn(v[i].lead()) < 0;
      Rational a = abs(v[i].lead());
      if (a != 1) coef = a.get_str() + "*";
    } else {
      coef = "(" + v[i].str() + ")*";
    }
    if (s.empty()) s = (neg ? "-" : "") + coef + labels[i];
    else s += (neg ? " - " : " + ") + coef + labels[i];
  }
  return s.empty() ? "0" : s;
}

int internal_K(bool deformed, int K, int degree_max, int wt_lo, int wt_hi) {
  // large enough that no restriction coefficient q^b is truncated, so the
  // complex is an honest complex of free Q[q]-modules
  if (!deformed) return 1;
  return std::max({K, std::abs(wt_lo) + degree_max + 3, std::abs(wt_hi) + degree_max + 3});
}

}  // namespace

std::unique_ptr<ChainAssembly> build_chain_assembly(int N, bool deformed, int K, int degree_max, int wt_lo, int wt_hi) {
  auto a = std::make_unique<ChainAssembly>();
  int Ki = internal_K(deformed, K, degree_max, wt_lo, wt_hi);
  a->charts = chain_charts(N, deformed, Ki);
  for (const auto& r : a->charts.opens) a->opens.push_back(build_chart_cc(r, degree_max, wt_lo, wt_hi));
  for (const auto& r : a->charts.overlaps) a->overlaps.push_back(build_chart_cc(r, degree_max, wt_lo, wt_hi));
  a->C = direct_sum(a->opens, a->open_offsets);
  a->D = direct_sum(a->overlaps, a->overlap_offsets);
  a->rho.src = &a->C;
  a->rho.dst = &a->D;
  for (const auto& [bd, l] : a->C.blocks) {
    auto [d, w] = bd;
    if (a->D.dim(d, w) == 0) continue;
    QMatrix m(a->D.dim(d, w), a->C.dim(d, w));
    for (std::size_t i = 0; i < a->overlaps.size(); ++i) {
      const auto& inc = a->charts.incidence[i];
      for (auto [o, side, sign] : {std::tuple{inc.right_open, inc.right_side, 1}, std::tuple{inc.left_open, inc.left_side, -1}}) {
        const ChartCC& src = a->opens[o];
        auto it = src.basis.find(bd);
        if (it == src.basis.end()) continue;
        for (std::size_t j = 0; j < it->second.size(); ++j)
          for (const auto& [m2, c] : localize_dga(src.chart, side, it->second[j]))
            m.add(a->overlap_offsets.at(bd)[i] + a->overlaps[i].index_of(m2), a->open_offsets.at(bd)[o] + j,
                  c * QPoly(sign));
      }
    }
    m.normalize();
    if (!m.is_zero()) a->rho.comp[bd] = std::move(m);
  }
  a->cone = cocone(a->rho);
  return a;
}

std::vector<QPoly> ChainAssembly::cone_vector(const std::vector<DgaElement>& per_open, int deg, int wt) const {
  std::vector<QPoly> v(cone.dim(deg, wt));
  for (std::size_t o = 0; o < per_open.size(); ++o) {
    if (per_open[o].empty()) continue;
    auto p = opens[o].to_poly_vec(per_open[o], deg, wt);
    std::size_t off = open_offsets.at({deg, wt})[o];
    for (std::size_t i = 0; i < p.size(); ++i) v[off + i] = p[i];
  }
  return v;
}

DgaElement ChainAssembly::open_component(const std::vector<QPoly>& v, std::size_t o, int deg, int wt) const {
  std::size_t n = opens[o].cx.dim(deg, wt);
  if (n == 0) return {};
  std::size_t off = open_offsets.at({deg, wt})[o];
  std::vector<QPoly> p(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + n));
  return opens[o].from_poly_vec(p, deg, wt);
}

std::string ChainAssembly::str(const std::vector<QPoly>& v, int deg, int wt) const {
  return combination(cone.labels(deg, wt), v);
}

std::pair<std::size_t, std::size_t> sheaf_cohomology(int N, int m, int weight) {
  ChainCharts cc = chain_charts(N);
  std::vector<ChartCC> opens, overlaps;
  for (const auto& r : cc.opens) opens.push_back(build_chart_cc(r, m, weight, weight));
  for (const auto& r : cc.overlaps) overlaps.push_back(build_chart_cc(r, m, weight, weight));
  std::vector<std::size_t> voff;
  std::size_t rows = 0;
  for (const auto& v : overlaps) {
    voff.push_back(rows);
    rows += v.cx.dim(m, weight);  // smooth overlap: HH = CC
  }
  std::vector<Vec> cols;
  for (std::size_t o = 0; o < opens.size(); ++o) {
    auto h = cohomology(opens[o].cx, m, weight);
    for (const auto& rep : h.reps) {
      DgaElement cls = opens[o].from_vec(rep, m, weight);
      Vec col(rows);
      for (std::size_t i = 0; i < overlaps.size(); ++i) {
        const auto& inc = cc.incidence[i];
        for (auto [src, side, sign] : {std::tuple{inc.right_open, inc.right_side, 1}, std::tuple{inc.left_open, inc.left_side, -1}}) {
          if (src != o) continue;
          for (const auto& [m2, c] : localize_dga(opens[o].chart, side, cls)) col[voff[i] + overlaps[i].index_of(m2)] += c.coeff(0) * sign;
        }
      }
      cols.push_back(std::move(col));
    }
  }
  SparseMatrix M = SparseMatrix::from_columns(cols, rows);
  std::size_t r = rank(M);
  return {cols.size() - r, rows - r};
}

HHTable assemble_hh(int N, bool deformed, int K, int degree_max, int weight_band) {
  auto a = build_chain_assembly(N, deformed, K, degree_max, -weight_band, weight_band);
  HHTable t;
  t.params["table"] = "global";
  t.params["N"] = N;
  t.params["deformed"] = deformed;
  t.params["K"] = deformed ? K : 1;
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
      auto h = cohomology(a->cone, deg, wt);
      e.dim = h.dim;
      for (const auto& r : h.reps) e.basis.push_back(a->str(std::vector<QPoly>(r.begin(), r.end()), deg, wt));
    } else {
      auto h = ring_cohomology(a->cone, deg, wt);
      e.dim = h.free_rank;
      for (const auto& g : h.free_generators) e.basis.push_back(a->str(g, deg, wt));
      for (std::size_t j = 0; j < h.torsion.size(); ++j)
        e.torsion.push_back(a->str(h.torsion_generators[j], deg, wt) + " ann " + h.torsion[j].str());
    }
  });
  std::erase_if(t.entries, [](const HHEntry& e) { return e.dim == 0 && e.torsion.empty(); });
  return t;
}

GammaO gamma_O(int N, bool deformed, int K) {
  GammaO g;
  ChainCharts cc = chain_charts(N, deformed, K);
  g.charts = cc.opens;
  for (const auto& r : cc.opens) {
    DgaElement w = weight_cocycle_class(r);
    verify_closed(r, w);
    g.components.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < cc.overlaps.size(); ++i) {
    const auto& inc = cc.incidence[i];
    DgaElement right = localize_dga(cc.opens[inc.right_open], inc.right_side, g.components[inc.right_open]);
    DgaElement left = localize_dga(cc.opens[inc.left_open], inc.left_side, g.components[inc.left_open]);
    if (right != left)
      throw CocycleFailure("components disagree on " + cc.overlaps[i].token() + ": " + dga_str(right) + " vs " +
                           dga_str(left));
  }
  return g;
}

}  // namespace torushh
