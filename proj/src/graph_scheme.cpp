#include "torushh/graph_scheme.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"
#include "torushh/sparse_matrix.hpp"

namespace torushh {

namespace {

Poly gv(std::size_t slot) { return Poly::variable(kGraphVars, slot); }
Poly gc(const Rational& c) { return Poly::constant(kGraphVars, c); }

std::vector<Poly> ambient_relations() {
  return {gv(GX) * gv(GY) - gv(GQ), gv(GXp) * gv(GYp) - gv(GQ), gv(GU) * gv(GT) - gv(GQ)};
}

std::vector<Poly> concat(std::vector<Poly> a, const std::vector<Poly>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Poly> substituted(const std::vector<Poly>& ps, std::size_t var, const Rational& value) {
  std::vector<Poly> out;
  for (const auto& p : ps) {
    Poly s = p.substitute(var, Poly::constant(p.nvars(), value));
    if (!s.is_zero()) out.push_back(s.monic(MonomialOrder::grevlex()));
  }
  return out;
}

std::size_t locus_var(Locus l) { return l == Locus::T1 ? GT : l == Locus::U1 ? GU : GQ; }
Rational locus_value(Locus l) { return l == Locus::Q0 ? 0 : 1; }

}  // namespace

PolyRing graph_ring(int i, int j) {
  auto s = [](int n) { return std::to_string(n); };
  return PolyRing{{"X_" + s(i), "Y_" + s(i + 1), "X'_" + s(j), "Y'_" + s(j + 1), "q", "u", "t"}};
}

std::vector<Poly> GraphChartIdeal::all() const { return concat(generators, ambient); }

std::vector<std::string> GraphChartIdeal::generator_strings() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(ring.str(g));
  return out;
}

ojson GraphChartIdeal::to_json() const {
  ojson j;
  j["chart_pair"] = {i, this->j};
  j["variables"] = ring.names;
  j["generators"] = generator_strings();
  std::vector<std::string> amb;
  for (const auto& a : ambient) amb.push_back(ring.str(a));
  j["ambient"] = amb;
  return j;
}

GraphChartIdeal graph_equations(int i, int j) {
  GraphChartIdeal g;
  g.i = i;
  g.j = j;
  g.ring = graph_ring(i, j);
  const Poly X = gv(GX), Y = gv(GY), Xp = gv(GXp), Yp = gv(GYp), u = gv(GU), t = gv(GT);
  if (j == i) {
    g.generators = {t * Y - Yp, t * Xp - X, Y * Xp - u};
  } else if (j == i - 1) {
    g.generators = {Y - u * Yp, Xp - u * X, Yp * X - t};
  } else {
    throw EmptyChart("no graph equation applies on chart pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     "): the subscheme is empty there");
  }
  g.ambient = ambient_relations();
  return g;
}

std::string locus_name(Locus l) {
  switch (l) {
    case Locus::T1: return "t=1";
    case Locus::U1: return "u=1";
    default: return "q=0";
  }
}

std::vector<std::string> RestrictedIdeal::strings() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(ring.str(g));
  return out;
}

RestrictedIdeal restrict(const GraphChartIdeal& g, Locus locus) {
  return RestrictedIdeal{locus, g.ring, substituted(g.all(), locus_var(locus), locus_value(locus))};
}

RestrictedIdeal restrict(const RestrictedIdeal& g, Locus locus) {
  return RestrictedIdeal{locus, g.ring, substituted(g.generators, locus_var(locus), locus_value(locus))};
}

std::vector<Poly> diagonal_ideal(int i, int j) {
  const Poly X = gv(GX), Y = gv(GY), Xp = gv(GXp), Yp = gv(GYp), q = gv(GQ), one = gc(1);
  switch (j - i) {
    case 0: return {X - Xp, Y - Yp};
    // second chart one step left: overlap is the torus chart where X_i is invertible
    case -1: return {Yp * X - one, Y - q * Yp, Xp - q * X};
    case 1: return {Y * Xp - one, Yp - q * Y, X - q * Xp};
    default: return {one};  // charts do not meet
  }
}

// graph of tr^{-1} = (1 x tr^{-1})(diagonal); the slot variables already carry the shift
std::vector<Poly> tr_inverse_graph_ideal(int i, int j) { return diagonal_ideal(i, j + 1); }

ojson RestrictionReport::to_json() const {
  return ojson{{"chart_pair", {i, j}},
               {"t1_is_diagonal", t1_is_diagonal},
               {"u1_is_tr_inverse_graph", u1_is_tr_inverse_graph},
               {"t1_q0_commutes", t1_q0_commutes}};
}

std::vector<RestrictionReport> check_restrictions(int lo, int hi) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = lo; i <= hi; ++i)
    for (int j : {i, i - 1})
      if (j >= lo && j <= hi) pairs.emplace_back(i, j);
  std::vector<RestrictionReport> out(pairs.size());
  const auto ord = MonomialOrder::grevlex();
  parallel_for(pairs.size(), [&](std::size_t k) {
    auto [i, j] = pairs[k];
    GraphChartIdeal g = graph_equations(i, j);
    RestrictionReport r{i, j};
    auto amb_t1 = substituted(ambient_relations(), GT, 1);
    r.t1_is_diagonal = same_ideal(restrict(g, Locus::T1).generators, concat(diagonal_ideal(i, j), amb_t1), ord);
    auto amb_u1 = substituted(ambient_relations(), GU, 1);
    r.u1_is_tr_inverse_graph =
        same_ideal(restrict(g, Locus::U1).generators, concat(tr_inverse_graph_ideal(i, j), amb_u1), ord);
    auto a = restrict(restrict(g, Locus::T1), Locus::Q0).generators;
    auto b = restrict(restrict(g, Locus::Q0), Locus::T1).generators;
    r.t1_q0_commutes = same_ideal(a, b, ord) && groebner(a, ord).contains(gv(GU));
    out[k] = r;
  });
  return out;
}

bool check_gluing(int i1, int j1, int i2, int j2) {
  if (std::abs(i1 - i2) > 1 || std::abs(j1 - j2) > 1) throw std::invalid_argument("chart pairs do not overlap");
  GraphChartIdeal g1 = graph_equations(i1, j1), g2 = graph_equations(i2, j2);
  // extra variables: torus coordinate and its inverse for each factor
  const std::size_t n = kGraphVars + 4;
  auto v = [&](std::size_t k) { return Poly::variable(n, k); };
  const Poly q = v(GQ);
  std::vector<Poly> extra;
  // coordinates (X_k, Y_{k+1}) of chart k written on the torus chart V_m
  auto on_torus = [&](int k, int m, std::size_t y, std::size_t w) -> std::pair<Poly, Poly> {
    if (m == k + 1) return {q * v(w), v(y)};
    return {v(w), q * v(y)};
  };
  auto images = [&](int i, int j, int io, int jo) {
    std::vector<Poly> im;
    for (std::size_t k = 0; k < kGraphVars; ++k) im.push_back(v(k));
    if (i != io) {
      auto [x, y] = on_torus(i, std::max(i, io), kGraphVars, kGraphVars + 1);
      im[GX] = x;
      im[GY] = y;
    }
    if (j != jo) {
      auto [x, y] = on_torus(j, std::max(j, jo), kGraphVars + 2, kGraphVars + 3);
      im[GXp] = x;
      im[GYp] = y;
    }
    return im;
  };
  if (i1 != i2) extra.push_back(v(kGraphVars) * v(kGraphVars + 1) - Poly::constant(n, 1));
  if (j1 != j2) extra.push_back(v(kGraphVars + 2) * v(kGraphVars + 3) - Poly::constant(n, 1));
  std::vector<Poly> a = extra, b = extra;
  auto im1 = images(i1, j1, i2, j2), im2 = images(i2, j2, i1, j1);
  for (const auto& p : g1.all()) a.push_back(p.map_vars(im1));
  for (const auto& p : g2.all()) b.push_back(p.map_vars(im2));
  return same_ideal(a, b, MonomialOrder::grevlex());
}

// ---- flatness

bool FlatnessCertificate::free() const { return confluent && parameter_free_leads && products_independent; }

ojson FlatnessCertificate::to_json() const {
  ojson j;
  j["chart_pair"] = {i, this->j};
  j["degree_bound"] = degree_bound;
  j["order"] = order;
  j["fiber_variables"] = fiber_vars;
  j["base_variables"] = base_vars;
  j["leading_monomials"] = leading_monomials;
  j["confluent"] = confluent;
  j["parameter_free_leads"] = parameter_free_leads;
  j["basis"] = basis;
  j["basis_count_by_degree"] = basis_count_by_degree;
  j["products_checked"] = products_checked;
  j["products_independent"] = products_independent;
  j["slice_dims"] = slice_dims;
  j["slice_dims_bruteforce"] = slice_dims_bruteforce;
  j["free"] = free();
  return j;
}

namespace {

// dim Q[x]_{<=d} / (I ∩ Q[x]_{<=d}) from the span of m*g with deg(m*g) <= D, D grown until stable
std::size_t macaulay_slice_dim(const std::vector<Poly>& gens, std::size_t nvars, int d) {
  std::size_t prev = SIZE_MAX;
  for (int D = d;; ++D) {
    std::map<Exponents, std::size_t> col;
    std::vector<Exponents> monos;
    for (int k = 0; k <= D; ++k)
      for (const auto& m : monomials_of_degree(nvars, k, {})) {
        col.emplace(m, monos.size());
        monos.push_back(m);
      }
    std::vector<Poly> rows;
    for (const auto& g : gens) {
      int dg = g.degree();
      for (int k = 0; k + dg <= D; ++k)
        for (const auto& m : monomials_of_degree(nvars, k, {})) rows.push_back(g.mul_term(m, 1));
    }
    SparseMatrix M(rows.size(), monos.size()), H(rows.size(), monos.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [e, c] : rows[r].terms()) {
        std::size_t k = col.at(e);
        M.set(r, k, c);
        if (total_degree(e) > d) H.set(r, k, c);
      }
    std::size_t low = 0;
    for (const auto& m : monos)
      if (total_degree(m) <= d) ++low;
    std::size_t cur = low - (rank(M) - rank(H));
    if (cur == prev && D >= d + 2) return cur;
    prev = cur;
    if (D > d + 6) throw std::runtime_error("Macaulay slice dimension did not stabilize");
  }
}

}  // namespace

FlatnessCertificate flatness_certificate(int i, int j, int degree_bound) {
  GraphChartIdeal g = graph_equations(i, j);
  FlatnessCertificate cert;
  cert.i = i;
  cert.j = j;
  cert.degree_bound = degree_bound;
  // the proof's change of variables: solved-for coordinates and q first, then the rest of the fiber, then u, t
  std::vector<std::size_t> order = j == i ? std::vector<std::size_t>{GX, GYp, GQ, GY, GXp, GU, GT}
                                          : std::vector<std::size_t>{GY, GXp, GQ, GYp, GX, GU, GT};
  const std::size_t fiber = 5;
  PolyRing R;
  std::vector<Poly> to_ordered(kGraphVars), to_pair(kGraphVars);
  for (std::size_t k = 0; k < kGraphVars; ++k) {
    R.names.push_back(g.ring.names[order[k]]);
    to_ordered[order[k]] = Poly::variable(kGraphVars, k);
    to_pair[k] = Poly::variable(kGraphVars, order[k]);
  }
  for (std::size_t k = 0; k < kGraphVars; ++k) (k < fiber ? cert.fiber_vars : cert.base_vars).push_back(R.names[k]);
  const auto block = MonomialOrder::block_grevlex(fiber);
  cert.order = block.describe();

  std::vector<PolyVec> rules;
  for (const auto& p : g.all()) rules.push_back({p.map_vars(to_ordered)});
  if (auto fail = critical_pair_check(rules, kGraphVars, 1, block)) {
    throw RewritingNotConfluent("critical pair (" + R.str(rules[fail->i][0], block) + ", " +
                                R.str(rules[fail->j][0], block) + ") leaves " + R.str(fail->remainder[0], block));
  }
  cert.confluent = true;
  GroebnerBasis gb = groebner(rules, kGraphVars, 1, block);
  cert.parameter_free_leads = true;
  for (const auto& [c, e] : gb.leading_monomials()) {
    cert.leading_monomials.push_back(R.str(e));
    for (std::size_t k = fiber; k < kGraphVars; ++k)
      if (e[k]) cert.parameter_free_leads = false;
  }
  // standard fiber monomials
  std::vector<Exponents> basis;
  for (int d = 0; d <= degree_bound; ++d) {
    std::size_t count = 0;
    for (const auto& m : standard_monomials(gb, d, {})) {
      bool fiber_only = true;
      for (std::size_t k = fiber; k < kGraphVars; ++k)
        if (m[k]) fiber_only = false;
      if (!fiber_only) continue;
      basis.push_back(m);
      cert.basis.push_back(R.str(m));
      ++count;
    }
    cert.basis_count_by_degree.push_back(count);
  }
  // oracle 1: b*u^a*t^c independent modulo I, via a grevlex basis in the original variables
  const auto grevlex = MonomialOrder::grevlex();
  GroebnerBasis gr = groebner(g.all(), grevlex);
  std::vector<Poly> images;
  for (const auto& b : basis) {
    int db = total_degree(b);
    for (int a = 0; db + a <= degree_bound; ++a)
      for (int c = 0; db + a + c <= degree_bound; ++c) {
        Exponents e = b;
        e[fiber] += a;
        e[fiber + 1] += c;
        images.push_back(gr.reduce(Poly::monomial(e, 1).map_vars(to_pair)));
      }
  }
  std::map<Exponents, std::size_t> col;
  for (const auto& p : images)
    for (const auto& [e, c] : p.terms()) col.emplace(e, col.size());
  SparseMatrix M(images.size(), col.size());
  for (std::size_t r = 0; r < images.size(); ++r)
    for (const auto& [e, c] : images[r].terms()) M.set(r, col.at(e), c);
  cert.products_checked = images.size();
  cert.products_independent = rank(M) == images.size();
  // oracle 2: filtered slices, grevlex basis vs truncated Macaulay matrices
  std::size_t acc = 0;
  for (int d = 0; d <= std::min(3, degree_bound); ++d) {
    acc += standard_monomials(gr, d, {}).size();
    cert.slice_dims.push_back(acc);
    cert.slice_dims_bruteforce.push_back(macaulay_slice_dim(g.all(), kGraphVars, d));
  }
  return cert;
}

// ---- triple graph

namespace {

struct Template {
  // slot: 0 -> i, 1 -> j, 2 -> i + j; component is slot + 1
  std::vector<std::pair<char, int>> lhs, rhs;
};

const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      {{{'Y', 0}, {'Y', 1}}, {{'Y', 2}}},           // Y_i(1)Y_j(2) = Y_{i+j}(3)
      {{{'Y', 1}, {'X', 2}}, {{'X', 0}}},           // Y_j(2)X_{i+j}(3) = X_i(1)
      {{{'Y', 0}, {'X', 2}}, {{'X', 1}}},           // Y_i(1)X_{i+j}(3) = X_j(2)
      {{{'Y', 1}}, {{'X', 0}, {'Y', 2}}},           // Y_j(2) = X_i(1)Y_{i+j}(3)
      {{{'Y', 0}}, {{'X', 1}, {'Y', 2}}},           // Y_i(1) = X_j(2)Y_{i+j}(3)
      {{{'X', 2}}, {{'X', 0}, {'X', 1}}},           // X_{i+j}(3) = X_i(1)X_j(2)
      {{{'Y', 0}, {'Y', 1}, {'X', 2}}, {}},         // Y_i(1)Y_j(2)X_{i+j}(3) = 1
      {{{'X', 0}, {'X', 1}, {'Y', 2}}, {}},         // X_i(1)X_j(2)Y_{i+j}(3) = 1
  };
  return t;
}

int chart_of(char type, int index) { return type == 'X' ? index : index - 1; }

std::string var_str(const TripleVar& v) {
  return std::string(1, v.type) + "_" + std::to_string(v.index) + "(" + std::to_string(v.comp) + ")";
}

std::string mono_str(const std::vector<TripleVar>& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& v : m) s += (s.empty() ? "" : "*") + var_str(v);
  return s;
}

TripleVar flip3(TripleVar v) {
  if (v.comp == 3) {
    v.type = v.type == 'X' ? 'Y' : 'X';
    v.index = -v.index;
  }
  return v;
}

std::set<TripleEquation> transformed_set(const std::array<int, 3>& charts) {
  // chart labels of component 3 in the new coordinates: k -> -k - 1
  TripleGraphIdeal g = triple_graph_equations(charts[0], charts[1], -charts[2] - 1);
  std::set<TripleEquation> out;
  for (const auto& e : g.equations) {
    TripleEquation f;
    for (const auto& v : e.lhs) f.lhs.push_back(flip3(v));
    for (const auto& v : e.rhs) f.rhs.push_back(flip3(v));
    out.insert(f.canonical());
  }
  return out;
}

TripleEquation permuted(const TripleEquation& e, const std::array<int, 3>& p) {
  TripleEquation f;
  for (auto v : e.lhs) {
    v.comp = p[v.comp - 1];
    f.lhs.push_back(v);
  }
  for (auto v : e.rhs) {
    v.comp = p[v.comp - 1];
    f.rhs.push_back(v);
  }
  return f.canonical();
}

}  // namespace

TripleEquation TripleEquation::canonical() const {
  TripleEquation e = *this;
  std::sort(e.lhs.begin(), e.lhs.end());
  std::sort(e.rhs.begin(), e.rhs.end());
  if (e.rhs < e.lhs) std::swap(e.lhs, e.rhs);
  return e;
}

std::string TripleEquation::str() const { return mono_str(lhs) + " = " + mono_str(rhs); }

std::vector<std::string> TripleGraphIdeal::strings() const {
  std::vector<std::string> out;
  for (const auto& e : equations) out.push_back(e.str());
  return out;
}

TripleGraphIdeal triple_graph_equations(int k, int l, int m) {
  TripleGraphIdeal g;
  g.charts = {k, l, m};
  for (const auto& t : templates()) {
    char types[3] = {0, 0, 0};
    for (const auto& side : {t.lhs, t.rhs})
      for (const auto& [type, slot] : side) types[slot] = type;
    int i = k + (types[0] == 'Y'), j = l + (types[1] == 'Y');
    if (chart_of(types[2], i + j) != m) continue;
    auto inst = [&](const std::vector<std::pair<char, int>>& side) {
      std::vector<TripleVar> out;
      for (const auto& [type, slot] : side) out.push_back({slot + 1, type, slot == 0 ? i : slot == 1 ? j : i + j});
      return out;
    };
    g.equations.push_back({inst(t.lhs), inst(t.rhs)});
  }
  return g;
}

ojson SymmetryReport::to_json() const {
  return ojson{{"permutation", permutation}, {"charts_checked", charts_checked}, {"nonempty_charts", nonempty_charts}};
}

std::vector<std::array<int, 3>> all_permutations3() {
  std::array<int, 3> p{1, 2, 3};
  std::vector<std::array<int, 3>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<SymmetryReport> verify_s3_symmetry(int lo, int hi, const std::vector<std::array<int, 3>>& perms) {
  std::vector<SymmetryReport> out;
  for (const auto& p : perms) {
    SymmetryReport r;
    r.permutation = p;
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b)
        for (int c = lo; c <= hi; ++c) {
          std::array<int, 3> k{a, b, c}, image{};
          for (int s = 0; s < 3; ++s) image[p[s] - 1] = k[s];
          auto src = transformed_set(k), dst = transformed_set(image);
          std::set<TripleEquation> mapped;
          for (const auto& e : src) mapped.insert(permuted(e, p));
          ++r.charts_checked;
          if (!src.empty()) ++r.nonempty_charts;
          if (mapped != dst) {
            std::string witness;
            for (const auto& e : mapped)
              if (!dst.count(e)) witness = e.str() + " is not among the image chart's equations";
            if (witness.empty())
              for (const auto& e : dst)
                if (!mapped.count(e)) witness = e.str() + " has no preimage";
            throw SymmetryFailure("permutation (" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]) +
                                  ") on charts (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                  std::to_string(c) + "): " + witness);
          }
        }
    out.push_back(r);
  }
  return out;
}

// ---- exact sequences

ojson ExactnessReport::to_json() const {
  ojson j;
  j["sequence"] = name;
  j["chart"] = chart;
  j["degree_max"] = degree_max;
  ojson rows = ojson::array();
  for (std::size_t d = 0; d < dims.size(); ++d) rows.push_back({{"degree", d}, {"dims", dims[d]}});
  j["degrees"] = rows;
  j["exact"] = true;
  return j;
}

namespace {

// Direct sum of cyclic modules R/I_k.
using Summands = std::vector<std::vector<Poly>>;
using PolyMat = std::vector<std::vector<Poly>>;  // [target summand][source summand]

struct GradedSum {
  std::vector<GroebnerBasis> gb;
  std::vector<std::vector<Exponents>> basis;  // per summand, current degree
  std::vector<std::map<Exponents, std::size_t>> index;
  std::size_t dim = 0;
  std::vector<std::size_t> offset;

  GradedSum(const Summands& s, const MonomialOrder& ord) {
    for (const auto& ideal : s) gb.push_back(groebner(ideal, ord));
  }
  void at_degree(int d, const std::vector<int>& w) {
    basis.clear();
    index.clear();
    offset.clear();
    dim = 0;
    for (const auto& g : gb) {
      offset.push_back(dim);
      basis.push_back(g.is_unit_ideal() ? std::vector<Exponents>{} : standard_monomials(g, d, w));
      std::map<Exponents, std::size_t> idx;
      for (std::size_t k = 0; k < basis.back().size(); ++k) idx.emplace(basis.back()[k], k);
      index.push_back(std::move(idx));
      dim += basis.back().size();
    }
  }
};

SparseMatrix graded_map(const GradedSum& src, const GradedSum& dst, const PolyMat& f, const std::string& what, int d) {
  SparseMatrix M(dst.dim, src.dim);
  for (std::size_t c = 0; c < src.gb.size(); ++c)
    for (std::size_t k = 0; k < src.basis[c].size(); ++k)
      for (std::size_t r = 0; r < dst.gb.size(); ++r) {
        if (f[r][c].is_zero()) continue;
        Poly img = dst.gb[r].reduce(f[r][c].mul_term(src.basis[c][k], 1));
        for (const auto& [e, x] : img.terms()) {
          auto it = dst.index[r].find(e);
          if (it == dst.index[r].end())
            throw ExactnessFailure(what + " is not homogeneous of degree 0 (degree " + std::to_string(d) + ")");
          M.set(dst.offset[r] + it->second, src.offset[c] + k, x);
        }
      }
  return M;
}

void check_well_defined(const Summands& src, const GradedSum& dst, const PolyMat& f, const std::string& what) {
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& h : src[c])
      for (std::size_t r = 0; r < dst.gb.size(); ++r)
        if (!f[r][c].is_zero() && !dst.gb[r].contains(f[r][c] * h))
          throw ExactnessFailure(what + " does not respect relations (summand " + std::to_string(c) + ")");
}

ExactnessReport check_ses(const std::string& name, const std::string& chart, const std::vector<int>& weights,
                          const Summands& A, const Summands& B, const Summands& C, const PolyMat& f, const PolyMat& g,
                          int degree_max) {
  const auto ord = MonomialOrder::grevlex(weights);
  GradedSum a(A, ord), b(B, ord), c(C, ord);
  check_well_defined(A, b, f, "first map");
  check_well_defined(B, c, g, "second map");
  ExactnessReport rep{name, chart, degree_max, {}};
  for (int d = 0; d <= degree_max; ++d) {
    a.at_degree(d, weights);
    b.at_degree(d, weights);
    c.at_degree(d, weights);
    SparseMatrix F = graded_map(a, b, f, "first map", d), G = graded_map(b, c, g, "second map", d);
    auto fail = [&](const std::string& pos) {
      throw ExactnessFailure(name + " on " + chart + ": " + pos + " at degree " + std::to_string(d));
    };
    if (rank(F) != a.dim) fail("not injective");
    if (!(G * F).is_zero()) fail("composite is nonzero");
    if (rank(G) != c.dim) fail("not surjective");
    if (b.dim != a.dim + c.dim) fail("not exact in the middle");
    rep.dims.push_back({a.dim, b.dim, c.dim});
  }
  return rep;
}

}  // namespace

ExactnessReport verify_diagonal_ses(int i, int degree_max) {
  // ring X_i, Y_{i+1}, X'_i, Y'_{i+1} of U x U at q = 0
  const std::size_t n = 4;
  auto v = [&](std::size_t k) { return Poly::variable(n, k); };
  const Poly X = v(0), Y = v(1), Xp = v(2), Yp = v(3), one = Poly::constant(n, 1);
  Summands A{{X * Y, Xp * Yp, X - Xp, Y - Yp}};          // O_diag
  Summands B{{Y, Yp, X - Xp}, {X, Xp, Y - Yp}};          // normalization: two branches
  Summands C{{X, Y, Xp, Yp}};                            // node x node
  PolyMat f{{one}, {one}}, g{{one, -one}};
  return check_ses("diagonal", "U_" + std::to_string(i) + "+1/2 x U_" + std::to_string(i) + "+1/2", {1, 1, 1, 1}, A, B,
                   C, f, g, degree_max);
}

ExactnessReport verify_normalization_ses(int i, int j, bool at_u0, int degree_max) {
  // ring X, Y, X', Y', t
  const std::size_t n = 5;
  auto v = [&](std::size_t k) { return Poly::variable(n, k); };
  const Poly X = v(0), Y = v(1), Xp = v(2), Yp = v(3), t = v(4), one = Poly::constant(n, 1), zero(n);
  std::vector<Poly> quoted;
  if (j == i) quoted = {X * Y, Xp * Yp, Y * Xp, Yp - t * Y, X - t * Xp};
  else if (j == i - 1) quoted = {Y, Xp, Yp * X - t};
  else throw EmptyChart("normalization sequence needs j = i or j = i - 1");
  std::vector<Poly> ring_ideal = quoted;
  if (at_u0) {
    GraphChartIdeal g = graph_equations(i, j);
    std::vector<Poly> im{X, Y, Xp, Yp, Poly(n), Poly(n), t};  // q = 0, u = 0
    std::vector<Poly> derived;
    for (const auto& p : g.all()) {
      Poly s = p.map_vars(im);
      if (!s.is_zero()) derived.push_back(s);
    }
    if (!same_ideal(derived, quoted, MonomialOrder::grevlex()))
      throw ExactnessFailure("graph ideal at u = 0 differs from the quoted coordinate ring");
    ring_ideal = derived;
  }
  std::string chart = "(" + std::to_string(i) + "," + std::to_string(j) + ")" + (at_u0 ? " u=0" : "");
  if (j == i) {
    Summands A{ring_ideal};
    Summands B{{Y, Yp, X - t * Xp}, {X, Xp, Yp - t * Y}};
    Summands C{{X, Y, Xp, Yp}};
    PolyMat f{{one}, {one}}, g{{one, -one}};
    return check_ses("normalization", chart, {2, 1, 1, 2, 1}, A, B, C, f, g, degree_max);
  }
  // the normalization is an isomorphism over this chart
  Summands A{ring_ideal}, B{quoted}, C{{one}};
  PolyMat f{{one}}, g{{zero}};
  return check_ses("normalization", chart, {1, 1, 1, 1, 2}, A, B, C, f, g, degree_max);
}

}  // namespace torushh
