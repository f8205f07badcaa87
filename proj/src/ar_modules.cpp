#include "torushh/ar_modules.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "torushh/errors.hpp"
#include "torushh/parallel.hpp"
#include "torushh/sparse_matrix.hpp"

namespace torushh {

namespace {

constexpr std::size_t kU = 0, kT = 1, kVars = 2;

Poly zero() { return Poly(kVars); }
Poly mono(int a, int b, const Rational& c = 1) { return Poly::monomial({a, b}, c); }
Poly q_pow(int e) { return mono(e, e); }

PolyVec zero_vec(std::size_t n) { return PolyVec(n, zero()); }
PolyVec unit_vec(std::size_t n, std::size_t j) {
  PolyVec v = zero_vec(n);
  v[j] = mono(0, 0);
  return v;
}

// Zero polys built elsewhere may carry nvars = 0.
Poly norm(const Poly& p) { return p.nvars() == kVars ? p : (p.is_zero() ? zero() : p); }
PolyVec norm(const PolyVec& v) {
  PolyVec out;
  for (const auto& p : v) out.push_back(norm(p));
  return out;
}

PolyVec scale(const PolyVec& v, const Poly& f) {
  PolyVec out;
  for (const auto& p : v) out.push_back(p * f);
  return out;
}

// (D v)_i = sum_j images[j][i] v_j
PolyVec apply(const std::vector<PolyVec>& cols, const PolyVec& v, std::size_t rows) {
  PolyVec out = zero_vec(rows);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows; ++i)
      if (!cols[j][i].is_zero()) out[i] += cols[j][i] * v[j];
  }
  return out;
}

PolyVec derive(const PolyVec& v) {
  PolyVec out;
  for (const auto& p : v) out.push_back(base_derivation(p));
  return out;
}

std::string vec_str(const PolyVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += armod_ring().str(norm(v[i]));
  }
  return s + ")";
}

GroebnerBasis module_basis(const std::vector<PolyVec>& gens, std::size_t rank) {
  std::vector<PolyVec> nz;
  for (const auto& g : gens)
    if (!is_zero(g)) nz.push_back(norm(g));
  return groebner(nz, kVars, rank, MonomialOrder::grevlex());
}

bool in_span(const GroebnerBasis& g, const PolyVec& v) {
  if (g.elems.empty()) return is_zero(v);
  return g.contains(norm(v));
}

ojson poly_json(const Poly& p) {
  ojson out = ojson::array();
  for (const auto& [e, c] : p.terms()) out.push_back(ojson::array({e[kU], e[kT], to_string(c)}));
  return out;
}

Poly poly_from_json(const ojson& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be a list of [a, b, \"c\"] terms");
  Poly p = zero();
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw ConfigError("bad term " + t.dump());
    int a = t[0].get<int>(), b = t[1].get<int>();
    if (a < 0 || b < 0) throw ConfigError("negative exponent in " + t.dump());
    Rational c;
    try {
      c = t[2].is_string() ? parse_rational(t[2].get<std::string>()) : Rational(t[2].get<long>());
    } catch (const std::exception&) {
      throw ConfigError("bad coefficient in " + t.dump());
    }
    p += mono(a, b, c);
  }
  return p;
}

ojson cols_json(const std::vector<PolyVec>& cols) {
  ojson out = ojson::array();
  for (const auto& c : cols) {
    ojson col = ojson::array();
    for (const auto& p : c) col.push_back(poly_json(p));
    out.push_back(col);
  }
  return out;
}

std::vector<PolyVec> cols_from_json(const ojson& j, std::size_t len, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be a list of columns");
  std::vector<PolyVec> out;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != len)
      throw ConfigError(what + " column must have " + std::to_string(len) + " entries");
    PolyVec v;
    for (const auto& p : c) v.push_back(poly_from_json(p));
    out.push_back(v);
  }
  return out;
}

// Entry f(u, t) as a polynomial in the surviving variable after setting the other to 1.
QPoly to_line(const Poly& f, ArLocus locus) {
  std::vector<Rational> c;
  for (const auto& [e, v] : f.terms()) {
    std::size_t k = static_cast<std::size_t>(locus == ArLocus::T1 ? e[kU] : e[kT]);
    if (c.size() <= k) c.resize(k + 1, Rational(0));
    c[k] += v;
  }
  return QPoly(c);
}

PIDModule structure(const PolyMatrix& A) {
  PIDModule out;
  if (A.cols == 0 || A.rows == 0) {
    out.free_rank = A.rows;
    return out;
  }
  SmithForm s = smith(A);
  std::size_t r = 0;
  for (const auto& d : s.diag) {
    if (d.is_zero()) continue;
    ++r;
    if (!d.is_unit()) out.torsion.push_back(d.monic());
  }
  out.free_rank = A.rows - r;
  return out;
}

std::size_t line_rank(const PolyMatrix& A) {
  if (A.cols == 0 || A.rows == 0) return 0;
  SmithForm s = smith(A);
  std::size_t r = 0;
  for (const auto& d : s.diag)
    if (!d.is_zero()) ++r;
  return r;
}

PolyMatrix line_matrix(const std::vector<PolyVec>& cols, std::size_t rows, ArLocus locus) {
  PolyMatrix A(rows, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t i = 0; i < rows; ++i) A(i, k) = to_line(cols[k][i], locus);
  return A;
}

// Sub-quotient (span of gens) / (span of gens ∩ span of rels), all inside R^n.
PresentedModule subquotient(const std::vector<PolyVec>& gens, const std::vector<PolyVec>& rels, std::size_t n) {
  PresentedModule out;
  out.gens = gens.size();
  if (gens.empty()) return out;
  std::vector<PolyVec> all = gens;
  all.insert(all.end(), rels.begin(), rels.end());
  for (const auto& s : syzygies(all, kVars, n)) {
    PolyVec head(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(gens.size()));
    if (!is_zero(head)) out.relations.push_back(norm(head));
  }
  return out;
}

std::vector<PolyVec> norm_cols(const std::vector<PolyVec>& cols) {
  std::vector<PolyVec> out;
  for (const auto& c : cols) out.push_back(norm(c));
  return out;
}

// Columns of a matrix given by columns; returns its rows as vectors.
std::vector<PolyVec> rows_of(const std::vector<PolyVec>& cols, std::size_t rows) {
  std::vector<PolyVec> out(rows, zero_vec(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t i = 0; i < rows; ++i) out[i][k] = norm(cols[k][i]);
  return out;
}

}  // namespace

const PolyRing& armod_ring() {
  static const PolyRing r{{"u", "t"}};
  return r;
}
Poly armod_u() { return mono(1, 0); }
Poly armod_t() { return mono(0, 1); }

Poly base_derivation(const Poly& f) {
  Poly out = zero();
  for (const auto& [e, c] : f.terms())
    if (e[kT] != e[kU]) out.add_term(e, c * (e[kT] - e[kU]));
  return out;
}

PresentedModule PresentedModule::free(std::size_t n) { return {n, {}}; }

PresentedModule PresentedModule::cyclic(const std::vector<Poly>& ideal) {
  PresentedModule m{1, {}};
  for (const auto& f : ideal) m.relations.push_back({norm(f)});
  return m;
}

PresentedModule PresentedModule::direct_sum(const PresentedModule& o) const {
  PresentedModule m{gens + o.gens, {}};
  for (const auto& r : relations) {
    PolyVec v = norm(r);
    v.resize(m.gens, zero());
    m.relations.push_back(v);
  }
  for (const auto& r : o.relations) {
    PolyVec v = zero_vec(gens);
    for (const auto& p : r) v.push_back(norm(p));
    m.relations.push_back(v);
  }
  return m;
}

ojson PresentedModule::to_json() const { return armod_to_json(*this, std::nullopt); }

Connection Connection::zero(std::size_t n) {
  Connection d;
  for (std::size_t j = 0; j < n; ++j) d.images.push_back(zero_vec(n));
  return d;
}

Connection Connection::diagonal(const std::vector<int>& weights) {
  Connection d = zero(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) d.images[j][j] = mono(0, 0, weights[j]);
  return d;
}

ojson Connection::to_json() const { return cols_json(images); }

std::pair<PresentedModule, std::optional<Connection>> armod_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_number_unsigned())
    throw ConfigError("module needs a nonnegative integer \"generators\"");
  PresentedModule m;
  m.gens = j["generators"].get<std::size_t>();
  if (j.contains("relations")) m.relations = cols_from_json(j["relations"], m.gens, "relations");
  std::optional<Connection> d;
  if (j.contains("connection")) {
    Connection c;
    c.images = cols_from_json(j["connection"], m.gens, "connection");
    if (c.images.size() != m.gens) throw ConfigError("connection must have one column per generator");
    d = c;
  }
  return {m, d};
}

ojson armod_to_json(const PresentedModule& m, const std::optional<Connection>& d) {
  ojson j;
  j["ring"] = "Q[u,t]";
  j["generators"] = m.gens;
  j["relations"] = cols_json(m.relations);
  if (d) j["connection"] = d->to_json();
  return j;
}

ConnectionCheck check_connection(const PresentedModule& m, const Connection& d) {
  if (d.images.size() != m.gens) throw std::invalid_argument("connection size does not match generators");
  ConnectionCheck out;
  GroebnerBasis g = module_basis(m.relations, m.gens);
  for (std::size_t k = 0; k < m.relations.size(); ++k) {
    PolyVec r = norm(m.relations[k]);
    PolyVec v = derive(r);
    PolyVec dr = apply(d.images, r, m.gens);
    for (std::size_t i = 0; i < m.gens; ++i) v[i] += dr[i];
    if (in_span(g, v)) continue;
    out.failing_relation = k;
    PolyVec rem = g.elems.empty() ? v : g.reduce(v);
    out.witness = "relation " + std::to_string(k) + ": D_A(r) + D r = " + vec_str(v) + " has normal form " +
                  vec_str(rem) + " modulo the relations";
    return out;
  }
  out.ok = true;
  return out;
}

std::optional<Connection> solve_connection(const PresentedModule& m, int degree_bound) {
  const std::size_t n = m.gens, nr = m.relations.size();
  if (nr == 0) return Connection::zero(n);
  int rel_deg = 0;
  for (const auto& r : m.relations)
    for (const auto& p : r) rel_deg = std::max(rel_deg, p.degree());
  std::vector<Exponents> dmon, cmon;
  for (int d = 0; d <= degree_bound; ++d)
    for (auto& e : monomials_of_degree(kVars, d, {1, 1})) dmon.push_back(e);
  for (int d = 0; d <= degree_bound + rel_deg; ++d)
    for (auto& e : monomials_of_degree(kVars, d, {1, 1})) cmon.push_back(e);

  // unknowns: D(i,j) coefficient on dmon[a]; then C(l,k) coefficient on cmon[b]
  auto d_index = [&](std::size_t i, std::size_t j, std::size_t a) { return (i * n + j) * dmon.size() + a; };
  const std::size_t d_count = n * n * dmon.size();
  auto c_index = [&](std::size_t l, std::size_t k, std::size_t b) { return d_count + (l * nr + k) * cmon.size() + b; };
  const std::size_t unknowns = d_count + nr * nr * cmon.size();

  std::map<std::tuple<std::size_t, std::size_t, Exponents>, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;
  Vec rhs;
  auto row = [&](std::size_t k, std::size_t i, const Exponents& e) -> std::size_t {
    auto key = std::make_tuple(k, i, e);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    row_of.emplace(key, rows.size());
    rows.emplace_back();
    rhs.emplace_back(0);
    return rows.size() - 1;
  };
  auto shift = [](const Exponents& a, const Exponents& b) { return Exponents{a[0] + b[0], a[1] + b[1]}; };

  for (std::size_t k = 0; k < nr; ++k) {
    PolyVec r = norm(m.relations[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Poly dr = base_derivation(r[i]);
      for (const auto& [e, c] : dr.terms()) rhs[row(k, i, e)] -= c;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [e, c] : r[j].terms())
          for (std::size_t a = 0; a < dmon.size(); ++a) rows[row(k, i, shift(e, dmon[a]))][d_index(i, j, a)] += c;
      for (std::size_t l = 0; l < nr; ++l) {
        const Poly rl = norm(m.relations[l][i]);
        for (const auto& [e, c] : rl.terms())
          for (std::size_t b = 0; b < cmon.size(); ++b) rows[row(k, i, shift(e, cmon[b]))][c_index(l, k, b)] -= c;
      }
    }
  }
  SparseMatrix A(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r])
      if (sgn(v) != 0) A.set(r, c, v);
  Vec x;
  if (!solve(A, rhs, x)) return std::nullopt;
  Connection d = Connection::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < dmon.size(); ++a)
        if (sgn(x[d_index(i, j, a)]) != 0) d.images[j][i] += Poly::monomial(dmon[a], x[d_index(i, j, a)]);
  return d;
}

bool PIDModule::is_q_torsion() const {
  if (free_rank != 0) return false;
  for (const auto& f : torsion)
    if (f.valuation() != f.degree()) return false;
  return true;
}

std::string PIDModule::str() const {
  std::string s = free_rank ? "Q[q]^" + std::to_string(free_rank) : "";
  for (const auto& f : torsion) s += std::string(s.empty() ? "" : " + ") + "Q[q]/(" + f.str() + ")";
  return s.empty() ? "0" : s;
}

ojson PIDModule::to_json() const {
  ojson j;
  j["free_rank"] = free_rank;
  j["torsion"] = ojson::array();
  for (const auto& f : torsion) j["torsion"].push_back(f.str());
  j["structure"] = str();
  return j;
}

PIDModule restrict_to_line(const PresentedModule& m, ArLocus locus) {
  if (locus == ArLocus::Q0) throw std::invalid_argument("q = 0 is not a line; use restrict_q0");
  return structure(line_matrix(m.relations, m.gens, locus));
}

PresentedModule restrict_q0(const PresentedModule& m) {
  PresentedModule out = m;
  for (std::size_t j = 0; j < m.gens; ++j) out.relations.push_back(scale(unit_vec(m.gens, j), q_pow(1)));
  return out;
}

ojson QTorsionResult::to_json() const {
  ojson j;
  j["torsion"] = torsion;
  j["exponent"] = exponent;
  j["bound"] = bound;
  return j;
}

QTorsionResult is_q_torsion(const PresentedModule& m, int E) {
  QTorsionResult out;
  out.bound = E;
  GroebnerBasis g = module_basis(m.relations, m.gens);
  int worst = 0;
  bool all_found = true;
  for (std::size_t j = 0; j < m.gens && all_found; ++j) {
    int found = -1;
    for (int e = 0; e <= E && found < 0; ++e)
      if (in_span(g, scale(unit_vec(m.gens, j), q_pow(e)))) found = e;
    if (found < 0) all_found = false;
    worst = std::max(worst, found);
  }
  if (all_found) {
    out.torsion = true;
    out.exponent = worst;
    return out;
  }
  // M[1/q] = 0 iff each e_j lies in Rel + (1 - w u t) over Q[u, t, w].
  const std::size_t n3 = 3;
  std::vector<Poly> embed{Poly::variable(n3, 0), Poly::variable(n3, 1)};
  std::vector<PolyVec> gens;
  for (const auto& r : m.relations) {
    PolyVec v;
    for (const auto& p : r) v.push_back(norm(p).map_vars(embed));
    if (!is_zero(v)) gens.push_back(v);
  }
  Poly inv = Poly::constant(n3, 1) - Poly::monomial({1, 1, 1}, 1);
  for (std::size_t j = 0; j < m.gens; ++j) {
    PolyVec v(m.gens, Poly(n3));
    v[j] = inv;
    gens.push_back(v);
  }
  GroebnerBasis loc = groebner(gens, n3, m.gens, MonomialOrder::grevlex());
  for (std::size_t j = 0; j < m.gens; ++j) {
    PolyVec v(m.gens, Poly(n3));
    v[j] = Poly::constant(n3, 1);
    if (!loc.contains(v)) return out;  // M[1/q] != 0
  }
  throw BoundExhausted("module is q-torsion but some generator needs q^e with e > " + std::to_string(E));
}

bool q_torsion_after_completion(const PresentedModule& m, int E) {
  for (int e = 0; e <= E; ++e) {
    std::vector<PolyVec> gens = m.relations;
    for (std::size_t j = 0; j < m.gens; ++j) gens.push_back(scale(unit_vec(m.gens, j), q_pow(e + 1)));
    GroebnerBasis g = module_basis(gens, m.gens);
    bool ok = true;
    for (std::size_t j = 0; j < m.gens && ok; ++j) ok = in_span(g, scale(unit_vec(m.gens, j), q_pow(e)));
    if (ok) return true;
  }
  return false;
}

ojson DualModule::to_json() const {
  ojson j;
  j["rank"] = rank();
  j["basis"] = cols_json(basis);
  return j;
}

namespace {

std::vector<PolyVec> prune(std::vector<PolyVec> gens, std::size_t n) {
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const PolyVec& v) { return is_zero(v); }), gens.end());
  for (std::size_t idx = gens.size(); idx-- > 0;) {
    std::vector<PolyVec> others;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (k != idx) others.push_back(gens[k]);
    if (in_span(module_basis(others, n), gens[idx])) gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return gens;
}

bool independent(const std::vector<PolyVec>& gens, std::size_t n) {
  if (gens.empty()) return true;
  for (const auto& s : syzygies(gens, kVars, n))
    if (!is_zero(s)) return false;
  return true;
}

}  // namespace

DualModule dual_module(const PresentedModule& m) {
  const std::size_t n = m.gens;
  DualModule out;
  std::vector<PolyVec> gens;
  bool has_rel = false;
  for (const auto& r : m.relations)
    if (!is_zero(r)) has_rel = true;
  if (!has_rel) {
    for (std::size_t j = 0; j < n; ++j) gens.push_back(unit_vec(n, j));
  } else if (n > 0) {
    std::vector<PolyVec> nz;
    for (const auto& r : m.relations)
      if (!is_zero(r)) nz.push_back(norm(r));
    gens = syzygies(rows_of(nz, n), kVars, nz.size());
  }
  std::vector<PolyVec> basis = prune(gens, n);
  if (!independent(basis, n)) {
    basis = prune(module_basis(gens, n).elems, n);
    if (!independent(basis, n)) {
      std::string w = "generators of Hom(M, R) could not be pruned to a basis; syzygy ";
      w += vec_str(syzygies(basis, kVars, n).front());
      throw NotFreeWitness(w);
    }
  }
  out.basis = basis;
  out.presentation = PresentedModule::free(basis.size());
  return out;
}

bool DoubleDualReport::passes() const {
  return double_dual_free && kernel_ok && cokernel_ok;
}

ojson DoubleDualReport::to_json() const {
  ojson j;
  j["dual_rank"] = dual_rank;
  j["double_dual_free"] = double_dual_free;
  j["kernel"] = kernel_torsion.to_json();
  j["cokernel"] = cokernel_torsion.to_json();
  j["kernel_ok"] = kernel_ok;
  j["cokernel_ok"] = cokernel_ok;
  j["completion_dependent"] = completion_dependent;
  if (!note.empty()) j["note"] = note;
  j["passes"] = passes();
  return j;
}

DoubleDualReport double_dual_comparison(const PresentedModule& m, const Connection& d, int E) {
  auto cc = check_connection(m, d);
  if (!cc.ok) throw std::invalid_argument("not a connection: " + cc.witness);
  DoubleDualReport out;
  const std::size_t n = m.gens;
  DualModule dual = dual_module(m);
  const std::size_t r = dual.rank();
  out.dual_rank = r;
  // M^vv = Hom(R^r, R) is free of rank r; confirm through the same routine.
  out.double_dual_free = dual_module(dual.presentation).rank() == r;

  // Phi: R^n -> R^r, e_j -> (b_k[j])_k
  std::vector<PolyVec> phi_cols(n, zero_vec(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < n; ++j) phi_cols[j][k] = norm(dual.basis[k][j]);

  std::vector<PolyVec> ker_gens;
  if (r == 0) {
    for (std::size_t j = 0; j < n; ++j) ker_gens.push_back(unit_vec(n, j));
  } else if (n > 0) {
    for (auto& s : syzygies(phi_cols, kVars, r))
      if (!is_zero(s)) ker_gens.push_back(norm(s));
  }
  out.kernel = subquotient(ker_gens, m.relations, n);
  out.cokernel = PresentedModule{r, {}};
  for (const auto& c : phi_cols)
    if (!is_zero(c)) out.cokernel.relations.push_back(c);

  auto judge = [&](const PresentedModule& t, QTorsionResult& res, bool& ok, const char* name) {
    res = is_q_torsion(t, E);
    ok = res.torsion;
    if (ok) return;
    if (q_torsion_after_completion(t, E)) {
      ok = out.completion_dependent = true;
      out.note += std::string(out.note.empty() ? "" : "; ") + name +
                  " is q-torsion only after q-adic completion (q acts invertibly on a summand)";
    } else {
      out.note += std::string(out.note.empty() ? "" : "; ") + name + " is not q-torsion";
    }
  };
  judge(out.kernel, out.kernel_torsion, out.kernel_ok, "kernel");
  judge(out.cokernel, out.cokernel_torsion, out.cokernel_ok, "cokernel");
  return out;
}

ojson PrimeReport::to_json() const {
  ojson j;
  j["minimal"] = minimal;
  j["embedded_origin"] = embedded_origin;
  j["unit"] = unit;
  return j;
}

PrimeReport invariant_ideal_primes(const std::vector<Poly>& J) {
  // each generator is u^a t^b p(ut) with p(0) != 0, a unit after completion
  std::vector<std::pair<int, int>> monos;
  for (const auto& g0 : J) {
    Poly g = norm(g0);
    if (g.is_zero()) continue;
    int w = 0, lo = -1;
    bool first = true;
    for (const auto& [e, c] : g.terms()) {
      int we = e[kT] - e[kU];
      if (first) w = we;
      else if (we != w)
        throw NotInvariant(armod_ring().str(g) + " mixes weights " + std::to_string(w) + " and " + std::to_string(we));
      first = false;
      lo = lo < 0 ? e[kU] : std::min(lo, e[kU]);
    }
    monos.emplace_back(lo, lo + w);
  }
  PrimeReport out;
  if (monos.empty()) {
    out.minimal = {"(0)"};
    return out;
  }
  for (auto [a, b] : monos)
    if (a == 0 && b == 0) {
      out.unit = true;
      return out;
    }
  bool in_u = true, in_t = true;
  int amin = monos[0].first, bmin = monos[0].second;
  for (auto [a, b] : monos) {
    in_u = in_u && a > 0;
    in_t = in_t && b > 0;
    amin = std::min(amin, a);
    bmin = std::min(bmin, b);
  }
  if (in_u) out.minimal.push_back("(u)");
  if (in_t) out.minimal.push_back("(t)");
  if (!in_u && !in_t) out.minimal.push_back("(u,t)");
  // I = u^amin t^bmin * J with J (u,t)-primary or (1); (u,t) is associated iff J != (1)
  bool gcd_in = false;
  for (auto [a, b] : monos) gcd_in = gcd_in || (a == amin && b == bmin);
  out.embedded_origin = !gcd_in && (in_u || in_t);
  return out;
}

ojson FgComplexReport::to_json() const {
  ojson j;
  j["precondition"] = precondition;
  if (!reason.empty()) j["reason"] = reason;
  j["degrees"] = ojson::array();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    ojson e;
    e["degree"] = i;
    e["cohomology_of_restriction"] = lhs[i].to_json();
    e["restriction_of_cohomology"] = rhs[i].to_json();
    e["agree"] = lhs[i] == rhs[i];
    j["degrees"].push_back(e);
  }
  j["agrees"] = agrees;
  return j;
}

namespace {

std::vector<PolyVec> mat_mul(const std::vector<PolyVec>& A, std::size_t rows, const std::vector<PolyVec>& B) {
  std::vector<PolyVec> out;
  for (const auto& b : B) out.push_back(apply(A, b, rows));
  return out;
}

std::string check_complex(const FreeComplex& c) {
  const std::size_t L = c.ranks.size();
  if (L == 0) return "empty complex";
  if (c.d.size() + 1 != L) return "need one differential between consecutive terms";
  if (c.connection.size() != L) return "need one connection per term";
  for (std::size_t i = 0; i < L; ++i) {
    if (c.connection[i].size() != c.ranks[i]) return "connection " + std::to_string(i) + " has wrong size";
    for (const auto& col : c.connection[i])
      if (col.size() != c.ranks[i]) return "connection " + std::to_string(i) + " has wrong size";
  }
  for (std::size_t i = 0; i + 1 < L; ++i) {
    if (c.d[i].size() != c.ranks[i]) return "d" + std::to_string(i) + " has wrong number of columns";
    for (const auto& col : c.d[i])
      if (col.size() != c.ranks[i + 1]) return "d" + std::to_string(i) + " has wrong number of rows";
  }
  for (std::size_t i = 0; i + 2 < L; ++i)
    for (const auto& col : mat_mul(c.d[i + 1], c.ranks[i + 2], c.d[i]))
      if (!is_zero(col)) return "d" + std::to_string(i + 1) + " d" + std::to_string(i) + " != 0";
  for (std::size_t i = 0; i + 1 < L; ++i) {
    auto lhs = mat_mul(c.connection[i + 1], c.ranks[i + 1], c.d[i]);
    auto rhs = mat_mul(c.d[i], c.ranks[i + 1], c.connection[i]);
    for (std::size_t k = 0; k < c.ranks[i]; ++k) {
      PolyVec v = derive(norm(c.d[i][k]));
      for (std::size_t r = 0; r < c.ranks[i + 1]; ++r) v[r] += lhs[k][r] - rhs[k][r];
      if (!is_zero(v))
        return "d" + std::to_string(i) + " is not horizontal: D_A(d) + D d - d D on column " + std::to_string(k) +
               " is " + vec_str(v);
    }
  }
  return "";
}

}  // namespace

FgComplexReport fgcomplex_check(const FreeComplex& c) {
  FgComplexReport out;
  out.reason = check_complex(c);
  if (!out.reason.empty()) return out;
  out.precondition = true;
  const std::size_t L = c.ranks.size();
  out.agrees = true;
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t n = c.ranks[i];
    PIDModule left;
    std::size_t out_rank = i + 1 < L ? line_rank(line_matrix(c.d[i], c.ranks[i + 1], ArLocus::T1)) : 0;
    if (i > 0) {
      left = structure(line_matrix(c.d[i - 1], n, ArLocus::T1));
      left.free_rank -= out_rank;
    } else {
      left.free_rank = n - out_rank;
    }

    std::vector<PolyVec> kernel;
    bool zero_map = i + 1 >= L || c.ranks[i + 1] == 0;
    if (!zero_map) {
      zero_map = true;
      for (const auto& col : c.d[i])
        if (!is_zero(col)) zero_map = false;
    }
    if (zero_map) {
      for (std::size_t j = 0; j < n; ++j) kernel.push_back(unit_vec(n, j));
    } else if (n > 0) {
      for (auto& s : syzygies(norm_cols(c.d[i]), kVars, c.ranks[i + 1]))
        if (!is_zero(s)) kernel.push_back(norm(s));
    }
    std::vector<PolyVec> image;
    if (i > 0)
      for (const auto& col : c.d[i - 1])
        if (!is_zero(col)) image.push_back(norm(col));
    PresentedModule H = subquotient(kernel, image, n);
    PIDModule right = restrict_to_line(H, ArLocus::T1);
    out.agrees = out.agrees && left == right;
    out.lhs.push_back(left);
    out.rhs.push_back(right);
  }
  return out;
}

namespace {

// Weight-homogeneous entry of weight w and degree <= 2, possibly zero.
Poly random_weighted(std::mt19937_64& rng, int w) {
  Poly p = zero();
  for (int a = 0; a <= 2; ++a) {
    int b = a + w;
    if (b < 0 || a + b > 2) continue;
    int c = static_cast<int>(rng() % 5) - 2;
    if (rng() % 3 == 0) c = 0;
    if (c) p += mono(a, b, c);
  }
  return p;
}

Poly random_poly(std::mt19937_64& rng) {
  Poly p = zero();
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      if (rng() % 3 == 0) p += mono(a, b, static_cast<int>(rng() % 5) - 2);
  return p;
}

PresentedModule random_module(std::mt19937_64& rng) {
  PresentedModule m;
  m.gens = 1 + rng() % 3;
  std::size_t nrel = rng() % 4;
  bool homogeneous = rng() % 8 != 0;
  std::vector<int> w(m.gens);
  for (auto& x : w) x = static_cast<int>(rng() % 5) - 2;
  for (std::size_t k = 0; k < nrel; ++k) {
    int mu = static_cast<int>(rng() % 5) - 2;
    PolyVec col;
    for (std::size_t j = 0; j < m.gens; ++j) col.push_back(homogeneous ? random_weighted(rng, mu - w[j]) : random_poly(rng));
    if (!is_zero(col)) m.relations.push_back(col);
  }
  return m;
}

}  // namespace

ArBatch random_connected_modules(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ArBatch out;
  while (out.instances.size() < count) {
    if (out.discarded > 50 * (count + 1)) throw BoundExhausted("random generator keeps producing modules without connection");
    PresentedModule m = random_module(rng);
    auto d = solve_connection(m, 2);
    if (!d) {
      ++out.discarded;
      continue;
    }
    out.instances.push_back({m, *d});
  }
  return out;
}

ojson PropertySuite::to_json() const {
  ojson j;
  j["instances"] = instances;
  j["discarded"] = discarded;
  j["connection_ok"] = connection_ok;
  j["negative_controls"] = negative_controls;
  j["negative_rejected"] = negative_rejected;
  j["dual_free"] = dual_free;
  j["double_dual_ok"] = double_dual_ok;
  j["completion_flagged"] = completion_flagged;
  j["qtorsmod_applicable"] = qtorsmod_applicable;
  j["qtorsmod_ok"] = qtorsmod_ok;
  j["ideals_checked"] = ideals_checked;
  j["ideals_ok"] = ideals_ok;
  j["failures"] = failures;
  j["passed"] = passed();
  return j;
}

namespace {

struct InstanceOutcome {
  bool connection_ok = false, dual_free = false, double_dual_ok = false, flagged = false;
  bool qt_applicable = false, qt_ok = false, ideal_ok = false;
  std::size_t controls = 0, rejected = 0;
  std::vector<std::string> failures;
};

// Modules that admit no connection: the support is not invariant under the torus.
PresentedModule bad_module(std::mt19937_64& rng) {
  Rational c(static_cast<long>(1 + rng() % 3) * (rng() % 2 ? 1 : -1));
  switch (rng() % 3) {
    case 0: return PresentedModule::cyclic({armod_t() - mono(0, 0, c)});
    case 1: return PresentedModule::cyclic({armod_u() - mono(0, 0, c)});
    default: return PresentedModule::cyclic({armod_t() + armod_u() * mono(0, 0, c)});
  }
}

bool prime_contains(const std::string& p, const Poly& g) {
  if (p == "(0)") return g.is_zero();
  std::vector<Poly> gens;
  if (p.find('u') != std::string::npos) gens.push_back(armod_u());
  if (p.find('t') != std::string::npos) gens.push_back(armod_t());
  return groebner(gens, MonomialOrder::grevlex()).contains(norm(g));
}

InstanceOutcome check_instance(const ArInstance& inst, std::uint64_t seed, std::size_t idx, int E) {
  InstanceOutcome o;
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1)));
  const auto& m = inst.module;
  const std::string tag = "instance " + std::to_string(idx) + ": ";
  auto fail = [&](const std::string& s) { o.failures.push_back(tag + s); };
  try {
    o.connection_ok = check_connection(m, inst.connection).ok;
    if (!o.connection_ok) fail("generated connection rejected");

    for (int k = 0; k < 2; ++k) {
      PresentedModule bad = bad_module(rng);
      PresentedModule sum = k == 0 ? bad : m.direct_sum(bad);
      Connection d = Connection::zero(sum.gens);
      if (k == 1) {
        for (std::size_t j = 0; j < m.gens; ++j)
          for (std::size_t i = 0; i < m.gens; ++i) d.images[j][i] = inst.connection.images[j][i];
        d.images[m.gens][m.gens] = random_weighted(rng, 0);
      }
      ++o.controls;
      if (!check_connection(sum, d).ok) ++o.rejected;
      else fail("negative control accepted: " + armod_to_json(sum, d).dump());
    }

    DualModule dual = dual_module(m);
    o.dual_free = true;
    (void)dual;

    auto dd = double_dual_comparison(m, inst.connection, E);
    o.double_dual_ok = dd.passes();
    o.flagged = dd.completion_dependent;
    if (!o.double_dual_ok) fail("double dual: " + dd.note);

    if (restrict_to_line(m, ArLocus::T1).is_q_torsion()) {
      o.qt_applicable = true;
      o.qt_ok = is_q_torsion(m, E).torsion;
      if (!o.qt_ok) fail("M/(t-1) is q-torsion but M is not");
    }

    std::vector<Poly> ideal;
    std::size_t ng = 1 + rng() % 3;
    for (std::size_t k = 0; k < ng; ++k) ideal.push_back(random_weighted(rng, static_cast<int>(rng() % 5) - 2));
    PrimeReport pr = invariant_ideal_primes(ideal);
    static const std::set<std::string> four{"(0)", "(u)", "(t)", "(u,t)"};
    o.ideal_ok = true;
    for (const auto& p : pr.minimal) {
      if (!four.count(p)) o.ideal_ok = false;
      for (const auto& g : ideal)
        if (!prime_contains(p, g)) o.ideal_ok = false;
    }
    if (!o.ideal_ok) fail("invariant ideal primes outside the four candidates or not containing the ideal");
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return o;
}

}  // namespace

PropertySuite run_property_suite(std::size_t count, std::uint64_t seed, int E) {
  ArBatch batch = random_connected_modules(count, seed);
  std::vector<InstanceOutcome> res(batch.instances.size());
  parallel_for(res.size(), [&](std::size_t i) { res[i] = check_instance(batch.instances[i], seed, i, E); });
  PropertySuite s;
  s.instances = batch.instances.size();
  s.discarded = batch.discarded;
  for (const auto& o : res) {
    s.connection_ok += o.connection_ok;
    s.negative_controls += o.controls;
    s.negative_rejected += o.rejected;
    s.dual_free += o.dual_free;
    s.double_dual_ok += o.double_dual_ok;
    s.completion_flagged += o.flagged;
    s.qtorsmod_applicable += o.qt_applicable;
    s.qtorsmod_ok += o.qt_ok;
    s.ideals_checked += 1;
    s.ideals_ok += o.ideal_ok;
    s.failures.insert(s.failures.end(), o.failures.begin(), o.failures.end());
  }
  return s;
}

}  // namespace torushh
