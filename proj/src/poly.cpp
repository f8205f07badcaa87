#include "torushh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "torushh/errors.hpp"

namespace torushh {

namespace {

int grevlex_cmp(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi, const std::vector<int>* w) {
  long da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    long wi = w && !w->empty() ? (*w)[i] : 1;
    da += wi * a[i];
    db += wi * b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents minus(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

PolyVec scale_shift(const PolyVec& v, const Exponents& e, const Rational& c) {
  PolyVec r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p.mul_term(e, c));
  return r;
}

void sub_into(PolyVec& a, const PolyVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] -= b[i];
}

struct Reducer {
  const MonomialOrder& ord;
  std::vector<const PolyVec*> basis;
  std::vector<LeadTerm> leads;

  void add(const PolyVec* g) {
    basis.push_back(g);
    leads.push_back(*lead_term(*g, ord));
  }

  std::optional<std::size_t> divisor(const LeadTerm& lt) const {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (leads[k].comp == lt.comp && divides(leads[k].exps, lt.exps)) return k;
    return std::nullopt;
  }

  PolyVec reduce(PolyVec p, bool full = true) const {
    PolyVec rem(p.size(), Poly(p.empty() ? 0 : p[0].nvars()));
    while (true) {
      auto lt = lead_term(p, ord);
      if (!lt) break;
      if (auto k = divisor(*lt)) {
        sub_into(p, scale_shift(*basis[*k], minus(lt->exps, leads[*k].exps), lt->coeff / leads[*k].coeff));
      } else {
        if (!full) {
          for (std::size_t i = 0; i < p.size(); ++i) rem[i] += p[i];
          return rem;
        }
        rem[lt->comp].add_term(lt->exps, lt->coeff);
        p[lt->comp].add_term(lt->exps, -lt->coeff);
      }
    }
    return rem;
  }
};

PolyVec spoly(const PolyVec& f, const LeadTerm& lf, const PolyVec& g, const LeadTerm& lg) {
  Exponents l = lcm(lf.exps, lg.exps);
  PolyVec a = scale_shift(f, minus(l, lf.exps), Rational(1) / lf.coeff);
  sub_into(a, scale_shift(g, minus(l, lg.exps), Rational(1) / lg.coeff));
  return a;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

PolyVec monic_vec(const PolyVec& v, const MonomialOrder& ord) {
  auto lt = lead_term(v, ord);
  if (!lt) return v;
  return scale_shift(v, Exponents(v[lt->comp].nvars(), 0), Rational(1) / lt->coeff);
}

}  // namespace

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

int weighted_degree(const Exponents& e, const std::vector<int>& w) {
  if (w.empty()) return total_degree(e);
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += w[i] * e[i];
  return d;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  switch (kind) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::BlockGrevlex: {
      int c = grevlex_cmp(a, b, 0, std::min(block, a.size()), nullptr);
      if (c) return c;
      return grevlex_cmp(a, b, std::min(block, a.size()), a.size(), nullptr);
    }
    case Kind::Grevlex:
    default:
      return grevlex_cmp(a, b, 0, a.size(), &weights);
  }
}

std::string MonomialOrder::describe() const {
  std::string s;
  switch (kind) {
    case Kind::Lex: s = "lex"; break;
    case Kind::BlockGrevlex: s = "block-grevlex(" + std::to_string(block) + ")"; break;
    default:
      s = "grevlex";
      if (!weights.empty()) {
        s += "[w=";
        for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
        s += "]";
      }
  }
  return s + (position_over_term ? ", position-over-term" : ", term-over-position");
}

// ---- Poly

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && total_degree(t_.begin()->first) == 0); }

Rational Poly::coeff(const Exponents& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, total_degree(e));
  return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (n_ == 0) n_ = e.size();
  if (sgn(c) == 0) return;
  auto [it, inserted] = t_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (n_ == 0) n_ = o.n_;
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const { return *this * Rational(-1); }

Poly Poly::operator*(const Poly& o) const {
  Poly r(std::max(n_, o.n_));
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) {
      Exponents e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(n_);
  if (sgn(c) == 0) return r;
  for (const auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

Poly Poly::pow(int k) const {
  Poly r = constant(n_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::mul_term(const Exponents& e, const Rational& c) const {
  Poly r(n_);
  if (sgn(c) == 0) return r;
  for (const auto& [f, x] : t_) {
    Exponents g(f.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = f[i] + e[i];
    r.t_.emplace(std::move(g), x * c);
  }
  return r;
}

Poly Poly::map_vars(const std::vector<Poly>& images) const {
  if (images.size() != n_) throw std::invalid_argument("map_vars: wrong number of images");
  std::size_t m = images.empty() ? 0 : images[0].nvars();
  Poly r(m);
  // cache powers per variable
  std::vector<std::vector<Poly>> powers(n_);
  for (const auto& [e, c] : t_) {
    Poly term = Poly::constant(m, c);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(m, 1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      term = term * pw[e[i]];
    }
    r += term;
  }
  return r;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < n_; ++i) images.push_back(i == var ? value : variable(n_, i));
  return map_vars(images);
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  Rational s = 0;
  for (const auto& [e, c] : t_) {
    Rational m = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    s += m;
  }
  return s;
}

const Exponents& Poly::lead_exponents(const MonomialOrder& ord) const {
  if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = t_.begin();
  for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
    if (ord.compare(it->first, best->first) > 0) best = it;
  return best->first;
}

Rational Poly::lead_coeff(const MonomialOrder& ord) const { return t_.at(lead_exponents(ord)); }

Poly Poly::monic(const MonomialOrder& ord) const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / lead_coeff(ord));
}

// ---- PolyRing

std::size_t PolyRing::index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown variable " + name);
}

Poly PolyRing::parse(const std::string& input) const {
  std::string s;
  for (char ch : input)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ConfigError("empty polynomial");
  Poly r(nvars());
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && !((s[end] == '+' || s[end] == '-') && end > pos && s[end - 1] != '_' && s[end - 1] != '^'))
      ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw ConfigError("malformed polynomial: " + input);
    Rational coef = sign;
    Exponents e(nvars(), 0);
    std::size_t a = 0;
    while (a <= term.size()) {
      std::size_t b = term.find('*', a);
      if (b == std::string::npos) b = term.size();
      std::string f = term.substr(a, b - a);
      if (f.empty()) throw ConfigError("malformed polynomial: " + input);
      if (std::isdigit(static_cast<unsigned char>(f[0]))) {
        coef *= parse_rational(f);
      } else {
        int k = 1;
        std::size_t caret = f.rfind('^');
        if (caret != std::string::npos) {
          k = std::stoi(f.substr(caret + 1));
          f = f.substr(0, caret);
        }
        std::size_t idx;
        try {
          idx = index(f);
        } catch (const std::invalid_argument&) {
          throw ConfigError("unknown variable '" + f + "' in " + input);
        }
        e[idx] += k;
      }
      a = b + 1;
    }
    r.add_term(e, coef);
    pos = end;
  }
  return r;
}

std::string PolyRing::str(const Exponents& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PolyRing::str(const Poly& p, const MonomialOrder& ord) const {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponents, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) { return ord.compare(x.first, y.first) > 0; });
  std::string s;
  for (const auto& [e, c] : terms) {
    bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    std::string m = str(e);
    if (m == "1") s += a.get_str();
    else if (a == 1) s += m;
    else s += a.get_str() + "*" + m;
  }
  return s;
}

// ---- module elements

std::optional<LeadTerm> lead_term(const PolyVec& v, const MonomialOrder& ord) {
  std::optional<LeadTerm> best;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c].is_zero()) continue;
    const Exponents& e = v[c].lead_exponents(ord);
    if (ord.position_over_term) return LeadTerm{c, e, v[c].coeff(e)};
    if (!best || ord.compare(e, best->exps) > 0) best = LeadTerm{c, e, v[c].coeff(e)};
  }
  return best;
}

bool is_zero(const PolyVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyVec GroebnerBasis::reduce(const PolyVec& v) const {
  Reducer r{order, {}, {}};
  for (const auto& g : elems) r.add(&g);
  PolyVec w = v;
  for (auto& p : w)
    if (p.nvars() == 0) p = Poly(nvars);
  return r.reduce(w);
}

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& g : elems)
    if (g[0].is_constant() && !g[0].is_zero()) return true;
  return false;
}

std::vector<std::pair<std::size_t, Exponents>> GroebnerBasis::leading_monomials() const {
  std::vector<std::pair<std::size_t, Exponents>> out;
  for (const auto& g : elems) {
    auto lt = lead_term(g, order);
    out.emplace_back(lt->comp, lt->exps);
  }
  return out;
}

GroebnerBasis groebner(const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank, const MonomialOrder& ord) {
  std::vector<PolyVec> G;
  std::vector<LeadTerm> L;
  for (const auto& g : gens) {
    PolyVec v = g;
    v.resize(rank, Poly(nvars));
    for (auto& p : v)
      if (p.nvars() == 0) p = Poly(nvars);
    if (is_zero(v)) continue;
    v = monic_vec(v, ord);
    L.push_back(*lead_term(v, ord));
    G.push_back(std::move(v));
  }
  struct Pair {
    int deg;
    std::size_t i, j;
  };
  auto cmp = [](const Pair& a, const Pair& b) { return std::tie(a.deg, a.i, a.j) < std::tie(b.deg, b.i, b.j); };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (L[i].comp != L[j].comp) continue;
      if (rank == 1 && coprime(L[i].exps, L[j].exps)) continue;
      pairs.push_back({total_degree(lcm(L[i].exps, L[j].exps)), i, j});
    }
  };
  for (std::size_t j = 0; j < G.size(); ++j) add_pairs(j);
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), cmp);
    Pair p = *it;
    pairs.erase(it);
    PolyVec s = spoly(G[p.i], L[p.i], G[p.j], L[p.j]);
    Reducer red{ord, {}, {}};
    for (std::size_t k = 0; k < G.size(); ++k) red.add(&G[k]);
    PolyVec r = red.reduce(s);
    if (is_zero(r)) continue;
    r = monic_vec(r, ord);
    L.push_back(*lead_term(r, ord));
    G.push_back(std::move(r));
    add_pairs(G.size() - 1);
  }
  // minimalize
  std::vector<bool> keep(G.size(), true);
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < G.size() && keep[i]; ++j) {
      if (i == j || !keep[j] || L[i].comp != L[j].comp || !divides(L[j].exps, L[i].exps)) continue;
      if (L[i].exps == L[j].exps && j > i) continue;
      keep[i] = false;
    }
  std::vector<PolyVec> M;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (keep[i]) M.push_back(G[i]);
  // tail-reduce
  for (std::size_t i = 0; i < M.size(); ++i) {
    Reducer red{ord, {}, {}};
    for (std::size_t k = 0; k < M.size(); ++k)
      if (k != i) red.add(&M[k]);
    auto lt = *lead_term(M[i], ord);
    PolyVec head(rank, Poly(nvars));
    head[lt.comp].add_term(lt.exps, lt.coeff);
    PolyVec tail = M[i];
    tail[lt.comp].add_term(lt.exps, -lt.coeff);
    PolyVec r = red.reduce(tail);
    for (std::size_t c = 0; c < rank; ++c) head[c] += r[c];
    M[i] = monic_vec(head, ord);
  }
  std::sort(M.begin(), M.end(), [&](const PolyVec& a, const PolyVec& b) {
    auto la = *lead_term(a, ord), lb = *lead_term(b, ord);
    if (la.comp != lb.comp) return la.comp < lb.comp;
    return ord.compare(la.exps, lb.exps) < 0;
  });
  return GroebnerBasis{ord, nvars, rank, std::move(M)};
}

GroebnerBasis groebner(const std::vector<Poly>& gens, const MonomialOrder& ord) {
  std::size_t n = 0;
  for (const auto& g : gens) n = std::max(n, g.nvars());
  std::vector<PolyVec> v;
  for (const auto& g : gens) v.push_back({g});
  return groebner(v, n, 1, ord);
}

std::optional<CriticalPairFailure> critical_pair_check(const std::vector<PolyVec>& gens, std::size_t nvars,
                                                       std::size_t rank, const MonomialOrder& ord) {
  std::vector<PolyVec> G;
  for (const auto& g : gens)
    if (!is_zero(g)) G.push_back(g);
  Reducer red{ord, {}, {}};
  for (const auto& g : G) red.add(&g);
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (red.leads[i].comp != red.leads[j].comp) continue;
      PolyVec s = spoly(G[i], red.leads[i], G[j], red.leads[j]);
      PolyVec r = red.reduce(s);
      if (!is_zero(r)) return CriticalPairFailure{i, j, r};
    }
  (void)nvars;
  (void)rank;
  return std::nullopt;
}

bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b, const MonomialOrder& ord) {
  GroebnerBasis ga = groebner(a, ord), gb = groebner(b, ord);
  for (const auto& p : b)
    if (!ga.contains(p)) return false;
  for (const auto& p : a)
    if (!gb.contains(p)) return false;
  return true;
}

std::vector<Exponents> monomials_of_degree(std::size_t nvars, int d, const std::vector<int>& weights) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  auto w = [&](std::size_t i) { return weights.empty() ? 1 : weights[i]; };
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      if (left % w(i) == 0) {
        e[i] = left / w(i);
        out.push_back(e);
      }
      e[i] = 0;
      return;
    }
    for (int k = 0; k * w(i) <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k * w(i));
    }
    e[i] = 0;
  };
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(0, d);
  return out;
}

std::vector<Exponents> standard_monomials(const GroebnerBasis& g, int d, const std::vector<int>& weights) {
  std::vector<Exponents> out;
  auto leads = g.leading_monomials();
  for (const auto& m : monomials_of_degree(g.nvars, d, weights)) {
    bool standard = true;
    for (const auto& [c, e] : leads)
      if (divides(e, m)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(m);
  }
  return out;
}

namespace {

GroebnerBasis extended_basis(const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank) {
  const std::size_t m = gens.size();
  std::vector<PolyVec> ext;
  for (std::size_t i = 0; i < m; ++i) {
    PolyVec v(rank + m, Poly(nvars));
    for (std::size_t c = 0; c < rank && c < gens[i].size(); ++c)
      if (gens[i][c].nvars()) v[c] = gens[i][c];
    v[rank + i] = Poly::constant(nvars, 1);
    ext.push_back(std::move(v));
  }
  return groebner(ext, nvars, rank + m, MonomialOrder::grevlex());
}

}  // namespace

std::vector<PolyVec> syzygies(const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank) {
  GroebnerBasis g = extended_basis(gens, nvars, rank);
  std::vector<PolyVec> out;
  for (const auto& e : g.elems) {
    bool top_zero = true;
    for (std::size_t c = 0; c < rank; ++c)
      if (!e[c].is_zero()) top_zero = false;
    if (top_zero) out.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(rank), e.end());
  }
  return out;
}

std::optional<PolyVec> lift(const PolyVec& v, const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank) {
  GroebnerBasis g = extended_basis(gens, nvars, rank);
  PolyVec w(rank + gens.size(), Poly(nvars));
  for (std::size_t c = 0; c < rank; ++c)
    if (v[c].nvars()) w[c] = v[c];
  PolyVec r = g.reduce(w);
  for (std::size_t c = 0; c < rank; ++c)
    if (!r[c].is_zero()) return std::nullopt;
  PolyVec coeffs;
  for (std::size_t i = 0; i < gens.size(); ++i) coeffs.push_back(-r[rank + i]);
  return coeffs;
}

}  // namespace torushh
