#include "torushh/chart_rings.hpp"

#include <cstdlib>
#include <sstream>

#include "torushh/errors.hpp"

namespace torushh {

ChartRing ChartRing::nodal(int i, bool deformed, int K) { return {ChartKind::NodalU, i, Side::Left, deformed, deformed ? K : 1}; }
ChartRing ChartRing::torus(int i, bool deformed, int K) { return {ChartKind::TorusV, i, Side::Left, deformed, deformed ? K : 1}; }
ChartRing ChartRing::end_left(int i, bool deformed, int K) { return {ChartKind::EndLine, i, Side::Left, deformed, deformed ? K : 1}; }
ChartRing ChartRing::end_right(int i, bool deformed, int K) { return {ChartKind::EndLine, i, Side::Right, deformed, deformed ? K : 1}; }

std::string ChartRing::token() const {
  std::string k;
  switch (kind) {
    case ChartKind::NodalU: k = "U"; break;
    case ChartKind::TorusV: k = "V"; break;
    case ChartKind::EndLine: k = side == Side::Left ? "EL" : "ER"; break;
  }
  std::string s = k + ":" + std::to_string(index) + ":";
  if (deformed) return s + "deformed:K=" + std::to_string(K);
  return s + "plain";
}

ChartRing ChartRing::parse(const std::string& token) {
  std::vector<std::string> parts;
  std::stringstream ss(token);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3) throw ConfigError("bad chart token '" + token + "'");
  ChartRing r;
  if (parts[0] == "U") r.kind = ChartKind::NodalU;
  else if (parts[0] == "V") r.kind = ChartKind::TorusV;
  else if (parts[0] == "EL") r = end_left();
  else if (parts[0] == "ER") r = end_right(0);
  else throw ConfigError("bad chart kind in '" + token + "'");
  char* end = nullptr;
  r.index = static_cast<int>(std::strtol(parts[1].c_str(), &end, 10));
  if (parts[1].empty() || *end) throw ConfigError("bad chart index in '" + token + "'");
  if (parts[2] == "plain" && parts.size() == 3) {
    r.deformed = false;
    r.K = 1;
  } else if (parts[2] == "deformed" && parts.size() == 4 && parts[3].rfind("K=", 0) == 0) {
    r.deformed = true;
    r.K = std::atoi(parts[3].c_str() + 2);
    if (r.K < 1) throw ConfigError("K must be >= 1 in '" + token + "'");
  } else {
    throw ConfigError("bad deformation flag in '" + token + "'");
  }
  return r;
}

std::string ChartRing::x_name() const {
  if (kind == ChartKind::EndLine && side == Side::Left) return "";
  return "X" + std::to_string(index);
}

std::string ChartRing::y_name() const {
  switch (kind) {
    case ChartKind::NodalU: return "Y" + std::to_string(index + 1);
    case ChartKind::TorusV: return "";
    case ChartKind::EndLine: return side == Side::Left ? "Y" + std::to_string(index) : "";
  }
  return "";
}

int weight(const Monomial& m) { return m.y - m.x; }
int total_degree(const Monomial& m) { return std::abs(m.x) + m.y + m.q; }

std::optional<Monomial> normal_form(const ChartRing& r, Monomial m) {
  if (m.q < 0) return std::nullopt;
  switch (r.kind) {
    case ChartKind::NodalU: {
      if (m.x < 0 || m.y < 0) return std::nullopt;
      int k = std::min(m.x, m.y);
      if (k > 0) {
        if (!r.deformed) return std::nullopt;
        m.x -= k;
        m.y -= k;
        m.q += k;
      }
      break;
    }
    case ChartKind::TorusV:
      m.x -= m.y;
      m.y = 0;
      break;
    case ChartKind::EndLine:
      if (r.side == Side::Left ? (m.x != 0 || m.y < 0) : (m.y != 0 || m.x < 0)) return std::nullopt;
      break;
  }
  if (m.q >= r.q_order()) return std::nullopt;
  return m;
}

std::vector<Monomial> mono_basis(const ChartRing& r, int w, int degree_bound) {
  std::vector<Monomial> out;
  Monomial base;
  switch (r.kind) {
    case ChartKind::NodalU:
      base = w >= 0 ? Monomial{0, w, 0} : Monomial{-w, 0, 0};
      break;
    case ChartKind::TorusV:
      base = Monomial{-w, 0, 0};
      break;
    case ChartKind::EndLine:
      if (r.side == Side::Left ? w < 0 : w > 0) return out;
      base = r.side == Side::Left ? Monomial{0, w, 0} : Monomial{-w, 0, 0};
      break;
  }
  for (int k = 0; k < r.q_order(); ++k) {
    Monomial m = base;
    m.q = k;
    if (total_degree(m) <= degree_bound) out.push_back(m);
  }
  return out;  // already sorted by (x, y, q)
}

RingElement::RingElement(ChartRing r, const Monomial& m, const Rational& c) : ring_(r) { add_term(m, c); }

RingElement RingElement::constant(ChartRing r, const Rational& c) { return RingElement(r, Monomial{}, c); }

void RingElement::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto nf = normal_form(ring_, m);
  if (!nf) return;
  auto [it, fresh] = terms_.emplace(*nf, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

RingElement RingElement::operator+(const RingElement& o) const {
  RingElement s = *this;
  for (const auto& [m, c] : o.terms_) s.add_term(m, c);
  return s;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + o.scaled(-1); }

RingElement RingElement::operator*(const RingElement& o) const {
  if (!(ring_ == o.ring_)) throw std::invalid_argument("multiply: elements live on different charts");
  RingElement p(ring_);
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : o.terms_) p.add_term({a.x + b.x, a.y + b.y, a.q + b.q}, x * y);
  return p;
}

RingElement RingElement::scaled(const Rational& c) const {
  RingElement s(ring_);
  for (const auto& [m, x] : terms_) s.add_term(m, x * c);
  return s;
}

std::optional<int> RingElement::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [m, c] : terms_) {
    if (w && *w != weight(m)) return std::nullopt;
    w = weight(m);
  }
  return w;
}

std::string RingElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  std::string xn = ring_.kind == ChartKind::EndLine && ring_.side == Side::Left ? "" : ring_.x_name();
  std::string yn = ring_.y_name();
  for (const auto& [m, c] : terms_) {
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    std::vector<std::string> f;
    if (m.x != 0) f.push_back(xn + (m.x == 1 ? "" : "^" + std::to_string(m.x)));
    if (m.y != 0) f.push_back(yn + (m.y == 1 ? "" : "^" + std::to_string(m.y)));
    if (m.q != 0) f.push_back(std::string("q") + (m.q == 1 ? "" : "^" + std::to_string(m.q)));
    if (f.empty() || a != 1) f.insert(f.begin(), a.get_str());
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "*" : "") << f[i];
  }
  return os.str();
}

ChartRing localized_chart(const ChartRing& r, Side side) {
  switch (r.kind) {
    case ChartKind::NodalU:
      return ChartRing::torus(side == Side::Right ? r.index : r.index + 1, r.deformed, r.K);
    case ChartKind::EndLine:
      return ChartRing::torus(r.index, r.deformed, r.K);
    case ChartKind::TorusV:
      return r;
  }
  return r;
}

Monomial localize_monomial(const ChartRing& r, Side side, const Monomial& m, bool& vanishes) {
  vanishes = false;
  switch (r.kind) {
    case ChartKind::NodalU:
      if (side == Side::Right) {
        if (!r.deformed && m.y > 0) vanishes = true;
        return {m.x - m.y, 0, m.q + m.y};
      }
      if (!r.deformed && m.x > 0) vanishes = true;
      return {m.x - m.y, 0, m.q + m.x};
    case ChartKind::EndLine:
    case ChartKind::TorusV:
      return {m.x - m.y, 0, m.q};
  }
  return m;
}

RingElement localize_to_V(const RingElement& e, Side side) {
  RingElement out(localized_chart(e.ring(), side));
  for (const auto& [m, c] : e.terms()) {
    bool vanishes = false;
    Monomial t = localize_monomial(e.ring(), side, m, vanishes);
    if (!vanishes) out.add_term(t, c);
  }
  return out;
}

ChartRing translate(const ChartRing& r, int steps) {
  ChartRing t = r;
  t.index -= steps;
  return t;
}

RingElement translate(const RingElement& e, int steps) {
  RingElement out(translate(e.ring(), steps));
  for (const auto& [m, c] : e.terms()) out.add_term(m, c);
  return out;
}

ChainCharts chain_charts(int N, bool deformed, int K) {
  if (N < 2) throw ConfigError("chain needs at least two components");
  ChainCharts cc;
  cc.N = N;
  cc.deformed = deformed;
  cc.K = deformed ? K : 1;
  cc.opens.push_back(ChartRing::end_left(1, deformed, K));
  for (int i = 1; i < N; ++i) cc.opens.push_back(ChartRing::nodal(i, deformed, K));
  cc.opens.push_back(ChartRing::end_right(N, deformed, K));
  for (int i = 1; i <= N; ++i) {
    cc.overlaps.push_back(ChartRing::torus(i, deformed, K));
    // opens[i-1] is EndL or NodalU(i-1); opens[i] is NodalU(i) or EndR
    cc.incidence.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i), Side::Left, Side::Right});
  }
  return cc;
}

}  // namespace torushh
