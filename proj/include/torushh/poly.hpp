#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torushh/rational.hpp"

namespace torushh {

using Exponents = std::vector<int>;

// Monomial orders. Grevlex compares the weighted degree first (weights default
// to 1). BlockGrevlex compares the variables [0, block) by grevlex first and
// breaks ties with grevlex on the rest, so leading terms avoid the trailing
// block whenever possible.
struct MonomialOrder {
  enum class Kind { Grevlex, Lex, BlockGrevlex };
  Kind kind = Kind::Grevlex;
  std::size_t block = 0;
  std::vector<int> weights;
  bool position_over_term = true;  // modules: smaller component index wins first

  int compare(const Exponents& a, const Exponents& b) const;  // sign of a - b
  std::string describe() const;
  static MonomialOrder grevlex(std::vector<int> weights = {}) { return {Kind::Grevlex, 0, std::move(weights), true}; }
  static MonomialOrder lex() { return {Kind::Lex, 0, {}, true}; }
  static MonomialOrder block_grevlex(std::size_t block) { return {Kind::BlockGrevlex, block, {}, true}; }
};

int total_degree(const Exponents& e);
int weighted_degree(const Exponents& e, const std::vector<int>& w);
bool divides(const Exponents& a, const Exponents& b);

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : n_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(const Exponents& e, const Rational& c);

  std::size_t nvars() const { return n_; }
  const std::map<Exponents, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational coeff(const Exponents& e) const;
  int degree() const;  // total degree, -1 for zero
  void add_term(const Exponents& e, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly pow(int k) const;
  Poly mul_term(const Exponents& e, const Rational& c) const;
  bool operator==(const Poly& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Ring map: variable i goes to images[i] (all images share one ring).
  Poly map_vars(const std::vector<Poly>& images) const;
  Poly substitute(std::size_t var, const Poly& value) const;
  Rational eval(const std::vector<Rational>& point) const;

  // leading exponent / coefficient for an order (poly must be nonzero)
  const Exponents& lead_exponents(const MonomialOrder& ord) const;
  Rational lead_coeff(const MonomialOrder& ord) const;
  Poly monic(const MonomialOrder& ord) const;

 private:
  std::size_t n_ = 0;
  std::map<Exponents, Rational> t_;
};

// Variable names plus parsing/printing.
struct PolyRing {
  std::vector<std::string> names;
  std::size_t nvars() const { return names.size(); }
  std::size_t index(const std::string& name) const;  // throws std::invalid_argument
  Poly var(const std::string& name) const { return Poly::variable(nvars(), index(name)); }
  Poly constant(const Rational& c) const { return Poly::constant(nvars(), c); }
  // Sums of terms like "3/2*X^2*Y", "-u", "t*Y - Y'". Throws ConfigError.
  Poly parse(const std::string& s) const;
  std::string str(const Poly& p, const MonomialOrder& ord = MonomialOrder::grevlex()) const;
  std::string str(const Exponents& e) const;
};

// Elements of a free module R^r.
using PolyVec = std::vector<Poly>;

struct LeadTerm {
  std::size_t comp = 0;
  Exponents exps;
  Rational coeff;
};
std::optional<LeadTerm> lead_term(const PolyVec& v, const MonomialOrder& ord);
bool is_zero(const PolyVec& v);

struct GroebnerBasis {
  MonomialOrder order;
  std::size_t nvars = 0, rank = 1;
  std::vector<PolyVec> elems;  // reduced, monic

  PolyVec reduce(const PolyVec& v) const;  // full normal form
  bool contains(const PolyVec& v) const { return is_zero(reduce(v)); }
  Poly reduce(const Poly& p) const { return reduce(PolyVec{p})[0]; }
  bool contains(const Poly& p) const { return contains(PolyVec{p}); }
  bool is_unit_ideal() const;  // rank 1 only
  std::vector<std::pair<std::size_t, Exponents>> leading_monomials() const;
};

GroebnerBasis groebner(const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank, const MonomialOrder& ord);
GroebnerBasis groebner(const std::vector<Poly>& gens, const MonomialOrder& ord);

// Buchberger criterion on the given generators as they stand: returns the
// first S-pair (i, j) whose S-vector does not reduce to zero, or the index of
// a generator that is not reduced to zero by the others' leading terms.
struct CriticalPairFailure {
  std::size_t i = 0, j = 0;
  PolyVec remainder;
};
std::optional<CriticalPairFailure> critical_pair_check(const std::vector<PolyVec>& gens, std::size_t nvars,
                                                       std::size_t rank, const MonomialOrder& ord);

bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b, const MonomialOrder& ord);

// Standard monomials of a rank-1 basis with weighted degree exactly d.
std::vector<Exponents> standard_monomials(const GroebnerBasis& g, int d, const std::vector<int>& weights);

// Generators of {c in R^m : sum c_i gens_i = 0} for gens in R^rank.
std::vector<PolyVec> syzygies(const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank);
// Coefficients c with v = sum c_i gens_i, or nullopt when v is not in the span.
std::optional<PolyVec> lift(const PolyVec& v, const std::vector<PolyVec>& gens, std::size_t nvars, std::size_t rank);

// All monomials in nvars variables of weighted degree d (weights > 0).
std::vector<Exponents> monomials_of_degree(std::size_t nvars, int d, const std::vector<int>& weights);

}  // namespace torushh
