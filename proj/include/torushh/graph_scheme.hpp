#pragma once

#include <array>
#include <string>
#include <vector>

#include "torushh/poly.hpp"
#include "torushh/report.hpp"

namespace torushh {

// Chart pair (i, j): first factor on the nodal chart with coordinates
// (X_i, Y_{i+1}), second factor on the chart with (X'_j, Y'_{j+1}).
// Ring variables are positional: X, Y, X', Y', q, u, t.
enum GraphVar : std::size_t { GX = 0, GY, GXp, GYp, GQ, GU, GT, kGraphVars };

PolyRing graph_ring(int i, int j);

struct GraphChartIdeal {
  int i = 0, j = 0;
  PolyRing ring;
  std::vector<Poly> generators;  // graph equations
  std::vector<Poly> ambient;     // XY - q, X'Y' - q, ut - q
  std::vector<Poly> all() const;
  std::vector<std::string> generator_strings() const;
  ojson to_json() const;
};

// Throws EmptyChart unless j == i or j == i - 1.
GraphChartIdeal graph_equations(int i, int j);

enum class Locus { T1, U1, Q0 };
std::string locus_name(Locus l);

struct RestrictedIdeal {
  Locus locus;
  PolyRing ring;
  std::vector<Poly> generators;  // substituted graph equations and ambient relations, zeros dropped, monic
  std::vector<std::string> strings() const;
};
RestrictedIdeal restrict(const GraphChartIdeal& g, Locus locus);
RestrictedIdeal restrict(const RestrictedIdeal& g, Locus locus);

// Ideals of the diagonal and of the graph of tr^{-1} on chart pair (i, j),
// |i - j| <= 1, derived from the overlap identifications; q is kept as a variable.
std::vector<Poly> diagonal_ideal(int i, int j);
std::vector<Poly> tr_inverse_graph_ideal(int i, int j);

struct RestrictionReport {
  int i = 0, j = 0;
  bool t1_is_diagonal = false;
  bool u1_is_tr_inverse_graph = false;
  bool t1_q0_commutes = false;  // (t=1 then q=0) == (q=0 then t=1), and u lies in it
  ojson to_json() const;
};
// Every valid chart pair with both indices in [lo, hi].
std::vector<RestrictionReport> check_restrictions(int lo, int hi);

// The two chart ideals generate the same ideal after localizing to their overlap.
bool check_gluing(int i1, int j1, int i2, int j2);

struct FlatnessCertificate {
  int i = 0, j = 0, degree_bound = 0;
  std::string order;
  std::vector<std::string> fiber_vars, base_vars;
  std::vector<std::string> leading_monomials;
  bool confluent = false;
  bool parameter_free_leads = false;
  std::vector<std::string> basis;                 // fiber monomials, degree <= bound
  std::vector<std::size_t> basis_count_by_degree;  // index = fiber degree
  std::size_t products_checked = 0;
  bool products_independent = false;              // b*u^a*t^c, total degree <= bound, independent mod I
  std::vector<std::size_t> slice_dims;            // dim of Q[x]_{<=d}/I_{<=d}, d <= 3, from a grevlex basis
  std::vector<std::size_t> slice_dims_bruteforce;  // same from truncated Macaulay matrices
  bool free() const;
  ojson to_json() const;
};
// Throws RewritingNotConfluent if graph equations + ambient relations fail a
// critical-pair check under the block order (fiber variables >> u, t).
FlatnessCertificate flatness_certificate(int i, int j, int degree_bound);

// Triple graph: variables X_n(c), Y_n(c) for components c = 1, 2, 3.
struct TripleVar {
  int comp;
  char type;  // 'X' or 'Y'
  int index;
  auto operator<=>(const TripleVar&) const = default;
};
struct TripleEquation {
  std::vector<TripleVar> lhs, rhs;  // monomials; empty = 1
  TripleEquation canonical() const;
  std::string str() const;
  auto operator<=>(const TripleEquation&) const = default;
};
struct TripleGraphIdeal {
  std::array<int, 3> charts{};  // chart k means the nodal chart with coordinates X_k, Y_{k+1}
  std::vector<TripleEquation> equations;
  std::vector<std::string> strings() const;
};
TripleGraphIdeal triple_graph_equations(int k, int l, int m);

struct SymmetryReport {
  std::array<int, 3> permutation{};  // component c goes to permutation[c-1]
  std::size_t charts_checked = 0, nonempty_charts = 0;
  ojson to_json() const;
};
// After X_n(3) <-> Y_{-n}(3), checks that each permutation of components maps
// the generating set on every chart triple in [lo, hi]^3 to that of the image
// chart. Throws SymmetryFailure with the witness equation.
std::vector<SymmetryReport> verify_s3_symmetry(int lo, int hi, const std::vector<std::array<int, 3>>& perms);
std::vector<std::array<int, 3>> all_permutations3();

// Graded short exact sequences of explicitly presented modules.
struct ExactnessReport {
  std::string name;
  std::string chart;
  int degree_max = 0;
  std::vector<std::array<std::size_t, 3>> dims;  // per degree: dim of the three terms
  ojson to_json() const;
};
// 0 -> O_diag -> normalized diagonal -> node x node -> 0 on U_{i+1/2} x U_{i+1/2}.
ExactnessReport verify_diagonal_ses(int i, int degree_max);
// 0 -> O_{G_t} -> pushforward of the normalized graph -> node skyscrapers (x) Q[t] -> 0
// on chart pair (i, j), j in {i, i-1}. With at_u0 the graph ring is obtained by
// restricting the chart ideal to u = 0, q = 0 (and checked against the quoted ring).
ExactnessReport verify_normalization_ses(int i, int j, bool at_u0, int degree_max);

}  // namespace torushh
