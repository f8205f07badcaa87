#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torushh/poly.hpp"
#include "torushh/qpoly.hpp"
#include "torushh/report.hpp"

namespace torushh {

// Base ring Q[u, t] (variables in this order), q = ut.
const PolyRing& armod_ring();
Poly armod_u();
Poly armod_t();
// The derivation t d/dt - u d/du.
Poly base_derivation(const Poly& f);

// coker(R^m -> R^n); relations[k] is the k-th column (length n).
struct PresentedModule {
  std::size_t gens = 0;
  std::vector<PolyVec> relations;
  static PresentedModule free(std::size_t n);
  static PresentedModule cyclic(const std::vector<Poly>& ideal);
  PresentedModule direct_sum(const PresentedModule& o) const;
  ojson to_json() const;
};

// images[j] = D(e_j) as a vector of length gens.
struct Connection {
  std::vector<PolyVec> images;
  static Connection zero(std::size_t n);
  static Connection diagonal(const std::vector<int>& weights);
  ojson to_json() const;
};

// JSON: {"generators": n, "relations": [[poly,...],...] (columns),
//        "connection": [[poly,...],...] (columns, optional)}; a poly is a list of
//        [a, b, "c"] terms meaning c*u^a*t^b. Throws ConfigError.
std::pair<PresentedModule, std::optional<Connection>> armod_from_json(const ojson& j);
ojson armod_to_json(const PresentedModule& m, const std::optional<Connection>& d);

struct ConnectionCheck {
  bool ok = false;
  std::optional<std::size_t> failing_relation;
  std::string witness;
};
ConnectionCheck check_connection(const PresentedModule& m, const Connection& d);
// Connection with entries of degree <= degree_bound, found by linear algebra, if any.
std::optional<Connection> solve_connection(const PresentedModule& m, int degree_bound = 2);

// Finitely generated module over the PID Q[q]: free rank plus monic invariant factors.
struct PIDModule {
  std::size_t free_rank = 0;
  std::vector<QPoly> torsion;  // non-unit invariant factors
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_q_torsion() const;  // free rank 0, every factor a power of q
  std::string str() const;
  ojson to_json() const;
  bool operator==(const PIDModule&) const = default;
};
enum class ArLocus { T1, U1, Q0 };
// t = 1 (q acts as u) or u = 1 (q acts as t): structure over Q[q].
PIDModule restrict_to_line(const PresentedModule& m, ArLocus locus);
// q = 0: presentation over Q[u,t]/(ut), written over Q[u,t] with ut*e_j added.
PresentedModule restrict_q0(const PresentedModule& m);

struct QTorsionResult {
  bool torsion = false;
  int exponent = -1;  // max over generators of the least e with q^e e_j = 0
  int bound = 0;
  ojson to_json() const;
};
// Bounded semi-decision; a negative answer is certified by M[1/q] != 0.
// Throws BoundExhausted when M is q-torsion but needs an exponent above E.
QTorsionResult is_q_torsion(const PresentedModule& m, int E);
// q^e M = q^{e+1} M for some e <= E, i.e. M becomes q-torsion after q-adic completion.
bool q_torsion_after_completion(const PresentedModule& m, int E);

struct DualModule {
  std::vector<PolyVec> basis;  // elements of Hom(M, R) as vectors in R^n
  std::size_t rank() const { return basis.size(); }
  PresentedModule presentation;  // free, rank() generators
  ojson to_json() const;
};
// Throws NotFreeWitness if no basis could be exhibited.
DualModule dual_module(const PresentedModule& m);

struct DoubleDualReport {
  std::size_t dual_rank = 0;
  bool double_dual_free = false;
  PresentedModule kernel, cokernel;
  QTorsionResult kernel_torsion, cokernel_torsion;
  bool kernel_ok = false, cokernel_ok = false;  // q-torsion, possibly only after completion
  bool completion_dependent = false;           // some side needed the completed semantics
  std::string note;
  bool passes() const;
  ojson to_json() const;
};
// Precondition: check_connection(m, d).ok, else std::invalid_argument.
DoubleDualReport double_dual_comparison(const PresentedModule& m, const Connection& d, int E = 8);

struct PrimeReport {
  std::vector<std::string> minimal;  // subset of "(0)", "(u)", "(t)", "(u,t)"
  bool embedded_origin = false;      // (u,t) associated but not minimal
  bool unit = false;
  ojson to_json() const;
};
// Generators must be weight-homogeneous (t: +1, u: -1); throws NotInvariant.
PrimeReport invariant_ideal_primes(const std::vector<Poly>& J);

// Complex of free Q[u,t]-modules with a connection on each term.
struct FreeComplex {
  std::vector<std::size_t> ranks;                  // C^0 .. C^L
  std::vector<std::vector<PolyVec>> d;             // d[i] : C^i -> C^{i+1}, columns
  std::vector<std::vector<PolyVec>> connection;    // D_i on C^i, columns
};
struct FgComplexReport {
  bool precondition = false;
  std::string reason;
  std::vector<PIDModule> lhs, rhs;  // H^i(C/(t-1)C) and H^i(C)/(t-1)H^i(C)
  bool agrees = false;
  ojson to_json() const;
};
FgComplexReport fgcomplex_check(const FreeComplex& c);

struct ArInstance {
  PresentedModule module;
  Connection connection;
};
struct ArBatch {
  std::vector<ArInstance> instances;
  std::size_t discarded = 0;
};
ArBatch random_connected_modules(std::size_t count, std::uint64_t seed);

// Property suite over a seeded batch; per-property failure counts.
struct PropertySuite {
  std::size_t instances = 0, discarded = 0;
  std::size_t connection_ok = 0, negative_controls = 0, negative_rejected = 0;
  std::size_t dual_free = 0, double_dual_ok = 0, completion_flagged = 0;
  std::size_t qtorsmod_applicable = 0, qtorsmod_ok = 0;
  std::size_t ideals_checked = 0, ideals_ok = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
  ojson to_json() const;
};
PropertySuite run_property_suite(std::size_t count, std::uint64_t seed, int E = 8);

}  // namespace torushh
