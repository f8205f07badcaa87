#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "torushh/complex.hpp"
#include "torushh/report.hpp"
#include "torushh/sparse_matrix.hpp"
#include "torushh/tate.hpp"

namespace torushh {

// Finite-dimensional algebra in degree 0 with an automorphism.
// mult[i][j] = coordinates of e_i e_j; phi column j = phi(e_j).
struct TestAlgebra {
  std::string name;
  std::size_t n = 0;
  std::vector<std::vector<Vec>> mult;
  Vec unit;
  SparseMatrix phi;

  Vec mul(const Vec& a, const Vec& b) const;
  Vec basis(std::size_t i) const;
  SparseMatrix phi_power(int k) const;  // negative k uses the inverse
  // Throws NotAssociative (associativity/unit) or NotAutomorphism.
  void validate() const;
  // Same algebra written in the basis f_i = sum_r P(r,i) e_r.
  TestAlgebra change_basis(const SparseMatrix& P) const;

  ojson to_json() const;
  static TestAlgebra from_json(const ojson& j);  // validates

  static TestAlgebra ground_field();
  // Q^m with phi permuting the factors (perm[i] = image of factor i).
  static TestAlgebra split(std::size_t m, const std::vector<std::size_t>& perm);
  // Q[x]/(x^k) with x -> c x.
  static TestAlgebra truncated_poly(std::size_t k, const Rational& c);
  // Upper triangular 2x2 matrices, or all 2x2 matrices, with phi = conjugation by g.
  static TestAlgebra upper_triangular(const std::vector<Vec>& g);
  static TestAlgebra matrix2(const std::vector<Vec>& g);
  // Path algebra of the Kronecker quiver, g in GL2 acting on the two arrows.
  static TestAlgebra kronecker(const std::vector<Vec>& g);
  // B x B with (x, y) -> (phi_B(y), x).
  static TestAlgebra wreath(const TestAlgebra& B);
};

SparseMatrix inverse(const SparseMatrix& m);  // throws NotAutomorphism when singular

// HH^*(A, M) with M = A, right action twisted by psi; phi acts on each degree.
struct HHAlgebra {
  std::vector<std::size_t> dims;           // degrees 0..n_max
  std::vector<std::vector<Vec>> reps;      // cocycle representatives (cochain coordinates)
  std::vector<SparseMatrix> phi_action;    // dims[n] x dims[n], columns = phi(rep_j) in rep basis
  std::vector<std::size_t> invariants;     // dim ker(phi - 1)
  std::vector<std::size_t> coinvariants;   // dim coker(phi - 1)
};
// Normalized bar complex (cochains vanishing when an argument is the unit) by
// default; normalized = false uses all of A^{⊗n}.
HHAlgebra hh_algebra(const TestAlgebra& A, const SparseMatrix& psi, int n_max, bool normalized = true);
BigradedComplex bar_complex(const TestAlgebra& A, const SparseMatrix& psi, int n_max, bool normalized = true);

// Independent oracles for degrees 0 and 1 with psi = id.
std::size_t center_dim(const TestAlgebra& A);
std::size_t outer_derivation_dim(const TestAlgebra& A);  // dim Der(A)/Inn(A)
// dim {x : x a = psi(a) x for all a}
std::size_t twisted_center_dim(const TestAlgebra& A, const SparseMatrix& psi);

// Closed form inv_n + inv_{n-1} + coinv_{n-1} + coinv_{n-2}.
HHTable mapping_torus_hh(const TestAlgebra& A, const SparseMatrix& psi, int degree_max, bool deformed = false, int K = 1);
// Chain-level version: cocone of (T - 1) on E^n = HH^n(A,Ψ) ⊕ γ_O·HH^{n-1}(A,Ψ).
std::vector<std::size_t> mapping_torus_cocone_dims(const HHAlgebra& h, int degree_max);

struct GrowthTable {
  std::string algebra;
  int degree_max = 0;
  std::vector<std::vector<std::size_t>> rows;  // rows[k][n]
  ojson to_json() const;
  std::string to_csv() const;
};
GrowthTable growth_table(const TestAlgebra& A, int k_max, int degree_max);

// Seeded random test algebras with dim Z(A)^phi = 1; `discarded` counts
// candidates rejected by that filter.
struct AlgebraBatch {
  std::vector<TestAlgebra> algebras;
  std::size_t discarded = 0;
};
AlgebraBatch random_test_algebras(std::size_t count, std::uint64_t seed);

// Window of the smash product (O(T̃_0) ⊗ A) # Z.
struct TorusChunk {
  TestAlgebra A;
  int lo = 0, hi = 0, depth = 3;
  std::vector<ObjectPtr> objects;  // (i, a) for i in [lo, hi], a in {-1, 0}
  ObjectPtr shifted(std::size_t obj, int g) const;  // tr^g(object)
  std::vector<int> extra_degrees(std::size_t b1, std::size_t b2) const;
};
TorusChunk build_torus_chunk(const TestAlgebra& A, int lo, int hi, int depth);

// Sum of f ⊗ x ⊗ g with f ∈ hom(tr^g src, dst) expanded into monomial entries.
struct ChunkKey {
  int g;
  std::size_t a, b;
  Monomial m;
  auto operator<=>(const ChunkKey&) const = default;
};
struct ChunkMorphism {
  std::size_t src = 0, dst = 0;
  int deg = 0;
  std::map<ChunkKey, Vec> coeffs;
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const ChunkMorphism& o) const = default;
  void add(const ChunkKey& k, const Vec& x);
};
ChunkMorphism chunk_compose(const TorusChunk& ch, const ChunkMorphism& h, const ChunkMorphism& f);  // h∘f
ChunkMorphism chunk_d(const TorusChunk& ch, const ChunkMorphism& f);
ChunkMorphism chunk_plus(const ChunkMorphism& a, const ChunkMorphism& b, const Rational& s = 1);
ChunkMorphism chunk_identity(const TorusChunk& ch, std::size_t obj);
ChunkMorphism random_chunk_morphism(const TorusChunk& ch, std::size_t src, std::size_t dst, int deg, int wt,
                                    std::mt19937_64& rng);
// Extra-grading cochain: multiplies the extra-degree-g part by g.
ChunkMorphism gamma2(const ChunkMorphism& f);
// Checks δγ₂ = 0 on the given pairs (derivation rule and commuting with d);
// throws NotClosed with the failing pair.
void verify_gamma2_closed(const TorusChunk& ch, const std::vector<std::pair<ChunkMorphism, ChunkMorphism>>& pairs);
// Total dimension of H^deg of ⊕_g hom(tr^g src, dst) ⊗ A at q = 0.
std::size_t chunk_hom_dim(const TorusChunk& ch, std::size_t src, std::size_t dst, int deg, int weight_band);

struct GammaReport {
  std::size_t hh1_dim = 0;
  std::size_t span_rank = 0;
  bool gamma2_projection_zero = false;
  bool gamma_phi_projection_nonzero = false;
  Vec gamma_phi, gamma2;  // coordinates in the HH^1(M_φ) basis
  ojson to_json() const;
};
// Requires HH^1(A)^φ = 0; throws NotClosed if a candidate cocycle is not closed.
GammaReport gamma_classes(const TestAlgebra& A);

}  // namespace torushh
