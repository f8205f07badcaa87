#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torushh/qpoly.hpp"
#include "torushh/sparse_matrix.hpp"

namespace torushh {

// Matrix with entries in Q[q]/(q^K), stored as one sparse matrix per power of q.
struct QMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<SparseMatrix> coeff;  // coeff[k] multiplies q^k; may be shorter than K

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c) {}
  explicit QMatrix(SparseMatrix m0);

  SparseMatrix at(std::size_t k) const;  // zero matrix if absent
  void add(std::size_t r, std::size_t c, const QPoly& v);
  QPoly get(std::size_t r, std::size_t c) const;
  bool is_zero() const;
  int max_power() const;  // -1 if zero

  QMatrix mul(const QMatrix& o, int K) const;  // this * o mod q^K
  QMatrix plus(const QMatrix& o) const;
  QMatrix scaled(const Rational& s) const;
  QMatrix shifted(int k) const;  // multiply by q^k
  QMatrix truncated(int K) const;
  void place(const QMatrix& block, std::size_t r0, std::size_t c0, const Rational& s = 1);
  PolyMatrix to_poly() const;
  bool equals(const QMatrix& o) const;
  void normalize();  // drop trailing zero coefficients
};

using Bidegree = std::pair<int, int>;  // (cohomological degree, weight)

// Finite pseudo-complex graded by (degree, weight). Differentials raise degree
// by one and preserve weight; with curvature, d∘d = q·c mod q^K.
class BigradedComplex {
 public:
  int K = 1;  // q-truncation order (1 means undeformed)
  bool truncated = false;  // produced by cutting an infinite object
  std::map<Bidegree, std::vector<std::string>> blocks;
  std::map<Bidegree, QMatrix> diff;       // (d,w) -> (d+1,w)
  std::map<Bidegree, QMatrix> curvature;  // (d,w) -> (d+2,w)

  std::size_t dim(int deg, int wt) const;
  const std::vector<std::string>& labels(int deg, int wt) const;
  void set_block(int deg, int wt, std::vector<std::string> labels);
  QMatrix d(int deg, int wt) const;  // zero matrix of the right shape if absent
  QMatrix curv(int deg, int wt) const;
  std::vector<int> weights() const;
  std::vector<int> degrees() const;

  // Checks d∘d == q·c mod q^K on every block; returns the first failing
  // bidegree or nullopt.
  std::optional<Bidegree> check_curvature() const;
};

struct CohomologyResult {
  std::size_t dim = 0;
  std::vector<Vec> reps;  // cocycle representatives (length = block dim * (q_level+1))
};

// Cohomology at q-order `q_level`: level 0 uses d mod q; level L > 0 treats the
// complex Q-linearly over Q[q]/(q^{L+1}) and throws CurvedComplex if d∘d fails to
// vanish there.
CohomologyResult cohomology(const BigradedComplex& c, int deg, int wt, int q_level = 0);

// Coordinates of cocycle z in the basis `reps` modulo the image of d_{deg-1}
// (same q level and layout as `cohomology`). Throws NotClosed if dz != 0.
Vec class_coordinates(const BigradedComplex& c, int deg, int wt, const Vec& z, int q_level = 0);
// Q-linear layout of a Q[q]-vector at q level L: entry j*n + i holds the q^j coefficient.
Vec expand_vector(const std::vector<QPoly>& v, int q_level);

// Cohomology over Q[q] of a genuine complex (d∘d = 0 over Q[q]).
struct RingCohomology {
  std::size_t free_rank = 0;
  std::vector<std::vector<QPoly>> free_generators;  // vectors over Q[q] in the block basis
  std::vector<QPoly> torsion;                       // monic invariant factors, non-units
  std::vector<std::vector<QPoly>> torsion_generators;
  std::vector<int> torsion_valuations;              // q-adic valuation of each factor
};
RingCohomology ring_cohomology(const BigradedComplex& c, int deg, int wt);

// Chain map between complexes: per-bidegree matrix from C-block to D-block.
struct ChainMap {
  const BigradedComplex* src = nullptr;
  const BigradedComplex* dst = nullptr;
  std::map<Bidegree, QMatrix> comp;
  QMatrix at(int deg, int wt) const;
};

// cocone(f)^n = C^n ⊕ D^{n-1}, d(c, e) = (dc, f(c) - de). Throws NotChainMap.
BigradedComplex cocone(const ChainMap& f);

struct Window {
  int deg_lo, deg_hi, wt_lo, wt_hi;
};

// Hom^n_w = ⊕_p Hom(C^{p,v}, D^{p+n,v+w}), D(φ) = d∘φ - (-1)^n φ∘d.
BigradedComplex hom_complex(const BigradedComplex& c, const BigradedComplex& d, std::optional<Window> window);
// (C⊗D)^n_w, d = d⊗1 + (-1)^p 1⊗d.
BigradedComplex tensor_complex(const BigradedComplex& c, const BigradedComplex& d);

}  // namespace torushh
