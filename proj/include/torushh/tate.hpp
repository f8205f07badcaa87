#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "torushh/chart_rings.hpp"
#include "torushh/complex.hpp"
#include "torushh/report.hpp"

namespace torushh {

// One generator j_!O_U of a resolution: the chart U, its cohomological degree
// and the G_m weight of the generator.
struct Cell {
  std::string name;  // "V", "L3", "R0", ...
  ChartRing chart;
  int deg = 0;
  int shift = 0;
  bool operator==(const Cell&) const = default;
};

using CellPair = std::pair<std::size_t, std::size_t>;  // (source cell, target cell)
// Morphism data between two cell lists: entry (a, b) is the function on
// chart(a) by which the generator of a is sent to the generator of b.
using CellMap = std::map<CellPair, RingElement>;

// Resolution of O_{C_i}(twist) on the infinite chain: the trivial resolution on
// V_i in degree -1 and two 2-periodic tails on U_{i-1/2} (L cells) and U_{i+1/2}
// (R cells), each holding 2*depth cells below the augmentation cell.
struct ResolvedObject {
  int component = 0;
  int twist = 0;  // 0 or -1
  int depth = 1;
  bool deformed = false;
  int K = 1;
  std::vector<Cell> cells;
  CellMap d;  // degree +1

  std::string name() const;
  std::size_t tail_length() const { return static_cast<std::size_t>(2 * depth); }
  std::size_t cell_index(const std::string& name) const;  // throws std::out_of_range
};
using ObjectPtr = std::shared_ptr<const ResolvedObject>;

// Components allowed for build_resolution.
struct ComponentWindow {
  int lo = -16, hi = 16;
};

ObjectPtr build_resolution(int component, int twist, int depth, bool deformed = false, int K = 1,
                           ComponentWindow window = {});
// tr moves O_{C_i}(a) to O_{C_{i+1}}(a), chart indices shifted by `steps`.
ObjectPtr translate(const ObjectPtr& obj, int steps = 1);

// chart(a) ⊆ chart(b) for cells of the infinite chain.
bool chart_contained(const ChartRing& a, const ChartRing& b);
RingElement restrict_to(const RingElement& f, const ChartRing& target);

// Homogeneous-degree element of hom(src, dst).
struct HomElement {
  ObjectPtr src, dst;
  int deg = 0;
  CellMap entries;

  bool is_zero() const { return entries.empty(); }
  HomElement operator+(const HomElement& o) const;
  HomElement operator-(const HomElement& o) const;
  HomElement scaled(const Rational& c) const;
  bool operator==(const HomElement& o) const;
  std::string str() const;
  void add(std::size_t a, std::size_t b, const RingElement& f);
};

HomElement identity(const ObjectPtr& obj);
HomElement differential(const ObjectPtr& obj);
HomElement compose(const HomElement& g, const HomElement& f);  // g∘f
HomElement hom_d(const HomElement& phi);                       // d'φ - (-1)^n φ d
HomElement translate(const HomElement& phi, int steps = 1);

struct CurvatureReport {
  Rational multiple = 0;      // d² = q·multiple·(shift by two) on tail cells
  HomElement c;               // degree-2 endomorphism with d² = q·c
  std::vector<std::string> tail_cells;  // cells where c was found
};
// Throws CurvatureMismatch naming the offending cell.
CurvatureReport verify_curvature(const ObjectPtr& obj);
// The expected curvature endomorphism (identity on tail cells of depth >= 2).
HomElement curvature(const ObjectPtr& obj);

// Weight-graded hom complex over a (degree, weight) window.
struct TateHomComplex {
  ObjectPtr src, dst;
  BigradedComplex cx;
  struct BasisElt {
    std::size_t a, b;
    Monomial gen;  // Q[q]-generator of the weight piece of O(chart a)
  };
  std::map<Bidegree, std::vector<BasisElt>> basis;

  std::vector<QPoly> to_vector(const HomElement& phi, int deg, int wt) const;
  HomElement from_vector(const std::vector<QPoly>& v, int deg, int wt) const;
};

TateHomComplex hom_complex(const ObjectPtr& src, const ObjectPtr& dst, const Window& window);

// Total dimensions of H^n(hom(src, dst)) at q = 0, summed over |weight| <= weight_band.
struct RHomTable {
  std::string src, dst;
  int depth = 0;
  int trust_hi = 0;  // 2*depth - 4
  int weight_band = 0;
  std::vector<std::size_t> dims;                     // degrees 0..deg_max
  std::vector<std::map<int, std::size_t>> by_weight;  // nonzero weights only
  std::vector<bool> trusted;
  ojson to_json() const;
};
RHomTable rhom(const ObjectPtr& src, const ObjectPtr& dst, int deg_max, int weight_band);

}  // namespace torushh
