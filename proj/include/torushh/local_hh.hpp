#pragma once

#include <map>
#include <string>
#include <vector>

#include "torushh/chart_rings.hpp"
#include "torushh/complex.hpp"
#include "torushh/report.hpp"

namespace torushh {

// Basis monomial X^a Y^b (X*)^e (Y*)^f B^k of the small Hochschild model of a
// chart ring. Degrees (0,0,1,1,2), weights (-1,+1,+1,-1,0). On TorusV only a
// (any sign) and e are used; on end charts only the surviving variable.
struct DgaMono {
  int a = 0, b = 0, e = 0, f = 0, k = 0;
  int deg() const { return e + f + 2 * k; }
  int wt() const { return -a + b + e - f; }
  auto operator<=>(const DgaMono&) const = default;
};

std::string dga_label(const DgaMono& m);

// Chart-level element with Q[q] coefficients.
using DgaElement = std::map<DgaMono, QPoly>;
std::string dga_str(const DgaElement& x);

// Cochain complex of one chart with its monomial basis per (degree, weight).
struct ChartCC {
  ChartRing chart;
  BigradedComplex cx;
  std::map<Bidegree, std::vector<DgaMono>> basis;

  std::size_t index_of(const DgaMono& m) const;  // position inside its block; throws if absent
  Vec to_vec(const DgaElement& x, int deg, int wt) const;         // q = 0 part
  std::vector<QPoly> to_poly_vec(const DgaElement& x, int deg, int wt) const;
  DgaElement from_vec(const Vec& v, int deg, int wt) const;
  DgaElement from_poly_vec(const std::vector<QPoly>& v, int deg, int wt) const;
  // Printed in block order (not map order).
  std::string str(const std::vector<QPoly>& v, int deg, int wt) const;
  std::string str(const Vec& v, int deg, int wt) const;
};

// Monomials of the given chart in bidegree (deg, wt), in block order:
// k ascending, then (e,f) = (0,0), (1,0), (0,1), (1,1).
std::vector<DgaMono> dga_basis(const ChartRing& chart, int deg, int wt);

// Applies the model differential: d X* = Y B, d Y* = X B, zero on X, Y, B
// (NodalU only; the smooth charts have zero differential).
DgaElement dga_differential(const ChartRing& chart, const DgaMono& m);
DgaElement dga_multiply(const ChartRing& chart, const DgaElement& x, const DgaElement& y);
DgaElement dga_apply_d(const ChartRing& chart, const DgaElement& x);

// Complex for degrees [0, degree_max + 1] and weights [wt_lo, wt_hi].
ChartCC build_chart_cc(const ChartRing& chart, int degree_max, int wt_lo, int wt_hi);
BigradedComplex build_local_cc(bool deformed, int K, int degree_max, int weight_band);

// Undeformed tables hold Q-dimensions; deformed tables hold free ranks over
// Q[q] with torsion summands listed.
HHTable local_hh_table(bool deformed, int K, int degree_max, int weight_band);

// Chain-level restriction of a chart monomial to its torus overlap on `side`.
// Returns the image (possibly zero) in the overlap chart's model.
DgaElement localize_dga(const ChartRing& chart, Side side, const DgaMono& m);
DgaElement localize_dga(const ChartRing& chart, Side side, const DgaElement& x);
// Restriction of an HH class (given by a cocycle) on a chart to the overlap.
DgaElement localization_on_hh(const ChartRing& chart, const DgaElement& cls, Side side);

// The derivation Y d/dY - X d/dX of the chart ring: multiplies each monomial by its weight.
RingElement weight_derivation(const RingElement& f);
// Its HKR image D(X) X* + D(Y) Y* as a degree-1 cochain on the chart.
DgaElement weight_cocycle_class(const ChartRing& chart);
// Throws NotClosed if d(x) != 0.
void verify_closed(const ChartRing& chart, const DgaElement& x);

}  // namespace torushh
