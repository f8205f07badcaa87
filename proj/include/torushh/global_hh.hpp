#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "torushh/local_hh.hpp"

namespace torushh {

// Chain-level Čech diagram of the finite chain: the product of the open
// charts' models mapping to the product of the overlap models by
// (right-chart restriction) - (left-chart restriction), and its cocone.
struct ChainAssembly {
  ChainCharts charts;
  std::vector<ChartCC> opens, overlaps;
  BigradedComplex C, D;
  std::map<Bidegree, std::vector<std::size_t>> open_offsets, overlap_offsets;
  ChainMap rho;
  BigradedComplex cone;

  ChainAssembly() = default;
  ChainAssembly(const ChainAssembly&) = delete;
  ChainAssembly& operator=(const ChainAssembly&) = delete;

  // Cocone vector (c, 0) built from one element per open chart.
  std::vector<QPoly> cone_vector(const std::vector<DgaElement>& per_open, int deg, int wt) const;
  // Component of a cocone vector on open chart `o`.
  DgaElement open_component(const std::vector<QPoly>& v, std::size_t o, int deg, int wt) const;
  std::string str(const std::vector<QPoly>& v, int deg, int wt) const;
};

std::unique_ptr<ChainAssembly> build_chain_assembly(int N, bool deformed, int K, int degree_max, int wt_lo, int wt_hi);

// H^0 and H^1 of the two-term Čech complex of the degree-m HH sheaf (undeformed).
std::pair<std::size_t, std::size_t> sheaf_cohomology(int N, int m, int weight);

// Global HH table: undeformed Q-dimensions, or free ranks over Q[q] with
// q-torsion listed when deformed.
HHTable assemble_hh(int N, bool deformed, int K, int degree_max, int weight_band = 0);

// Per-chart components of the global weight class, checked to agree on every overlap.
struct GammaO {
  std::vector<ChartRing> charts;
  std::vector<DgaElement> components;
};
GammaO gamma_O(int N, bool deformed, int K = 3);

}  // namespace torushh
