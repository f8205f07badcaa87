#include "doctest.h"
#include "torushh/errors.hpp"
#include "torushh/global_hh.hpp"

using namespace torushh;

TEST_CASE("sheaf cohomology pattern") {
  CHECK(sheaf_cohomology(4, 0, 0) == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(sheaf_cohomology(4, 1, 0) == std::pair<std::size_t, std::size_t>{4, 0});
  CHECK(sheaf_cohomology(4, 2, 0) == std::pair<std::size_t, std::size_t>{3, 0});
  for (int N = 3; N <= 5; ++N) {
    CHECK(sheaf_cohomology(N, 0, 0).first == 1);
    CHECK(sheaf_cohomology(N, 1, 0).first == static_cast<std::size_t>(N));
    for (int k = 1; k <= 2; ++k) {
      CHECK(sheaf_cohomology(N, 2 * k, 0) == std::pair<std::size_t, std::size_t>{N - 1, 0});
      CHECK(sheaf_cohomology(N, 2 * k + 1, 0) == std::pair<std::size_t, std::size_t>{N - 1, 0});
    }
    // global functions are constants: nothing at nonzero weight in degree 0
    for (int w : {-2, -1, 1, 2}) CHECK(sheaf_cohomology(N, 0, w) == std::pair<std::size_t, std::size_t>{0, 0});
  }
}

TEST_CASE("undeformed assembly and the two-term identity") {
  for (int N = 3; N <= 5; ++N) {
    auto t = assemble_hh(N, false, 1, 4, 2);
    CHECK(t.dim(0, 0) == 1);
    CHECK(t.dim(1, 0) == static_cast<std::size_t>(N));
    CHECK(t.dim(2, 0) == static_cast<std::size_t>(N - 1));
    for (int n = 0; n <= 4; ++n)
      for (int w = -2; w <= 2; ++w) {
        std::size_t expected = sheaf_cohomology(N, n, w).first + (n > 0 ? sheaf_cohomology(N, n - 1, w).second : 0);
        CHECK_MESSAGE(t.dim(n, w) == expected, "N=" << N << " n=" << n << " w=" << w);
      }
  }
}

TEST_CASE("deformed assembly") {
  for (int N = 3; N <= 5; ++N) {
    auto t = assemble_hh(N, true, 3, 4, 1);
    CHECK(t.dim(1, 0) == 1);
    const HHEntry* h2 = t.find(2, 0);
    REQUIRE(h2 != nullptr);
    CHECK(h2->dim == 0);
    CHECK(h2->torsion.size() == static_cast<std::size_t>(N - 1));
    for (const auto& s : h2->torsion) CHECK(s.substr(s.size() - 5) == "ann q");
    for (int n = 2; n <= 4; ++n)
      for (int w = -1; w <= 1; ++w) CHECK(t.dim(n, w) == 0);
  }
}

TEST_CASE("deformed HH^1 generator restricts to XX* - YY* on interior charts") {
  int N = 4;
  auto a = build_chain_assembly(N, true, 3, 2, 0, 0);
  auto h = ring_cohomology(a->cone, 1, 0);
  REQUIRE(h.free_rank == 1);
  const auto& g = h.free_generators[0];
  DgaElement ref{{DgaMono{1, 0, 1, 0, 0}, QPoly(1)}, {DgaMono{0, 1, 0, 1, 0}, QPoly(-1)}};
  DgaElement neg{{DgaMono{1, 0, 1, 0, 0}, QPoly(-1)}, {DgaMono{0, 1, 0, 1, 0}, QPoly(1)}};
  auto first = a->open_component(g, 1, 1, 0);
  CHECK((first == ref || first == neg));
  for (int i = 1; i < N; ++i) CHECK(a->open_component(g, i, 1, 0) == first);
}

TEST_CASE("gamma_O glues and is a nonzero global class") {
  for (bool deformed : {false, true}) {
    int N = 4;
    auto g = gamma_O(N, deformed, 3);
    REQUIRE(g.components.size() == static_cast<std::size_t>(N + 1));
    CHECK(dga_str(g.components[0]) == "YY*");
    CHECK(dga_str(g.components[N]) == "-XX*");
    auto a = build_chain_assembly(N, deformed, 3, 2, 0, 0);
    auto v = a->cone_vector(g.components, 1, 0);
    // cocycle in the cocone, nonzero at q = 0
    Vec coords = class_coordinates(a->cone, 1, 0, expand_vector(v, 0));
    CHECK_FALSE(is_zero(coords));
    if (deformed) {
      // same class as the free generator up to sign, checked over Q[q]/q^3
      auto h = ring_cohomology(a->cone, 1, 0);
      REQUIRE(h.free_rank == 1);
      Vec cg = class_coordinates(a->cone, 1, 0, expand_vector(h.free_generators[0], 2), 2);
      Vec cv = class_coordinates(a->cone, 1, 0, expand_vector(v, 2), 2);
      Vec ncv = cv;
      for (auto& x : ncv) x = -x;
      CHECK((cg == cv || cg == ncv));
    }
  }
}

TEST_CASE("cocycle failure is detected") {
  // a component that disagrees on an overlap
  ChainCharts cc = chain_charts(3);
  DgaElement bad{{DgaMono{1, 0, 1, 0, 0}, QPoly(1)}};
  DgaElement right = localize_dga(cc.opens[1], Side::Right, bad);
  DgaElement left = localize_dga(cc.opens[0], Side::Left, DgaElement{{DgaMono{0, 1, 0, 1, 0}, QPoly(1)}});
  CHECK(right != left);
  CHECK_NOTHROW(gamma_O(3, false));
}

TEST_CASE("window stability: per-node counts independent of N") {
  auto t3 = assemble_hh(3, false, 1, 3, 0);
  auto t5 = assemble_hh(5, false, 1, 3, 0);
  for (int n = 2; n <= 3; ++n) CHECK(t5.dim(n, 0) - t3.dim(n, 0) == 2);
  CHECK(t5.dim(1, 0) - t3.dim(1, 0) == 2);
}
