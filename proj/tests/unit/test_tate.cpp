#include <random>

#include "doctest.h"
#include "torushh/errors.hpp"
#include "torushh/tate.hpp"

using namespace torushh;

namespace {

HomElement random_element(const TateHomComplex& h, int deg, int wt, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::size_t n = h.cx.dim(deg, wt);
  std::vector<QPoly> v(n);
  for (auto& x : v) x = QPoly(coef(rng));
  return h.from_vector(v, deg, wt);
}

bool weights_are(const HomElement& e, int wt) {
  for (const auto& [k, f] : e.entries)
    for (const auto& [m, c] : f.terms())
      if (weight(m) + e.dst->cells[k.second].shift - e.src->cells[k.first].shift != wt) return false;
  return true;
}

}  // namespace

TEST_CASE("resolution cells and d^2") {
  auto F = build_resolution(0, 0, 3);
  CHECK(F->cells.size() == 1 + 2 * 7);
  CHECK(F->cells[0].name == "V");
  CHECK(F->cells[0].deg == -1);
  auto rep = verify_curvature(F);
  CHECK(rep.multiple == 0);
  CHECK(rep.c.is_zero());
  CHECK(compose(differential(F), differential(F)).is_zero());

  auto G = build_resolution(0, 0, 3, true, 3);
  auto rg = verify_curvature(G);
  CHECK(rg.multiple == 1);
  CHECK(rg.c == curvature(G));
  HomElement dd = compose(differential(G), differential(G));
  const auto& e = dd.entries.at({G->cell_index("R2"), G->cell_index("R0")});
  CHECK(e == RingElement(G->cells[G->cell_index("R2")].chart, Monomial{0, 0, 1}));
  // the V cell and the first tail cells square to zero
  CHECK(dd.entries.count({G->cell_index("R1"), G->cell_index("R0")}) == 0);
  CHECK(dd.entries.count({0, G->cell_index("L0")}) == 0);
}

TEST_CASE("corrupted differential is rejected") {
  auto G = build_resolution(0, 0, 3, true, 3);
  auto bad = std::make_shared<ResolvedObject>(*G);
  auto& f = bad->d.at({bad->cell_index("R3"), bad->cell_index("R2")});
  f = f.scaled(2);
  CHECK_THROWS_AS(verify_curvature(bad), CurvatureMismatch);
  auto bad2 = std::make_shared<ResolvedObject>(*G);
  auto& g = bad2->d.at({bad2->cell_index("L4"), bad2->cell_index("L3")});
  g = g + RingElement(g.ring(), Monomial{1, 0, 0});
  CHECK_THROWS_AS(verify_curvature(bad2), CurvatureMismatch);
  // undeformed: any nonzero square is a mismatch
  auto plain = std::make_shared<ResolvedObject>(*build_resolution(0, 0, 2));
  auto& p = plain->d.at({plain->cell_index("R2"), plain->cell_index("R1")});
  p = RingElement(p.ring(), Monomial{0, 1, 0});
  CHECK_THROWS_AS(verify_curvature(plain), CurvatureMismatch);
}

TEST_CASE("window errors") {
  CHECK_THROWS_AS(build_resolution(40, 0, 3), OutOfWindow);
  CHECK_THROWS_AS(build_resolution(0, 0, 0), OutOfWindow);
  CHECK_THROWS_AS(build_resolution(2, 0, 3, false, 1, ComponentWindow{0, 1}), OutOfWindow);
}

TEST_CASE("tr moves resolutions cellwise") {
  for (int a : {0, -1})
    for (bool deformed : {false, true}) {
      auto F = build_resolution(0, a, 3, deformed, 3);
      auto T = translate(F);
      auto G = build_resolution(1, a, 3, deformed, 3);
      CHECK(T->cells == G->cells);
      CHECK(T->d == G->d);
      CHECK(T->name() == G->name());
    }
}

TEST_CASE("hom complexes vanish for distant components") {
  auto F = build_resolution(0, 0, 3);
  for (int j : {2, -2, 3})
    for (int a : {0, -1}) {
      auto h = hom_complex(F, build_resolution(j, a, 3), Window{-4, 6, -3, 3});
      CHECK(h.cx.blocks.empty());
    }
}

TEST_CASE("RHom dimensions") {
  const int D = 5;
  auto O0 = build_resolution(0, 0, D);
  auto O1 = build_resolution(1, 0, D);
  auto Om = build_resolution(-1, 0, D);
  auto e = rhom(O0, O0, 2 * D - 2, 8);
  auto h1 = rhom(O1, O0, 2 * D - 2, 8);
  auto hm = rhom(Om, O0, 2 * D - 2, 8);
  CHECK(e.trust_hi == 2 * D - 4);
  for (int n = 0; n <= 2 * D - 2; ++n) {
    std::size_t expected_end = n == 0 ? 1 : (n % 2 == 0 ? 2 : 0);
    CHECK_MESSAGE(e.dims[n] == expected_end, "degree " << n);
    CHECK_MESSAGE(h1.dims[n] == (n % 2 == 1 ? 1u : 0u), "degree " << n);
    CHECK_MESSAGE(hm.dims[n] == (n % 2 == 1 ? 1u : 0u), "degree " << n);
  }
  // all of end(O_{C_0}) sits in weight 0
  for (int n = 0; n <= 2 * D - 2; ++n)
    for (const auto& [w, d] : e.by_weight[n]) CHECK(w == 0);
  CHECK(e.trusted[2 * D - 4]);
  CHECK_FALSE(e.trusted[2 * D - 3]);
  // twisted objects: Hom(O(-1), O) = H^0(O(1)) is two-dimensional, Hom(O, O(-1)) = 0
  auto T0 = build_resolution(0, -1, D);
  CHECK(rhom(T0, O0, 2, 8).dims[0] == 2);
  CHECK(rhom(O0, T0, 2, 8).dims[0] == 0);
  CHECK(rhom(T0, T0, 2, 8).dims == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("truncation stability") {
  for (int D = 3; D <= 5; ++D) {
    auto a = rhom(build_resolution(0, 0, D), build_resolution(0, 0, D), 2 * D - 4, 6);
    auto b = rhom(build_resolution(0, 0, D + 1), build_resolution(0, 0, D + 1), 2 * D - 4, 6);
    CHECK(a.dims == b.dims);
    CHECK(a.by_weight == b.by_weight);
    auto c = rhom(build_resolution(1, -1, D), build_resolution(0, 0, D), 2 * D - 4, 6);
    auto d = rhom(build_resolution(1, -1, D + 1), build_resolution(0, 0, D + 1), 2 * D - 4, 6);
    CHECK(c.dims == d.dims);
  }
}

TEST_CASE("identity spans degree-0 cohomology of end(O_C0)") {
  auto F = build_resolution(0, 0, 4);
  auto h = hom_complex(F, F, Window{0, 2, 0, 0});
  HomElement id = identity(F);
  CHECK(hom_d(id).is_zero());
  auto coh = cohomology(h.cx, 0, 0);
  REQUIRE(coh.dim == 1);
  auto v = h.to_vector(id, 0, 0);
  CHECK_FALSE(is_zero(class_coordinates(h.cx, 0, 0, expand_vector(v, 0))));
}

TEST_CASE("composition: units, associativity, Leibniz, weights") {
  std::mt19937 rng(11);
  for (bool deformed : {false, true}) {
    int K = deformed ? 3 : 1;
    auto A = build_resolution(0, 0, 3, deformed, K);
    auto B = build_resolution(1, -1, 3, deformed, K);
    auto C = build_resolution(0, -1, 3, deformed, K);
    auto hAB = hom_complex(A, B, Window{-1, 3, -2, 2});
    auto hBC = hom_complex(B, C, Window{-1, 3, -2, 2});
    auto hCA = hom_complex(C, A, Window{-1, 3, -2, 2});
    for (int trial = 0; trial < 12; ++trial) {
      int n1 = trial % 3, n2 = (trial / 3) % 3, w1 = trial % 2, w2 = -(trial % 3) + 1;
      HomElement f = random_element(hAB, n1, w1, rng);
      HomElement g = random_element(hBC, n2, w2, rng);
      HomElement k = random_element(hCA, 1, 0, rng);
      CHECK(compose(identity(B), f) == f);
      CHECK(compose(f, identity(A)) == f);
      CHECK(compose(k, compose(g, f)) == compose(compose(k, g), f));
      // Leibniz: d(g∘f) = d(g)∘f + (-1)^{|g|} g∘d(f)
      HomElement rhs = compose(hom_d(g), f) + compose(g, hom_d(f)).scaled(n2 % 2 == 0 ? 1 : -1);
      CHECK(hom_d(compose(g, f)) == rhs);
      CHECK(weights_are(hom_d(f), w1));
      CHECK(weights_are(compose(g, f), w1 + w2));
      // D^2 = q (c' φ - φ c)
      HomElement dd = hom_d(hom_d(f));
      HomElement qc = compose(curvature(B), f) - compose(f, curvature(A));
      HomElement qshift{qc.src, qc.dst, qc.deg, {}};
      for (const auto& [key, fn] : qc.entries)
        qshift.add(key.first, key.second, fn * RingElement(fn.ring(), Monomial{0, 0, 1}));
      CHECK(dd == qshift);
      // tr commutes with composition
      CHECK(translate(compose(g, f)) == compose(translate(g), translate(f)));
    }
    CHECK_FALSE(hAB.cx.check_curvature().has_value());
  }
}

TEST_CASE("rhom json") {
  auto t = rhom(build_resolution(1, 0, 3), build_resolution(0, 0, 3), 2, 2);
  auto j = t.to_json();
  CHECK(j["trust_window"][1] == 2);
  CHECK(j["degrees"][1]["dim"] == 1);
  CHECK(j["degrees"][1]["weights"]["1"] == 1);
}
