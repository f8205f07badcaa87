#include "doctest.h"
#include "torushh/errors.hpp"
#include "torushh/graph_scheme.hpp"

using namespace torushh;

namespace {
bool same_set(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a)
    if (std::find(b.begin(), b.end(), p) == b.end() && std::find(b.begin(), b.end(), -p) == b.end()) return false;
  return true;
}
}  // namespace

TEST_CASE("chart equations are emitted verbatim") {
  auto g = graph_equations(2, 2);
  const auto& R = g.ring;
  CHECK(R.names == std::vector<std::string>{"X_2", "Y_3", "X'_2", "Y'_3", "q", "u", "t"});
  CHECK(same_set(g.generators, {R.parse("t*Y_3 - Y'_3"), R.parse("t*X'_2 - X_2"), R.parse("Y_3*X'_2 - u")}));
  auto h = graph_equations(2, 1);
  const auto& S = h.ring;
  CHECK(same_set(h.generators, {S.parse("Y_3 - u*Y'_2"), S.parse("X'_1 - u*X_2"), S.parse("Y'_2*X_2 - t")}));
  CHECK(same_set(h.ambient, {S.parse("X_2*Y_3 - q"), S.parse("X'_1*Y'_2 - q"), S.parse("u*t - q")}));
  CHECK_THROWS_AS(graph_equations(2, -1), EmptyChart);
  CHECK_THROWS_AS(graph_equations(2, 3), EmptyChart);
  CHECK(g.to_json()["generators"].size() == 3);
}

TEST_CASE("restrictions") {
  auto g = graph_equations(0, 0);
  auto t1 = restrict(g, Locus::T1);
  for (const auto& p : t1.generators) CHECK(p.coeff({0, 0, 0, 0, 0, 0, 1}) == 0);
  auto reps = check_restrictions(0, 2);
  CHECK(reps.size() == 5);
  for (const auto& r : reps) {
    CHECK_MESSAGE(r.t1_is_diagonal, r.i << "," << r.j);
    CHECK_MESSAGE(r.u1_is_tr_inverse_graph, r.i << "," << r.j);
    CHECK_MESSAGE(r.t1_q0_commutes, r.i << "," << r.j);
  }
  // negative control: at u = 1 the graph is not the diagonal
  auto u1 = restrict(g, Locus::U1).generators;
  std::vector<Poly> diag = diagonal_ideal(0, 0);
  for (const auto& a : restrict(g, Locus::T1).generators) (void)a;
  CHECK_FALSE(same_ideal(u1, diag, MonomialOrder::grevlex()));
  // q = 0 keeps the mixed terms and kills q
  auto q0 = restrict(g, Locus::Q0);
  CHECK(q0.strings().size() == 6);
}

TEST_CASE("gluing on overlaps") {
  for (int i = 0; i <= 2; ++i) {
    CHECK(check_gluing(i, i, i, i - 1));
    CHECK(check_gluing(i, i, i + 1, i));
    CHECK(check_gluing(i, i - 1, i + 1, i));
  }
}

TEST_CASE("flatness certificate") {
  auto c = flatness_certificate(0, 0, 6);
  CHECK(c.confluent);
  CHECK(c.parameter_free_leads);
  CHECK(c.products_independent);
  CHECK(c.free());
  // basis {Y^a} ∪ {X'^b, b >= 1}
  CHECK(c.basis_count_by_degree == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2});
  CHECK(std::find(c.basis.begin(), c.basis.end(), "Y_1^3") != c.basis.end());
  CHECK(std::find(c.basis.begin(), c.basis.end(), "X'_0^2") != c.basis.end());
  CHECK(c.slice_dims == c.slice_dims_bruteforce);
  auto d = flatness_certificate(1, 0, 6);
  CHECK(d.free());
  CHECK(d.basis_count_by_degree == c.basis_count_by_degree);
  CHECK(d.slice_dims == d.slice_dims_bruteforce);
  // translation and bound stability
  auto e = flatness_certificate(3, 3, 4);
  CHECK(e.basis_count_by_degree == std::vector<std::size_t>(c.basis_count_by_degree.begin(), c.basis_count_by_degree.begin() + 5));
  CHECK(std::equal(e.basis.begin(), e.basis.end(), flatness_certificate(3, 3, 6).basis.begin()));
  CHECK_THROWS_AS(flatness_certificate(0, 2, 3), EmptyChart);
}

TEST_CASE("triple graph equations") {
  // chart (i-1, j-1, i+j-1) with i = 2, j = 3
  auto g = triple_graph_equations(1, 2, 4);
  auto s = g.strings();
  CHECK(s.size() == 3);
  CHECK(std::find(s.begin(), s.end(), "Y_2(1)*Y_3(2) = Y_5(3)") != s.end());
  CHECK(std::find(s.begin(), s.end(), "Y_3(2)*X_4(3) = X_1(1)") != s.end());
  CHECK(std::find(s.begin(), s.end(), "Y_2(1)*X_4(3) = X_2(2)") != s.end());
  // chart (i+1/2, j-1/2, i+j+1/2) contains Y_j(2)X_{i+j}(3) = X_i(1)
  auto h = triple_graph_equations(2, 2, 5);
  auto hs = h.strings();
  CHECK(std::find(hs.begin(), hs.end(), "Y_3(2)*X_5(3) = X_2(1)") != hs.end());
  CHECK(triple_graph_equations(0, 0, 9).equations.empty());
  CHECK(triple_graph_equations(0, 0, 2).equations.size() == 1);  // Y_1 Y_1 X_2 = 1
}

TEST_CASE("S3 symmetry") {
  auto reps = verify_s3_symmetry(-2, 2, all_permutations3());
  CHECK(reps.size() == 6);
  for (const auto& r : reps) {
    CHECK(r.charts_checked == 125);
    CHECK(r.nonempty_charts > 0);
  }
}

TEST_CASE("exact sequences") {
  auto a = verify_diagonal_ses(0, 6);
  REQUIRE(a.dims.size() == 7);
  CHECK(a.dims[0] == std::array<std::size_t, 3>{1, 2, 1});
  for (int d = 1; d <= 6; ++d) CHECK(a.dims[d] == std::array<std::size_t, 3>{2, 2, 0});
  for (bool u0 : {false, true}) {
    auto b = verify_normalization_ses(0, 0, u0, 6);
    for (const auto& row : b.dims) CHECK(row[2] == 1);  // skyscraper ⊗ Q[t]: one class per t-degree
    auto c = verify_normalization_ses(1, 0, u0, 6);
    for (const auto& row : c.dims) CHECK(row[2] == 0);
  }
}
