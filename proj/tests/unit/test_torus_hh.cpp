#include <random>

#include "doctest.h"
#include "torushh/errors.hpp"
#include "torushh/torus_hh.hpp"

using namespace torushh;

namespace {

TestAlgebra swap2() { return TestAlgebra::split(2, {1, 0}); }

std::vector<std::size_t> dims_of(const HHTable& t, int deg_max) {
  std::vector<std::size_t> d;
  for (int n = 0; n <= deg_max; ++n) d.push_back(t.dim(n, 0));
  return d;
}

}  // namespace

TEST_CASE("test algebra validation") {
  CHECK_NOTHROW(TestAlgebra::ground_field().validate());
  CHECK_NOTHROW(TestAlgebra::kronecker({{1, 1}, {0, 1}}).validate());
  CHECK_NOTHROW(TestAlgebra::matrix2({{1, 2}, {0, 1}}).validate());
  CHECK_NOTHROW(TestAlgebra::wreath(TestAlgebra::truncated_poly(2, 2)).validate());
  TestAlgebra bad = TestAlgebra::truncated_poly(3, 1);
  bad.mult[1][1] = {0, 0, 0};
  bad.mult[1][2] = {0, 0, 1};  // x*x^2 = x^2 but x*x = 0: not associative
  CHECK_THROWS_AS(bad.validate(), NotAssociative);
  TestAlgebra notauto = TestAlgebra::truncated_poly(2, 1);
  notauto.phi.set(0, 1, 1);  // x -> 1 + x does not square to zero
  CHECK_THROWS_AS(notauto.validate(), NotAutomorphism);
  TestAlgebra singular = swap2();
  singular.phi = SparseMatrix(2, 2);
  CHECK_THROWS_AS(singular.validate(), NotAutomorphism);
  // JSON round trip
  TestAlgebra k = TestAlgebra::kronecker({{2, 1}, {1, 1}}).change_basis(SparseMatrix::from_dense(
      {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 1, 1}}, 4));
  TestAlgebra back = TestAlgebra::from_json(k.to_json());
  CHECK(back.mult == k.mult);
  CHECK(back.phi == k.phi);
  CHECK_THROWS_AS(TestAlgebra::from_json(ojson{{"dim", 2}}), ConfigError);
}

TEST_CASE("hh_algebra examples") {
  auto Q = TestAlgebra::ground_field();
  auto h = hh_algebra(Q, SparseMatrix::identity(1), 3);
  CHECK(h.dims == std::vector<std::size_t>{1, 0, 0, 0});
  auto A = swap2();
  CHECK(hh_algebra(A, SparseMatrix::identity(2), 3).dims == std::vector<std::size_t>{2, 0, 0, 0});
  CHECK(hh_algebra(A, A.phi, 3).dims == std::vector<std::size_t>{0, 0, 0, 0});
  // Q[x]/x^2 over Q: HH^n = 1 in every degree (characteristic zero)
  auto D = TestAlgebra::truncated_poly(2, -1);
  auto hd = hh_algebra(D, SparseMatrix::identity(2), 3);
  CHECK(hd.dims == std::vector<std::size_t>{2, 1, 1, 1});
  // x -> -x acts by (-1)^? on each class; the HH^0 invariants are the scalars
  CHECK(hd.invariants[0] == 1);
}

TEST_CASE("normalized and unnormalized bar complexes agree") {
  std::vector<TestAlgebra> algebras{swap2(), TestAlgebra::truncated_poly(2, 2), TestAlgebra::upper_triangular({{1, 1}, {0, 2}}),
                                    TestAlgebra::kronecker({{0, 1}, {1, 0}})};
  for (const auto& A : algebras) {
    auto a = hh_algebra(A, SparseMatrix::identity(A.n), 2, true);
    auto b = hh_algebra(A, SparseMatrix::identity(A.n), 2, false);
    CHECK_MESSAGE(a.dims == b.dims, A.name);
    CHECK_MESSAGE(a.invariants == b.invariants, A.name);
    auto c = hh_algebra(A, A.phi, 2, true);
    auto d = hh_algebra(A, A.phi, 2, false);
    CHECK_MESSAGE(c.dims == d.dims, A.name);
  }
}

TEST_CASE("center and outer derivation oracles") {
  auto batch = random_test_algebras(25, 3);
  for (const auto& A : batch.algebras) {
    auto h = hh_algebra(A, SparseMatrix::identity(A.n), 1);
    CHECK_MESSAGE(h.dims[0] == center_dim(A), A.name);
    CHECK_MESSAGE(h.dims[1] == outer_derivation_dim(A), A.name);
    auto hp = hh_algebra(A, A.phi, 0);
    CHECK_MESSAGE(hp.dims[0] == twisted_center_dim(A, A.phi), A.name);
  }
  CHECK(outer_derivation_dim(TestAlgebra::kronecker({{1, 0}, {0, 1}})) == 3);
  CHECK(twisted_center_dim(swap2(), swap2().phi) == 0);
}

TEST_CASE("mapping torus examples") {
  auto Q = TestAlgebra::ground_field();
  CHECK(dims_of(mapping_torus_hh(Q, SparseMatrix::identity(1), 3), 3) == std::vector<std::size_t>{1, 2, 1, 0});
  auto A = swap2();
  CHECK(dims_of(mapping_torus_hh(A, SparseMatrix::identity(2), 3), 3) == std::vector<std::size_t>{1, 2, 1, 0});
  CHECK(dims_of(mapping_torus_hh(A, A.phi, 3), 3) == std::vector<std::size_t>{0, 0, 0, 0});
  auto t = mapping_torus_hh(Q, SparseMatrix::identity(1), 2, true, 3);
  CHECK(t.params["K"] == 3);
  CHECK(dims_of(t, 2) == std::vector<std::size_t>{1, 2, 1});
  CHECK(t.find(1, 0)->basis[0] == "gamma_O*HH^0(A)^phi#0");
}

TEST_CASE("closed form agrees with the cocone of T - 1, and the shape identity holds") {
  auto batch = random_test_algebras(60, 2024);
  CHECK(batch.algebras.size() == 60);
  for (const auto& A : batch.algebras) {
    auto h = hh_algebra(A, SparseMatrix::identity(A.n), 3);
    auto t = mapping_torus_hh(A, SparseMatrix::identity(A.n), 3);
    CHECK_MESSAGE(dims_of(t, 3) == mapping_torus_cocone_dims(h, 3), A.name);
    CHECK_MESSAGE(t.dim(0, 0) == h.invariants[0], A.name);
    CHECK_MESSAGE(t.dim(1, 0) == 2 + h.invariants[1], A.name);
    // Euler characteristic of the mapping torus vanishes
    long chi = 0;
    for (int n = 0; n <= 3; ++n) chi += (n % 2 ? -1 : 1) * static_cast<long>(t.dim(n, 0));
    chi += static_cast<long>(h.invariants[3] + h.coinvariants[2]);  // truncation boundary terms
    CHECK_MESSAGE(chi == 0, A.name);
  }
}

TEST_CASE("random generator is seeded and filters on the invariant center") {
  auto a = random_test_algebras(10, 99);
  auto b = random_test_algebras(10, 99);
  REQUIRE(a.algebras.size() == b.algebras.size());
  for (std::size_t i = 0; i < a.algebras.size(); ++i) CHECK(a.algebras[i].to_json() == b.algebras[i].to_json());
  CHECK(a.discarded == b.discarded);
  auto big = random_test_algebras(80, 5);
  CHECK(big.discarded > 0);
}

TEST_CASE("growth table for the swap and for cyclic permutations") {
  auto A = swap2();
  auto g = growth_table(A, 5, 3);
  for (int k = 0; k <= 5; ++k) {
    if (k % 2) CHECK(g.rows[k] == std::vector<std::size_t>(4, 0));
    else CHECK(g.rows[k] == g.rows[0]);
    // brute-force oracle: unnormalized bar complex of A with the Φ^k twist
    auto oracle = hh_algebra(A, A.phi_power(k), 3, false);
    bool zero = std::all_of(oracle.dims.begin(), oracle.dims.end(), [](std::size_t d) { return d == 0; });
    CHECK(zero == (k % 2 == 1));
    if (k % 2 == 0) CHECK(oracle.dims == hh_algebra(A, SparseMatrix::identity(2), 3, false).dims);
  }
  auto C3 = TestAlgebra::split(3, {1, 2, 0});
  auto g3 = growth_table(C3, 6, 2);
  for (int k = 0; k <= 6; ++k) {
    if (k % 3) CHECK(g3.rows[k] == std::vector<std::size_t>(3, 0));
    else CHECK(g3.rows[k] == std::vector<std::size_t>{1, 2, 1});
  }
  auto id = growth_table(TestAlgebra::ground_field(), 3, 2);
  for (const auto& r : id.rows) CHECK(r == std::vector<std::size_t>{1, 2, 1});
  CHECK(g.to_csv().rfind("k,HH0,HH1,HH2,HH3\n0,1,2,1,0\n1,0,0,0,0", 0) == 0);
}

TEST_CASE("torus chunk: finiteness, composition, gamma_2") {
  auto Q = TestAlgebra::ground_field();
  auto ch = build_torus_chunk(Q, 0, 1, 2);
  CHECK(ch.objects.size() == 4);
  std::size_t O0 = 1;  // (i = 0, a = 0)
  CHECK(ch.extra_degrees(O0, O0) == std::vector<int>{-1, 0, 1});
  CHECK(chunk_hom_dim(ch, O0, O0, 0, 4) == 1);
  CHECK_THROWS_AS(build_torus_chunk(Q, 0, 4, 2), OutOfWindow);

  auto A = TestAlgebra::kronecker({{1, 1}, {0, 1}});
  auto chA = build_torus_chunk(A, 0, 1, 2);
  std::mt19937_64 rng(17);
  std::vector<std::pair<ChunkMorphism, ChunkMorphism>> pairs;
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t b1 = trial % 4, b2 = (trial + 1) % 4, b3 = (trial + 3) % 4;
    auto f = random_chunk_morphism(chA, b1, b2, trial % 2, 0, rng);
    auto h = random_chunk_morphism(chA, b2, b3, 1 - trial % 2, trial % 3 - 1, rng);
    auto k = random_chunk_morphism(chA, b3, b1, 0, 0, rng);
    CHECK(chunk_compose(chA, chunk_identity(chA, b2), f) == f);
    CHECK(chunk_compose(chA, f, chunk_identity(chA, b1)) == f);
    CHECK(chunk_compose(chA, k, chunk_compose(chA, h, f)) == chunk_compose(chA, chunk_compose(chA, k, h), f));
    // extra degree is additive
    auto hf = chunk_compose(chA, h, f);
    for (const auto& [key, x] : hf.coeffs) {
      bool found = false;
      for (const auto& [kf, y] : f.coeffs)
        for (const auto& [kh, z] : h.coeffs)
          if (kf.g + kh.g == key.g) found = true;
      CHECK(found);
    }
    // Leibniz for the chunk differential
    auto lhs = chunk_d(chA, hf);
    auto rhs = chunk_plus(chunk_compose(chA, chunk_d(chA, h), f), chunk_compose(chA, h, chunk_d(chA, f)),
                          h.deg % 2 == 0 ? 1 : -1);
    CHECK(lhs == rhs);
    pairs.push_back({h, f});
  }
  CHECK_NOTHROW(verify_gamma2_closed(chA, pairs));
  // gamma_2 vanishes on extra degree 0 and is the identity on extra degree 1
  ChunkMorphism id = chunk_identity(chA, 0);
  CHECK(gamma2(id).is_zero());
  ChunkMorphism one{0, 2, 0, {}};
  one.add(ChunkKey{1, 0, 0, Monomial{}}, A.unit);
  CHECK(gamma2(one) == one);
}

TEST_CASE("gamma classes") {
  for (const auto& A : {TestAlgebra::ground_field(), TestAlgebra::split(2, {1, 0}), TestAlgebra::matrix2({{1, 1}, {0, 1}})}) {
    auto r = gamma_classes(A);
    CHECK_MESSAGE(r.hh1_dim == 2, A.name);
    CHECK(r.span_rank == 2);
    CHECK(r.gamma2_projection_zero);
    CHECK(r.gamma_phi_projection_nonzero);
  }
  CHECK_THROWS_AS(gamma_classes(TestAlgebra::kronecker({{1, 0}, {0, 1}})), std::invalid_argument);
}
