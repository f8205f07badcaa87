#include <doctest.h>

#include "torushh/ar_modules.hpp"
#include "torushh/errors.hpp"

using namespace torushh;

namespace {
Poly P(const std::string& s) { return armod_ring().parse(s); }
PresentedModule cyc(std::initializer_list<const char*> gens) {
  std::vector<Poly> ps;
  for (auto g : gens) ps.push_back(P(g));
  return PresentedModule::cyclic(ps);
}
}  // namespace

TEST_CASE("base derivation weights") {
  CHECK(base_derivation(P("u^2*t^5")) == P("3*u^2*t^5"));
  CHECK(base_derivation(P("u*t - 7")).is_zero());
  CHECK(base_derivation(P("u")) == P("-u"));
}

TEST_CASE("connection examples") {
  CHECK(check_connection(PresentedModule::free(2), Connection::zero(2)).ok);
  CHECK(check_connection(cyc({"t"}), Connection::zero(1)).ok);
  auto bad = check_connection(cyc({"t - 1"}), Connection::zero(1));
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_relation == std::optional<std::size_t>(0));
  CHECK(bad.witness.find("normal form") != std::string::npos);
  // no connection with small entries exists for the shifted line, one does for (t)
  CHECK_FALSE(solve_connection(cyc({"t - 1"})).has_value());
  CHECK_FALSE(solve_connection(cyc({"u + t"})).has_value());
  auto d = solve_connection(cyc({"u^2", "u*t - 3"}));
  REQUIRE(d.has_value());
  CHECK(check_connection(cyc({"u^2", "u*t - 3"}), *d).ok);
  // weight-homogeneous presentation: diagonal connection
  PresentedModule m{2, {{P("u"), P("t^2")}}};  // u e_0 + t^2 e_1, weight 0 when e_j have weights (1, -2)
  CHECK(check_connection(m, Connection::diagonal({1, -2})).ok);
  CHECK_FALSE(check_connection(m, Connection::zero(2)).ok);
  CHECK_THROWS_AS(check_connection(m, Connection::zero(1)), std::invalid_argument);
}

TEST_CASE("restrictions to the coordinate lines") {
  CHECK(restrict_to_line(cyc({"t - 1"}), ArLocus::T1) == PIDModule{1, {}});
  CHECK(restrict_to_line(cyc({"t^2"}), ArLocus::T1).is_zero());
  auto r = restrict_to_line(cyc({"u"}), ArLocus::T1);
  CHECK(r.free_rank == 0);
  REQUIRE(r.torsion.size() == 1);
  CHECK(r.torsion[0] == QPoly::q());
  CHECK(r.is_q_torsion());
  auto s = restrict_to_line(cyc({"u*t - 2"}), ArLocus::U1);
  REQUIRE(s.torsion.size() == 1);
  CHECK(s.torsion[0] == QPoly({Rational(-2), Rational(1)}));
  CHECK_FALSE(s.is_q_torsion());
  CHECK(restrict_to_line(PresentedModule::free(3), ArLocus::U1) == PIDModule{3, {}});
  auto q0 = restrict_q0(cyc({"t^2"}));
  CHECK(q0.relations.size() == 2);
  CHECK(is_q_torsion(q0, 8).exponent == 1);
  CHECK_THROWS_AS(restrict_to_line(cyc({"u"}), ArLocus::Q0), std::invalid_argument);
}

TEST_CASE("q-torsion decision") {
  auto a = is_q_torsion(cyc({"u", "t"}), 8);
  CHECK(a.torsion);
  CHECK(a.exponent == 1);
  CHECK_FALSE(is_q_torsion(PresentedModule::free(1), 8).torsion);
  auto b = is_q_torsion(cyc({"t^2"}), 8);
  CHECK(b.torsion);
  CHECK(b.exponent == 2);
  CHECK(is_q_torsion(cyc({"1"}), 8).exponent == 0);
  CHECK_FALSE(is_q_torsion(cyc({"u*t - 1"}), 8).torsion);
  CHECK_FALSE(is_q_torsion(cyc({"t - 1"}), 8).torsion);
  CHECK_THROWS_AS(is_q_torsion(cyc({"t^10"}), 8), BoundExhausted);
  CHECK(is_q_torsion(cyc({"t^10"}), 10).exponent == 10);
  // completion: q acts invertibly on R/(ut - 1), so the completion vanishes
  CHECK(q_torsion_after_completion(cyc({"u*t - 1"}), 8));
  CHECK_FALSE(q_torsion_after_completion(PresentedModule::free(1), 8));
  CHECK_FALSE(q_torsion_after_completion(cyc({"t - 1"}), 8));
}

TEST_CASE("duals") {
  CHECK(dual_module(cyc({"t"})).rank() == 0);
  auto d = dual_module(PresentedModule::free(1).direct_sum(cyc({"u", "t"})));
  CHECK(d.rank() == 1);
  // the surviving functional kills the torsion generator
  CHECK(d.basis[0][1].is_zero());
  CHECK(dual_module(PresentedModule::free(3)).rank() == 3);
  // R^2 / (u, t)^T: dual is the syzygy module of (u, t), free of rank 1
  PresentedModule m{2, {{P("u"), P("t")}}};
  auto dm = dual_module(m);
  REQUIRE(dm.rank() == 1);
  CHECK((dm.basis[0][0] * P("u") + dm.basis[0][1] * P("t")).is_zero());
}

TEST_CASE("double dual comparison") {
  auto plain = double_dual_comparison(PresentedModule::free(1).direct_sum(cyc({"t"})), Connection::zero(2));
  CHECK(plain.passes());
  CHECK(plain.dual_rank == 1);
  CHECK(plain.kernel_torsion.torsion);
  CHECK(plain.kernel_torsion.exponent == 1);
  CHECK_FALSE(plain.completion_dependent);

  auto hyp = double_dual_comparison(cyc({"u*t - 2"}), Connection::zero(1));
  CHECK(hyp.passes());
  CHECK(hyp.completion_dependent);
  CHECK_FALSE(hyp.kernel_torsion.torsion);

  // R^2/(u, t)^T is torsion free but not reflexive: cokernel R/(u,t)
  PresentedModule m{2, {{P("u"), P("t")}}};
  auto cd = double_dual_comparison(m, Connection::diagonal({1, -1}));
  CHECK(cd.passes());
  CHECK(cd.dual_rank == 1);
  CHECK(cd.cokernel_torsion.torsion);
  CHECK(cd.cokernel_torsion.exponent == 1);
  CHECK(cd.kernel_torsion.exponent == 0);

  CHECK_THROWS_AS(double_dual_comparison(cyc({"t - 1"}), Connection::zero(1)), std::invalid_argument);
}

TEST_CASE("invariant ideal primes") {
  auto a = invariant_ideal_primes({P("u")});
  CHECK(a.minimal == std::vector<std::string>{"(u)"});
  CHECK_FALSE(a.embedded_origin);
  auto b = invariant_ideal_primes({P("u*t")});
  CHECK(b.minimal == std::vector<std::string>{"(u)", "(t)"});
  CHECK_FALSE(b.embedded_origin);
  auto c = invariant_ideal_primes({P("t^2"), P("t*u")});
  CHECK(c.minimal == std::vector<std::string>{"(t)"});
  CHECK(c.embedded_origin);
  CHECK(invariant_ideal_primes({P("u"), P("t")}).minimal == std::vector<std::string>{"(u,t)"});
  CHECK(invariant_ideal_primes({}).minimal == std::vector<std::string>{"(0)"});
  CHECK(invariant_ideal_primes({P("u*t - 1")}).unit);
  CHECK(invariant_ideal_primes({P("u*t - 1")}).minimal.empty());
  CHECK(invariant_ideal_primes({P("u*t^2 - t")}).minimal == std::vector<std::string>{"(t)"});
  CHECK_THROWS_AS(invariant_ideal_primes({P("u + t")}), NotInvariant);
}

TEST_CASE("finitely generated complexes") {
  FreeComplex c;
  c.ranks = {1, 1};
  c.d = {{{P("u")}}};
  c.connection = {{{P("0")}}, {{P("1")}}};
  auto r = fgcomplex_check(c);
  REQUIRE(r.precondition);
  CHECK(r.agrees);
  CHECK(r.lhs[0].is_zero());
  REQUIRE(r.lhs[1].torsion.size() == 1);
  CHECK(r.lhs[1].torsion[0] == QPoly::q());
  CHECK(r.rhs[1] == r.lhs[1]);

  c.connection = {{{P("0")}}, {{P("0")}}};
  auto refused = fgcomplex_check(c);
  CHECK_FALSE(refused.precondition);
  CHECK(refused.reason.find("horizontal") != std::string::npos);

  // Koszul piece R^2 -(u t)-> R with D0 = diag(-1, 1), D1 = 0
  FreeComplex k;
  k.ranks = {2, 1};
  k.d = {{{P("u")}, {P("t")}}};
  k.connection = {{{P("-1"), P("0")}, {P("0"), P("1")}}, {{P("0")}}};
  auto kr = fgcomplex_check(k);
  REQUIRE(kr.precondition);
  CHECK(kr.agrees);
  CHECK(kr.lhs[0] == PIDModule{1, {}});
  CHECK(kr.lhs[1].is_zero());
}

TEST_CASE("json round trip") {
  PresentedModule m{2, {{P("u^2 - 3/2*u*t"), P("t")}}};
  Connection d = Connection::diagonal({0, 2});
  auto j = armod_to_json(m, d);
  auto [m2, d2] = armod_from_json(j);
  CHECK(m2.gens == 2);
  REQUIRE(m2.relations.size() == 1);
  CHECK(m2.relations[0][0] == m.relations[0][0]);
  REQUIRE(d2.has_value());
  CHECK(d2->images[1][1] == P("2"));
  CHECK_THROWS_AS(armod_from_json(ojson::parse(R"({"generators": 1, "relations": [[[[0, -1, "1"]]]]})")), ConfigError);
  CHECK_THROWS_AS(armod_from_json(ojson::parse(R"({"relations": []})")), ConfigError);
}

TEST_CASE("random connected modules: property suite") {
  auto batch = random_connected_modules(20, 3);
  auto again = random_connected_modules(20, 3);
  REQUIRE(batch.instances.size() == 20);
  CHECK(batch.discarded == again.discarded);
  CHECK(armod_to_json(batch.instances[7].module, batch.instances[7].connection) ==
        armod_to_json(again.instances[7].module, again.instances[7].connection));

  auto s = run_property_suite(100, 7, 8);
  INFO(s.to_json().dump(2));
  CHECK(s.instances == 100);
  CHECK(s.passed());
  CHECK(s.connection_ok == 100);
  CHECK(s.negative_rejected == s.negative_controls);
  CHECK(s.dual_free == 100);
  CHECK(s.double_dual_ok == 100);
  CHECK(s.qtorsmod_ok == s.qtorsmod_applicable);
  CHECK(s.qtorsmod_applicable > 0);
  CHECK(s.ideals_ok == s.ideals_checked);
}
