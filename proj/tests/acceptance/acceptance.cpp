// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "torushh/ar_modules.hpp"
#include "torushh/errors.hpp"
#include "torushh/global_hh.hpp"
#include "torushh/local_hh.hpp"
#include "torushh/tate.hpp"
#include "torushh/torus_hh.hpp"
#include "torushh/verify.hpp"

using namespace torushh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string dims(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

Outcome local_undeformed() {
  Outcome o;
  HHTable t = local_hh_table(false, 3, 6, 8);
  for (int d = 0; d <= 6; ++d)
    for (int w = -8; w <= 8; ++w) {
      std::size_t want = d == 0 ? 1 : d == 1 ? (w == 0 ? 2 : 1) : (w == 0 ? 1 : 0);
      if (t.dim(d, w) != want)
        o.fail("H^" + std::to_string(d) + " weight " + std::to_string(w) + " = " + std::to_string(t.dim(d, w)));
    }
  if (o.pass) o.detail = "degrees 0-6, weights -8..8: H^0 1 per weight, H^1 2 at weight 0 else 1, H^n>=2 1 at weight 0 only";
  return o;
}

Outcome local_deformed() {
  Outcome o;
  HHTable t = local_hh_table(true, 3, 6, 8);
  for (int w = -8; w <= 8; ++w)
    if (t.dim(1, w) != 1) o.fail("H^1 weight " + std::to_string(w) + " rank " + std::to_string(t.dim(1, w)));
  const HHEntry* g = t.find(1, 0);
  if (!g || g->basis != std::vector<std::string>{"XX* - YY*"}) o.fail("weight-0 generator is not XX* - YY*");
  for (int d = 2; d <= 6; ++d)
    for (int w = -8; w <= 8; ++w) {
      const HHEntry* e = t.find(d, w);
      if (t.dim(d, w) != 0) o.fail("H^" + std::to_string(d) + " has free part");
      bool tors = e && !e->torsion.empty();
      if (d % 2 == 1 && tors) o.fail("H^" + std::to_string(d) + " nonzero");
      if (d % 2 == 0 && w == 0 && !tors) o.fail("H^" + std::to_string(d) + " weight 0 missing its torsion class");
      if (tors)
        for (const auto& s : e->torsion)
          if (!ends_with(s, "ann q")) o.fail("H^" + std::to_string(d) + " class " + s + " not killed by q exactly");
    }
  if (o.pass) o.detail = "K=3: H^1 rank 1 per weight, generator XX* - YY*, H^2k killed by q, H^2k+1 = 0 (k>=1)";
  return o;
}

Outcome tate_rhom() {
  Outcome o;
  const int D = 5, top = 2 * D - 4;
  auto O0 = build_resolution(0, 0, D);
  auto e = rhom(O0, O0, top, 8);
  auto h = rhom(build_resolution(1, 0, D), O0, top, 8);
  std::vector<std::size_t> we, wh;
  for (int n = 0; n <= top; ++n) {
    we.push_back(n == 0 ? 1 : (n % 2 == 0 ? 2 : 0));
    wh.push_back(n % 2);
  }
  if (e.dims != we) o.fail("end(O_C0) = " + dims(e.dims));
  if (h.dims != wh) o.fail("Hom(O_C1, O_C0) = " + dims(h.dims));
  for (int j : {2, -2, 3})
    for (int a : {0, -1}) {
      auto x = rhom(build_resolution(j, a, D), O0, top, 8);
      auto y = rhom(O0, build_resolution(j, a, D), top, 8);
      for (std::size_t n = 0; n < x.dims.size(); ++n)
        if (x.dims[n] || y.dims[n]) o.fail("hom with component " + std::to_string(j) + " nonzero");
    }
  if (o.pass) o.detail = "D=5 through degree 6: end " + dims(e.dims) + ", Hom(O_C1,O_C0) " + dims(h.dims) + ", distance >= 2 vanishes";
  return o;
}

Outcome global_assembly() {
  Outcome o;
  for (int N = 3; N <= 5; ++N) {
    auto t = assemble_hh(N, false, 1, 2, 2);
    std::vector<std::size_t> got{t.dim(0, 0), t.dim(1, 0), t.dim(2, 0)};
    std::vector<std::size_t> want{1, static_cast<std::size_t>(N), static_cast<std::size_t>(N - 1)};
    if (got != want) o.fail("N=" + std::to_string(N) + " undeformed " + dims(got));
    auto d = assemble_hh(N, true, 3, 2, 2);
    if (d.dim(1, 0) != 1) o.fail("N=" + std::to_string(N) + " deformed HH^1 rank " + std::to_string(d.dim(1, 0)));
    for (int w = -2; w <= 2; ++w)
      if (d.dim(2, w) != 0) o.fail("N=" + std::to_string(N) + " deformed HH^2 has free part");
    const HHEntry* h2 = d.find(2, 0);
    if (!h2 || h2->torsion.empty()) o.fail("N=" + std::to_string(N) + " deformed HH^2 weight 0 empty");
    else
      for (const auto& s : h2->torsion)
        if (!ends_with(s, "ann q")) o.fail("N=" + std::to_string(N) + " class " + s);
  }
  if (o.pass) o.detail = "N=3,4,5: (1,N,N-1) undeformed; deformed HH^1 rank 1, HH^2 q-torsion";
  return o;
}

Outcome mapping_torus() {
  Outcome o;
  auto Q = TestAlgebra::ground_field();
  auto t = mapping_torus_hh(Q, SparseMatrix::identity(1), 2);
  std::vector<std::size_t> got{t.dim(0, 0), t.dim(1, 0), t.dim(2, 0)};
  if (got != std::vector<std::size_t>{1, 2, 1}) o.fail("A=Q: " + dims(got));
  auto batch = random_test_algebras(60, 2024);
  for (const auto& A : batch.algebras) {
    const auto id = SparseMatrix::identity(A.n);
    auto h = hh_algebra(A, id, 2);
    auto m = mapping_torus_hh(A, id, 2);
    if (m.dim(1, 0) != 2 + h.invariants[1]) o.fail(A.name + ": HH^1 = " + std::to_string(m.dim(1, 0)));
    // independent oracle: cocone on the unnormalized bar complex
    auto c = mapping_torus_cocone_dims(hh_algebra(A, id, 2, false), 2);
    if (c[1] != m.dim(1, 0)) o.fail(A.name + ": cocone HH^1 = " + std::to_string(c[1]));
  }
  if (o.pass)
    o.detail = "A=Q: (1,2,1); HH^1 = 2 + dim HH^1(A)^phi on " + std::to_string(batch.algebras.size()) +
               " random algebras (" + std::to_string(batch.discarded) + " discarded by the filter)";
  return o;
}

Outcome gamma_classes_check() {
  Outcome o;
  RunConfig cfg;
  std::vector<TestAlgebra> algebras{TestAlgebra::ground_field(), TestAlgebra::split(2, {1, 0}),
                                    TestAlgebra::matrix2({{1, 1}, {0, 1}})};
  for (const auto& A : algebras) {
    auto h = hh_algebra(A, SparseMatrix::identity(A.n), 1);
    if (h.invariants[1] != 0) continue;
    auto r = verify_gamma(cfg, A);
    if (const Assertion* a = r.first_failure()) o.fail(A.name + ": " + a->name + ": " + a->witness);
  }
  if (o.pass) o.detail = "gamma_2 closed on the chunk, projection kills gamma_2 not gamma_phi, span rank 2 (Q, QxQ swap, M_2)";
  return o;
}

Outcome growth_swap() {
  Outcome o;
  auto A = TestAlgebra::split(2, {1, 0});
  const int kmax = 6, n = 4;
  auto g = growth_table(A, kmax, n);
  for (int k = 0; k <= kmax; ++k) {
    if (k % 2 == 1 && g.rows[k] != std::vector<std::size_t>(n + 1, 0)) o.fail("odd k=" + std::to_string(k) + " " + dims(g.rows[k]));
    if (k % 2 == 0 && g.rows[k] != g.rows[0]) o.fail("even k=" + std::to_string(k) + " " + dims(g.rows[k]));
    auto bar = hh_algebra(A, A.phi_power(k), n, false);
    auto oracle = mapping_torus_cocone_dims(bar, n);
    if (oracle != g.rows[k]) o.fail("k=" + std::to_string(k) + " oracle " + dims(oracle));
    bool zero = true;
    for (auto d : bar.dims) zero = zero && d == 0;
    if (zero != (k % 2 == 1)) o.fail("k=" + std::to_string(k) + " brute-force HH(A, Phi^k) " + dims(bar.dims));
  }
  if (o.pass) o.detail = "k=0..6, degrees 0-4: odd rows 0, even rows " + dims(g.rows[0]) + ", all equal to the bar oracle";
  return o;
}

Outcome graph_scheme() {
  Outcome o;
  RunConfig cfg;  // N = 3 window, degree 6, symmetry on 5 indices
  auto r = verify_graph(cfg, GraphCheck::All);
  if (const Assertion* a = r.first_failure()) o.fail(a->name + ": " + a->witness);
  if (o.pass) o.detail = std::to_string(r.assertions.size()) + " checks: restrictions on the 3-window, flatness to degree 6, S3 on [-2,2], both sequences exact to degree 6";
  return o;
}

Outcome property_suite() {
  Outcome o;
  auto s = run_property_suite(100, 7, 8);
  if (s.instances < 100) o.fail("only " + std::to_string(s.instances) + " instances");
  if (!s.passed()) o.fail(s.failures.front());
  if (s.negative_rejected != s.negative_controls) o.fail("negative control accepted");
  if (o.pass)
    o.detail = std::to_string(s.instances) + " modules, 0 failures; " + std::to_string(s.negative_controls) +
               " negative controls rejected; " + std::to_string(s.completion_flagged) + " completion-dependent";
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg;
  std::string a = determinism_fingerprint(cfg, 1);
  std::string b = determinism_fingerprint(cfg, 4);
  std::string c = determinism_fingerprint(cfg, 4);
  if (a != b) o.fail("reports differ between 1 and 4 threads");
  if (b != c) o.fail("reports differ between two 4-thread runs");
  if (o.pass) o.detail = std::to_string(a.size()) + " bytes identical under 1 and 4 threads";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"local HH, undeformed", local_undeformed},
      {"local HH, deformed K=3", local_deformed},
      {"Tate chain RHom, D=5", tate_rhom},
      {"global assembly N=3..5", global_assembly},
      {"mapping torus and shape identity", mapping_torus},
      {"gamma classes", gamma_classes_check},
      {"growth table, Q x Q with swap", growth_swap},
      {"graph scheme", graph_scheme},
      {"A_R-module property suite", property_suite},
      {"determinism across thread counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << ": "
              << o.detail << " [" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << "s]" << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria pass")) << std::endl;
  return failed ? 1 : 0;
}
