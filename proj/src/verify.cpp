#include "torushh/verify.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "torushh/errors.hpp"
#include "torushh/global_hh.hpp"
#include "torushh/graph_scheme.hpp"
#include "torushh/local_hh.hpp"
#include "torushh/parallel.hpp"
#include "torushh/tate.hpp"

namespace torushh {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(x);
  } catch (const std::exception&) {
    throw ConfigError("value for " + key + " is not an integer: '" + v + "'");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string dims_str(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string at(int d, int w, std::size_t got, std::size_t want) {
  return "H^" + std::to_string(d) + " weight " + std::to_string(w) + ": dim " + std::to_string(got) + ", expected " +
         std::to_string(want);
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::vector<std::size_t> table_dims(const HHTable& t, int degree_max) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= degree_max; ++n) out.push_back(t.dim(n, 0));
  return out;
}

}  // namespace

void RunConfig::validate() const {
  auto pos = [](const char* name, int v) {
    if (v < 1) throw ConfigError(std::string(name) + " must be >= 1, got " + std::to_string(v));
  };
  pos("N", N);
  pos("degree_max", degree_max);
  pos("weight_band", weight_band);
  pos("K", K);
  pos("D", D);
  pos("n_max", n_max);
  pos("E", E);
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv, got '" + format + "'");
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "N" || key == "window") N = parse_int(key, v);
  else if (key == "degree_max") degree_max = parse_int(key, v);
  else if (key == "weight_band") weight_band = parse_int(key, v);
  else if (key == "K" || key == "q_order") K = parse_int(key, v);
  else if (key == "D" || key == "depth") D = parse_int(key, v);
  else if (key == "n_max") n_max = parse_int(key, v);
  else if (key == "E") E = parse_int(key, v);
  else if (key == "format") format = v;
  else if (key == "seed") {
    int s = parse_int(key, v);
    if (s < 0) throw ConfigError("seed must be nonnegative");
    seed = static_cast<std::uint64_t>(s);
  } else
    throw ConfigError("unknown config key '" + key + "'");
}

ojson RunConfig::to_json() const {
  ojson j;
  j["N"] = N;
  j["degree_max"] = degree_max;
  j["weight_band"] = weight_band;
  j["K"] = K;
  j["D"] = D;
  j["n_max"] = n_max;
  j["E"] = E;
  j["format"] = format;
  j["seed"] = seed;
  return j;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(no) + ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

ojson Assertion::to_json() const {
  ojson j;
  j["name"] = name;
  j["citation"] = citation;
  j["pass"] = pass;
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

void VerifyReport::check(const std::string& name, const std::string& citation, bool pass, const std::string& witness) {
  assertions.push_back({name, citation, pass, pass ? "" : witness});
}

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const Assertion* VerifyReport::first_failure() const {
  for (const auto& a : assertions)
    if (!a.pass) return &a;
  return nullptr;
}

ojson VerifyReport::to_json() const {
  ojson j;
  j["command"] = command;
  j["config"] = config;
  j["results"] = results;
  j["assertions"] = ojson::array();
  for (const auto& a : assertions) j["assertions"].push_back(a.to_json());
  j["pass"] = passed();
  return j;
}

std::string VerifyReport::assertions_csv() const {
  std::ostringstream os;
  os << "assertion,citation,pass,witness\n";
  for (const auto& a : assertions)
    os << csv_field(a.name) << "," << csv_field(a.citation) << "," << (a.pass ? "pass" : "fail") << ","
       << csv_field(a.witness) << "\n";
  return os.str();
}

std::string VerifyReport::to_csv() const {
  if (table) return table->to_csv();
  if (csv) return *csv;
  return assertions_csv();
}

// ---------------------------------------------------------------- local HH

VerifyReport verify_local_hh(const RunConfig& cfg, bool deformed) {
  cfg.validate();
  VerifyReport r;
  r.command = "local-hh";
  r.config = cfg.to_json();
  r.config["deformed"] = deformed;
  HHTable t = local_hh_table(deformed, cfg.K, cfg.degree_max, cfg.weight_band);
  r.results["table"] = t.to_json();
  const int wb = cfg.weight_band;
  if (!deformed) {
    const std::string cite = "node-hh-undeformed: HH of k[X,Y]/(XY) as a graded algebra";
    for (int d = 0; d <= cfg.degree_max; ++d) {
      std::string wit;
      for (int w = -wb; w <= wb && wit.empty(); ++w) {
        std::size_t want = d == 0 ? 1 : d == 1 ? (w == 0 ? 2 : 1) : (w == 0 ? 1 : 0);
        if (t.dim(d, w) != want) wit = at(d, w, t.dim(d, w), want);
      }
      r.check("H^" + std::to_string(d) + " dims over weights -" + std::to_string(wb) + ".." + std::to_string(wb), cite,
              wit.empty(), wit);
    }
    const HHEntry* h1 = t.find(1, 0);
    bool ok = h1 && h1->basis == std::vector<std::string>{"XX*", "YY*"};
    r.check("H^1 weight 0 basis {XX*, YY*}", cite, ok, h1 ? "basis differs" : "no H^1 at weight 0");
  } else {
    const std::string cite = "node-hh-deformed: HH of the smoothing k[X,Y][[q]]/(XY - q)";
    for (int d = 0; d <= 1; ++d) {
      std::string wit;
      for (int w = -wb; w <= wb && wit.empty(); ++w)
        if (t.dim(d, w) != 1) wit = at(d, w, t.dim(d, w), 1);
      r.check("H^" + std::to_string(d) + " free rank 1 in every weight", cite, wit.empty(), wit);
    }
    const HHEntry* h1 = t.find(1, 0);
    bool gen = h1 && h1->basis == std::vector<std::string>{"XX* - YY*"};
    r.check("H^1 weight 0 generator XX* - YY*", cite, gen,
            h1 && !h1->basis.empty() ? "generator " + h1->basis[0] : "no generator");
    for (int d = 2; d <= cfg.degree_max; ++d) {
      std::string wit;
      for (int w = -wb; w <= wb && wit.empty(); ++w) {
        const HHEntry* e = t.find(d, w);
        if (t.dim(d, w) != 0) wit = at(d, w, t.dim(d, w), 0);
        else if (d % 2 == 0 && w == 0) {
          if (!e || e->torsion.size() != 1 || !ends_with(e->torsion[0], "ann q"))
            wit = "H^" + std::to_string(d) + " weight 0: expected one class killed by q exactly";
        } else if (e && !e->torsion.empty()) {
          wit = "H^" + std::to_string(d) + " weight " + std::to_string(w) + ": unexpected torsion " + e->torsion[0];
        }
      }
      std::string name = d % 2 == 0 ? "H^" + std::to_string(d) + " is q-torsion, annihilated by q"
                                    : "H^" + std::to_string(d) + " vanishes";
      r.check(name, cite, wit.empty(), wit);
    }
  }
  r.table = t;
  return r;
}

// --------------------------------------------------------------- global HH

VerifyReport verify_global_hh(const RunConfig& cfg, bool deformed) {
  cfg.validate();
  VerifyReport r;
  r.command = "global-hh";
  r.config = cfg.to_json();
  r.config["deformed"] = deformed;
  const int N = cfg.N, dm = cfg.degree_max, wb = cfg.weight_band;
  HHTable t = assemble_hh(N, deformed, deformed ? cfg.K : 1, dm, wb);
  r.results["table"] = t.to_json();
  if (!deformed) {
    const std::string cite = "chain-hh: HH of a chain of N projective lines via the sheaf spectral sequence";
    std::vector<std::size_t> got{t.dim(0, 0), t.dim(1, 0), dm >= 2 ? t.dim(2, 0) : 0};
    std::vector<std::size_t> want{1, static_cast<std::size_t>(N), static_cast<std::size_t>(N - 1)};
    r.check("weight 0 (HH^0, HH^1, HH^2) = (1, N, N-1)", cite, got == want, dims_str(got) + " vs " + dims_str(want));
    std::string wit;
    for (int n = 0; n <= dm && wit.empty(); ++n)
      for (int w = -wb; w <= wb && wit.empty(); ++w) {
        std::size_t want_nw = sheaf_cohomology(N, n, w).first + (n > 0 ? sheaf_cohomology(N, n - 1, w).second : 0);
        if (t.dim(n, w) != want_nw) wit = at(n, w, t.dim(n, w), want_nw);
      }
    r.check("every (degree, weight) matches H^0(HH^n) + H^1(HH^{n-1})", cite, wit.empty(), wit);
  } else {
    const std::string cite = "chain-hh-deformed: HH of the smoothed chain over k[q]/q^K";
    r.check("HH^1 weight 0 free rank 1", cite, t.dim(1, 0) == 1, "free rank " + std::to_string(t.dim(1, 0)));
    std::string wit;
    for (int n = 2; n <= dm && wit.empty(); ++n)
      for (int w = -wb; w <= wb && wit.empty(); ++w) {
        if (t.dim(n, w) != 0) wit = at(n, w, t.dim(n, w), 0);
        const HHEntry* e = t.find(n, w);
        if (e)
          for (const auto& s : e->torsion)
            if (!ends_with(s, "ann q")) wit = "torsion class " + s + " is not killed by q";
      }
    r.check("HH^n for n >= 2 is all q-torsion", cite, wit.empty(), wit);
    const HHEntry* h2 = t.find(2, 0);
    std::size_t tors = h2 ? h2->torsion.size() : 0;
    r.check("HH^2 weight 0 has N-1 torsion classes", cite, tors == static_cast<std::size_t>(N - 1),
            std::to_string(tors) + " classes");
  }
  r.table = t;
  return r;
}

// ---------------------------------------------------------- mapping torus

namespace {

void add_gamma_checks(VerifyReport& r, const RunConfig& cfg, const TestAlgebra& A) {
  const std::string cite = "gamma-classes: degree-one classes gamma_O, gamma_phi, gamma_2 on the mapping torus";
  auto chunk = build_torus_chunk(A, 0, 1, 2);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<ChunkMorphism, ChunkMorphism>> pairs;
  const std::size_t nobj = chunk.objects.size();
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t b1 = trial % nobj, b2 = (trial + 1) % nobj, b3 = (trial + 3) % nobj;
    auto f = random_chunk_morphism(chunk, b1, b2, trial % 2, 0, rng);
    auto h = random_chunk_morphism(chunk, b2, b3, 1 - trial % 2, trial % 3 - 1, rng);
    pairs.push_back({h, f});
  }
  std::string wit;
  try {
    verify_gamma2_closed(chunk, pairs);
  } catch (const NotClosed& e) {
    wit = e.what();
  }
  r.check("gamma_2 closed on the torus chunk (8 random composable pairs)", cite, wit.empty(), wit);
  GammaReport g = gamma_classes(A);
  r.results["gamma"] = g.to_json();
  r.check("cocone projection kills gamma_2", cite, g.gamma2_projection_zero, "projection of gamma_2 is nonzero");
  r.check("cocone projection keeps gamma_phi", cite, g.gamma_phi_projection_nonzero, "projection of gamma_phi is zero");
  r.check("gamma_phi and gamma_2 span rank 2", cite, g.span_rank == 2, "rank " + std::to_string(g.span_rank));
}

}  // namespace

VerifyReport verify_gamma(const RunConfig& cfg, const TestAlgebra& A) {
  cfg.validate();
  VerifyReport r;
  r.command = "gamma";
  r.config = cfg.to_json();
  r.config["algebra"] = A.name;
  add_gamma_checks(r, cfg, A);
  return r;
}

VerifyReport verify_torus_hh(const RunConfig& cfg, const TestAlgebra& A, std::size_t random_instances) {
  cfg.validate();
  VerifyReport r;
  r.command = "torus-hh";
  r.config = cfg.to_json();
  r.config["algebra"] = A.name;
  const int dm = cfg.degree_max;
  const SparseMatrix id = SparseMatrix::identity(A.n);
  HHTable t = mapping_torus_hh(A, id, dm);
  HHAlgebra h = hh_algebra(A, id, dm);
  r.results["dims"] = table_dims(t, dm);
  r.results["invariants"] = h.invariants;
  r.results["coinvariants"] = h.coinvariants;
  r.results["table"] = t.to_json();
  const std::string cite = "mapping-torus-hh: HH of M_phi from HH(A), its phi-invariants and coinvariants";

  auto oracle = mapping_torus_cocone_dims(hh_algebra(A, id, dm, false), dm);
  r.check("closed form equals the cocone of (phi - 1) on the unnormalized bar complex", cite,
          table_dims(t, dm) == oracle, dims_str(table_dims(t, dm)) + " vs cocone " + dims_str(oracle));
  if (h.invariants[0] == 1 && dm >= 1)
    r.check("shape identity HH^1 = 2 + dim HH^1(A)^phi", cite, t.dim(1, 0) == 2 + h.invariants[1],
            "HH^1 = " + std::to_string(t.dim(1, 0)) + ", HH^1(A)^phi = " + std::to_string(h.invariants[1]));

  if (random_instances > 0) {
    auto batch = random_test_algebras(random_instances, cfg.seed);
    std::vector<std::string> wits(batch.algebras.size());
    parallel_for(batch.algebras.size(), [&](std::size_t i) {
      const auto& B = batch.algebras[i];
      const auto idB = SparseMatrix::identity(B.n);
      auto hb = hh_algebra(B, idB, 2);
      auto tb = mapping_torus_hh(B, idB, 2);
      if (tb.dim(1, 0) != 2 + hb.invariants[1])
        wits[i] = B.name + ": HH^1 = " + std::to_string(tb.dim(1, 0)) + ", HH^1(A)^phi = " + std::to_string(hb.invariants[1]);
    });
    std::string wit;
    for (const auto& w : wits)
      if (wit.empty() && !w.empty()) wit = w;
    r.results["random_algebras"] = {{"instances", batch.algebras.size()}, {"discarded", batch.discarded}};
    r.check("shape identity on " + std::to_string(batch.algebras.size()) + " random algebras",
            "mapping-torus-shape: HH^1(M_phi) = 2 + dim HH^1(A)^phi when HH^0(A)^phi is one-dimensional", wit.empty(),
            wit);
  }
  if (h.invariants.size() > 1 && h.invariants[1] == 0 && h.invariants[0] == 1) add_gamma_checks(r, cfg, A);
  r.table = t;
  return r;
}

VerifyReport verify_growth(const RunConfig& cfg, const TestAlgebra& A, int k_max) {
  cfg.validate();
  if (k_max < 0) throw ConfigError("k_max must be >= 0");
  VerifyReport r;
  r.command = "growth";
  r.config = cfg.to_json();
  r.config["algebra"] = A.name;
  r.config["k_max"] = k_max;
  const int n = cfg.n_max;
  GrowthTable g = growth_table(A, k_max, n);
  r.results["growth"] = g.to_json();
  r.csv = g.to_csv();
  const std::string cite = "growth: HH of the mapping torus with coefficients in the k-th power of the fiberwise functor";
  std::vector<std::string> wits(static_cast<std::size_t>(k_max) + 1);
  parallel_for(wits.size(), [&](std::size_t k) {
    auto oracle = mapping_torus_cocone_dims(hh_algebra(A, A.phi_power(static_cast<int>(k)), n, false), n);
    if (oracle != g.rows[k]) wits[k] = "k=" + std::to_string(k) + ": " + dims_str(g.rows[k]) + " vs oracle " + dims_str(oracle);
  });
  std::string wit;
  for (const auto& w : wits)
    if (wit.empty() && !w.empty()) wit = w;
  r.check("every row equals the brute-force bar-complex oracle", cite, wit.empty(), wit);
  // order of phi, if it shows up within the table
  int order = 0;
  for (int p = 1; p <= k_max && order == 0; ++p)
    if (A.phi_power(p) == SparseMatrix::identity(A.n)) order = p;
  r.results["phi_order"] = order;
  if (order > 0) {
    std::string pw;
    for (int k = 0; k <= k_max && pw.empty(); ++k)
      if (g.rows[k] != g.rows[k % order]) pw = "row " + std::to_string(k) + " differs from row " + std::to_string(k % order);
    r.check("rows are periodic with the order of phi", cite, pw.empty(), pw);
  }
  return r;
}

// ------------------------------------------------------------ graph scheme

GraphCheck parse_graph_check(const std::string& s) {
  if (s == "restrictions") return GraphCheck::Restrictions;
  if (s == "gluing") return GraphCheck::Gluing;
  if (s == "flatness") return GraphCheck::Flatness;
  if (s == "symmetry") return GraphCheck::Symmetry;
  if (s == "ses") return GraphCheck::Ses;
  if (s == "all") return GraphCheck::All;
  throw ConfigError("unknown graph check '" + s + "' (restrictions, gluing, flatness, symmetry, ses, all)");
}

VerifyReport verify_graph(const RunConfig& cfg, GraphCheck which) {
  cfg.validate();
  VerifyReport r;
  r.command = "graph";
  r.config = cfg.to_json();
  const int lo = 0, hi = cfg.N - 1;
  auto want = [&](GraphCheck c) { return which == c || which == GraphCheck::All; };

  if (want(GraphCheck::Restrictions)) {
    const std::string cite = "graph-restrictions: the graph family at t = 1 and u = 1";
    auto reps = check_restrictions(lo, hi);
    ojson arr = ojson::array();
    std::string w1, w2, w3;
    for (const auto& rep : reps) {
      arr.push_back(rep.to_json());
      std::string pair = "(" + std::to_string(rep.i) + ", " + std::to_string(rep.j) + ")";
      if (!rep.t1_is_diagonal && w1.empty()) w1 = "chart pair " + pair;
      if (!rep.u1_is_tr_inverse_graph && w2.empty()) w2 = "chart pair " + pair;
      if (!rep.t1_q0_commutes && w3.empty()) w3 = "chart pair " + pair;
    }
    r.results["restrictions"] = arr;
    std::string win = " on " + std::to_string(reps.size()) + " chart pairs in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]";
    r.check("t = 1 restriction is the diagonal" + win, cite, w1.empty(), w1);
    r.check("u = 1 restriction is the graph of tr^-1" + win, cite, w2.empty(), w2);
    r.check("t = 1 and q = 0 restrictions commute" + win, cite, w3.empty(), w3);
  }
  if (want(GraphCheck::Gluing)) {
    std::string wit;
    int count = 0;
    for (int i = lo; i <= hi; ++i) {
      std::vector<std::array<int, 4>> pairs{{i, i, i, i - 1}, {i, i, i + 1, i}, {i, i - 1, i + 1, i}};
      for (const auto& p : pairs) {
        ++count;
        if (!check_gluing(p[0], p[1], p[2], p[3]) && wit.empty())
          wit = "charts (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ") and (" + std::to_string(p[2]) + "," +
                std::to_string(p[3]) + ")";
      }
    }
    r.check("chart ideals agree on overlaps (" + std::to_string(count) + " pairs)",
            "graph-gluing: the chart equations define one closed subscheme", wit.empty(), wit);
  }
  if (want(GraphCheck::Flatness)) {
    const std::string cite = "graph-flatness: the graph is flat over the (u, t)-plane";
    std::vector<std::pair<int, int>> charts;
    for (int i = lo; i <= hi; ++i) {
      charts.emplace_back(i, i);
      if (i - 1 >= lo) charts.emplace_back(i, i - 1);
    }
    std::vector<FlatnessCertificate> certs(charts.size());
    std::vector<std::string> errs(charts.size());
    parallel_for(charts.size(), [&](std::size_t k) {
      try {
        certs[k] = flatness_certificate(charts[k].first, charts[k].second, cfg.degree_max);
      } catch (const std::exception& e) {
        errs[k] = e.what();
      }
    });
    ojson arr = ojson::array();
    std::string wit;
    for (std::size_t k = 0; k < charts.size(); ++k) {
      std::string pair = "(" + std::to_string(charts[k].first) + ", " + std::to_string(charts[k].second) + ")";
      if (!errs[k].empty()) {
        if (wit.empty()) wit = pair + ": " + errs[k];
        continue;
      }
      arr.push_back(certs[k].to_json());
      if (wit.empty() && !certs[k].free()) wit = pair + ": basis products are not independent";
      if (wit.empty() && certs[k].slice_dims != certs[k].slice_dims_bruteforce) wit = pair + ": slice dims disagree with Macaulay matrices";
    }
    r.results["flatness"] = arr;
    r.check("monomial basis free over Q[u,t] through degree " + std::to_string(cfg.degree_max), cite, wit.empty(), wit);
  }
  if (want(GraphCheck::Symmetry)) {
    const int slo = -(cfg.N + 1) / 2, shi = slo + cfg.N + 1;
    std::string wit;
    try {
      auto reps = verify_s3_symmetry(slo, shi, all_permutations3());
      ojson arr = ojson::array();
      for (const auto& s : reps) arr.push_back(s.to_json());
      r.results["symmetry"] = arr;
    } catch (const SymmetryFailure& e) {
      wit = e.what();
    }
    r.check("triple graph equations are S3 symmetric on indices [" + std::to_string(slo) + ", " + std::to_string(shi) + "]",
            "triple-graph-symmetry: the triple graph is symmetric after X_n(3) <-> Y_-n(3)", wit.empty(), wit);
  }
  if (want(GraphCheck::Ses)) {
    std::string wit;
    ojson arr = ojson::array();
    try {
      arr.push_back(verify_diagonal_ses(0, cfg.degree_max).to_json());
    } catch (const ExactnessFailure& e) {
      wit = e.what();
    }
    r.check("diagonal normalization sequence exact through degree " + std::to_string(cfg.degree_max),
            "diagonal-ses: 0 -> O_diag -> normalized diagonal -> node -> 0", wit.empty(), wit);
    wit.clear();
    try {
      for (bool u0 : {false, true}) {
        arr.push_back(verify_normalization_ses(0, 0, u0, cfg.degree_max).to_json());
        arr.push_back(verify_normalization_ses(1, 0, u0, cfg.degree_max).to_json());
      }
    } catch (const ExactnessFailure& e) {
      wit = e.what();
    }
    r.check("graph normalization sequence exact through degree " + std::to_string(cfg.degree_max),
            "normalization-ses: 0 -> O_G -> normalized graph -> node skyscrapers over Q[t] -> 0", wit.empty(), wit);
    r.results["ses"] = arr;
  }
  return r;
}

// -------------------------------------------------------------- Tate RHom

VerifyReport verify_tate_rhom(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.D < 3) throw ConfigError("tate-rhom needs D >= 3 so that degrees through 2D-4 are trusted");
  VerifyReport r;
  r.command = "tate-rhom";
  r.config = cfg.to_json();
  const int D = cfg.D, top = 2 * D - 4, wb = cfg.weight_band;
  auto O0 = build_resolution(0, 0, D);
  const std::string cite = "tate-rhom: RHom between structure sheaves of components of the Tate chain";

  RHomTable e = rhom(O0, O0, top, wb);
  RHomTable h1 = rhom(build_resolution(1, 0, D), O0, top, wb);
  RHomTable hm = rhom(build_resolution(-1, 0, D), O0, top, wb);
  r.results["end_O_C0"] = e.to_json();
  r.results["hom_O_C1_O_C0"] = h1.to_json();
  r.results["hom_O_Cm1_O_C0"] = hm.to_json();
  std::vector<std::size_t> want_end, want_adj;
  for (int n = 0; n <= top; ++n) {
    want_end.push_back(n == 0 ? 1 : (n % 2 == 0 ? 2 : 0));
    want_adj.push_back(n % 2 == 1 ? 1 : 0);
  }
  r.check("end(O_C0) = (1,0,2,0,2,...) through degree " + std::to_string(top), cite, e.dims == want_end,
          dims_str(e.dims));
  r.check("Hom(O_C1, O_C0) = (0,1,0,1,...) through degree " + std::to_string(top), cite, h1.dims == want_adj,
          dims_str(h1.dims));
  r.check("Hom(O_C-1, O_C0) = (0,1,0,1,...) through degree " + std::to_string(top), cite, hm.dims == want_adj,
          dims_str(hm.dims));
  bool trusted = true;
  for (bool b : e.trusted) trusted = trusted && b;
  r.check("all reported degrees lie in the trusted range", cite, trusted, "some degree beyond 2D-4");

  std::string wit;
  for (int j : {2, -2, 3, -3})
    for (int a : {0, -1}) {
      RHomTable x = rhom(build_resolution(j, a, D), O0, top, wb);
      RHomTable y = rhom(O0, build_resolution(j, a, D), top, wb);
      for (std::size_t n = 0; n < x.dims.size(); ++n)
        if ((x.dims[n] || y.dims[n]) && wit.empty())
          wit = "component " + std::to_string(j) + " twist " + std::to_string(a) + " degree " + std::to_string(n);
    }
  r.check("hom vanishes for components at distance >= 2", "tate-hom-vanishing: disjoint components have no homs",
          wit.empty(), wit);
  return r;
}

// -------------------------------------------------------------- A_R-modules

VerifyReport verify_armod(const RunConfig& cfg, const PresentedModule& m, const std::optional<Connection>& given) {
  cfg.validate();
  VerifyReport r;
  r.command = "armod verify";
  r.config = cfg.to_json();
  r.results["module"] = m.to_json();
  std::optional<Connection> d = given;
  if (!d) d = solve_connection(m, 2);
  r.results["connection_source"] = given ? "input" : (d ? "solved" : "none found");
  if (!d) {
    r.check("module admits a connection", "connection-check: Leibniz rule along t d/dt - u d/du", false,
            "no connection with entries of degree <= 2");
    return r;
  }
  r.results["connection"] = d->to_json();
  auto cc = check_connection(m, *d);
  r.check("connection is compatible with the relations", "connection-check: Leibniz rule along t d/dt - u d/du", cc.ok,
          cc.witness);
  if (!cc.ok) return r;

  r.results["restriction_t1"] = restrict_to_line(m, ArLocus::T1).to_json();
  r.results["restriction_u1"] = restrict_to_line(m, ArLocus::U1).to_json();
  try {
    r.results["q_torsion"] = is_q_torsion(m, cfg.E).to_json();
  } catch (const BoundExhausted& e) {
    r.results["q_torsion"] = {{"torsion", true}, {"exponent", nullptr}, {"bound", cfg.E}, {"note", e.what()}};
  }
  std::string wit;
  try {
    auto dual = dual_module(m);
    r.results["dual"] = dual.to_json();
  } catch (const NotFreeWitness& e) {
    wit = e.what();
  }
  r.check("dual module is free", "dual-free: duals of connected modules are free", wit.empty(), wit);
  if (!wit.empty()) return r;
  try {
    auto dd = double_dual_comparison(m, *d, cfg.E);
    r.results["double_dual"] = dd.to_json();
    r.check("double-dual map has q-torsion kernel and cokernel within E", "double-dual: M is free up to q-torsion",
            dd.passes(), dd.note);
  } catch (const BoundExhausted& e) {
    r.check("double-dual map has q-torsion kernel and cokernel within E", "double-dual: M is free up to q-torsion", false,
            e.what());
  }
  if (restrict_to_line(m, ArLocus::T1).is_q_torsion()) {
    bool ok = false;
    std::string w = "M/(t-1)M is q-torsion but M is not";
    try {
      ok = is_q_torsion(m, cfg.E).torsion;
    } catch (const BoundExhausted& e) {
      w = e.what();
    }
    r.check("q-torsion on t = 1 implies q-torsion", "qtorsion-restriction: torsion detected at t = 1", ok, w);
  }
  return r;
}

VerifyReport verify_armod_props(const RunConfig& cfg, std::size_t instances) {
  cfg.validate();
  VerifyReport r;
  r.command = "armod props";
  r.config = cfg.to_json();
  r.config["instances"] = instances;
  PropertySuite s = run_property_suite(instances, cfg.seed, cfg.E);
  r.results = s.to_json();
  auto frac = [](std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); };
  auto first = [&](const std::string& key) {
    for (const auto& f : s.failures)
      if (key.empty() || f.find(key) != std::string::npos) return f;
    return std::string();
  };
  r.results["summary"] = frac(s.instances - std::min(s.instances, s.failures.size()), s.instances) + " pass";
  r.check("generated connections accepted " + frac(s.connection_ok, s.instances),
          "connection-check: Leibniz rule along t d/dt - u d/du", s.connection_ok == s.instances, first("connection"));
  r.check("negative controls rejected " + frac(s.negative_rejected, s.negative_controls),
          "connection-check: modules with non-invariant support have no connection",
          s.negative_rejected == s.negative_controls, first("negative control"));
  r.check("dual free " + frac(s.dual_free, s.instances), "dual-free: duals of connected modules are free",
          s.dual_free == s.instances, first("NotFreeWitness"));
  r.check("double dual q-torsion comparison " + frac(s.double_dual_ok, s.instances),
          "double-dual: M is free up to q-torsion", s.double_dual_ok == s.instances, first("double dual"));
  r.check("q-torsion at t = 1 implies q-torsion " + frac(s.qtorsmod_ok, s.qtorsmod_applicable),
          "qtorsion-restriction: torsion detected at t = 1", s.qtorsmod_ok == s.qtorsmod_applicable, first("M/(t-1)"));
  r.check("invariant ideal primes among (0), (u), (t), (u,t) " + frac(s.ideals_ok, s.ideals_checked),
          "invariant-primes: torus-invariant primes of the completed ring", s.ideals_ok == s.ideals_checked,
          first("ideal"));
  r.check("no failures", "property suite", s.failures.empty(), first(""));
  return r;
}

std::string determinism_fingerprint(const RunConfig& cfg, unsigned threads) {
  set_thread_count(threads);
  std::string out;
  try {
    out += verify_local_hh(cfg, true).to_json().dump() + "\n";
    out += verify_global_hh(cfg, false).to_json().dump() + "\n";
    out += verify_torus_hh(cfg, TestAlgebra::ground_field(), 20).to_json().dump() + "\n";
    out += verify_growth(cfg, TestAlgebra::split(2, {1, 0}), 4).to_json().dump() + "\n";
    out += verify_graph(cfg, GraphCheck::Restrictions).to_json().dump() + "\n";
    out += verify_armod_props(cfg, 30).to_json().dump() + "\n";
  } catch (...) {
    set_thread_count(0);
    throw;
  }
  set_thread_count(0);
  return out;
}

}  // namespace torushh
