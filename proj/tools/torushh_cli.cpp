#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "torushh/errors.hpp"
#include "torushh/verify.hpp"

using namespace torushh;

namespace {

struct Flags {
  std::string config, out;
  std::optional<int> N, degree_max, weight_band, K, D, n_max, E;
  std::optional<std::string> format;
  std::optional<long> seed;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "flat key=value config file");
  sub->add_option("-N,--window", f.N, "window size N (default 3)");
  sub->add_option("--degree-max,--deg-max", f.degree_max, "top degree (default 6)");
  sub->add_option("--weight-band", f.weight_band, "weights -w..w (default 8)");
  sub->add_option("-K,--q-order", f.K, "q-adic order K (default 3)");
  sub->add_option("-D,--depth", f.D, "resolution depth D (default 5)");
  sub->add_option("--n-max", f.n_max, "bar degree (default 4)");
  sub->add_option("-E,--torsion-bound", f.E, "q-torsion exponent bound (default 8)");
  sub->add_option("--format", f.format, "json or csv");
  sub->add_option("--seed", f.seed, "seed for generated instances (default 7)");
  sub->add_option("-o,--out", f.out, "write the report here instead of stdout");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) apply_config_file(cfg, f.config);
  auto put = [&](const char* key, const auto& v) {
    if (v) cfg.set(key, std::to_string(*v));
  };
  put("N", f.N);
  put("degree_max", f.degree_max);
  put("weight_band", f.weight_band);
  put("K", f.K);
  put("D", f.D);
  put("n_max", f.n_max);
  put("E", f.E);
  put("seed", f.seed);
  if (f.format) cfg.set("format", *f.format);
  cfg.validate();
  return cfg;
}

ojson read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

TestAlgebra load_algebra(const std::string& path, TestAlgebra fallback) {
  if (path.empty()) return fallback;
  try {
    return TestAlgebra::from_json(read_json(path));
  } catch (const NotAssociative& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const NotAutomorphism& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int emit(const VerifyReport& r, const RunConfig& cfg, const std::string& out) {
  std::string text = cfg.format == "csv" ? r.to_csv() : r.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out);
    f << text;
  }
  for (const auto& a : r.assertions)
    std::cerr << (a.pass ? "PASS " : "FAIL ") << a.name << " [" << a.citation << "]\n";
  if (const Assertion* bad = r.first_failure()) {
    std::cerr << "first failure: " << bad->name << " [" << bad->citation << "]: " << bad->witness << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild cohomology of the Tate chain, mapping tori and A_R-modules"};
  app.require_subcommand(1);
  Flags f;
  bool deformed = false;
  std::string algebra, module, check = "all";
  std::size_t random = 0, instances = 100;
  int k_max = 6;

  auto* local = app.add_subcommand("local-hh", "HH of the node, optionally deformed");
  add_common(local, f);
  local->add_flag("--deformed", deformed, "use the smoothing XY = q");

  auto* global = app.add_subcommand("global-hh", "HH of a chain of N lines by Cech assembly");
  add_common(global, f);
  global->add_flag("--deformed", deformed, "use the smoothed chain");

  auto* torus = app.add_subcommand("torus-hh", "HH of the mapping torus of an algebra with automorphism");
  add_common(torus, f);
  torus->add_option("--algebra", algebra, "algebra JSON (default: Q with the identity)");
  torus->add_option("--random", random, "also check the shape identity on this many random algebras");

  auto* growth = app.add_subcommand("growth", "growth table of HH with fiberwise twists");
  add_common(growth, f);
  growth->add_option("--algebra", algebra, "algebra JSON (default: Q x Q with the swap)");
  growth->add_option("--k-max", k_max, "largest twist power (default 6)");

  auto* graph = app.add_subcommand("graph", "graph scheme of the translation");
  add_common(graph, f);
  graph->add_option("--check", check, "restrictions, gluing, flatness, symmetry, ses or all");

  auto* tate = app.add_subcommand("tate-rhom", "RHom between component structure sheaves of the Tate chain");
  add_common(tate, f);

  auto* armod = app.add_subcommand("armod", "modules with connection over Q[u,t]");
  armod->require_subcommand(1);
  auto* verify = armod->add_subcommand("verify", "verify one presented module");
  add_common(verify, f);
  verify->add_option("--module", module, "module JSON")->required();
  auto* props = armod->add_subcommand("props", "property suite over seeded random modules");
  add_common(props, f);
  props->add_option("--instances", instances, "number of modules (default 100)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = resolve(f);
    VerifyReport r;
    if (local->parsed()) r = verify_local_hh(cfg, deformed);
    else if (global->parsed()) r = verify_global_hh(cfg, deformed);
    else if (torus->parsed()) r = verify_torus_hh(cfg, load_algebra(algebra, TestAlgebra::ground_field()), random);
    else if (growth->parsed()) r = verify_growth(cfg, load_algebra(algebra, TestAlgebra::split(2, {1, 0})), k_max);
    else if (graph->parsed()) r = verify_graph(cfg, parse_graph_check(check));
    else if (tate->parsed()) r = verify_tate_rhom(cfg);
    else if (verify->parsed()) {
      auto [m, d] = armod_from_json(read_json(module));
      r = verify_armod(cfg, m, d);
    } else {
      if (instances == 0) throw ConfigError("--instances must be >= 1");
      r = verify_armod_props(cfg, instances);
    }
    return emit(r, cfg, f.out);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
