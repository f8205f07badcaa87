#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torushh/ar_modules.hpp"
#include "torushh/report.hpp"
#include "torushh/torus_hh.hpp"

namespace torushh {

// Shared run parameters (command line, config file, Python).
struct RunConfig {
  int N = 3;
  int degree_max = 6;
  int weight_band = 8;
  int K = 3;
  int D = 5;
  int n_max = 4;
  int E = 8;
  std::string format = "json";
  std::uint64_t seed = 7;

  void validate() const;  // ConfigError
  // Keys: N, degree_max, weight_band, K, D, n_max, E, format, seed. Throws ConfigError.
  void set(const std::string& key, const std::string& value);
  ojson to_json() const;
};
// Flat key=value file; '#' starts a comment. Throws ConfigError.
void apply_config_file(RunConfig& cfg, const std::string& path);

struct Assertion {
  std::string name;
  std::string citation;  // which statement the check reproduces
  bool pass = false;
  std::string witness;   // first counterexample, empty on success
  ojson to_json() const;
};

struct VerifyReport {
  std::string command;
  ojson config = ojson::object();
  ojson results = ojson::object();
  std::vector<Assertion> assertions;
  std::optional<HHTable> table;   // emitted as CSV when requested
  std::optional<std::string> csv;  // preformatted CSV for non-HH tables

  void check(const std::string& name, const std::string& citation, bool pass, const std::string& witness = "");
  bool passed() const;
  const Assertion* first_failure() const;
  ojson to_json() const;
  std::string to_csv() const;          // the table when there is one, else the assertions
  std::string assertions_csv() const;  // name,citation,pass,witness
};

VerifyReport verify_local_hh(const RunConfig& cfg, bool deformed);
VerifyReport verify_global_hh(const RunConfig& cfg, bool deformed);
// Mapping torus of A with its automorphism; random_instances > 0 adds the shape
// identity on that many seeded random algebras.
VerifyReport verify_torus_hh(const RunConfig& cfg, const TestAlgebra& A, std::size_t random_instances = 0);
VerifyReport verify_gamma(const RunConfig& cfg, const TestAlgebra& A);
VerifyReport verify_growth(const RunConfig& cfg, const TestAlgebra& A, int k_max);

enum class GraphCheck { Restrictions, Gluing, Flatness, Symmetry, Ses, All };
GraphCheck parse_graph_check(const std::string& s);  // ConfigError
VerifyReport verify_graph(const RunConfig& cfg, GraphCheck which);

VerifyReport verify_tate_rhom(const RunConfig& cfg);

VerifyReport verify_armod(const RunConfig& cfg, const PresentedModule& m, const std::optional<Connection>& d);
VerifyReport verify_armod_props(const RunConfig& cfg, std::size_t instances);

// Runs every criterion-level check with the given thread cap and returns the
// concatenated JSON text (used for the determinism comparison).
std::string determinism_fingerprint(const RunConfig& cfg, unsigned threads);

}  // namespace torushh
