#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "torushh/ar_modules.hpp"
#include "torushh/errors.hpp"
#include "torushh/global_hh.hpp"
#include "torushh/graph_scheme.hpp"
#include "torushh/local_hh.hpp"
#include "torushh/parallel.hpp"
#include "torushh/tate.hpp"
#include "torushh/torus_hh.hpp"
#include "torushh/verify.hpp"

namespace py = pybind11;
using namespace torushh;

// Everything crosses the boundary as JSON text; the Python package decodes it.
namespace {

ojson parse(const std::string& s, const char* what) {
  try {
    return ojson::parse(s);
  } catch (const ojson::parse_error& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

TestAlgebra algebra_or(const std::string& json, TestAlgebra fallback) {
  return json.empty() ? fallback : TestAlgebra::from_json(parse(json, "algebra"));
}

std::pair<PresentedModule, std::optional<Connection>> module_of(const std::string& json) {
  return armod_from_json(parse(json, "module"));
}

RunConfig config_of(const std::string& json) {
  RunConfig cfg;
  ojson j = parse(json, "config");
  if (!j.is_object()) throw ConfigError("config must be an object");
  for (const auto& [k, v] : j.items()) cfg.set(k, v.is_string() ? v.get<std::string>() : v.dump());
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_torushh, m) {
  m.doc() = "exact Hochschild cohomology computations (JSON in, JSON out)";

  static py::exception<Error> base(m, "TorusHHError");
  static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  m.def("set_threads", [](unsigned n) { set_thread_count(n); }, py::arg("n"));
  m.def("thread_count", &thread_count);

  m.def("local_hh", [](bool deformed, int K, int degree_max, int weight_band) {
    return local_hh_table(deformed, K, degree_max, weight_band).to_json().dump();
  }, py::arg("deformed") = false, py::arg("K") = 3, py::arg("degree_max") = 6, py::arg("weight_band") = 8);

  m.def("global_hh", [](int N, bool deformed, int K, int degree_max, int weight_band) {
    return assemble_hh(N, deformed, K, degree_max, weight_band).to_json().dump();
  }, py::arg("N") = 3, py::arg("deformed") = false, py::arg("K") = 3, py::arg("degree_max") = 4, py::arg("weight_band") = 2);

  m.def("mapping_torus_hh", [](const std::string& algebra, int degree_max) {
    TestAlgebra A = algebra_or(algebra, TestAlgebra::ground_field());
    return mapping_torus_hh(A, A.phi, degree_max).to_json().dump();
  }, py::arg("algebra") = "", py::arg("degree_max") = 2);

  m.def("growth_table", [](const std::string& algebra, int k_max, int degree_max) {
    return growth_table(algebra_or(algebra, TestAlgebra::split(2, {1, 0})), k_max, degree_max).to_json().dump();
  }, py::arg("algebra") = "", py::arg("k_max") = 6, py::arg("degree_max") = 4);

  m.def("random_algebras", [](std::size_t count, std::uint64_t seed) {
    auto b = random_test_algebras(count, seed);
    ojson j;
    j["discarded"] = b.discarded;
    j["algebras"] = ojson::array();
    for (const auto& A : b.algebras) j["algebras"].push_back(A.to_json());
    return j.dump();
  }, py::arg("count"), py::arg("seed"));

  m.def("graph_equations", [](int i, int j) { return graph_equations(i, j).to_json().dump(); });
  m.def("graph_restrictions", [](int lo, int hi) {
    ojson arr = ojson::array();
    for (const auto& r : check_restrictions(lo, hi)) arr.push_back(r.to_json());
    return arr.dump();
  }, py::arg("lo") = 0, py::arg("hi") = 2);
  m.def("flatness_certificate", [](int i, int j, int bound) { return flatness_certificate(i, j, bound).to_json().dump(); },
        py::arg("i"), py::arg("j"), py::arg("degree_bound") = 6);

  m.def("tate_rhom", [](int src, int src_twist, int dst, int dst_twist, int depth, int deg_max, int weight_band) {
    return rhom(build_resolution(src, src_twist, depth), build_resolution(dst, dst_twist, depth), deg_max, weight_band)
        .to_json()
        .dump();
  }, py::arg("src") = 0, py::arg("src_twist") = 0, py::arg("dst") = 0, py::arg("dst_twist") = 0, py::arg("depth") = 5,
     py::arg("deg_max") = 6, py::arg("weight_band") = 8);

  m.def("armod_check_connection", [](const std::string& module) {
    auto [mod, d] = module_of(module);
    if (!d) throw ConfigError("module JSON has no connection");
    auto c = check_connection(mod, *d);
    ojson j;
    j["ok"] = c.ok;
    j["witness"] = c.witness;
    return j.dump();
  });
  m.def("armod_solve_connection", [](const std::string& module, int degree_bound) {
    auto [mod, d] = module_of(module);
    auto s = solve_connection(mod, degree_bound);
    return s ? s->to_json().dump() : std::string("null");
  }, py::arg("module"), py::arg("degree_bound") = 2);
  m.def("armod_restrict", [](const std::string& module, const std::string& locus) {
    auto [mod, d] = module_of(module);
    if (locus == "q=0") return restrict_q0(mod).to_json().dump();
    if (locus == "t=1") return restrict_to_line(mod, ArLocus::T1).to_json().dump();
    if (locus == "u=1") return restrict_to_line(mod, ArLocus::U1).to_json().dump();
    throw ConfigError("locus must be t=1, u=1 or q=0");
  });
  m.def("armod_is_q_torsion", [](const std::string& module, int E) {
    return is_q_torsion(module_of(module).first, E).to_json().dump();
  }, py::arg("module"), py::arg("E") = 8);
  m.def("armod_dual", [](const std::string& module) { return dual_module(module_of(module).first).to_json().dump(); });
  m.def("armod_double_dual", [](const std::string& module, int E) {
    auto [mod, d] = module_of(module);
    if (!d) throw ConfigError("module JSON has no connection");
    return double_dual_comparison(mod, *d, E).to_json().dump();
  }, py::arg("module"), py::arg("E") = 8);
  m.def("invariant_ideal_primes", [](const std::vector<std::string>& gens) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(armod_ring().parse(g));
    return invariant_ideal_primes(ps).to_json().dump();
  });
  m.def("armod_property_suite", [](std::size_t instances, std::uint64_t seed, int E) {
    return run_property_suite(instances, seed, E).to_json().dump();
  }, py::arg("instances") = 100, py::arg("seed") = 7, py::arg("E") = 8);

  m.def("run", [](const std::string& command, const std::string& config, const std::string& options) {
    RunConfig cfg = config_of(config);
    ojson opt = parse(options, "options");
    auto str = [&](const char* k) { return opt.contains(k) ? opt[k].dump() : std::string(); };
    VerifyReport r;
    if (command == "local-hh") r = verify_local_hh(cfg, opt.value("deformed", false));
    else if (command == "global-hh") r = verify_global_hh(cfg, opt.value("deformed", false));
    else if (command == "torus-hh")
      r = verify_torus_hh(cfg, algebra_or(str("algebra"), TestAlgebra::ground_field()), opt.value("random", 0));
    else if (command == "growth")
      r = verify_growth(cfg, algebra_or(str("algebra"), TestAlgebra::split(2, {1, 0})), opt.value("k_max", 6));
    else if (command == "graph") r = verify_graph(cfg, parse_graph_check(opt.value("check", std::string("all"))));
    else if (command == "tate-rhom") r = verify_tate_rhom(cfg);
    else if (command == "armod verify") {
      if (!opt.contains("module")) throw ConfigError("armod verify needs options.module");
      auto [mod, d] = armod_from_json(opt["module"]);
      r = verify_armod(cfg, mod, d);
    } else if (command == "armod props") r = verify_armod_props(cfg, opt.value("instances", 100));
    else throw ConfigError("unknown command '" + command + "'");
    return r.to_json().dump();
  }, py::arg("command"), py::arg("config") = "{}", py::arg("options") = "{}");
}
