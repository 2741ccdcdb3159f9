// Thin bindings over the core operations: configuration I/O, structural
// verification, critical-point search, parameter estimation, and direct
// action evaluation in flat coordinates.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "philap/action.hpp"
#include "philap/config.hpp"
#include "philap/periodic.hpp"
#include "philap/residual.hpp"
#include "philap/ricceri.hpp"
#include "philap/solve.hpp"
#include "philap/verify.hpp"

namespace py = pybind11;
using namespace philap;

namespace {

PeriodicState state_from(const Config& cfg, const std::vector<double>& coords) {
  size_t want = static_cast<size_t>(2 * cfg.T * cfg.N);
  if (coords.size() != want)
    throw std::invalid_argument("expected " + std::to_string(want) + " coordinates, got " +
                                std::to_string(coords.size()));
  return from_flat(coords, cfg.T, cfg.N);
}

py::dict check_dict(const CheckReport& c) {
  py::dict d;
  d["name"] = c.name;
  d["passed"] = c.passed;
  d["margin"] = c.margin;
  d["note"] = c.note;
  return d;
}

py::dict verify_dict(const std::string& name_or_path) {
  VerifyReport rep = run_verification(load_config(name_or_path));
  py::list checks;
  for (const auto& c : rep.checks) checks.append(check_dict(c));
  py::dict d;
  d["config"] = rep.config_name;
  d["system"] = rep.system;
  d["all_passed"] = rep.all_passed;
  d["checks"] = checks;
  return d;
}

py::list solve_list(const std::string& name_or_path, bool desk) {
  Config cfg = load_config(name_or_path);
  if (desk) apply_desk_preset(cfg);
  std::vector<CriticalPoint> pts;
  if (cfg.system == "T11")
    pts = find_critical_points(build_t11(cfg), cfg.solver);
  else
    pts = find_critical_points(build_t12(cfg), cfg.solver);
  py::list out;
  for (const auto& p : pts) {
    py::dict d;
    d["action"] = p.action;
    d["grad_inf"] = p.grad_inf;
    d["residual_inf"] = p.residual_inf;
    d["start_index"] = p.start_index;
    d["iterations"] = p.iterations;
    d["coords"] = to_flat(p.state);
    out.append(d);
  }
  return out;
}

py::dict ricceri_dict(const std::string& name_or_path, double r, py::object mu_arg) {
  Config cfg = load_config(name_or_path);
  if (cfg.system != "T11")
    throw std::invalid_argument("parameter estimates apply to the first system shape only");
  double mu = mu_arg.is_none() ? cfg.mu : mu_arg.cast<double>();
  ProblemT11 pb = build_t11(cfg);
  RicceriBundle b = run_ricceri(pb, r, mu, cfg.estimator);
  py::dict d;
  d["r"] = b.r;
  d["mu"] = b.mu;
  d["gamma"] = b.gamma.value;
  d["eta"] = b.eta.value;
  d["mu_star"] = b.mu_star.value;
  d["beta"] = b.beta.value;
  d["lambda_lo"] = b.lambda_interval.lo;
  d["lambda_hi"] = b.lambda_interval.hi;
  d["interval_valid"] = b.lambda_interval.valid;
  return d;
}

double action_value_at(const std::string& name_or_path, const std::vector<double>& coords) {
  Config cfg = load_config(name_or_path);
  PeriodicState u = state_from(cfg, coords);
  return cfg.system == "T11" ? action_value(build_t11(cfg), u) : action_value(build_t12(cfg), u);
}

std::vector<double> action_gradient_at(const std::string& name_or_path,
                                       const std::vector<double>& coords) {
  Config cfg = load_config(name_or_path);
  PeriodicState u = state_from(cfg, coords);
  std::vector<double> g(coords.size());
  if (cfg.system == "T11")
    action_gradient(build_t11(cfg), u, g);
  else
    action_gradient(build_t12(cfg), u, g);
  return g;
}

std::vector<double> residual_at(const std::string& name_or_path,
                                const std::vector<double>& coords) {
  Config cfg = load_config(name_or_path);
  PeriodicState u = state_from(cfg, coords);
  std::vector<double> res(coords.size());
  if (cfg.system == "T11")
    system_residual(build_t11(cfg), u, res);
  else
    system_residual(build_t12(cfg), u, res);
  return res;
}

py::dict reference_dict(double r, double mu) {
  Config cfg = builtin_config("example51");
  ProblemT11 pb = build_t11(cfg);
  SmallInstanceBundle b = example51_oracle(pb.rho3, pb.rho4, r, mu);
  py::dict d;
  d["gamma"] = b.gamma;
  d["eta_lower"] = b.eta_lower;
  d["mu_star_upper"] = b.mu_star_upper;
  d["mu_threshold"] = b.mu_threshold;
  d["beta_lower"] = b.beta_lower;
  d["beta_valid"] = b.beta_valid;
  d["weight_sum"] = b.weight_sum;
  return d;
}

}  // namespace

PYBIND11_MODULE(philap, m) {
  m.doc() =
      "Periodic solutions of weighted nonlinear difference systems: structural checks, "
      "multi-start critical-point search, and critical-parameter estimates.";

  py::register_exception<ConfigError>(m, "ConfigError");

  m.def("builtin_names", &builtin_names, "Names of the built-in problem configurations.");
  m.def(
      "config_json",
      [](const std::string& name_or_path) { return config_to_json(load_config(name_or_path)); },
      py::arg("name_or_path"),
      "Load a built-in name or JSON file and return the canonical JSON text.");
  m.def("verify", &verify_dict, py::arg("name_or_path"),
        "Run the structural check suites; returns {config, system, all_passed, checks}.");
  m.def("solve", &solve_list, py::arg("name_or_path"), py::arg("desk") = false,
        "Multi-start deflated critical-point search; returns a list of point dicts.");
  m.def("ricceri", &ricceri_dict, py::arg("name_or_path"), py::arg("r"),
        py::arg("mu") = py::none(),
        "Estimate the critical-parameter quantities at level r (first system shape).");
  m.def("action_value", &action_value_at, py::arg("name_or_path"), py::arg("coords"),
        "Action value at flat coordinates (u1 block then u2 block, length 2*T*N).");
  m.def("action_gradient", &action_gradient_at, py::arg("name_or_path"), py::arg("coords"),
        "Exact action gradient at flat coordinates.");
  m.def("residual", &residual_at, py::arg("name_or_path"), py::arg("coords"),
        "System residual at flat coordinates; zero exactly at periodic solutions.");
  m.def("example51_reference", &reference_dict, py::arg("r"), py::arg("mu"),
        "Closed-form reference quantities for the small built-in instance.");
}
