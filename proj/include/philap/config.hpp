#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "philap/action.hpp"
#include "philap/nonlinearity.hpp"
#include "philap/ricceri.hpp"
#include "philap/solve.hpp"

namespace philap {

// Raised for malformed or incomplete configuration documents (usage errors,
// CLI exit code 2).  Structural violations inside an otherwise well-formed
// document (zero weight, negative coefficient) surface later, when the
// problem object is built, as std::invalid_argument (check failures, exit 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonlinearitySetting {
  std::string kind = "power_sum";     // registry kind name
  double l = 2.0;                     // exponent for the trigonometric kinds
  std::vector<PowerTerm> terms1, terms2;  // power_sum coefficients per component
};

struct CheckSettings {
  int samples = 2000;
  std::uint64_t seed = 99;
  double ratio_threshold = 1e3;
  std::vector<double> radii = {1e2, 1e3, 1e4};
  double ball_radius = 1e3;
  double s = 0.0;  // strong-divergence exponent; 0 disables that check
  // upper-bound table for the sublinear growth check (empty = skip)
  std::vector<double> h1, h2, lt;
  double alpha1 = 0.0, alpha2 = 0.0;
  // near-zero lower-bound parameters (delta = 0 skips)
  double beta1 = 0.0, beta2 = 0.0, M1 = 0.0, M2 = 0.0, delta = 0.0;
};

struct Config {
  std::string name = "unnamed";
  std::string system = "T11";  // "T11" | "T12"
  int T = 2;
  int N = 1;
  std::vector<double> w1, w2, w3, w4;      // rho (T11) or gamma (T12) weights
  std::vector<PotentialTerm> phi1, phi2, phi3, phi4;
  double mu = 1.0, lambda = 0.0, nu = 0.0;  // T11 scalars
  double theta = 2.0, l = 2.0;              // T11 exponents
  double q = 2.0, p = 2.0;                  // T12 exponents
  NonlinearitySetting F, G, H;              // G, H ignored for T12
  SolverConfig solver;
  EstimatorConfig estimator;
  CheckSettings checks;
};

// JSON round trip; doubles serialize shortest-round-trip so re-ingestion is
// bit-exact.  Parsing rejects unknown systems, bad shapes, and malformed JSON
// with a ConfigError naming the field.
Config config_from_json(const std::string& text);
std::string config_to_json(const Config& cfg);

// Named built-in instances: "example51", "example52", "remark11".
std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);
Config builtin_config(const std::string& name);

// Loads a built-in by name or a JSON document from a path.
Config load_config(const std::string& name_or_path);

// Scales a configuration down to single-component desk size with the pinned
// demonstration seed and symmetric-pair handling.
void apply_desk_preset(Config& cfg);

// Materialize problem objects; throws std::invalid_argument (with the
// offending index or term) on structural violations, ConfigError when the
// config names the wrong system.
ProblemT11 build_t11(const Config& cfg);
ProblemT12 build_t12(const Config& cfg);

NonlinearitySpec build_nonlinearity(const NonlinearitySetting& s);

}  // namespace philap
