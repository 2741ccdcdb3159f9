#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "philap/action.hpp"

namespace philap {

struct SolverConfig {
  int starts = 32;
  double start_radius = 1.0;
  std::uint64_t seed = 42;
  double tol_grad = 1e-9;
  int max_iter = 600;
  double dedup_tol = 1e-6;
  bool even_symmetry = false;

  // Sphere seeding: count points scaled to coordinate 2-norm delta, then
  // shrunk by a bisection-found radius until the action is negative on all of
  // them.  A count of zero disables sphere seeding.
  int clark_seed_count = 0;
  double clark_delta = 0.5;

  bool deflate = true;
  double deflation_exponent = 2.0;
  double deflation_shift = 1.0;
  int deflation_rounds = 4;
  int deflation_starts = 12;

  int threads = 1;
};

struct CriticalPoint {
  PeriodicState state;
  double action = 0;
  double grad_inf = 0;
  double residual_inf = 0;
  int start_index = -1;
  int iterations = 0;
};

struct MinimizeResult {
  bool converged = false;
  std::string reason;
  CriticalPoint point;
};

// Type-erased problem access shared by the solver and the estimators.
struct ProblemView {
  int T = 0;
  int N = 0;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> grad;
  std::function<void(std::span<const double>, std::span<double>)> residual;
  bool even = false;
};

ProblemView make_view(const ProblemT11& pb);
ProblemView make_view(const ProblemT12& pb);

// Local descent (quasi-Newton with backtracking) followed by a damped Newton
// polish on the gradient; the returned point satisfies grad_inf <= tol_grad
// when converged, and the action never increases along accepted steps.
MinimizeResult minimize_from(const ProblemT11& pb, const PeriodicState& start, const SolverConfig& cfg);
MinimizeResult minimize_from(const ProblemT12& pb, const PeriodicState& start, const SolverConfig& cfg);
MinimizeResult minimize_from(const ProblemView& pv, const PeriodicState& start, const SolverConfig& cfg);

// Fixed-seed sphere sample at coordinate 2-norm delta scaled by r0; antipodal
// mates are emitted adjacently (odd counts drop the last mate).
std::vector<PeriodicState> clark_seeds(int T, int N, double delta, double r0, int count,
                                       std::uint64_t seed);

// Largest r0 in (0, 1], found by bisection, with the action negative on all
// sphere seeds at scale r0; returns 0 when no such radius is detected.
double negative_sphere_radius(const ProblemView& pv, double delta, int count, std::uint64_t seed);

// Sup-norm deduplication; with even_symmetry, u and -u fall in one class.
// Each class keeps the smallest-action (then lexicographically smallest)
// member.  Input order does not affect the result.
std::vector<CriticalPoint> dedup(std::vector<CriticalPoint> points, double tol, bool even_symmetry);

// Multi-start search plus deflation rounds; every returned point is
// re-verified against the undeflated gradient.  Results are sorted by action
// and deterministic for a fixed config, including across thread counts.  For
// even problems each nonzero critical point is returned together with its
// mirror, so the output is closed under u -> -u.
std::vector<CriticalPoint> find_critical_points(const ProblemT11& pb, const SolverConfig& cfg);
std::vector<CriticalPoint> find_critical_points(const ProblemT12& pb, const SolverConfig& cfg);
std::vector<CriticalPoint> find_critical_points(const ProblemView& pv, const SolverConfig& cfg);

namespace detail {

struct LbfgsOptions {
  int max_iter = 500;
  double tol_grad = 1e-9;
  int memory = 10;
};

struct LbfgsResult {
  bool converged = false;
  int iterations = 0;
  double f = 0;
  std::vector<double> x;
  std::vector<double> g;
  std::string reason;
};

// fg fills the gradient and returns the value.
using ValueGrad = std::function<double(std::span<const double>, std::span<double>)>;

LbfgsResult lbfgs_minimize(const ValueGrad& fg, std::vector<double> x0, const LbfgsOptions& opt);

struct PolishResult {
  bool converged = false;
  int iterations = 0;
  std::vector<double> x;
  double grad_inf = 0;
};

// Damped Newton on the gradient with a central finite-difference Jacobian.
PolishResult newton_polish(const ProblemView& pv, std::vector<double> x, double tol, int max_iter);

void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace detail

}  // namespace philap
