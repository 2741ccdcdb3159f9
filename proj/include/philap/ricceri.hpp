#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "philap/action.hpp"
#include "philap/periodic.hpp"

namespace philap {

// Desk-scale estimation of the critical-parameter quantities attached to the
// split action mu*I + Psi + lambda*PhiG + nu*Gamma.  Every estimator is
// one-sided by construction: infima are reported from above (the value of the
// functional at an explicitly feasible point), suprema from below.

struct EstimatorConfig {
  int starts = 24;
  int samples = 4000;
  std::uint64_t seed = 12345;
  double start_radius = 2.0;
  int max_iter = 500;
  double tol_grad = 1e-10;
  int penalty_stages = 6;
  double penalty_init = 10.0;
  int refine_top = 6;
  int threads = 1;
};

struct GammaEstimate {
  double value = 0.0;           // upper estimate of inf (Psi + PhiG)
  PeriodicState minimizer;
  bool bounded_below = true;    // false when the search ran away to -inf
  GammaEstimate() : minimizer(2, 1) {}
};

struct EtaEstimate {
  double value = 0.0;           // upper estimate of inf { I : PhiG = r }
  PeriodicState minimizer;      // feasible witness, |PhiG - r| = level_gap
  double level_gap = 0.0;
  EtaEstimate() : minimizer(2, 1) {}
};

struct MuStarEstimate {
  double value = 0.0;           // best sampled ratio (Psi - gamma + r)/(eta - I)
  double gamma = 0.0;           // gamma estimate used in the numerator
  double eta = 0.0;             // eta estimate used in the denominator
  PeriodicState witness;
  MuStarEstimate() : witness(2, 1) {}
};

struct BetaEstimate {
  double value = 0.0;           // lower estimate of the sup ratio
  double inner_min = 0.0;       // upper estimate of inf over {PhiG <= r} of mu*I + Psi
  PeriodicState witness;        // outer point realizing `value`
  BetaEstimate() : witness(2, 1) {}
};

GammaEstimate estimate_gamma(const ProblemT11& pb, const EstimatorConfig& cfg);

// Minimizes I on the level set {PhiG = r} by quadratic-penalty continuation
// plus exact radial back-projection; throws std::runtime_error when no ray
// from the origin reaches the level r (empty level set).
EtaEstimate estimate_eta(const ProblemT11& pb, double r, const EstimatorConfig& cfg);

MuStarEstimate estimate_mu_star(const ProblemT11& pb, double r, const EstimatorConfig& cfg);

BetaEstimate estimate_beta(const ProblemT11& pb, double mu, double r, const EstimatorConfig& cfg);

// The open interval ]0, beta_est[ of admissible lambda for given (mu, r);
// invalid when the sup estimate is not positive.
struct AdmissibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool valid = false;
};

struct RicceriBundle {
  GammaEstimate gamma;
  EtaEstimate eta;
  MuStarEstimate mu_star;
  BetaEstimate beta;
  AdmissibleInterval lambda_interval;
  double r = 0.0;
  double mu = 0.0;
};

RicceriBundle run_ricceri(const ProblemT11& pb, double r, double mu, const EstimatorConfig& cfg);

// Closed-form reference bundle for the T=2, N=1 quartic/cubic instance
// (quadratic point potentials weighted by rho3, rho4).  All quantities follow
// from elementary calculus; beta_lower is the ratio at the constant state with
// every coordinate equal to mu * weight_sum.
struct SmallInstanceBundle {
  double gamma = 0.0;           // exact infimum of Psi + PhiG
  double eta_lower = 0.0;       // min weight * sqrt(r)
  double mu_star_upper = 0.0;   // (27/64 + r) / eta_lower
  double mu_threshold = 0.0;    // max{(27/64 + r)/sqrt(r), r^(1/4)} / min weight
  double beta_lower = 0.0;      // 3 mu^3 S^3 / (4 mu^4 S^4 - r)
  bool beta_valid = false;      // mu exceeds mu_threshold
  double weight_sum = 0.0;      // S = sum of rho3 and rho4 entries
};

SmallInstanceBundle example51_oracle(const WeightSequence& rho3, const WeightSequence& rho4,
                                     double r, double mu);

// Sampled extremal ratios between the norms used by the two problem families.
// Each pair (lo, hi) brackets ratio = left norm / right norm over the draws.
struct RatioRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct EquivalenceEstimates {
  RatioRange c12;  // |h|_theta      vs (sum |dh|^theta + sum |h|^theta)^(1/theta)
  RatioRange c34;  // |h|_l          vs the same theta-norm
  RatioRange c56;  // l-version norm vs the same theta-norm
  RatioRange r12;  // |u1|_inf + |u2|_inf vs flat Euclidean norm
  RatioRange r34;  // gamma1/gamma3-weighted q-norm vs |h|_inf
  RatioRange r56;  // gamma2/gamma4-weighted p-norm vs |h|_inf
};

EquivalenceEstimates estimate_equivalence_constants(int T, int N, double theta, double l, double q,
                                                    double p, const WeightSequence* gamma1,
                                                    const WeightSequence* gamma2,
                                                    const WeightSequence* gamma3,
                                                    const WeightSequence* gamma4, int samples,
                                                    std::uint64_t seed);

// Rigorous floor: for every h, the value-weighted part of the norm already
// dominates (min w)^(1/e) * |h|_inf, because the sum over t contains the slot
// where |h| attains its maximum.
double weighted_floor_constant(const WeightSequence& value_weights, double e);

}  // namespace philap
