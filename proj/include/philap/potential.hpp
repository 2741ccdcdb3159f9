#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace philap {

struct PotentialTerm {
  double c;  // coefficient, > 0
  double p;  // exponent, > 1
};

// Radial power-sum potential Phi(y) = Σ_k (c_k / p_k) |y|^{p_k} with gradient
// φ(y) = Σ_k c_k |y|^{p_k - 2} y.  Phi(0) = 0 and φ(0) = 0 by construction.
class PotentialSpec {
public:
  explicit PotentialSpec(std::vector<PotentialTerm> terms);

  double value(std::span<const double> y) const;
  void gradient(std::span<const double> y, std::span<double> out) const;

  // Same quantities as functions of the radius |y| = r >= 0; the gradient is
  // gradient_scale(r) * y.
  double value_radial(double r) const;
  double gradient_scale(double r) const;

  double min_exponent() const;
  double max_exponent() const;
  const std::vector<PotentialTerm>& terms() const { return terms_; }

private:
  std::vector<PotentialTerm> terms_;
};

// Witness carried by every failed (or worst-margin) sample check.
struct Witness {
  int t = 0;
  std::vector<double> x;
  std::vector<double> y;
  double lhs = 0;
  double rhs = 0;
  std::string detail;
};

struct CheckReport {
  std::string name;
  bool passed = false;
  double margin = 0;  // worst min(rhs - lhs) style slack seen, sign convention per check
  Witness worst;
  std::string note;
};

struct SampleConfig {
  int samples = 10000;
  std::uint64_t seed = 1234;
  double radius_lo = 1e-3;
  double radius_hi = 10.0;
  int dim = 3;
};

// Smoothness-and-convexity check: central finite differences of Phi against φ
// (step 1e-6 * max(1, |y|), tolerance 1e-6 relative) plus strict midpoint
// convexity on sampled pairs.  Violations come back as reports, not throws.
std::vector<CheckReport> check_A1(const PotentialSpec& spec, const SampleConfig& cfg);

struct A3Estimate {
  bool positive = false;
  double c_min = 0;  // smallest sampled <φ(x)-φ(y), x-y> / |x-y|^theta
  Witness worst;
};

// Sampled uniform-monotonicity constant for exponent theta.
A3Estimate check_A3(const PotentialSpec& spec, double theta, const SampleConfig& cfg);

struct GrowthFit {
  double lower_a = 0;       // min sampled Phi(y)/|y|^e
  double upper_b = 0;       // max sampled Phi(y)/|y|^e
  double upper_d = 0;       // max sampled ratio at |y| >= 1
  double offset_m = 0;      // max sampled Phi(y) at |y| < 1
  bool upper_unbounded = false;  // ratio keeps growing across the top sampled decades
  Witness worst;            // where the max ratio occurred
};

// Fits two-sided growth constants a|y|^e <= Phi(y) <= b|y|^e on samples, and
// the offset form Phi(y) <= d|y|^e + m; flags an upper bound that keeps
// increasing decade over decade at large radii.
GrowthFit check_growth(const PotentialSpec& spec, double e, const SampleConfig& cfg);

}  // namespace philap
