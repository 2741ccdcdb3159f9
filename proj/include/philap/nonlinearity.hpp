#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "philap/potential.hpp"

namespace philap {

// Plain power term c|x|^p (no 1/p normalization), used by the generic
// nonlinearity; exponent must exceed 1 so gradients vanish at the origin.
struct PowerTerm {
  double c;
  double p;
};

enum class NonlinearityKind {
  remark11_F,
  remark11_G,
  remark11_H,
  example51_F,
  example51_G,
  example51_H,
  example52_F,
  power_sum,
};

// Evaluator signature shared by the registry and the checkers: returns the
// value at (t, x1, x2) and fills both partial gradients.  The time index is
// wrapped to {1..T} before any trigonometric coefficient is computed, so
// T-periodicity in t holds bit-exactly.
using NonlinearFn = std::function<double(int t, std::span<const double> x1, std::span<const double> x2,
                                         std::span<double> g1, std::span<double> g2)>;

class NonlinearitySpec {
public:
  static NonlinearitySpec remark11F(double l);
  static NonlinearitySpec remark11G(double l);
  static NonlinearitySpec remark11H();
  static NonlinearitySpec example51F();
  static NonlinearitySpec example51G();
  static NonlinearitySpec example51H();
  static NonlinearitySpec example52F();
  static NonlinearitySpec powerSum(std::vector<PowerTerm> terms1, std::vector<PowerTerm> terms2);

  NonlinearityKind kind() const { return kind_; }
  double growth_exponent() const { return l_; }
  const std::vector<PowerTerm>& terms1() const { return terms1_; }
  const std::vector<PowerTerm>& terms2() const { return terms2_; }

  double eval(int t, int T, std::span<const double> x1, std::span<const double> x2,
              std::span<double> g1, std::span<double> g2) const;
  double value(int t, int T, std::span<const double> x1, std::span<const double> x2) const;

  // Every registry kind is even in (x1, x2).
  bool even() const { return true; }

  NonlinearFn fn(int T) const;

  std::string kind_name() const;
  static NonlinearityKind kind_from_name(const std::string& name);

private:
  NonlinearitySpec(NonlinearityKind k, double l, std::vector<PowerTerm> t1, std::vector<PowerTerm> t2);

  NonlinearityKind kind_;
  double l_;
  std::vector<PowerTerm> terms1_;
  std::vector<PowerTerm> terms2_;
};

struct FCheckParams {
  // Upper growth candidates: F <= h1(t)|x1|^a1 + h2(t)|x2|^a2 + lt(t); vectors
  // sized T (empty disables the check).
  std::vector<double> h1, h2, lt;
  double alpha1 = 0, alpha2 = 0;

  // Near-zero lower bound: F >= M1|x1|^b1 + M2|x2|^b2 for |xi| < delta
  // (delta <= 0 disables).
  double beta1 = 0, beta2 = 0, M1 = 0, M2 = 0, delta = 0;

  // Superhomogeneous-divergence surrogate: F / (|x1|^l + |x2|^l) must exceed
  // ratio_threshold at the sampled radii and increase across them.  The first
  // problem family requires it; disable for the second.
  bool check_divergence = true;
  double growth_l = 2.0;
  double ratio_threshold = 1e3;
  std::vector<double> radii{1e2, 1e3, 1e4};

  // Domination check lambda*G >= F + C0; C0 is reported as the sampled
  // infimum of lambda*G - F over a ball (a sample-scale estimate).
  double lambda = 1.0;
  double ball_radius = 1e3;

  // Divergence exponent for the stronger variant G/(|x1|^s + |x2|^s); s <= 0
  // disables.
  double s = 0;

  int samples = 2000;
  std::uint64_t seed = 99;
};

// Sample-based verification of the structural conditions on a nonlinearity
// (value at zero, evenness, upper growth, near-zero lower bound) and, when a
// companion G is supplied, the divergence/domination conditions and
// Σ_t G(t,0,0) = 0.  Any violation is reported with a witness.
std::vector<CheckReport> check_F_conditions(int T, int N, const NonlinearFn& F, const NonlinearFn* G,
                                            const FCheckParams& params);

}  // namespace philap
