#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "philap/config.hpp"
#include "philap/periodic.hpp"
#include "philap/ricceri.hpp"

using namespace philap;

namespace {

Config tiny_eta_instance() {
  // difference weights so small that concentrating mass in one slot costs
  // nearly nothing, which lets the level-set infimum approach its floor
  Config cfg = builtin_config("example51");
  cfg.w1 = {1e-6, 1e-6};
  cfg.w2 = {1e-6, 1e-6};
  return cfg;
}

}  // namespace

TEST_CASE("closed-form reference bundle for the quartic/cubic instance") {
  WeightSequence ones({1.0, 1.0});
  SmallInstanceBundle b = example51_oracle(ones, ones, 1.0, 2.0);
  CHECK(b.gamma == doctest::Approx(-27.0 / 64.0).epsilon(1e-15));
  CHECK(b.eta_lower == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.mu_star_upper == doctest::Approx(91.0 / 64.0).epsilon(1e-15));
  CHECK(b.mu_threshold == doctest::Approx(91.0 / 64.0).epsilon(1e-15));
  CHECK(b.weight_sum == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(b.beta_lower == doctest::Approx(1536.0 / 16383.0).epsilon(1e-15));
  CHECK(b.beta_valid);

  SmallInstanceBundle low = example51_oracle(ones, ones, 1.0, 1.0);
  CHECK(!low.beta_valid);  // mu below the threshold

  SmallInstanceBundle r4 = example51_oracle(ones, ones, 4.0, 2.0);
  CHECK(r4.eta_lower == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r4.mu_star_upper == doctest::Approx((27.0 / 64.0 + 4.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("global-minimum estimate hits the closed form on the small instance") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  EstimatorConfig ec;
  ec.starts = 12;
  GammaEstimate g = estimate_gamma(pb, ec);
  CHECK(g.bounded_below);
  CHECK(g.value == doctest::Approx(-27.0 / 64.0).epsilon(1e-9));
  for (double v : to_flat(g.minimizer)) CHECK(std::abs(std::abs(v) - 0.75) <= 1e-6);
}

TEST_CASE("level-set estimate reaches the floor when differences are nearly free") {
  ProblemT11 pb = build_t11(tiny_eta_instance());
  EstimatorConfig ec;
  ec.starts = 8;
  EtaEstimate e = estimate_eta(pb, 1.0, ec);
  CHECK(e.level_gap <= 1e-9);
  CHECK(e.value >= 1.0 - 1e-8);   // rigorous floor: min point weight * sqrt(r)
  CHECK(e.value <= 1.0 + 1e-4);
}

TEST_CASE("level-set estimate rejects non-positive levels") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  EstimatorConfig ec;
  CHECK_THROWS_AS(estimate_eta(pb, 0.0, ec), std::invalid_argument);
  CHECK_THROWS_AS(estimate_eta(pb, -1.0, ec), std::invalid_argument);
}

TEST_CASE("ratio estimates sit on their declared sides of the closed forms") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  EstimatorConfig ec;
  ec.starts = 10;
  double r = 1.0;

  MuStarEstimate ms = estimate_mu_star(pb, r, ec);
  CHECK(ms.value <= (27.0 / 64.0 + r) / std::sqrt(r) + 1e-8);
  CHECK(ms.value > 0);

  BetaEstimate b = estimate_beta(pb, 2.0, r, ec);
  CHECK(b.inner_min <= 0.0);
  CHECK(b.value >= 1536.0 / 16383.0 - 1e-6);

  CHECK_THROWS_AS(estimate_beta(pb, -1.0, r, ec), std::invalid_argument);
  CHECK_THROWS_AS(estimate_beta(pb, 2.0, 0.0, ec), std::invalid_argument);
}

TEST_CASE("bundle wires the admissible interval to the sup estimate") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  EstimatorConfig ec;
  ec.starts = 8;
  RicceriBundle b = run_ricceri(pb, 1.0, 2.0, ec);
  CHECK(b.r == 1.0);
  CHECK(b.mu == 2.0);
  CHECK(b.lambda_interval.lo == 0.0);
  CHECK(b.lambda_interval.hi == b.beta.value);
  CHECK(b.lambda_interval.valid == (b.beta.value > 0));
}

TEST_CASE("value-weighted floor constant is the smallest weight to the 1/e power") {
  WeightSequence w({2.0, 0.5, 1.0, 3.0});
  CHECK(weighted_floor_constant(w, 5.0) == doctest::Approx(std::pow(0.5, 0.2)).epsilon(1e-14));
  CHECK(weighted_floor_constant(w, 3.0) == doctest::Approx(std::pow(0.5, 1.0 / 3.0)).epsilon(1e-14));
  WeightSequence ones({1.0, 1.0});
  CHECK(weighted_floor_constant(ones, 2.5) == 1.0);
}

TEST_CASE("norm-equivalence brackets are ordered, positive, and contain the identity case") {
  EquivalenceEstimates eq =
      estimate_equivalence_constants(4, 2, 2.0, 2.0, 5.0, 3.0, nullptr, nullptr, nullptr, nullptr,
                                     800, 7);
  for (const RatioRange* rr : {&eq.c12, &eq.c34, &eq.c56, &eq.r12, &eq.r34, &eq.r56}) {
    CHECK(rr->lo > 0);
    CHECK(rr->lo <= rr->hi);
  }
  // theta == l collapses the difference-plus-value ratio family to 1 ...
  CHECK(eq.c56.lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.c56.hi == doctest::Approx(1.0).epsilon(1e-12));
  // ... while the value-only families top out at 1, attained by constant
  // sequences whose difference part vanishes
  CHECK(eq.c12.hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.c34.hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.c12.lo < 1.0);
}

TEST_CASE("weighted equivalence floors respect the rigorous lower bound") {
  WeightSequence g1({1.0, 2.0, 1.0, 1.5});
  WeightSequence g3({0.8, 1.0, 2.0, 1.0});
  WeightSequence g2({1.0, 1.0, 1.0, 1.0});
  WeightSequence g4({2.0, 3.0, 1.0, 1.0});
  EquivalenceEstimates eq =
      estimate_equivalence_constants(4, 1, 2.0, 2.0, 5.0, 3.0, &g1, &g2, &g3, &g4, 800, 11);
  CHECK(eq.r34.lo >= weighted_floor_constant(g3, 5.0) - 1e-12);
  CHECK(eq.r56.lo >= weighted_floor_constant(g4, 3.0) - 1e-12);
}
