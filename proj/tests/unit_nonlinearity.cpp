#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "philap/nonlinearity.hpp"

using namespace philap;

namespace {

double fd_component(const NonlinearFn& f, int t, std::vector<double> x1, std::vector<double> x2,
                    int block, int j) {
  std::vector<double> s1(x1.size()), s2(x2.size());
  auto& x = block == 0 ? x1 : x2;
  double save = x[j];
  double h = 1e-6 * std::max(1.0, std::abs(save));
  x[j] = save + h;
  double fp = f(t, x1, x2, s1, s2);
  x[j] = save - h;
  double fm = f(t, x1, x2, s1, s2);
  return (fp - fm) / (2.0 * h);
}

}  // namespace

TEST_CASE("cubic-plus-cubic kind: value and gradient at simple points") {
  auto spec = NonlinearitySpec::example51F();
  auto f = spec.fn(2);
  std::vector<double> x1{1.0}, x2{1.0}, g1(1), g2(1);
  CHECK(f(1, x1, x2, g1, g2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g1[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g2[0] == doctest::Approx(3.0).epsilon(1e-15));

  x1[0] = 0.75;
  x2[0] = 0.75;
  CHECK(f(2, x1, x2, g1, g2) == doctest::Approx(2 * 27.0 / 64.0).epsilon(1e-15));
}

TEST_CASE("quartic pairing kind at the 3/4 point gives 81/128 per slot") {
  auto spec = NonlinearitySpec::example51G();
  auto f = spec.fn(2);
  std::vector<double> x1{0.75}, x2{0.75}, g1(1), g2(1);
  CHECK(f(1, x1, x2, g1, g2) == doctest::Approx(81.0 / 128.0).epsilon(1e-15));
  CHECK(g1[0] == doctest::Approx(4.0 * std::pow(0.75, 3)).epsilon(1e-14));
}

TEST_CASE("sublinear-plus-quadratic kind matches its slot-dependent coefficients") {
  auto spec = NonlinearitySpec::example52F();
  int T = 4;
  auto f = spec.fn(T);
  constexpr double pi = std::numbers::pi_v<double>;
  for (int t = 1; t <= T; ++t) {
    double a = std::abs(std::sin(pi * t / T)) + 1.0;
    double b = std::cos(pi * t / T) * std::cos(pi * t / T) + 1.0;
    std::vector<double> x1{4.0}, x2{2.0}, g1(1), g2(1);
    CHECK(f(t, x1, x2, g1, g2) == doctest::Approx(a * 8.0 + b * 4.0).epsilon(1e-14));
    CHECK(g1[0] == doctest::Approx(a * 1.5 * 2.0).epsilon(1e-12));  // a * 1.5 * |x|^(1/2) sign x
    CHECK(g2[0] == doctest::Approx(b * 4.0).epsilon(1e-12));
  }
}

TEST_CASE("every registry kind vanishes at the origin and is even") {
  std::vector<NonlinearitySpec> specs{
      NonlinearitySpec::remark11F(4.0),  NonlinearitySpec::remark11G(4.0),
      NonlinearitySpec::remark11H(),     NonlinearitySpec::example51F(),
      NonlinearitySpec::example51G(),    NonlinearitySpec::example51H(),
      NonlinearitySpec::example52F(),
      NonlinearitySpec::powerSum({{1.0, 2.0}}, {{0.5, 3.0}})};
  for (const auto& spec : specs) {
    CHECK(spec.even());
    auto f = spec.fn(4);
    std::vector<double> z{0.0, 0.0}, g1(2), g2(2);
    double v0 = f(2, z, z, g1, g2);
    if (spec.kind_name() == "remark11_H" || spec.kind_name() == "example51_H") {
      // the oscillatory kind is even but not zero at rest
      CHECK(std::isfinite(v0));
    } else {
      CHECK(v0 == 0.0);
    }
    std::vector<double> x1{0.7, -0.3}, x2{-1.2, 0.4}, m1{-0.7, 0.3}, m2{1.2, -0.4};
    CHECK(f(3, x1, x2, g1, g2) == f(3, m1, m2, g1, g2));
  }
}

TEST_CASE("analytic gradients of the registry kinds match central differences") {
  std::vector<NonlinearitySpec> specs{
      NonlinearitySpec::remark11F(4.0),  NonlinearitySpec::remark11G(4.0),
      NonlinearitySpec::remark11H(),     NonlinearitySpec::example51F(),
      NonlinearitySpec::example51G(),    NonlinearitySpec::example51H(),
      NonlinearitySpec::example52F(),
      NonlinearitySpec::powerSum({{1.0, 2.0}, {0.3, 3.5}}, {{0.5, 3.0}})};
  int T = 3;
  std::vector<std::vector<double>> pts{{0.4, -1.1}, {2.0, 0.5}, {-0.2, -0.1}};
  for (const auto& spec : specs) {
    auto f = spec.fn(T);
    for (const auto& base : pts) {
      std::vector<double> x1{base[0], 0.8}, x2{base[1], -0.6}, g1(2), g2(2);
      for (int t = 1; t <= T; ++t) {
        f(t, x1, x2, g1, g2);
        for (int blk = 0; blk < 2; ++blk)
          for (int j = 0; j < 2; ++j) {
            double fd = fd_component(f, t, x1, x2, blk, j);
            double g = blk == 0 ? g1[j] : g2[j];
            CHECK(std::abs(fd - g) <= 1e-6 * (1.0 + std::abs(g)));
          }
      }
    }
  }
}

TEST_CASE("period wrap makes slot coefficients exactly periodic") {
  auto f = NonlinearitySpec::example52F().fn(4);
  std::vector<double> x1{1.3}, x2{-0.4}, g1(1), g2(1);
  for (int t = 1; t <= 4; ++t)
    CHECK(f(t, x1, x2, g1, g2) == f(t + 4, x1, x2, g1, g2));
}

TEST_CASE("kind names round-trip and unknown names are rejected") {
  for (const char* name : {"remark11_F", "remark11_G", "remark11_H", "example51_F", "example51_G",
                           "example51_H", "example52_F", "power_sum"}) {
    bool survives = NonlinearitySpec::kind_from_name(name) != NonlinearityKind::power_sum ||
                    std::string(name) == "power_sum";
    CHECK(survives);
  }
  CHECK_THROWS_AS(NonlinearitySpec::kind_from_name("no_such_kind"), std::invalid_argument);
}

TEST_CASE("growth-exponent factories reject exponents below 2") {
  CHECK_THROWS_AS(NonlinearitySpec::remark11F(1.5), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::remark11G(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::powerSum({{1.0, 1.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::powerSum({{-1.0, 2.0}}, {}), std::invalid_argument);
}

TEST_CASE("condition suite passes for the cubic/quartic pair and fails for an odd mutation") {
  int T = 2, N = 1;
  auto F = NonlinearitySpec::example51F().fn(T);
  auto G = NonlinearitySpec::example51G().fn(T);
  FCheckParams params;
  params.ratio_threshold = 5.0;
  params.growth_l = 2.5;
  params.lambda = 1.0;
  params.samples = 1500;

  auto reports = check_F_conditions(T, N, F, &G, params);
  bool saw_even = false, saw_ratio = false, saw_dom = false;
  for (const auto& rep : reports) {
    CHECK(rep.passed);
    if (rep.name == "evenness") saw_even = true;
    if (rep.name == "ratio-divergence") saw_ratio = true;
    if (rep.name == "domination") saw_dom = true;
  }
  CHECK(saw_even);
  CHECK(saw_ratio);
  CHECK(saw_dom);

  NonlinearFn odd = [](int, std::span<const double> x1, std::span<const double> x2,
                       std::span<double> g1, std::span<double> g2) {
    double s = 0;
    for (size_t i = 0; i < x1.size(); ++i) {
      s += x1[i] + x2[i];
      g1[i] = 1.0;
      g2[i] = 1.0;
    }
    return s;
  };
  FCheckParams loose;
  loose.check_divergence = false;
  loose.samples = 500;
  auto bad = check_F_conditions(T, N, odd, nullptr, loose);
  bool even_failed = false;
  for (const auto& rep : bad)
    if (rep.name == "evenness") {
      CHECK(!rep.passed);
      CHECK(rep.worst.x.size() == 1);
      even_failed = true;
    }
  CHECK(even_failed);
}

TEST_CASE("divergence checks are skipped when disabled or when no radii are given") {
  int T = 4, N = 1;
  auto F = NonlinearitySpec::example52F().fn(T);
  FCheckParams params;
  params.check_divergence = false;
  params.s = 0;
  params.samples = 500;
  for (const auto& rep : check_F_conditions(T, N, F, nullptr, params)) {
    CHECK(rep.name != "ratio-divergence");
    CHECK(rep.name != "strong-divergence");
    CHECK(rep.passed);
  }
}

TEST_CASE("stronger-exponent pair: pairing term diverges, primary term stays bounded") {
  int T = 4, N = 2;
  auto F = NonlinearitySpec::remark11F(4.0).fn(T);
  auto G = NonlinearitySpec::remark11G(4.0).fn(T);
  FCheckParams params;
  params.ratio_threshold = 5.0;
  params.growth_l = 4.0;
  params.s = 6.0;
  params.samples = 1500;
  params.lambda = 1.0;
  auto reports = check_F_conditions(T, N, F, &G, params);
  bool strong = false, bounded = false;
  for (const auto& rep : reports) {
    if (rep.name == "strong-divergence") {
      CHECK(rep.passed);
      strong = true;
    }
    if (rep.name == "strong-boundedness") {
      CHECK(rep.passed);
      bounded = true;
    }
  }
  CHECK(strong);
  CHECK(bounded);
}
