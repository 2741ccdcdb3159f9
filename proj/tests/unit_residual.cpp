#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "philap/action.hpp"
#include "philap/config.hpp"
#include "philap/periodic.hpp"
#include "philap/residual.hpp"

using namespace philap;

namespace {

Sequence random_sequence(int T, int N, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  Sequence s(T, N);
  for (auto& v : s.data()) v = scale * g(rng);
  return s;
}

}  // namespace

TEST_CASE("periodic summation by parts balances for random weights and states") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> wpos(0.2, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    int T = 2 + static_cast<int>(rng() % 6);
    int N = 1 + static_cast<int>(rng() % 3);
    std::vector<double> w(static_cast<size_t>(T));
    for (auto& v : w) v = wpos(rng);
    WeightSequence rho(w);
    PotentialSpec phi({{wpos(rng), 1.0 + wpos(rng)}, {wpos(rng), 2.0}});
    Sequence u = random_sequence(T, N, rng, 2.0);
    Sequence v = random_sequence(T, N, rng, 2.0);
    SbpResult r = summation_by_parts_check(rho, phi, u, v);
    CHECK(r.discrepancy <= 1e-12);
  }
}

TEST_CASE("residual is the negated action gradient, first family") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  pb.nu = 0.15;
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  size_t n = static_cast<size_t>(2 * pb.T * pb.N);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(n);
    for (auto& v : x) v = 1.5 * g(rng);
    PeriodicState u = from_flat(x, pb.T, pb.N);
    std::vector<double> res(n), grad(n);
    system_residual(pb, u, res);
    action_gradient(pb, u, grad);
    for (size_t j = 0; j < n; ++j)
      CHECK(std::abs(res[j] + grad[j]) <= 1e-12 * (1.0 + std::abs(grad[j])));
  }
}

TEST_CASE("residual is the negated action gradient, second family") {
  ProblemT12 pb = build_t12(builtin_config("example52"));
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g;
  size_t n = static_cast<size_t>(2 * pb.T * pb.N);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> x(n);
    for (auto& v : x) v = 1.5 * g(rng);
    PeriodicState u = from_flat(x, pb.T, pb.N);
    std::vector<double> res(n), grad(n);
    system_residual(pb, u, res);
    action_gradient(pb, u, grad);
    for (size_t j = 0; j < n; ++j)
      CHECK(std::abs(res[j] + grad[j]) <= 1e-12 * (1.0 + std::abs(grad[j])));
  }
}

TEST_CASE("residual vanishes at rest for an even system with quiet oscillatory part") {
  ProblemT11 pb = build_t11(builtin_config("example51"));
  pb.nu = 0.0;
  PeriodicState zero(pb.T, pb.N);
  std::vector<double> res(static_cast<size_t>(2 * pb.T * pb.N));
  system_residual(pb, zero, res);
  for (double v : res) CHECK(v == 0.0);
}

TEST_CASE("two-slot residual matches a hand computation") {
  // All-quadratic pieces with unit weights make the equation linear:
  //   res_i(t) = mu*[Du_i(t) - Du_i(t-1)] - 2*mu*u_i(t) + 2*u_i(t).
  Config cfg;
  cfg.name = "tiny";
  cfg.system = "T11";
  cfg.T = 2;
  cfg.N = 1;
  cfg.w1 = cfg.w2 = cfg.w3 = cfg.w4 = {1.0, 1.0};
  cfg.phi1 = {{1.0, 2.0}};
  cfg.phi2 = {{1.0, 2.0}};
  cfg.phi3 = {{2.0, 2.0}};
  cfg.phi4 = {{2.0, 2.0}};
  cfg.mu = 2.0;
  cfg.lambda = 0.0;
  cfg.nu = 0.0;
  cfg.F.kind = "power_sum";
  cfg.F.terms1 = {{1.0, 2.0}};
  cfg.F.terms2 = {{1.0, 2.0}};
  ProblemT11 pb = build_t11(cfg);
  const double a = 0.3, b = -0.1, c = -0.2, d = 0.4;
  PeriodicState u = from_flat(std::vector<double>{a, b, c, d}, 2, 1);
  std::vector<double> res(4);
  system_residual(pb, u, res);
  // second differences wrap: D[phi(Du)](1) = (b-a)-(a-b), D[phi(Du)](2) = (a-b)-(b-a)
  CHECK(res[0] == doctest::Approx(2.0 * (2.0 * (b - a)) - 2.0 * a).epsilon(1e-14));
  CHECK(res[1] == doctest::Approx(2.0 * (2.0 * (a - b)) - 2.0 * b).epsilon(1e-14));
  CHECK(res[2] == doctest::Approx(2.0 * (2.0 * (d - c)) - 2.0 * c).epsilon(1e-14));
  CHECK(res[3] == doctest::Approx(2.0 * (2.0 * (c - d)) - 2.0 * d).epsilon(1e-14));
}

TEST_CASE("time-homogeneous problems commute with the slot shift") {
  // constant weights and a slot-independent nonlinearity: advancing the state
  // by one slot must advance the residual by one slot, exactly
  Config cfg;
  cfg.name = "homogeneous";
  cfg.system = "T11";
  cfg.T = 5;
  cfg.N = 2;
  cfg.w1 = cfg.w2 = cfg.w3 = cfg.w4 = std::vector<double>(5, 1.3);
  cfg.phi1 = {{1.0, 2.0}, {0.5, 3.0}};
  cfg.phi2 = {{1.0, 2.0}};
  cfg.phi3 = {{2.0, 2.0}};
  cfg.phi4 = {{1.0, 2.5}};
  cfg.mu = 1.7;
  cfg.lambda = 0.0;
  cfg.nu = 0.0;
  cfg.F.kind = "power_sum";
  cfg.F.terms1 = {{1.0, 3.0}};
  cfg.F.terms2 = {{0.5, 2.0}};
  ProblemT11 pb = build_t11(cfg);

  std::mt19937_64 rng(53);
  std::normal_distribution<double> g;
  PeriodicState u(pb.T, pb.N);
  for (auto& v : u.u1.data()) v = g(rng);
  for (auto& v : u.u2.data()) v = g(rng);

  PeriodicState shifted(pb.T, pb.N);
  for (int t = 1; t <= pb.T; ++t)
    for (int i = 0; i < pb.N; ++i) {
      shifted.u1.at(t)[static_cast<size_t>(i)] = u.u1.at(t + 1)[static_cast<size_t>(i)];
      shifted.u2.at(t)[static_cast<size_t>(i)] = u.u2.at(t + 1)[static_cast<size_t>(i)];
    }

  size_t n = static_cast<size_t>(2 * pb.T * pb.N);
  std::vector<double> ru(n), rs(n);
  system_residual(pb, u, ru);
  system_residual(pb, shifted, rs);
  PeriodicState pu = from_flat(ru, pb.T, pb.N);
  PeriodicState ps = from_flat(rs, pb.T, pb.N);
  for (int t = 1; t <= pb.T; ++t)
    for (int i = 0; i < pb.N; ++i) {
      CHECK(ps.u1.at(t)[static_cast<size_t>(i)] ==
            doctest::Approx(pu.u1.at(t + 1)[static_cast<size_t>(i)]).epsilon(1e-13));
      CHECK(ps.u2.at(t)[static_cast<size_t>(i)] ==
            doctest::Approx(pu.u2.at(t + 1)[static_cast<size_t>(i)]).epsilon(1e-13));
    }
}
