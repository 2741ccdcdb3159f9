#include "philap/residual.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace philap {

namespace {

// w(t) = weight(t) * φ(Δu(t)) for t = 1..T, stored t-major.
std::vector<double> weighted_gradient_of_differences(const WeightSequence& rho,
                                                     const PotentialSpec& phi, const Sequence& u) {
  int T = u.period(), N = u.dim();
  Sequence d = forward_difference(u);
  std::vector<double> w(static_cast<size_t>(T) * N);
  std::vector<double> g(N);
  for (int t = 1; t <= T; ++t) {
    phi.gradient(d.at(t), g);
    double r = rho.at(t);
    for (int i = 0; i < N; ++i) w[static_cast<size_t>(t - 1) * N + i] = r * g[i];
  }
  return w;
}

}  // namespace

void system_residual(const ProblemT11& pb, const PeriodicState& u, std::span<double> out) {
  const int T = pb.T, N = pb.N;
  if (out.size() != static_cast<size_t>(2 * T * N))
    throw std::invalid_argument("residual output has wrong length");
  auto w1 = weighted_gradient_of_differences(pb.rho1, pb.Phi1, u.u1);
  auto w2 = weighted_gradient_of_differences(pb.rho2, pb.Phi2, u.u2);
  std::vector<double> g(N), f1(N), f2(N), gg1(N), gg2(N), h1(N), h2(N);
  for (int t = 1; t <= T; ++t) {
    int tp = wrap_index(t - 1, T);
    pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    pb.G.eval(t, T, u.u1.at(t), u.u2.at(t), gg1, gg2);
    pb.H.eval(t, T, u.u1.at(t), u.u2.at(t), h1, h2);

    pb.Phi3.gradient(u.u1.at(t), g);
    for (int i = 0; i < N; ++i) {
      double dw = w1[static_cast<size_t>(t - 1) * N + i] - w1[static_cast<size_t>(tp - 1) * N + i];
      out[static_cast<size_t>(t - 1) * N + i] =
          pb.mu * dw - pb.mu * pb.rho3.at(t) * g[i] + (f1[i] - pb.lambda * gg1[i] + pb.nu * h1[i]);
    }
    pb.Phi4.gradient(u.u2.at(t), g);
    for (int i = 0; i < N; ++i) {
      double dw = w2[static_cast<size_t>(t - 1) * N + i] - w2[static_cast<size_t>(tp - 1) * N + i];
      out[static_cast<size_t>(T) * N + static_cast<size_t>(t - 1) * N + i] =
          pb.mu * dw - pb.mu * pb.rho4.at(t) * g[i] + (f2[i] - pb.lambda * gg2[i] + pb.nu * h2[i]);
    }
  }
}

void system_residual(const ProblemT12& pb, const PeriodicState& u, std::span<double> out) {
  const int T = pb.T, N = pb.N;
  if (out.size() != static_cast<size_t>(2 * T * N))
    throw std::invalid_argument("residual output has wrong length");
  auto w1 = weighted_gradient_of_differences(pb.g1, pb.Phi1, u.u1);
  auto w2 = weighted_gradient_of_differences(pb.g2, pb.Phi2, u.u2);
  std::vector<double> g(N), f1(N), f2(N);
  for (int t = 1; t <= T; ++t) {
    int tp = wrap_index(t - 1, T);
    pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    pb.Phi3.gradient(u.u1.at(t), g);
    for (int i = 0; i < N; ++i) {
      double dw = w1[static_cast<size_t>(t - 1) * N + i] - w1[static_cast<size_t>(tp - 1) * N + i];
      out[static_cast<size_t>(t - 1) * N + i] = dw - pb.g3.at(t) * g[i] + f1[i];
    }
    pb.Phi4.gradient(u.u2.at(t), g);
    for (int i = 0; i < N; ++i) {
      double dw = w2[static_cast<size_t>(t - 1) * N + i] - w2[static_cast<size_t>(tp - 1) * N + i];
      out[static_cast<size_t>(T) * N + static_cast<size_t>(t - 1) * N + i] = dw - pb.g4.at(t) * g[i] + f2[i];
    }
  }
}

SbpResult summation_by_parts_check(const WeightSequence& rho, const PotentialSpec& phi,
                                   const Sequence& u, const Sequence& v) {
  if (rho.period() != u.period() || v.period() != u.period() || v.dim() != u.dim())
    throw std::invalid_argument("summation-by-parts inputs must share period and dimension");
  int T = u.period(), N = u.dim();
  auto w = weighted_gradient_of_differences(rho, phi, u);
  Sequence dv = forward_difference(v);

  detail::Accum lhs, rhs;
  for (int t = 1; t <= T; ++t) {
    int tp = wrap_index(t - 1, T);
    auto vt = v.at(t);
    auto dvt = dv.at(t);
    for (int i = 0; i < N; ++i) {
      double dw = w[static_cast<size_t>(t - 1) * N + i] - w[static_cast<size_t>(tp - 1) * N + i];
      lhs.add(-dw * vt[i]);
      rhs.add(w[static_cast<size_t>(t - 1) * N + i] * dvt[i]);
    }
  }
  SbpResult res{lhs.get(), rhs.get(), 0.0};
  res.discrepancy = std::abs(res.lhs - res.rhs) / (1.0 + std::abs(res.lhs));
  return res;
}

}  // namespace philap
