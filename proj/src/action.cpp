#include "philap/action.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace philap {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_shapes(int T, int N, const WeightSequence& w1, const WeightSequence& w2,
                  const WeightSequence& w3, const WeightSequence& w4) {
  require(T >= 2, "period must be >= 2, got " + std::to_string(T));
  require(N >= 1, "dimension must be >= 1, got " + std::to_string(N));
  require(w1.period() == T && w2.period() == T && w3.period() == T && w4.period() == T,
          "every weight sequence must have period " + std::to_string(T));
}

// Adds s * y into the slot (component m in {0,1}, time t, all coords).
inline void add_scaled(std::span<double> g, int m, int t, int T, int N, double s,
                       std::span<const double> y) {
  int tc = wrap_index(t, T);
  size_t base = static_cast<size_t>(m) * T * N + static_cast<size_t>(tc - 1) * N;
  for (int i = 0; i < N; ++i) g[base + i] += s * y[i];
}

}  // namespace

void ProblemT11::validate() const {
  check_shapes(T, N, rho1, rho2, rho3, rho4);
  require(std::isfinite(mu) && std::isfinite(lambda) && std::isfinite(nu), "scalars must be finite");
  require(std::isfinite(theta) && theta >= 2.0, "theta must be >= 2, got " + std::to_string(theta));
  require(std::isfinite(l) && l >= theta, "l must be >= theta, got " + std::to_string(l));
}

void ProblemT12::validate() const {
  check_shapes(T, N, g1, g2, g3, g4);
  require(std::isfinite(q) && q > 1.0, "q must exceed 1, got " + std::to_string(q));
  require(std::isfinite(p) && p > 1.0, "p must exceed 1, got " + std::to_string(p));
}

double action_value(const ProblemT11& pb, const PeriodicState& u) {
  const int T = pb.T, N = pb.N;
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> s1(N), s2(N), t1(N), t2(N);
  double acc = 0;
  for (int t = 1; t <= T; ++t) {
    double part = pb.rho1.at(t) * pb.Phi1.value(d1.at(t)) + pb.rho2.at(t) * pb.Phi2.value(d2.at(t)) +
                  pb.rho3.at(t) * pb.Phi3.value(u.u1.at(t)) + pb.rho4.at(t) * pb.Phi4.value(u.u2.at(t));
    double w = -pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
    w += pb.lambda * pb.G.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
    w -= pb.nu * pb.H.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
    acc += pb.mu * part + w;
  }
  return acc;
}

double action_value(const ProblemT12& pb, const PeriodicState& u) {
  const int T = pb.T, N = pb.N;
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> s1(N), s2(N);
  double acc = 0;
  for (int t = 1; t <= T; ++t) {
    acc += pb.g1.at(t) * pb.Phi1.value(d1.at(t)) + pb.g2.at(t) * pb.Phi2.value(d2.at(t)) +
           pb.g3.at(t) * pb.Phi3.value(u.u1.at(t)) + pb.g4.at(t) * pb.Phi4.value(u.u2.at(t)) -
           pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
  }
  return acc;
}

void action_gradient(const ProblemT11& pb, const PeriodicState& u, std::span<double> out) {
  const int T = pb.T, N = pb.N;
  require(out.size() == static_cast<size_t>(2 * T * N), "gradient output has wrong length");
  std::fill(out.begin(), out.end(), 0.0);
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> w(N), f1(N), f2(N);
  for (int t = 1; t <= T; ++t) {
    // Difference terms: Σ ρΦ(Δu) contributes ±ρφ(Δu(t)) at slots t+1 and t.
    pb.Phi1.gradient(d1.at(t), w);
    for (int i = 0; i < N; ++i) w[i] *= pb.mu * pb.rho1.at(t);
    add_scaled(out, 0, t + 1, T, N, 1.0, w);
    add_scaled(out, 0, t, T, N, -1.0, w);
    pb.Phi2.gradient(d2.at(t), w);
    for (int i = 0; i < N; ++i) w[i] *= pb.mu * pb.rho2.at(t);
    add_scaled(out, 1, t + 1, T, N, 1.0, w);
    add_scaled(out, 1, t, T, N, -1.0, w);

    pb.Phi3.gradient(u.u1.at(t), w);
    add_scaled(out, 0, t, T, N, pb.mu * pb.rho3.at(t), w);
    pb.Phi4.gradient(u.u2.at(t), w);
    add_scaled(out, 1, t, T, N, pb.mu * pb.rho4.at(t), w);

    pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    add_scaled(out, 0, t, T, N, -1.0, f1);
    add_scaled(out, 1, t, T, N, -1.0, f2);
    pb.G.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    add_scaled(out, 0, t, T, N, pb.lambda, f1);
    add_scaled(out, 1, t, T, N, pb.lambda, f2);
    pb.H.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    add_scaled(out, 0, t, T, N, -pb.nu, f1);
    add_scaled(out, 1, t, T, N, -pb.nu, f2);
  }
}

void action_gradient(const ProblemT12& pb, const PeriodicState& u, std::span<double> out) {
  const int T = pb.T, N = pb.N;
  require(out.size() == static_cast<size_t>(2 * T * N), "gradient output has wrong length");
  std::fill(out.begin(), out.end(), 0.0);
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> w(N), f1(N), f2(N);
  for (int t = 1; t <= T; ++t) {
    pb.Phi1.gradient(d1.at(t), w);
    for (int i = 0; i < N; ++i) w[i] *= pb.g1.at(t);
    add_scaled(out, 0, t + 1, T, N, 1.0, w);
    add_scaled(out, 0, t, T, N, -1.0, w);
    pb.Phi2.gradient(d2.at(t), w);
    for (int i = 0; i < N; ++i) w[i] *= pb.g2.at(t);
    add_scaled(out, 1, t + 1, T, N, 1.0, w);
    add_scaled(out, 1, t, T, N, -1.0, w);

    pb.Phi3.gradient(u.u1.at(t), w);
    add_scaled(out, 0, t, T, N, pb.g3.at(t), w);
    pb.Phi4.gradient(u.u2.at(t), w);
    add_scaled(out, 1, t, T, N, pb.g4.at(t), w);

    pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
    add_scaled(out, 0, t, T, N, -1.0, f1);
    add_scaled(out, 1, t, T, N, -1.0, f2);
  }
}

Components component_values(const ProblemT11& pb, const PeriodicState& u) {
  const int T = pb.T, N = pb.N;
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> s1(N), s2(N);
  Components c{0, 0, 0, 0};
  for (int t = 1; t <= T; ++t) {
    c.I += pb.rho1.at(t) * pb.Phi1.value(d1.at(t)) + pb.rho2.at(t) * pb.Phi2.value(d2.at(t)) +
           pb.rho3.at(t) * pb.Phi3.value(u.u1.at(t)) + pb.rho4.at(t) * pb.Phi4.value(u.u2.at(t));
    c.Psi -= pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
    c.PhiG += pb.G.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
    c.Gamma -= pb.H.eval(t, T, u.u1.at(t), u.u2.at(t), s1, s2);
  }
  return c;
}

void component_gradients(const ProblemT11& pb, const PeriodicState& u, std::span<double> gI,
                         std::span<double> gPsi, std::span<double> gPhiG, std::span<double> gGamma) {
  const int T = pb.T, N = pb.N;
  size_t n = static_cast<size_t>(2 * T * N);
  auto check = [&](std::span<double> g) {
    require(g.empty() || g.size() == n, "component gradient output has wrong length");
    std::fill(g.begin(), g.end(), 0.0);
  };
  check(gI);
  check(gPsi);
  check(gPhiG);
  check(gGamma);
  Sequence d1 = forward_difference(u.u1);
  Sequence d2 = forward_difference(u.u2);
  std::vector<double> w(N), f1(N), f2(N);
  for (int t = 1; t <= T; ++t) {
    if (!gI.empty()) {
      pb.Phi1.gradient(d1.at(t), w);
      for (int i = 0; i < N; ++i) w[i] *= pb.rho1.at(t);
      add_scaled(gI, 0, t + 1, T, N, 1.0, w);
      add_scaled(gI, 0, t, T, N, -1.0, w);
      pb.Phi2.gradient(d2.at(t), w);
      for (int i = 0; i < N; ++i) w[i] *= pb.rho2.at(t);
      add_scaled(gI, 1, t + 1, T, N, 1.0, w);
      add_scaled(gI, 1, t, T, N, -1.0, w);
      pb.Phi3.gradient(u.u1.at(t), w);
      add_scaled(gI, 0, t, T, N, pb.rho3.at(t), w);
      pb.Phi4.gradient(u.u2.at(t), w);
      add_scaled(gI, 1, t, T, N, pb.rho4.at(t), w);
    }
    if (!gPsi.empty()) {
      pb.F.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
      add_scaled(gPsi, 0, t, T, N, -1.0, f1);
      add_scaled(gPsi, 1, t, T, N, -1.0, f2);
    }
    if (!gPhiG.empty()) {
      pb.G.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
      add_scaled(gPhiG, 0, t, T, N, 1.0, f1);
      add_scaled(gPhiG, 1, t, T, N, 1.0, f2);
    }
    if (!gGamma.empty()) {
      pb.H.eval(t, T, u.u1.at(t), u.u2.at(t), f1, f2);
      add_scaled(gGamma, 0, t, T, N, -1.0, f1);
      add_scaled(gGamma, 1, t, T, N, -1.0, f2);
    }
  }
}

}  // namespace philap
