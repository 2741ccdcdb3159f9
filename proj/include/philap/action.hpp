#pragma once

#include <span>

#include "philap/nonlinearity.hpp"
#include "philap/periodic.hpp"
#include "philap/potential.hpp"

namespace philap {

// First system class: weighted difference potentials plus a three-part
// nonlinearity F - λG + νH entering the action as -F + λG - νH.
struct ProblemT11 {
  int T;
  int N;
  WeightSequence rho1, rho2, rho3, rho4;
  PotentialSpec Phi1, Phi2, Phi3, Phi4;
  NonlinearitySpec F, G, H;
  double mu = 1.0;
  double lambda = 0.0;
  double nu = 0.0;
  double theta = 2.0;  // monotonicity exponent of the φ_i
  double l = 2.0;      // growth exponent bound for the Φ_i

  void validate() const;
};

// Second system class: one nonlinearity, weights γ_i, exponent pair (q, p)
// bounding Φ1/Φ3 and Φ2/Φ4.
struct ProblemT12 {
  int T;
  int N;
  WeightSequence g1, g2, g3, g4;
  PotentialSpec Phi1, Phi2, Phi3, Phi4;
  NonlinearitySpec F;
  double q = 2.0;
  double p = 2.0;

  void validate() const;
};

double action_value(const ProblemT11& pb, const PeriodicState& u);
double action_value(const ProblemT12& pb, const PeriodicState& u);

// Gradient in flat coordinates (u1 block then u2 block); out has length 2NT.
void action_gradient(const ProblemT11& pb, const PeriodicState& u, std::span<double> out);
void action_gradient(const ProblemT12& pb, const PeriodicState& u, std::span<double> out);

// The four building blocks of the first action: action = μI + Ψ + λΦ + νΓ
// with I the weighted potential sum, Ψ = -ΣF, Φ = ΣG, Γ = -ΣH.
struct Components {
  double I;
  double Psi;
  double PhiG;
  double Gamma;
};

Components component_values(const ProblemT11& pb, const PeriodicState& u);

// Flat gradients of the four blocks; any output span may be empty to skip it.
void component_gradients(const ProblemT11& pb, const PeriodicState& u, std::span<double> gI,
                         std::span<double> gPsi, std::span<double> gPhiG, std::span<double> gGamma);

}  // namespace philap
