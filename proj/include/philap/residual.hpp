#pragma once

#include <span>

#include "philap/action.hpp"

namespace philap {

// Left-hand side of the system equations at every slot, flat layout.  A state
// solves the system exactly when the residual vanishes, and the residual
// equals the negated action gradient (computed here by an independent
// difference-of-differences route, so the identity is a real cross-check).
void system_residual(const ProblemT11& pb, const PeriodicState& u, std::span<double> out);
void system_residual(const ProblemT12& pb, const PeriodicState& u, std::span<double> out);

struct SbpResult {
  double lhs;
  double rhs;
  double discrepancy;  // |lhs - rhs| / (1 + |lhs|)
};

// Both sides of the periodic summation-by-parts identity
//   -Σ_t <Δ[ρ(t-1)φ(Δu(t-1))], v(t)> = Σ_t <ρ(t)φ(Δu(t)), Δv(t)>
// evaluated with compensated sums.
SbpResult summation_by_parts_check(const WeightSequence& rho, const PotentialSpec& phi,
                                   const Sequence& u, const Sequence& v);

}  // namespace philap
