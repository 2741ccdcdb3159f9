#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace philap {

// Maps any integer index into the canonical range {1, ..., T}.
int wrap_index(int t, int T);

// T-periodic sequence of points in R^N, stored t-major: entry i of the point
// at time t lives at data[(t-1)*N + i].  Accessors wrap the time index, so
// at(0) is the point at time T and at(T+1) the point at time 1.
class Sequence {
public:
  Sequence(int T, int N);
  Sequence(int T, int N, std::vector<double> data);

  int period() const { return T_; }
  int dim() const { return N_; }

  std::span<const double> at(int t) const;
  std::span<double> at(int t);

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

private:
  int T_;
  int N_;
  std::vector<double> data_;
};

// Positive T-periodic scalar weights; construction rejects entries that are
// not strictly positive and finite, naming the offending index.
class WeightSequence {
public:
  explicit WeightSequence(std::vector<double> w);

  int period() const { return static_cast<int>(w_.size()); }
  double at(int t) const { return w_[static_cast<size_t>(wrap_index(t, period()) - 1)]; }
  double min() const;
  double max() const;
  double sum() const;
  const std::vector<double>& values() const { return w_; }

private:
  std::vector<double> w_;
};

// State of the full system: two sequences sharing (T, N).
struct PeriodicState {
  Sequence u1;
  Sequence u2;

  PeriodicState(int T, int N) : u1(T, N), u2(T, N) {}
  PeriodicState(Sequence a, Sequence b);
  int period() const { return u1.period(); }
  int dim() const { return u1.dim(); }
};

// Euclidean norm of one point.
double point_norm(std::span<const double> y);

// Forward difference (Δh)(t) = h(t+1) - h(t); components over one period
// telescope to zero.
Sequence forward_difference(const Sequence& h);

// (Σ_t |h(t)|^r)^(1/r), r >= 1.
double norm_r(const Sequence& h, double r);

// max_t |h(t)|.
double norm_sup(const Sequence& h);

// (Σ_t |Δh(t)|^e + Σ_t |h(t)|^e)^(1/e); the difference-plus-value norm used
// with exponent θ and, in its bracketed variant, with exponent l.
double norm_et(const Sequence& h, double e);

// Weighted variant: (Σ_t wd(t)|Δh(t)|^e + Σ_t wv(t)|h(t)|^e)^(1/e).
double norm_weighted(const Sequence& h, double e, const WeightSequence& wd, const WeightSequence& wv);

// Flat coordinate layout: all of u1 (t = 1..T, each point contiguous), then
// all of u2.  Round-trips are bit-exact.
std::vector<double> to_flat(const PeriodicState& u);
void to_flat(const PeriodicState& u, std::span<double> out);
PeriodicState from_flat(std::span<const double> x, int T, int N);

// ‖u‖_(∞) = ‖u1‖_∞ + ‖u2‖_∞.
double state_norm_sup(const PeriodicState& u);

// ‖u‖ = ‖u1‖_{E_T} + ‖u2‖_{E_T} with exponent e.
double state_norm_et(const PeriodicState& u, double e);

// Coordinate 2-norm of the flat vector (standard basis).
double flat_norm2(std::span<const double> x);

double flat_norm_sup(std::span<const double> x);

namespace detail {

// Neumaier compensated accumulator.
struct Accum {
  double s = 0.0;
  double c = 0.0;
  void add(double x);
  double get() const { return s + c; }
};

}  // namespace detail

}  // namespace philap
