#include "philap/periodic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace philap {

int wrap_index(int t, int T) {
  int m = (t - 1) % T;
  if (m < 0) m += T;
  return m + 1;
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void detail::Accum::add(double x) {
  double t = s + x;
  if (std::abs(s) >= std::abs(x))
    c += (s - t) + x;
  else
    c += (x - t) + s;
  s = t;
}

Sequence::Sequence(int T, int N) : T_(T), N_(N), data_(static_cast<size_t>(T) * N, 0.0) {
  require(T >= 2, "sequence period must be >= 2, got " + std::to_string(T));
  require(N >= 1, "point dimension must be >= 1, got " + std::to_string(N));
}

Sequence::Sequence(int T, int N, std::vector<double> data) : T_(T), N_(N), data_(std::move(data)) {
  require(T >= 2, "sequence period must be >= 2, got " + std::to_string(T));
  require(N >= 1, "point dimension must be >= 1, got " + std::to_string(N));
  require(data_.size() == static_cast<size_t>(T) * N,
          "sequence data has " + std::to_string(data_.size()) + " entries, expected " +
              std::to_string(static_cast<size_t>(T) * N));
}

std::span<const double> Sequence::at(int t) const {
  int tc = wrap_index(t, T_);
  return {data_.data() + static_cast<size_t>(tc - 1) * N_, static_cast<size_t>(N_)};
}

std::span<double> Sequence::at(int t) {
  int tc = wrap_index(t, T_);
  return {data_.data() + static_cast<size_t>(tc - 1) * N_, static_cast<size_t>(N_)};
}

WeightSequence::WeightSequence(std::vector<double> w) : w_(std::move(w)) {
  require(w_.size() >= 2, "weight sequence needs period >= 2, got " + std::to_string(w_.size()));
  for (size_t i = 0; i < w_.size(); ++i) {
    if (!(std::isfinite(w_[i]) && w_[i] > 0.0))
      throw std::invalid_argument("weight entry at index " + std::to_string(i + 1) +
                                  " must be strictly positive and finite, got " + std::to_string(w_[i]));
  }
}

double WeightSequence::min() const {
  double m = w_[0];
  for (double x : w_) m = std::min(m, x);
  return m;
}

double WeightSequence::max() const {
  double m = w_[0];
  for (double x : w_) m = std::max(m, x);
  return m;
}

double WeightSequence::sum() const {
  double s = 0;
  for (double x : w_) s += x;
  return s;
}

PeriodicState::PeriodicState(Sequence a, Sequence b) : u1(std::move(a)), u2(std::move(b)) {
  require(u1.period() == u2.period() && u1.dim() == u2.dim(),
          "state components must share period and dimension");
}

double point_norm(std::span<const double> y) {
  double s = 0;
  for (double v : y) s += v * v;
  return std::sqrt(s);
}

Sequence forward_difference(const Sequence& h) {
  int T = h.period(), N = h.dim();
  Sequence d(T, N);
  for (int t = 1; t <= T; ++t) {
    auto cur = h.at(t);
    auto nxt = h.at(t + 1);
    auto out = d.at(t);
    for (int i = 0; i < N; ++i) out[i] = nxt[i] - cur[i];
  }
  return d;
}

double norm_r(const Sequence& h, double r) {
  require(std::isfinite(r) && r >= 1.0, "norm exponent must be finite and >= 1, got " + std::to_string(r));
  double s = 0;
  for (int t = 1; t <= h.period(); ++t) s += std::pow(point_norm(h.at(t)), r);
  return std::pow(s, 1.0 / r);
}

double norm_sup(const Sequence& h) {
  double m = 0;
  for (int t = 1; t <= h.period(); ++t) m = std::max(m, point_norm(h.at(t)));
  return m;
}

double norm_et(const Sequence& h, double e) {
  require(std::isfinite(e) && e >= 1.0, "norm exponent must be finite and >= 1, got " + std::to_string(e));
  Sequence d = forward_difference(h);
  double s = 0;
  for (int t = 1; t <= h.period(); ++t) s += std::pow(point_norm(d.at(t)), e);
  for (int t = 1; t <= h.period(); ++t) s += std::pow(point_norm(h.at(t)), e);
  return std::pow(s, 1.0 / e);
}

double norm_weighted(const Sequence& h, double e, const WeightSequence& wd, const WeightSequence& wv) {
  require(std::isfinite(e) && e >= 1.0, "norm exponent must be finite and >= 1, got " + std::to_string(e));
  require(wd.period() == h.period() && wv.period() == h.period(),
          "weight period must match sequence period");
  Sequence d = forward_difference(h);
  double s = 0;
  for (int t = 1; t <= h.period(); ++t) s += wd.at(t) * std::pow(point_norm(d.at(t)), e);
  for (int t = 1; t <= h.period(); ++t) s += wv.at(t) * std::pow(point_norm(h.at(t)), e);
  return std::pow(s, 1.0 / e);
}

std::vector<double> to_flat(const PeriodicState& u) {
  std::vector<double> x(2 * u.u1.data().size());
  to_flat(u, x);
  return x;
}

void to_flat(const PeriodicState& u, std::span<double> out) {
  size_t n = u.u1.data().size();
  for (size_t i = 0; i < n; ++i) out[i] = u.u1.data()[i];
  for (size_t i = 0; i < n; ++i) out[n + i] = u.u2.data()[i];
}

PeriodicState from_flat(std::span<const double> x, int T, int N) {
  size_t n = static_cast<size_t>(T) * N;
  if (x.size() != 2 * n)
    throw std::invalid_argument("flat vector has " + std::to_string(x.size()) + " entries, expected " +
                                std::to_string(2 * n));
  std::vector<double> a(x.begin(), x.begin() + n);
  std::vector<double> b(x.begin() + n, x.end());
  return PeriodicState(Sequence(T, N, std::move(a)), Sequence(T, N, std::move(b)));
}

double state_norm_sup(const PeriodicState& u) { return norm_sup(u.u1) + norm_sup(u.u2); }

double state_norm_et(const PeriodicState& u, double e) { return norm_et(u.u1, e) + norm_et(u.u2, e); }

double flat_norm2(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double flat_norm_sup(std::span<const double> x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace philap
