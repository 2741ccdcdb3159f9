#include "philap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "philap/periodic.hpp"

namespace philap {

PotentialSpec::PotentialSpec(std::vector<PotentialTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("potential needs at least one term");
  for (size_t k = 0; k < terms_.size(); ++k) {
    const auto& tm = terms_[k];
    if (!(std::isfinite(tm.c) && tm.c > 0.0))
      throw std::invalid_argument("potential term " + std::to_string(k + 1) +
                                  " has coefficient " + std::to_string(tm.c) +
                                  ", must be strictly positive");
    if (!(std::isfinite(tm.p) && tm.p > 1.0))
      throw std::invalid_argument("potential term " + std::to_string(k + 1) + " has exponent " +
                                  std::to_string(tm.p) + ", must exceed 1");
  }
}

double PotentialSpec::value_radial(double r) const {
  if (r == 0.0) return 0.0;
  double s = 0;
  for (const auto& tm : terms_) s += (tm.c / tm.p) * std::pow(r, tm.p);
  return s;
}

double PotentialSpec::gradient_scale(double r) const {
  if (r == 0.0) return 0.0;
  double s = 0;
  for (const auto& tm : terms_) s += tm.c * std::pow(r, tm.p - 2.0);
  return s;
}

double PotentialSpec::value(std::span<const double> y) const { return value_radial(point_norm(y)); }

void PotentialSpec::gradient(std::span<const double> y, std::span<double> out) const {
  double r = point_norm(y);
  if (r == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  double s = gradient_scale(r);
  for (size_t i = 0; i < y.size(); ++i) out[i] = s * y[i];
}

double PotentialSpec::min_exponent() const {
  double m = terms_[0].p;
  for (const auto& tm : terms_) m = std::min(m, tm.p);
  return m;
}

double PotentialSpec::max_exponent() const {
  double m = terms_[0].p;
  for (const auto& tm : terms_) m = std::max(m, tm.p);
  return m;
}

namespace {

// Random point with log-uniform radius in [lo, hi].
std::vector<double> sample_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(std::log(lo), std::log(hi));
  std::vector<double> y(dim);
  double n2 = 0;
  do {
    n2 = 0;
    for (auto& v : y) {
      v = gauss(rng);
      n2 += v * v;
    }
  } while (n2 == 0.0);
  double scale = std::exp(unif(rng)) / std::sqrt(n2);
  for (auto& v : y) v *= scale;
  return y;
}

}  // namespace

std::vector<CheckReport> check_A1(const PotentialSpec& spec, const SampleConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<CheckReport> out;

  CheckReport grad{"gradient-consistency", true, 0.0, {}, ""};
  double worst = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    auto y = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    std::vector<double> g(cfg.dim), fd(cfg.dim);
    spec.gradient(y, g);
    for (int i = 0; i < cfg.dim; ++i) {
      double h = 1e-6 * std::max(1.0, std::abs(y[i]));
      double keep = y[i];
      y[i] = keep + h;
      double fp = spec.value(y);
      y[i] = keep - h;
      double fm = spec.value(y);
      y[i] = keep;
      fd[i] = (fp - fm) / (2 * h);
    }
    double err = 0, gn = 0;
    for (int i = 0; i < cfg.dim; ++i) {
      err = std::max(err, std::abs(g[i] - fd[i]));
      gn = std::max(gn, std::abs(g[i]));
    }
    double rel = err / std::max(1.0, gn);
    if (rel > worst) {
      worst = rel;
      grad.worst = Witness{0, y, {}, 0, 0, "max |analytic - finite difference| relative"};
      grad.worst.lhs = rel;
    }
  }
  grad.margin = 1e-6 - worst;
  grad.passed = worst <= 1e-6;
  out.push_back(std::move(grad));

  CheckReport conv{"strict-convexity", true, 0.0, {}, "midpoint test on sampled pairs"};
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.samples; ++s) {
    auto a = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    auto b = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    std::vector<double> mid(cfg.dim);
    for (int i = 0; i < cfg.dim; ++i) mid[i] = 0.5 * (a[i] + b[i]);
    double gap = 0.5 * (spec.value(a) + spec.value(b)) - spec.value(mid);
    if (gap < worst_gap) {
      worst_gap = gap;
      conv.worst = Witness{0, a, b, spec.value(mid), 0.5 * (spec.value(a) + spec.value(b)),
                           "midpoint value vs average"};
    }
  }
  conv.margin = worst_gap;
  conv.passed = worst_gap > 0;
  out.push_back(std::move(conv));
  return out;
}

A3Estimate check_A3(const PotentialSpec& spec, double theta, const SampleConfig& cfg) {
  if (!(std::isfinite(theta) && theta > 1.0))
    throw std::invalid_argument("monotonicity exponent must exceed 1, got " + std::to_string(theta));
  std::mt19937_64 rng(cfg.seed);
  A3Estimate est;
  est.c_min = std::numeric_limits<double>::infinity();
  std::vector<double> gx(cfg.dim), gy(cfg.dim);
  for (int s = 0; s < cfg.samples; ++s) {
    auto x = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    auto y = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    double d2 = 0;
    for (int i = 0; i < cfg.dim; ++i) {
      double d = x[i] - y[i];
      d2 += d * d;
    }
    if (d2 == 0.0) continue;
    spec.gradient(x, gx);
    spec.gradient(y, gy);
    double num = 0;
    for (int i = 0; i < cfg.dim; ++i) num += (gx[i] - gy[i]) * (x[i] - y[i]);
    double ratio = num / std::pow(d2, theta / 2.0);
    if (ratio < est.c_min) {
      est.c_min = ratio;
      est.worst = Witness{0, x, y, num, std::pow(d2, theta / 2.0),
                          "pair attaining the smallest monotonicity ratio"};
    }
  }
  est.positive = est.c_min > 0;
  return est;
}

GrowthFit check_growth(const PotentialSpec& spec, double e, const SampleConfig& cfg) {
  if (!(std::isfinite(e) && e > 0))
    throw std::invalid_argument("growth exponent must be positive, got " + std::to_string(e));
  std::mt19937_64 rng(cfg.seed);
  GrowthFit fit;
  fit.lower_a = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.samples; ++s) {
    auto y = sample_point(rng, cfg.dim, cfg.radius_lo, cfg.radius_hi);
    double r = point_norm(y);
    double v = spec.value(y);
    double ratio = v / std::pow(r, e);
    if (ratio < fit.lower_a) fit.lower_a = ratio;
    if (ratio > fit.upper_b) {
      fit.upper_b = ratio;
      fit.worst = Witness{0, y, {}, v, std::pow(r, e), "max sampled ratio"};
    }
    if (r >= 1.0)
      fit.upper_d = std::max(fit.upper_d, ratio);
    else
      fit.offset_m = std::max(fit.offset_m, v);
  }
  // Radial probe across decades above the sampled range: an upper bound in
  // |y|^e fails when the ratio keeps growing decade over decade.
  double r0 = std::max(1.0, cfg.radius_hi);
  double first = spec.value_radial(r0) / std::pow(r0, e);
  double prev = first;
  bool growing = true;
  double last = first;
  for (int k = 1; k <= 4; ++k) {
    double r = r0 * std::pow(10.0, k);
    double ratio = spec.value_radial(r) / std::pow(r, e);
    if (ratio < prev * 1.2) growing = false;
    prev = ratio;
    last = ratio;
  }
  fit.upper_unbounded = growing && last >= 3.0 * first;
  return fit;
}

}  // namespace philap
