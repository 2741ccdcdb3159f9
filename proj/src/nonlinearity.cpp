#include "philap/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "philap/periodic.hpp"

namespace philap {

namespace {

double terms_value(const std::vector<PowerTerm>& ts, double r) {
  if (r == 0.0) return 0.0;
  double s = 0;
  for (const auto& t : ts) s += t.c * std::pow(r, t.p);
  return s;
}

// Gradient of Σ c|x|^p is scale * x with scale = Σ c p |x|^{p-2}.
double terms_gscale(const std::vector<PowerTerm>& ts, double r) {
  if (r == 0.0) return 0.0;
  double s = 0;
  for (const auto& t : ts) s += t.c * t.p * std::pow(r, t.p - 2.0);
  return s;
}

void scale_into(double s, std::span<const double> x, std::span<double> out) {
  for (size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
}

}  // namespace

NonlinearitySpec::NonlinearitySpec(NonlinearityKind k, double l, std::vector<PowerTerm> t1,
                                   std::vector<PowerTerm> t2)
    : kind_(k), l_(l), terms1_(std::move(t1)), terms2_(std::move(t2)) {}

NonlinearitySpec NonlinearitySpec::remark11F(double l) {
  if (!(std::isfinite(l) && l >= 2.0))
    throw std::invalid_argument("growth exponent must be >= 2, got " + std::to_string(l));
  return NonlinearitySpec(NonlinearityKind::remark11_F, l, {}, {});
}

NonlinearitySpec NonlinearitySpec::remark11G(double l) {
  if (!(std::isfinite(l) && l >= 2.0))
    throw std::invalid_argument("growth exponent must be >= 2, got " + std::to_string(l));
  return NonlinearitySpec(NonlinearityKind::remark11_G, l, {}, {});
}

NonlinearitySpec NonlinearitySpec::remark11H() {
  return NonlinearitySpec(NonlinearityKind::remark11_H, 2.0, {}, {});
}

NonlinearitySpec NonlinearitySpec::example51F() {
  return NonlinearitySpec(NonlinearityKind::example51_F, 3.0, {}, {});
}

NonlinearitySpec NonlinearitySpec::example51G() {
  return NonlinearitySpec(NonlinearityKind::example51_G, 4.0, {}, {});
}

NonlinearitySpec NonlinearitySpec::example51H() {
  return NonlinearitySpec(NonlinearityKind::example51_H, 2.0, {}, {});
}

NonlinearitySpec NonlinearitySpec::example52F() {
  return NonlinearitySpec(NonlinearityKind::example52_F, 2.0, {}, {});
}

NonlinearitySpec NonlinearitySpec::powerSum(std::vector<PowerTerm> terms1, std::vector<PowerTerm> terms2) {
  auto validate = [](const std::vector<PowerTerm>& ts, const char* which) {
    for (size_t k = 0; k < ts.size(); ++k) {
      if (!(std::isfinite(ts[k].c) && ts[k].c > 0.0))
        throw std::invalid_argument(std::string(which) + " term " + std::to_string(k + 1) +
                                    " has coefficient " + std::to_string(ts[k].c) +
                                    ", must be strictly positive");
      if (!(std::isfinite(ts[k].p) && ts[k].p > 1.0))
        throw std::invalid_argument(std::string(which) + " term " + std::to_string(k + 1) +
                                    " has exponent " + std::to_string(ts[k].p) + ", must exceed 1");
    }
  };
  validate(terms1, "first-component");
  validate(terms2, "second-component");
  double l = 2.0;
  for (const auto& t : terms1) l = std::max(l, t.p);
  for (const auto& t : terms2) l = std::max(l, t.p);
  return NonlinearitySpec(NonlinearityKind::power_sum, l, std::move(terms1), std::move(terms2));
}

double NonlinearitySpec::eval(int t, int T, std::span<const double> x1, std::span<const double> x2,
                              std::span<double> g1, std::span<double> g2) const {
  constexpr double pi = std::numbers::pi_v<double>;
  int tc = wrap_index(t, T);
  double arg = pi * tc / T;
  double r1 = point_norm(x1);
  double r2 = point_norm(x2);

  switch (kind_) {
    case NonlinearityKind::remark11_F: {
      double c1 = std::cos(arg) * std::cos(arg) + 2.0;
      double c2 = std::abs(std::cos(arg)) + 2.0;
      double S = r1 * r1 + r2 * r2 + 1.0;
      double lnS = std::log(S);
      double P = c1 * std::pow(r1, l_) + c2 * std::pow(r2, l_);
      double s1 = (r1 == 0.0 ? 0.0 : c1 * l_ * std::pow(r1, l_ - 2.0)) * lnS + P * 2.0 / S;
      double s2 = (r2 == 0.0 ? 0.0 : c2 * l_ * std::pow(r2, l_ - 2.0)) * lnS + P * 2.0 / S;
      scale_into(s1, x1, g1);
      scale_into(s2, x2, g2);
      return P * lnS;
    }
    case NonlinearityKind::remark11_G: {
      double w = std::abs(std::sin(arg)) + 2.0;
      double S = r1 * r1 + r2 * r2 + 1.0;
      double lnS = std::log(S);
      double Q = std::pow(r1, l_) + std::pow(r2, l_);
      double s1 = w * (2.0 * Q * (r1 == 0.0 ? 0.0 : l_ * std::pow(r1, l_ - 2.0)) * lnS + Q * Q * 2.0 / S);
      double s2 = w * (2.0 * Q * (r2 == 0.0 ? 0.0 : l_ * std::pow(r2, l_ - 2.0)) * lnS + Q * Q * 2.0 / S);
      scale_into(s1, x1, g1);
      scale_into(s2, x2, g2);
      return w * Q * Q * lnS;
    }
    case NonlinearityKind::remark11_H:
    case NonlinearityKind::example51_H: {
      double w = std::cos(arg) * std::cos(arg) + 2.0;
      double A = r1 * r1 + r2 * r2 + 2.0;
      scale_into(w * std::cos(A) * 2.0, x1, g1);
      scale_into(w * std::cos(A) * 2.0, x2, g2);
      return w * std::sin(A);
    }
    case NonlinearityKind::example51_F: {
      scale_into(3.0 * r1, x1, g1);
      scale_into(3.0 * r2, x2, g2);
      return r1 * r1 * r1 + r2 * r2 * r2;
    }
    case NonlinearityKind::example51_G: {
      scale_into(4.0 * r1 * r1, x1, g1);
      scale_into(4.0 * r2 * r2, x2, g2);
      double q1 = r1 * r1, q2 = r2 * r2;
      return q1 * q1 + q2 * q2;
    }
    case NonlinearityKind::example52_F: {
      double a = std::abs(std::sin(arg)) + 1.0;
      double b = std::cos(arg) * std::cos(arg) + 1.0;
      scale_into(r1 == 0.0 ? 0.0 : a * 1.5 / std::sqrt(r1), x1, g1);
      scale_into(2.0 * b, x2, g2);
      return a * std::pow(r1, 1.5) + b * r2 * r2;
    }
    case NonlinearityKind::power_sum: {
      scale_into(terms_gscale(terms1_, r1), x1, g1);
      scale_into(terms_gscale(terms2_, r2), x2, g2);
      return terms_value(terms1_, r1) + terms_value(terms2_, r2);
    }
  }
  return 0.0;
}

double NonlinearitySpec::value(int t, int T, std::span<const double> x1, std::span<const double> x2) const {
  std::vector<double> g1(x1.size()), g2(x2.size());
  return eval(t, T, x1, x2, g1, g2);
}

NonlinearFn NonlinearitySpec::fn(int T) const {
  NonlinearitySpec copy = *this;
  return [copy, T](int t, std::span<const double> x1, std::span<const double> x2, std::span<double> g1,
                   std::span<double> g2) { return copy.eval(t, T, x1, x2, g1, g2); };
}

std::string NonlinearitySpec::kind_name() const {
  switch (kind_) {
    case NonlinearityKind::remark11_F: return "remark11_F";
    case NonlinearityKind::remark11_G: return "remark11_G";
    case NonlinearityKind::remark11_H: return "remark11_H";
    case NonlinearityKind::example51_F: return "example51_F";
    case NonlinearityKind::example51_G: return "example51_G";
    case NonlinearityKind::example51_H: return "example51_H";
    case NonlinearityKind::example52_F: return "example52_F";
    case NonlinearityKind::power_sum: return "power_sum";
  }
  return "?";
}

NonlinearityKind NonlinearitySpec::kind_from_name(const std::string& name) {
  if (name == "remark11_F") return NonlinearityKind::remark11_F;
  if (name == "remark11_G") return NonlinearityKind::remark11_G;
  if (name == "remark11_H") return NonlinearityKind::remark11_H;
  if (name == "example51_F") return NonlinearityKind::example51_F;
  if (name == "example51_G") return NonlinearityKind::example51_G;
  if (name == "example51_H") return NonlinearityKind::example51_H;
  if (name == "example52_F") return NonlinearityKind::example52_F;
  if (name == "power_sum") return NonlinearityKind::power_sum;
  throw std::invalid_argument("unknown nonlinearity kind: " + name);
}

namespace {

struct JointSampler {
  std::mt19937_64 rng;
  std::normal_distribution<double> gauss{0.0, 1.0};
  int N;

  explicit JointSampler(std::uint64_t seed, int N) : rng(seed), N(N) {}

  // Point (x1, x2) at exact joint radius R, direction uniform on the sphere.
  void at_radius(double R, std::vector<double>& x1, std::vector<double>& x2) {
    x1.resize(N);
    x2.resize(N);
    double n2 = 0;
    do {
      n2 = 0;
      for (int i = 0; i < N; ++i) {
        x1[i] = gauss(rng);
        x2[i] = gauss(rng);
        n2 += x1[i] * x1[i] + x2[i] * x2[i];
      }
    } while (n2 == 0.0);
    double s = R / std::sqrt(n2);
    for (int i = 0; i < N; ++i) {
      x1[i] *= s;
      x2[i] *= s;
    }
  }

  void log_uniform(double lo, double hi, std::vector<double>& x1, std::vector<double>& x2) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    at_radius(std::exp(u(rng)), x1, x2);
  }
};

double value_of(const NonlinearFn& f, int t, std::span<const double> x1, std::span<const double> x2,
                std::vector<double>& s1, std::vector<double>& s2) {
  s1.resize(x1.size());
  s2.resize(x2.size());
  return f(t, x1, x2, s1, s2);
}

}  // namespace

std::vector<CheckReport> check_F_conditions(int T, int N, const NonlinearFn& F, const NonlinearFn* G,
                                            const FCheckParams& params) {
  std::vector<CheckReport> out;
  JointSampler sampler(params.seed, N);
  std::vector<double> s1, s2;
  std::vector<double> zero(N, 0.0);

  {
    CheckReport rep{"value-at-zero", true, 0.0, {}, ""};
    for (int t = 1; t <= T; ++t) {
      double v = value_of(F, t, zero, zero, s1, s2);
      if (std::abs(v) > 1e-12) {
        rep.passed = false;
        rep.worst = Witness{t, zero, zero, v, 0.0, "value at the origin is not zero"};
        break;
      }
      rep.margin = std::max(rep.margin, std::abs(v));
    }
    out.push_back(std::move(rep));
  }

  {
    CheckReport rep{"evenness", true, 0.0, {}, ""};
    std::vector<double> x1, x2, m1, m2;
    double worst = 0;
    for (int s = 0; s < params.samples; ++s) {
      sampler.log_uniform(1e-3, 1e2, x1, x2);
      m1 = x1;
      m2 = x2;
      for (auto& v : m1) v = -v;
      for (auto& v : m2) v = -v;
      int t = 1 + s % T;
      double a = value_of(F, t, x1, x2, s1, s2);
      double b = value_of(F, t, m1, m2, s1, s2);
      double d = std::abs(a - b) / (1.0 + std::abs(a));
      if (d > worst) {
        worst = d;
        rep.worst = Witness{t, x1, x2, a, b, "value at x vs value at -x"};
      }
    }
    rep.margin = worst;
    rep.passed = worst <= 1e-12;
    out.push_back(std::move(rep));
  }

  if (!params.h1.empty() || !params.h2.empty() || !params.lt.empty()) {
    CheckReport rep{"upper-growth", true, 0.0, {}, ""};
    if (params.h1.size() != static_cast<size_t>(T) || params.h2.size() != static_cast<size_t>(T) ||
        params.lt.size() != static_cast<size_t>(T)) {
      rep.passed = false;
      rep.note = "candidate tables must each have one entry per period index";
    } else {
      std::vector<double> x1, x2;
      double worst = std::numeric_limits<double>::infinity();
      for (int s = 0; s < params.samples; ++s) {
        sampler.log_uniform(1e-3, 1e3, x1, x2);
        int t = 1 + s % T;
        double v = value_of(F, t, x1, x2, s1, s2);
        double bound = params.h1[static_cast<size_t>(t - 1)] * std::pow(point_norm(x1), params.alpha1) +
                       params.h2[static_cast<size_t>(t - 1)] * std::pow(point_norm(x2), params.alpha2) +
                       params.lt[static_cast<size_t>(t - 1)];
        double slack = bound - v;
        if (slack < worst) {
          worst = slack;
          rep.worst = Witness{t, x1, x2, v, bound, "value vs candidate upper bound"};
        }
      }
      rep.margin = worst;
      rep.passed = worst >= -1e-9 * (1.0 + std::abs(rep.worst.rhs));
    }
    out.push_back(std::move(rep));
  }

  if (params.delta > 0) {
    CheckReport rep{"near-zero-lower", true, 0.0, {}, ""};
    std::vector<double> x1, x2;
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < params.samples; ++s) {
      sampler.log_uniform(params.delta * 1e-6, params.delta * 0.999, x1, x2);
      int t = 1 + s % T;
      double v = value_of(F, t, x1, x2, s1, s2);
      double bound = params.M1 * std::pow(point_norm(x1), params.beta1) +
                     params.M2 * std::pow(point_norm(x2), params.beta2);
      double slack = v - bound;
      if (slack < worst) {
        worst = slack;
        rep.worst = Witness{t, x1, x2, v, bound, "value vs candidate lower bound"};
      }
    }
    rep.margin = worst;
    rep.passed = worst >= -1e-12 * (1.0 + std::abs(rep.worst.rhs));
    out.push_back(std::move(rep));
  }

  auto min_ratio_at = [&](const NonlinearFn& f, double R, double expo, Witness* w) {
    std::vector<double> x1, x2;
    double m = std::numeric_limits<double>::infinity();
    int dirs = std::max(64, params.samples / 8);
    for (int s = 0; s < dirs; ++s) {
      sampler.at_radius(R, x1, x2);
      int t = 1 + s % T;
      double denom = std::pow(point_norm(x1), expo) + std::pow(point_norm(x2), expo);
      double ratio = value_of(f, t, x1, x2, s1, s2) / denom;
      if (ratio < m) {
        m = ratio;
        if (w) *w = Witness{t, x1, x2, ratio, 0.0, "smallest ratio at radius " + std::to_string(R)};
      }
    }
    return m;
  };

  auto divergence_report = [&](const char* name, const NonlinearFn& f, double expo) {
    CheckReport rep{name, true, 0.0, {}, "surrogate for divergence: threshold + growth across radii"};
    double prev = -std::numeric_limits<double>::infinity();
    for (double R : params.radii) {
      Witness w;
      double m = min_ratio_at(f, R, expo, &w);
      if (!(m > params.ratio_threshold) || !(m > prev)) {
        rep.passed = false;
        w.rhs = params.ratio_threshold;
        rep.worst = w;
      }
      rep.margin = m - params.ratio_threshold;
      prev = m;
    }
    return rep;
  };

  auto max_ratio_at = [&](const NonlinearFn& f, double R, double expo, Witness* w) {
    std::vector<double> x1, x2;
    double m = -std::numeric_limits<double>::infinity();
    int dirs = std::max(64, params.samples / 8);
    for (int s = 0; s < dirs; ++s) {
      sampler.at_radius(R, x1, x2);
      int t = 1 + s % T;
      double denom = std::pow(point_norm(x1), expo) + std::pow(point_norm(x2), expo);
      double ratio = value_of(f, t, x1, x2, s1, s2) / denom;
      if (ratio > m) {
        m = ratio;
        if (w) *w = Witness{t, x1, x2, ratio, 0.0, "largest ratio at radius " + std::to_string(R)};
      }
    }
    return m;
  };

  if (params.check_divergence && !params.radii.empty())
    out.push_back(divergence_report("ratio-divergence", F, params.growth_l));

  // Stronger exponent s > growth_l: the pairing term must blow up at rate s
  // while the primary term stays bounded at that rate.
  if (params.s > 0 && !params.radii.empty()) {
    if (G != nullptr) out.push_back(divergence_report("strong-divergence", *G, params.s));
    CheckReport rep{"strong-boundedness", true, 0.0, {},
                    "surrogate for boundedness: largest ratio must not keep growing across radii"};
    Witness wl;
    double first = max_ratio_at(F, params.radii.front(), params.s, nullptr);
    double last = max_ratio_at(F, params.radii.back(), params.s, &wl);
    double cap = 2.0 * std::abs(first) + 1e-9;
    rep.margin = cap - last;
    if (!(last <= cap)) {
      rep.passed = false;
      wl.rhs = cap;
      rep.worst = wl;
    }
    out.push_back(std::move(rep));
  }

  if (G != nullptr) {
    {
      CheckReport rep{"zero-sum", true, 0.0, {}, ""};
      double sum = 0;
      for (int t = 1; t <= T; ++t) sum += value_of(*G, t, zero, zero, s1, s2);
      rep.margin = std::abs(sum);
      rep.passed = rep.margin <= 1e-12;
      if (!rep.passed) rep.worst = Witness{0, zero, zero, sum, 0.0, "sum of values at the origin"};
      out.push_back(std::move(rep));
    }
    {
      CheckReport rep{"domination", true, 0.0, {}, ""};
      std::vector<double> x1, x2;
      double c0 = 0.0;  // the origin is always in the ball
      Witness at_min;
      for (int s = 0; s < params.samples; ++s) {
        sampler.log_uniform(1e-3, params.ball_radius, x1, x2);
        int t = 1 + s % T;
        double gap = params.lambda * value_of(*G, t, x1, x2, s1, s2) - value_of(F, t, x1, x2, s1, s2);
        if (gap < c0) {
          c0 = gap;
          at_min = Witness{t, x1, x2, gap, 0.0, "smallest sampled margin"};
        }
      }
      // Radial probe: the margin of a dominated pair stabilizes; a margin
      // sinking by orders of magnitude per decade means no constant works.
      double prev = 0;
      bool unbounded = true;
      for (int k = 0; k < 3; ++k) {
        double R = params.ball_radius * std::pow(10.0, k);
        double m = 0;
        std::vector<double> y1, y2;
        for (int s = 0; s < 64; ++s) {
          sampler.at_radius(R, y1, y2);
          int t = 1 + s % T;
          double gap = params.lambda * value_of(*G, t, y1, y2, s1, s2) - value_of(F, t, y1, y2, s1, s2);
          m = std::min(m, gap);
        }
        if (k > 0 && !(m < 2.0 * prev - 1.0)) unbounded = false;
        prev = m;
      }
      rep.margin = c0;
      rep.passed = !unbounded;
      rep.worst = at_min;
      rep.note = "sample-scale estimate of the domination constant (ball radius " +
                 std::to_string(params.ball_radius) + ")";
      out.push_back(std::move(rep));
    }
  }

  return out;
}

}  // namespace philap
