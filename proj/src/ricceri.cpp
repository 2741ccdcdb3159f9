#include "philap/ricceri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "philap/solve.hpp"

namespace philap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

size_t flat_dim(const ProblemT11& pb) { return static_cast<size_t>(2 * pb.T * pb.N); }

Components values_at(const ProblemT11& pb, std::span<const double> x) {
  return component_values(pb, from_flat(x, pb.T, pb.N));
}

// Gradient of a fixed combination a*I + b*Psi + c*PhiG into out.
void combo_gradient(const ProblemT11& pb, std::span<const double> x, double a, double b, double c,
                    std::span<double> out) {
  size_t n = x.size();
  PeriodicState u = from_flat(x, pb.T, pb.N);
  std::vector<double> gI, gPsi, gPhi;
  if (a != 0) gI.assign(n, 0.0);
  if (b != 0) gPsi.assign(n, 0.0);
  if (c != 0) gPhi.assign(n, 0.0);
  component_gradients(pb, u, gI, gPsi, gPhi, {});
  for (size_t j = 0; j < n; ++j) {
    double v = 0;
    if (a != 0) v += a * gI[j];
    if (b != 0) v += b * gPsi[j];
    if (c != 0) v += c * gPhi[j];
    out[j] = v;
  }
}

std::vector<double> random_flat(std::mt19937_64& rng, size_t n, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = gauss(rng);
  double scale = radius * unif(rng);
  for (auto& v : x) v *= scale;
  return x;
}

// Find s > 0 with phi(s*d) = level by doubling then bisection; returns 0 when
// the ray never reaches the level.
double ray_to_level(const std::function<double(std::span<const double>)>& phi,
                    const std::vector<double>& d, double level) {
  std::vector<double> x(d.size());
  auto at = [&](double s) {
    for (size_t j = 0; j < d.size(); ++j) x[j] = s * d[j];
    return phi(x);
  };
  double hi = 1.0;
  double v = at(hi);
  int guard = 0;
  while (v < level && guard++ < 60) {
    hi *= 2.0;
    v = at(hi);
    if (!std::isfinite(v)) return 0.0;
  }
  if (v < level) return 0.0;
  double lo = 0.0;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    if (at(mid) < level)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

struct ScoredPoint {
  double score = kInf;
  std::vector<double> x;
};

}  // namespace

GammaEstimate estimate_gamma(const ProblemT11& pb, const EstimatorConfig& cfg) {
  pb.validate();
  const size_t n = flat_dim(pb);

  detail::ValueGrad fg = [&pb](std::span<const double> x, std::span<double> g) {
    Components c = values_at(pb, x);
    combo_gradient(pb, x, 0.0, 1.0, 1.0, g);
    return c.Psi + c.PhiG;
  };

  int starts = std::max(1, cfg.starts);
  std::vector<ScoredPoint> slots(static_cast<size_t>(starts));
  detail::parallel_for(starts, cfg.threads, [&](int k) {
    std::vector<double> x0(n, 0.0);
    if (k > 0) {
      std::mt19937_64 rng(cfg.seed + 101 * static_cast<std::uint64_t>(k));
      x0 = random_flat(rng, n, cfg.start_radius);
    }
    detail::LbfgsOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_grad = cfg.tol_grad;
    auto res = detail::lbfgs_minimize(fg, std::move(x0), opt);
    slots[static_cast<size_t>(k)] = ScoredPoint{res.f, std::move(res.x)};
  });

  size_t best = 0;
  for (size_t k = 1; k < slots.size(); ++k)
    if (slots[k].score < slots[best].score) best = k;

  GammaEstimate out;
  if (!(slots[best].score > -1e12)) {
    out.bounded_below = false;
    out.value = slots[best].score;
    out.minimizer = from_flat(slots[best].x, pb.T, pb.N);
    return out;
  }

  ProblemView pv;
  pv.T = pb.T;
  pv.N = pb.N;
  pv.value = [&pb](std::span<const double> x) {
    Components c = values_at(pb, x);
    return c.Psi + c.PhiG;
  };
  pv.grad = [&pb](std::span<const double> x, std::span<double> g) {
    combo_gradient(pb, x, 0.0, 1.0, 1.0, g);
  };
  pv.residual = pv.grad;
  auto pol = detail::newton_polish(pv, slots[best].x, cfg.tol_grad, 40);
  const auto& xbest = pol.converged ? pol.x : slots[best].x;
  out.value = pv.value(xbest);
  out.minimizer = from_flat(xbest, pb.T, pb.N);
  return out;
}

EtaEstimate estimate_eta(const ProblemT11& pb, double r, const EstimatorConfig& cfg) {
  pb.validate();
  if (!(r > 0)) throw std::invalid_argument("estimate_eta: the level r must be positive");
  const size_t n = flat_dim(pb);

  auto phi_of = [&pb](std::span<const double> x) { return values_at(pb, x).PhiG; };
  auto I_of = [&pb](std::span<const double> x) { return values_at(pb, x).I; };

  // Candidate list: every coordinate spike, the two per-component constant
  // profiles, and random directions, each projected radially onto the level.
  std::vector<std::vector<double>> dirs;
  for (size_t j = 0; j < n; ++j) {
    std::vector<double> d(n, 0.0);
    d[j] = 1.0;
    dirs.push_back(std::move(d));
  }
  {
    std::vector<double> d1(n, 0.0), d2(n, 0.0), dboth(n, 1.0);
    for (size_t j = 0; j < n / 2; ++j) d1[j] = 1.0;
    for (size_t j = n / 2; j < n; ++j) d2[j] = 1.0;
    dirs.push_back(std::move(d1));
    dirs.push_back(std::move(d2));
    dirs.push_back(std::move(dboth));
  }
  {
    std::mt19937_64 rng(cfg.seed + 17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < std::max(4, cfg.starts); ++k) {
      std::vector<double> d(n);
      for (auto& v : d) v = gauss(rng);
      dirs.push_back(std::move(d));
    }
  }

  std::vector<ScoredPoint> cands(dirs.size());
  detail::parallel_for(static_cast<int>(dirs.size()), cfg.threads, [&](int i) {
    double s = ray_to_level(phi_of, dirs[static_cast<size_t>(i)], r);
    if (s <= 0) return;
    std::vector<double> x(n);
    for (size_t j = 0; j < n; ++j) x[j] = s * dirs[static_cast<size_t>(i)][j];
    cands[static_cast<size_t>(i)] = ScoredPoint{I_of(x), std::move(x)};
  });

  std::vector<ScoredPoint> feasible;
  for (auto& c : cands)
    if (c.score < kInf) feasible.push_back(std::move(c));
  if (feasible.empty())
    throw std::runtime_error("estimate_eta: the level set is empty along every probed ray");
  std::sort(feasible.begin(), feasible.end(),
            [](const ScoredPoint& a, const ScoredPoint& b) { return a.score < b.score; });

  // Penalty continuation from the best candidates, then exact back-projection.
  int refine = std::min<int>(cfg.refine_top, static_cast<int>(feasible.size()));
  std::vector<ScoredPoint> refined(static_cast<size_t>(refine));
  detail::parallel_for(refine, cfg.threads, [&](int i) {
    std::vector<double> x = feasible[static_cast<size_t>(i)].x;
    for (int stage = 0; stage < cfg.penalty_stages; ++stage) {
      double pen = cfg.penalty_init * std::pow(10.0, stage);
      detail::ValueGrad fg = [&pb, r, pen](std::span<const double> xx, std::span<double> g) {
        size_t m = xx.size();
        PeriodicState u = from_flat(xx, pb.T, pb.N);
        Components c = component_values(pb, u);
        std::vector<double> gI(m), gPhi(m);
        component_gradients(pb, u, gI, {}, gPhi, {});
        double gap = c.PhiG - r;
        for (size_t j = 0; j < m; ++j) g[j] = gI[j] + 2.0 * pen * gap * gPhi[j];
        return c.I + pen * gap * gap;
      };
      detail::LbfgsOptions opt;
      opt.max_iter = cfg.max_iter;
      opt.tol_grad = cfg.tol_grad;
      auto res = detail::lbfgs_minimize(fg, std::move(x), opt);
      x = std::move(res.x);
    }
    double s = ray_to_level(phi_of, x, r);
    if (s > 0) {
      for (auto& v : x) v *= s;
      refined[static_cast<size_t>(i)] = ScoredPoint{I_of(x), std::move(x)};
    }
  });
  for (auto& c : refined)
    if (c.score < kInf) feasible.push_back(std::move(c));

  size_t best = 0;
  for (size_t i = 1; i < feasible.size(); ++i)
    if (feasible[i].score < feasible[best].score) best = i;

  EtaEstimate out;
  out.value = feasible[best].score;
  out.minimizer = from_flat(feasible[best].x, pb.T, pb.N);
  out.level_gap = std::abs(phi_of(feasible[best].x) - r);
  return out;
}

MuStarEstimate estimate_mu_star(const ProblemT11& pb, double r, const EstimatorConfig& cfg) {
  pb.validate();
  if (!(r > 0)) throw std::invalid_argument("estimate_mu_star: the level r must be positive");
  const size_t n = flat_dim(pb);

  GammaEstimate ge = estimate_gamma(pb, cfg);
  EtaEstimate ee = estimate_eta(pb, r, cfg);
  const double gamma_est = ge.value;
  const double eta_est = ee.value;

  auto ratio_of = [&](std::span<const double> x) -> double {
    Components c = values_at(pb, x);
    if (!(c.PhiG < r) || !(c.I < eta_est)) return kInf;
    double num = c.Psi - gamma_est + r;
    double den = eta_est - c.I;
    if (!(num > 0) || !(den > 0)) return kInf;
    return num / den;
  };

  std::vector<ScoredPoint> cands;
  {
    std::vector<double> zero(n, 0.0);
    cands.push_back(ScoredPoint{ratio_of(zero), std::move(zero)});
  }
  {
    // Shrunk copies of the two minimizers and random draws, rescaled into the
    // feasible region when needed.
    std::vector<std::vector<double>> raw;
    auto push_scaled = [&](const PeriodicState& u) {
      auto x = to_flat(u);
      for (double s = 0.9; s > 0.05; s -= 0.1) {
        std::vector<double> y(n);
        for (size_t j = 0; j < n; ++j) y[j] = s * x[j];
        raw.push_back(std::move(y));
      }
    };
    push_scaled(ge.minimizer);
    push_scaled(ee.minimizer);
    std::mt19937_64 rng(cfg.seed + 31);
    for (int k = 0; k < std::max(8, cfg.samples / 100); ++k)
      raw.push_back(random_flat(rng, n, cfg.start_radius));
    for (auto& x : raw) {
      double v = ratio_of(x);
      for (int halve = 0; halve < 60 && !(v < kInf); ++halve) {
        for (auto& c : x) c *= 0.5;
        v = ratio_of(x);
      }
      if (v < kInf) cands.push_back(ScoredPoint{v, std::move(x)});
    }
  }

  std::sort(cands.begin(), cands.end(),
            [](const ScoredPoint& a, const ScoredPoint& b) { return a.score < b.score; });

  // Local refinement of the best candidates; infeasible trial points are
  // rejected through a +inf objective, which the line search backs away from.
  detail::ValueGrad fg = [&](std::span<const double> x, std::span<double> g) {
    Components c = values_at(pb, x);
    std::fill(g.begin(), g.end(), 0.0);
    if (!(c.PhiG < r) || !(c.I < eta_est)) return kInf;
    double num = c.Psi - gamma_est + r;
    double den = eta_est - c.I;
    if (!(num > 0) || !(den > 0)) return kInf;
    std::vector<double> gI(n), gPsi(n);
    component_gradients(pb, from_flat(x, pb.T, pb.N), gI, gPsi, {}, {});
    for (size_t j = 0; j < n; ++j) g[j] = (gPsi[j] * den + num * gI[j]) / (den * den);
    return num / den;
  };
  int refine = std::min<int>(cfg.refine_top, static_cast<int>(cands.size()));
  std::vector<ScoredPoint> refined(static_cast<size_t>(refine));
  detail::parallel_for(refine, cfg.threads, [&](int i) {
    if (!(cands[static_cast<size_t>(i)].score < kInf)) return;
    detail::LbfgsOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_grad = cfg.tol_grad;
    auto res = detail::lbfgs_minimize(fg, cands[static_cast<size_t>(i)].x, opt);
    double v = ratio_of(res.x);
    if (v < kInf) refined[static_cast<size_t>(i)] = ScoredPoint{v, std::move(res.x)};
  });
  for (auto& c : refined)
    if (c.score < kInf) cands.push_back(std::move(c));

  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].score < cands[best].score) best = i;

  MuStarEstimate out;
  out.value = cands[best].score;
  out.gamma = gamma_est;
  out.eta = eta_est;
  out.witness = from_flat(cands[best].x, pb.T, pb.N);
  return out;
}

BetaEstimate estimate_beta(const ProblemT11& pb, double mu, double r, const EstimatorConfig& cfg) {
  pb.validate();
  if (!(r > 0)) throw std::invalid_argument("estimate_beta: the level r must be positive");
  if (!(mu > 0)) throw std::invalid_argument("estimate_beta: mu must be positive");
  const size_t n = flat_dim(pb);

  auto phi_of = [&pb](std::span<const double> x) { return values_at(pb, x).PhiG; };
  auto obj_of = [&pb, mu](std::span<const double> x) {
    Components c = values_at(pb, x);
    return mu * c.I + c.Psi;
  };

  // Inner infimum of mu*I + Psi over the closed sublevel set {PhiG <= r}.
  // u = 0 is always admissible with value 0; penalty runs add candidates that
  // are clamped back into the set radially before being scored.
  double inner = 0.0;
  std::vector<double> inner_x(n, 0.0);
  {
    std::vector<std::vector<double>> starts;
    std::mt19937_64 rng(cfg.seed + 57);
    for (int k = 0; k < std::max(4, cfg.refine_top); ++k)
      starts.push_back(random_flat(rng, n, cfg.start_radius));
    std::vector<ScoredPoint> results(starts.size());
    detail::parallel_for(static_cast<int>(starts.size()), cfg.threads, [&](int i) {
      std::vector<double> x = starts[static_cast<size_t>(i)];
      for (int stage = 0; stage < cfg.penalty_stages; ++stage) {
        double pen = cfg.penalty_init * std::pow(10.0, stage);
        detail::ValueGrad fg = [&pb, mu, r, pen](std::span<const double> xx, std::span<double> g) {
          size_t m = xx.size();
          PeriodicState u = from_flat(xx, pb.T, pb.N);
          Components c = component_values(pb, u);
          std::vector<double> gI(m), gPsi(m), gPhi(m);
          component_gradients(pb, u, gI, gPsi, gPhi, {});
          double excess = std::max(0.0, c.PhiG - r);
          for (size_t j = 0; j < m; ++j)
            g[j] = mu * gI[j] + gPsi[j] + 2.0 * pen * excess * gPhi[j];
          return mu * c.I + c.Psi + pen * excess * excess;
        };
        detail::LbfgsOptions opt;
        opt.max_iter = cfg.max_iter;
        opt.tol_grad = cfg.tol_grad;
        auto res = detail::lbfgs_minimize(fg, std::move(x), opt);
        x = std::move(res.x);
      }
      if (phi_of(x) > r) {
        // shrink radially until admissible; phi is continuous with phi(0)=0 < r
        double lo = 0.0, hi = 1.0;
        std::vector<double> y(n);
        for (int it = 0; it < 100; ++it) {
          double mid = 0.5 * (lo + hi);
          for (size_t j = 0; j < n; ++j) y[j] = mid * x[j];
          if (phi_of(y) > r)
            hi = mid;
          else
            lo = mid;
        }
        for (size_t j = 0; j < n; ++j) x[j] = lo * x[j];
      }
      results[static_cast<size_t>(i)] = ScoredPoint{obj_of(x), std::move(x)};
    });
    for (auto& c : results) {
      if (c.score < inner) {
        inner = c.score;
        inner_x = std::move(c.x);
      }
    }
  }

  // Outer supremum of (mu*I + Psi - inner)/(r - PhiG) over {PhiG > r}.
  auto ratio_of = [&](std::span<const double> x) -> double {
    double phi = phi_of(x);
    if (!(phi > r)) return -kInf;
    return (obj_of(x) - inner) / (r - phi);
  };

  std::vector<ScoredPoint> cands;  // score = -ratio so the best is the smallest
  auto consider = [&](std::vector<double> x) {
    double v = ratio_of(x);
    if (std::isfinite(v)) cands.push_back(ScoredPoint{-v, std::move(x)});
  };

  double wsum = pb.rho3.sum() + pb.rho4.sum();
  double c_hi = std::max(100.0, 100.0 * mu * std::max(1.0, wsum));
  std::vector<std::vector<double>> patterns;
  {
    std::vector<double> all(n, 1.0), d1(n, 0.0), d2(n, 0.0);
    for (size_t j = 0; j < n / 2; ++j) d1[j] = 1.0;
    for (size_t j = n / 2; j < n; ++j) d2[j] = 1.0;
    patterns.push_back(std::move(all));
    patterns.push_back(std::move(d1));
    patterns.push_back(std::move(d2));
  }
  for (const auto& d : patterns) {
    double s0 = ray_to_level(phi_of, d, r);
    if (s0 <= 0) continue;
    double lo = std::log(s0 * 1.0001), hi = std::log(std::max(s0 * 2.0, c_hi));
    const int grid = 64;
    for (int k = 0; k <= grid; ++k) {
      double s = std::exp(lo + (hi - lo) * k / grid);
      std::vector<double> x(n);
      for (size_t j = 0; j < n; ++j) x[j] = s * d[j];
      consider(std::move(x));
    }
  }
  {
    std::mt19937_64 rng(cfg.seed + 71);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int draws = std::max(16, cfg.samples / 50);
    for (int k = 0; k < draws; ++k) {
      std::vector<double> d(n);
      for (auto& v : d) v = gauss(rng);
      double s0 = ray_to_level(phi_of, d, r);
      if (s0 <= 0) continue;
      double s = s0 * std::pow(10.0, 4.0 * unif(rng)) * 1.0001;
      for (auto& v : d) v *= s;
      consider(std::move(d));
    }
  }

  BetaEstimate out;
  out.inner_min = inner;
  if (cands.empty()) {
    out.value = -kInf;
    return out;
  }
  std::sort(cands.begin(), cands.end(),
            [](const ScoredPoint& a, const ScoredPoint& b) { return a.score < b.score; });

  detail::ValueGrad fg = [&](std::span<const double> x, std::span<double> g) {
    Components c = values_at(pb, x);
    std::fill(g.begin(), g.end(), 0.0);
    double phi = c.PhiG;
    if (!(phi > r * (1.0 + 1e-12))) return kInf;
    double num = mu * c.I + c.Psi - inner;
    double den = r - phi;  // negative
    std::vector<double> gI(n), gPsi(n), gPhi(n);
    component_gradients(pb, from_flat(x, pb.T, pb.N), gI, gPsi, gPhi, {});
    // minimize -ratio
    for (size_t j = 0; j < n; ++j) {
      double dnum = mu * gI[j] + gPsi[j];
      g[j] = -(dnum * den + num * gPhi[j]) / (den * den);
    }
    return -num / den;
  };
  int refine = std::min<int>(cfg.refine_top, static_cast<int>(cands.size()));
  std::vector<ScoredPoint> refined(static_cast<size_t>(refine));
  detail::parallel_for(refine, cfg.threads, [&](int i) {
    detail::LbfgsOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_grad = cfg.tol_grad;
    auto res = detail::lbfgs_minimize(fg, cands[static_cast<size_t>(i)].x, opt);
    double v = ratio_of(res.x);
    if (std::isfinite(v)) refined[static_cast<size_t>(i)] = ScoredPoint{-v, std::move(res.x)};
  });
  for (auto& c : refined)
    if (c.score < kInf) cands.push_back(std::move(c));

  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].score < cands[best].score) best = i;
  out.value = -cands[best].score;
  out.witness = from_flat(cands[best].x, pb.T, pb.N);
  return out;
}

RicceriBundle run_ricceri(const ProblemT11& pb, double r, double mu, const EstimatorConfig& cfg) {
  RicceriBundle out;
  out.r = r;
  out.mu = mu;
  out.gamma = estimate_gamma(pb, cfg);
  out.eta = estimate_eta(pb, r, cfg);
  out.mu_star = estimate_mu_star(pb, r, cfg);
  out.beta = estimate_beta(pb, mu, r, cfg);
  if (std::isfinite(out.beta.value) && out.beta.value > 0) {
    out.lambda_interval = AdmissibleInterval{0.0, out.beta.value, true};
  }
  return out;
}

SmallInstanceBundle example51_oracle(const WeightSequence& rho3, const WeightSequence& rho4,
                                     double r, double mu) {
  if (!(r > 0)) throw std::invalid_argument("example51_oracle: r must be positive");
  if (!(mu > 0)) throw std::invalid_argument("example51_oracle: mu must be positive");
  SmallInstanceBundle b;
  double wmin = std::min(rho3.min(), rho4.min());
  double S = rho3.sum() + rho4.sum();
  b.gamma = -27.0 / 64.0;
  b.eta_lower = wmin * std::sqrt(r);
  b.mu_star_upper = (27.0 / 64.0 + r) / b.eta_lower;
  b.mu_threshold = std::max((27.0 / 64.0 + r) / std::sqrt(r), std::pow(r, 0.25)) / wmin;
  double den = 4.0 * std::pow(mu, 4.0) * std::pow(S, 4.0) - r;
  b.beta_lower = (den > 0) ? 3.0 * std::pow(mu, 3.0) * std::pow(S, 3.0) / den : 0.0;
  b.beta_valid = mu > b.mu_threshold && den > 0;
  b.weight_sum = S;
  return b;
}

EquivalenceEstimates estimate_equivalence_constants(int T, int N, double theta, double l, double q,
                                                    double p, const WeightSequence* gamma1,
                                                    const WeightSequence* gamma2,
                                                    const WeightSequence* gamma3,
                                                    const WeightSequence* gamma4, int samples,
                                                    std::uint64_t seed) {
  if (T < 2 || N < 1) throw std::invalid_argument("estimate_equivalence_constants: bad shape");
  WeightSequence unit(std::vector<double>(static_cast<size_t>(T), 1.0));
  const WeightSequence& g1 = gamma1 ? *gamma1 : unit;
  const WeightSequence& g2 = gamma2 ? *gamma2 : unit;
  const WeightSequence& g3 = gamma3 ? *gamma3 : unit;
  const WeightSequence& g4 = gamma4 ? *gamma4 : unit;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> slot(0, T * N - 1);

  auto draw_sequence = [&](int kind) {
    std::vector<double> d(static_cast<size_t>(T * N), 0.0);
    double amp = std::pow(10.0, 3.0 * (unif(rng) - 0.5));
    switch (kind % 3) {
      case 0:  // dense
        for (auto& v : d) v = amp * gauss(rng);
        break;
      case 1:  // single spike
        d[static_cast<size_t>(slot(rng))] = amp * (unif(rng) < 0.5 ? -1.0 : 1.0);
        break;
      default:  // constant profile over t
        for (int t = 0; t < T; ++t)
          for (int i = 0; i < N; ++i) d[static_cast<size_t>(t * N + i)] = amp * ((i * 2654435761u) % 7 + 1);
        break;
    }
    return Sequence(T, N, std::move(d));
  };

  EquivalenceEstimates est;
  auto fold = [](RatioRange& rr, double v, bool first) {
    if (first) {
      rr.lo = rr.hi = v;
    } else {
      rr.lo = std::min(rr.lo, v);
      rr.hi = std::max(rr.hi, v);
    }
  };

  for (int k = 0; k < std::max(16, samples); ++k) {
    Sequence h = draw_sequence(k);
    double base = norm_et(h, theta);
    if (!(base > 0)) continue;
    bool first = (k == 0);
    fold(est.c12, norm_r(h, theta) / base, first);
    fold(est.c34, norm_r(h, l) / base, first);
    fold(est.c56, norm_et(h, l) / base, first);

    double sup = norm_sup(h);
    fold(est.r34, norm_weighted(h, q, g1, g3) / sup, first);
    fold(est.r56, norm_weighted(h, p, g2, g4) / sup, first);

    Sequence h2 = draw_sequence(k + 1);
    PeriodicState u{h, h2};
    auto x = to_flat(u);
    double two = flat_norm2(x);
    if (two > 0) fold(est.r12, state_norm_sup(u) / two, first);
  }
  return est;
}

double weighted_floor_constant(const WeightSequence& value_weights, double e) {
  if (!(e > 0)) throw std::invalid_argument("weighted_floor_constant: exponent must be positive");
  return std::pow(value_weights.min(), 1.0 / e);
}

}  // namespace philap
