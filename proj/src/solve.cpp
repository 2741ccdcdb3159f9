#include "philap/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "philap/residual.hpp"

namespace philap {

namespace detail {

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  int k = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

LbfgsResult lbfgs_minimize(const ValueGrad& fg, std::vector<double> x0, const LbfgsOptions& opt) {
  const size_t n = x0.size();
  LbfgsResult res;
  res.x = std::move(x0);
  res.g.assign(n, 0.0);
  double f = fg(res.x, res.g);
  if (!std::isfinite(f)) {
    res.reason = "objective not finite at the start";
    return res;
  }

  std::vector<std::vector<double>> S, Y;
  std::vector<double> rho_hist;
  std::vector<double> d(n), xn(n), gn(n), alpha_buf;

  auto ginf = [&](const std::vector<double>& g) {
    double m = 0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  for (int it = 0; it < opt.max_iter; ++it) {
    double gi = ginf(res.g);
    if (gi <= opt.tol_grad) {
      res.converged = true;
      res.iterations = it;
      res.f = f;
      res.reason = "gradient below tolerance";
      return res;
    }

    // Two-loop recursion for d = -H g.
    d.assign(res.g.begin(), res.g.end());
    int m = static_cast<int>(S.size());
    alpha_buf.assign(static_cast<size_t>(m), 0.0);
    for (int i = m - 1; i >= 0; --i) {
      double a = 0;
      for (size_t j = 0; j < n; ++j) a += S[static_cast<size_t>(i)][j] * d[j];
      a *= rho_hist[static_cast<size_t>(i)];
      alpha_buf[static_cast<size_t>(i)] = a;
      for (size_t j = 0; j < n; ++j) d[j] -= a * Y[static_cast<size_t>(i)][j];
    }
    if (m > 0) {
      double sy = 0, yy = 0;
      for (size_t j = 0; j < n; ++j) {
        sy += S.back()[j] * Y.back()[j];
        yy += Y.back()[j] * Y.back()[j];
      }
      double gamma = (yy > 0) ? sy / yy : 1.0;
      for (auto& v : d) v *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      double b = 0;
      for (size_t j = 0; j < n; ++j) b += Y[static_cast<size_t>(i)][j] * d[j];
      b *= rho_hist[static_cast<size_t>(i)];
      double corr = alpha_buf[static_cast<size_t>(i)] - b;
      for (size_t j = 0; j < n; ++j) d[j] += corr * S[static_cast<size_t>(i)][j];
    }
    for (auto& v : d) v = -v;

    double slope = 0;
    for (size_t j = 0; j < n; ++j) slope += d[j] * res.g[j];
    if (!(slope < 0)) {
      // Not a descent direction: drop the memory and fall back to -g.
      S.clear();
      Y.clear();
      rho_hist.clear();
      for (size_t j = 0; j < n; ++j) d[j] = -res.g[j];
      slope = 0;
      for (size_t j = 0; j < n; ++j) slope += d[j] * res.g[j];
      if (!(slope < 0)) {
        res.iterations = it;
        res.f = f;
        res.reason = "no descent direction";
        return res;
      }
    }

    double step = (it == 0 && m == 0) ? 1.0 / std::max(1.0, gi) : 1.0;
    bool accepted = false;
    double fn = f;
    for (int bt = 0; bt < 48; ++bt) {
      for (size_t j = 0; j < n; ++j) xn[j] = res.x[j] + step * d[j];
      fn = fg(xn, gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.iterations = it;
      res.f = f;
      res.reason = "line search failed";
      res.converged = ginf(res.g) <= opt.tol_grad;
      return res;
    }

    std::vector<double> s(n), y(n);
    double sy = 0;
    for (size_t j = 0; j < n; ++j) {
      s[j] = xn[j] - res.x[j];
      y[j] = gn[j] - res.g[j];
      sy += s[j] * y[j];
    }
    double sn = 0, yn2 = 0;
    for (size_t j = 0; j < n; ++j) {
      sn += s[j] * s[j];
      yn2 += y[j] * y[j];
    }
    if (sy > 1e-12 * std::sqrt(sn * yn2)) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(S.size()) > opt.memory) {
        S.erase(S.begin());
        Y.erase(Y.begin());
        rho_hist.erase(rho_hist.begin());
      }
    }
    res.x.swap(xn);
    res.g.swap(gn);
    f = fn;
  }
  res.iterations = opt.max_iter;
  res.f = f;
  res.converged = ginf(res.g) <= opt.tol_grad;
  res.reason = res.converged ? "gradient below tolerance" : "iteration limit";
  return res;
}

PolishResult newton_polish(const ProblemView& pv, std::vector<double> x, double tol, int max_iter) {
  const int n = static_cast<int>(x.size());
  PolishResult res;
  std::vector<double> g(static_cast<size_t>(n)), gp(static_cast<size_t>(n)), gm(static_cast<size_t>(n));
  std::vector<double> xt(static_cast<size_t>(n));

  auto ginf = [&](const std::vector<double>& v) {
    double m = 0;
    for (double w : v) m = std::max(m, std::abs(w));
    return m;
  };
  auto g2 = [&](const std::vector<double>& v) {
    double s = 0;
    for (double w : v) s += w * w;
    return s;
  };

  pv.grad(x, g);
  for (int it = 0; it < max_iter; ++it) {
    double gi = ginf(g);
    if (gi <= tol) {
      res.converged = true;
      res.iterations = it;
      res.x = std::move(x);
      res.grad_inf = gi;
      return res;
    }
    // Central finite-difference Jacobian of the gradient.
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
      double h = 1e-6 * std::max(1.0, std::abs(x[static_cast<size_t>(j)]));
      xt = x;
      xt[static_cast<size_t>(j)] += h;
      pv.grad(xt, gp);
      xt[static_cast<size_t>(j)] -= 2 * h;
      pv.grad(xt, gm);
      for (int i = 0; i < n; ++i)
        J(i, j) = (gp[static_cast<size_t>(i)] - gm[static_cast<size_t>(i)]) / (2 * h);
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = -g[static_cast<size_t>(i)];

    double base = g2(g);
    bool stepped = false;
    double damping = 0.0;
    for (int attempt = 0; attempt < 8 && !stepped; ++attempt) {
      Eigen::MatrixXd Jd = J;
      if (damping > 0)
        for (int i = 0; i < n; ++i) Jd(i, i) += damping;
      Eigen::VectorXd s = Jd.partialPivLu().solve(rhs);
      if (s.allFinite()) {
        double step = 1.0;
        for (int bt = 0; bt < 30; ++bt) {
          for (int j = 0; j < n; ++j) xt[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] + step * s(j);
          pv.grad(xt, gp);
          double trial = g2(gp);
          if (std::isfinite(trial) && trial <= base * (1.0 - 1e-4 * step)) {
            x = xt;
            g = gp;
            stepped = true;
            break;
          }
          step *= 0.5;
        }
      }
      if (!stepped) {
        double jn = J.cwiseAbs().maxCoeff();
        damping = (damping == 0.0) ? 1e-8 * std::max(1.0, jn) : damping * 100.0;
      }
    }
    if (!stepped) {
      res.iterations = it;
      res.grad_inf = ginf(g);
      res.x = std::move(x);
      return res;
    }
  }
  res.grad_inf = ginf(g);
  res.converged = res.grad_inf <= tol;
  res.iterations = max_iter;
  res.x = std::move(x);
  return res;
}

}  // namespace detail

namespace {

using detail::LbfgsOptions;
using detail::LbfgsResult;

std::vector<double> flat_of(const PeriodicState& u) { return to_flat(u); }

CriticalPoint make_point(const ProblemView& pv, std::vector<double> x, int start_index, int iterations) {
  std::vector<double> g(x.size()), r(x.size());
  pv.grad(x, g);
  pv.residual(x, r);
  CriticalPoint cp{from_flat(x, pv.T, pv.N), pv.value(x), flat_norm_sup(g), flat_norm_sup(r),
                   start_index, iterations};
  return cp;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

ProblemView make_view(const ProblemT11& pb) {
  ProblemView v;
  v.T = pb.T;
  v.N = pb.N;
  ProblemT11 copy = pb;
  v.value = [copy](std::span<const double> x) {
    return action_value(copy, from_flat(x, copy.T, copy.N));
  };
  ProblemT11 copy2 = pb;
  v.grad = [copy2](std::span<const double> x, std::span<double> out) {
    action_gradient(copy2, from_flat(x, copy2.T, copy2.N), out);
  };
  ProblemT11 copy3 = pb;
  v.residual = [copy3](std::span<const double> x, std::span<double> out) {
    system_residual(copy3, from_flat(x, copy3.T, copy3.N), out);
  };
  v.even = pb.F.even() && pb.G.even() && pb.H.even();
  return v;
}

ProblemView make_view(const ProblemT12& pb) {
  ProblemView v;
  v.T = pb.T;
  v.N = pb.N;
  ProblemT12 copy = pb;
  v.value = [copy](std::span<const double> x) {
    return action_value(copy, from_flat(x, copy.T, copy.N));
  };
  ProblemT12 copy2 = pb;
  v.grad = [copy2](std::span<const double> x, std::span<double> out) {
    action_gradient(copy2, from_flat(x, copy2.T, copy2.N), out);
  };
  ProblemT12 copy3 = pb;
  v.residual = [copy3](std::span<const double> x, std::span<double> out) {
    system_residual(copy3, from_flat(x, copy3.T, copy3.N), out);
  };
  v.even = pb.F.even();
  return v;
}

MinimizeResult minimize_from(const ProblemView& pv, const PeriodicState& start, const SolverConfig& cfg) {
  MinimizeResult out{false, "", CriticalPoint{PeriodicState(pv.T, pv.N)}};
  detail::ValueGrad fg = [&pv](std::span<const double> x, std::span<double> g) {
    pv.grad(x, g);
    return pv.value(x);
  };
  LbfgsOptions opt;
  opt.max_iter = cfg.max_iter;
  opt.tol_grad = std::max(cfg.tol_grad, 1e-7);
  LbfgsResult lb = detail::lbfgs_minimize(fg, flat_of(start), opt);
  auto polished = detail::newton_polish(pv, lb.x, cfg.tol_grad, 60);
  int iters = lb.iterations + polished.iterations;
  if (polished.converged) {
    out.converged = true;
    out.reason = "converged";
    out.point = make_point(pv, polished.x, 0, iters);
  } else {
    out.reason = "did not reach the gradient tolerance (" + lb.reason + ")";
    out.point = make_point(pv, polished.x, 0, iters);
  }
  return out;
}

MinimizeResult minimize_from(const ProblemT11& pb, const PeriodicState& start, const SolverConfig& cfg) {
  return minimize_from(make_view(pb), start, cfg);
}

MinimizeResult minimize_from(const ProblemT12& pb, const PeriodicState& start, const SolverConfig& cfg) {
  return minimize_from(make_view(pb), start, cfg);
}

std::vector<PeriodicState> clark_seeds(int T, int N, double delta, double r0, int count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PeriodicState> out;
  out.reserve(static_cast<size_t>(count));
  size_t n = static_cast<size_t>(2 * T * N);
  std::vector<double> x(n);
  while (static_cast<int>(out.size()) < count) {
    double n2 = 0;
    for (auto& v : x) {
      v = gauss(rng);
      n2 += v * v;
    }
    if (n2 == 0) continue;
    double s = r0 * delta / std::sqrt(n2);
    for (auto& v : x) v *= s;
    out.push_back(from_flat(x, T, N));
    if (static_cast<int>(out.size()) < count) {
      for (auto& v : x) v = -v;
      out.push_back(from_flat(x, T, N));
    }
  }
  return out;
}

double negative_sphere_radius(const ProblemView& pv, double delta, int count, std::uint64_t seed) {
  auto seeds = clark_seeds(pv.T, pv.N, delta, 1.0, count, seed);
  std::vector<std::vector<double>> dirs;
  dirs.reserve(seeds.size());
  for (const auto& s : seeds) dirs.push_back(to_flat(s));
  std::vector<double> x(dirs.empty() ? 0 : dirs[0].size());
  auto all_negative = [&](double r0) {
    for (const auto& d : dirs) {
      for (size_t j = 0; j < d.size(); ++j) x[j] = r0 * d[j];
      if (!(pv.value(x) < 0)) return false;
    }
    return true;
  };
  if (all_negative(1.0)) return 1.0;
  double lo = 1e-3;
  while (lo > 1e-14 && !all_negative(lo)) lo *= 0.1;
  if (lo <= 1e-14) return 0.0;
  double hi = 1.0;
  for (int i = 0; i < 48; ++i) {
    double mid = 0.5 * (lo + hi);
    if (all_negative(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::vector<CriticalPoint> dedup(std::vector<CriticalPoint> points, double tol, bool even_symmetry) {
  std::vector<std::vector<double>> flats;
  flats.reserve(points.size());
  for (const auto& p : points) flats.push_back(to_flat(p.state));
  std::vector<size_t> order(points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (points[a].action != points[b].action) return points[a].action < points[b].action;
    return lex_less(flats[a], flats[b]);
  });
  std::vector<CriticalPoint> reps;
  std::vector<std::vector<double>> rep_flats;
  for (size_t idx : order) {
    bool dup = false;
    for (const auto& rf : rep_flats) {
      double d = 0, dm = 0;
      for (size_t j = 0; j < rf.size(); ++j) {
        d = std::max(d, std::abs(rf[j] - flats[idx][j]));
        dm = std::max(dm, std::abs(rf[j] + flats[idx][j]));
      }
      if (d <= tol || (even_symmetry && dm <= tol)) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      reps.push_back(points[idx]);
      rep_flats.push_back(flats[idx]);
    }
  }
  return reps;
}

namespace {

// Deflated objective D(x) * 0.5|g(x)|^2 with D = Π_k (shift + |x - x_k|^-p),
// mirrors included for even problems.  The curvature term J g is approximated
// by a central difference of the gradient along g.
struct DeflatedObjective {
  const ProblemView* pv;
  const std::vector<std::vector<double>>* known;
  double shift;
  double expo;
  bool even;

  double operator()(std::span<const double> x, std::span<double> out) const {
    size_t n = x.size();
    std::vector<double> g(n), gp(n), gm(n), xt(n);
    pv->grad(x, g);
    double g2 = 0;
    for (double v : g) g2 += v * v;

    double D = 1.0;
    std::vector<double> dlog(n, 0.0);  // ∇ log D
    auto add_factor = [&](const std::vector<double>& c, double sign) {
      double r2 = 0;
      for (size_t j = 0; j < n; ++j) {
        double d = x[j] - sign * c[j];
        r2 += d * d;
      }
      double r = std::sqrt(r2);
      if (r < 1e-10) r = 1e-10;
      double f = shift + std::pow(r, -expo);
      D *= f;
      double gscale = -expo * std::pow(r, -expo - 2.0) / f;
      for (size_t j = 0; j < n; ++j) dlog[j] += gscale * (x[j] - sign * c[j]);
    };
    for (const auto& c : *known) {
      add_factor(c, 1.0);
      double cn = 0;
      for (double v : c) cn = std::max(cn, std::abs(v));
      if (even && cn > 1e-12) add_factor(c, -1.0);
    }

    double gn = std::sqrt(g2);
    std::vector<double> jg(n, 0.0);
    if (gn > 0) {
      double xs = 0;
      for (double v : x) xs = std::max(xs, std::abs(v));
      double eps = 1e-6 * (1.0 + xs);
      for (size_t j = 0; j < n; ++j) xt[j] = x[j] + eps * g[j] / gn;
      pv->grad(xt, gp);
      for (size_t j = 0; j < n; ++j) xt[j] = x[j] - eps * g[j] / gn;
      pv->grad(xt, gm);
      for (size_t j = 0; j < n; ++j) jg[j] = (gp[j] - gm[j]) / (2 * eps) * gn;
    }

    double M = D * 0.5 * g2;
    for (size_t j = 0; j < n; ++j) out[j] = D * jg[j] + M * dlog[j];
    return M;
  }
};

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ProblemView& pv, const SolverConfig& cfg) {
  const size_t n = static_cast<size_t>(2 * pv.T * pv.N);
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 0.0);

  if (cfg.clark_seed_count > 0) {
    double r0 = negative_sphere_radius(pv, cfg.clark_delta, cfg.clark_seed_count, cfg.seed + 7);
    if (r0 > 0) {
      for (const auto& s : clark_seeds(pv.T, pv.N, cfg.clark_delta, 0.5 * r0, cfg.clark_seed_count,
                                       cfg.seed + 7))
        starts.push_back(to_flat(s));
    }
  }

  for (int k = static_cast<int>(starts.size()); k < std::max(1, cfg.starts); ++k) {
    std::mt19937_64 rng(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(k + 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> x(n);
    double n2 = 0;
    for (auto& v : x) {
      v = gauss(rng);
      n2 += v * v;
    }
    double scale = (n2 > 0) ? cfg.start_radius * unif(rng) / std::sqrt(n2) : 0.0;
    for (auto& v : x) v *= scale * std::sqrt(static_cast<double>(n));
    // A share of starts inside the single-component subspaces: gradient steps
    // keep them invariant when the problem separates, so points localized in
    // one component are reached from inside, not across.
    size_t half = n / 2;
    if (k % 4 == 1)
      for (size_t j = half; j < n; ++j) x[j] = 0.0;
    else if (k % 4 == 3)
      for (size_t j = 0; j < half; ++j) x[j] = 0.0;
    starts.push_back(std::move(x));
  }

  detail::ValueGrad fg = [&pv](std::span<const double> x, std::span<double> g) {
    pv.grad(x, g);
    return pv.value(x);
  };

  struct Slot {
    bool ok = false;
    std::vector<double> x;
    int iters = 0;
  };
  std::vector<Slot> slots(starts.size());
  detail::parallel_for(static_cast<int>(starts.size()), cfg.threads, [&](int i) {
    LbfgsOptions opt;
    opt.max_iter = cfg.max_iter;
    opt.tol_grad = std::max(cfg.tol_grad, 1e-7);
    auto lb = detail::lbfgs_minimize(fg, starts[static_cast<size_t>(i)], opt);
    auto pol = detail::newton_polish(pv, lb.x, cfg.tol_grad, 60);
    slots[static_cast<size_t>(i)] = Slot{pol.converged, std::move(pol.x), lb.iterations + pol.iterations};
  });

  std::vector<CriticalPoint> found;
  for (size_t i = 0; i < slots.size(); ++i)
    if (slots[i].ok) found.push_back(make_point(pv, slots[i].x, static_cast<int>(i), slots[i].iters));
  found = dedup(std::move(found), cfg.dedup_tol, cfg.even_symmetry && pv.even);

  if (cfg.deflate && cfg.deflation_rounds > 0 && cfg.start_radius > 0) {
    for (int round = 0; round < cfg.deflation_rounds; ++round) {
      std::vector<std::vector<double>> known;
      known.reserve(found.size());
      for (const auto& p : found) known.push_back(to_flat(p.state));
      DeflatedObjective dobj{&pv, &known, cfg.deflation_shift, cfg.deflation_exponent,
                             cfg.even_symmetry && pv.even};

      std::vector<std::vector<double>> dstarts;
      std::mt19937_64 rng(cfg.seed + 0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(round + 1));
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::uniform_real_distribution<double> unif(0.3, 1.0);
      for (int k = 0; k < cfg.deflation_starts; ++k) {
        std::vector<double> x(n);
        for (auto& v : x) v = gauss(rng);
        double n2 = 0;
        for (auto& v : x) n2 += v * v;
        double scale = (n2 > 0) ? cfg.start_radius * unif(rng) / std::sqrt(n2) : 0.0;
        for (auto& v : x) v *= scale * std::sqrt(static_cast<double>(n));
        if (!known.empty() && k % 2 == 0) {
          const auto& base = known[static_cast<size_t>(k / 2) % known.size()];
          for (size_t j = 0; j < n; ++j) x[j] = base[j] + 0.5 * x[j];
        } else if (k % 8 == 1) {
          for (size_t j = n / 2; j < n; ++j) x[j] = 0.0;
        } else if (k % 8 == 5) {
          for (size_t j = 0; j < n / 2; ++j) x[j] = 0.0;
        }
        dstarts.push_back(std::move(x));
      }

      struct Cand {
        bool ok = false;
        std::vector<double> x;
        int iters = 0;
      };
      std::vector<Cand> cands(dstarts.size());
      detail::parallel_for(static_cast<int>(dstarts.size()), cfg.threads, [&](int i) {
        LbfgsOptions opt;
        opt.max_iter = std::min(cfg.max_iter, 300);
        opt.tol_grad = 1e-12;  // deflated objective has no natural gradient scale
        auto lb = detail::lbfgs_minimize([&dobj](std::span<const double> x, std::span<double> g) {
          return dobj(x, g);
        }, dstarts[static_cast<size_t>(i)], opt);
        std::vector<double> g(n);
        pv.grad(lb.x, g);
        if (flat_norm_sup(g) <= 1e-4) {
          auto pol = detail::newton_polish(pv, lb.x, cfg.tol_grad, 60);
          if (pol.converged) {
            cands[static_cast<size_t>(i)] = Cand{true, std::move(pol.x), lb.iterations + pol.iterations};
          }
        }
      });

      size_t before = found.size();
      for (size_t i = 0; i < cands.size(); ++i) {
        if (!cands[i].ok) continue;
        found.push_back(make_point(pv, cands[i].x, -static_cast<int>(round + 1), cands[i].iters));
        found = dedup(std::move(found), cfg.dedup_tol, cfg.even_symmetry && pv.even);
      }
      if (found.size() == before) break;
    }
  }

  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.action != b.action) return a.action < b.action;
    return lex_less(to_flat(a.state), to_flat(b.state));
  });

  if (cfg.even_symmetry && pv.even) {
    std::vector<CriticalPoint> expanded;
    for (const auto& p : found) {
      expanded.push_back(p);
      auto x = to_flat(p.state);
      if (flat_norm_sup(x) > 10.0 * cfg.dedup_tol) {
        for (auto& v : x) v = -v;
        CriticalPoint mirror = make_point(pv, x, p.start_index, p.iterations);
        expanded.push_back(std::move(mirror));
      }
    }
    found = std::move(expanded);
  }
  return found;
}

std::vector<CriticalPoint> find_critical_points(const ProblemT11& pb, const SolverConfig& cfg) {
  return find_critical_points(make_view(pb), cfg);
}

std::vector<CriticalPoint> find_critical_points(const ProblemT12& pb, const SolverConfig& cfg) {
  return find_critical_points(make_view(pb), cfg);
}

}  // namespace philap
