#include "philap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "philap/action.hpp"
#include "philap/nonlinearity.hpp"

namespace philap {

namespace {

// Per-potential reports under a "phiK-" prefix.  theta > 0 adds the
// uniform-monotonicity estimate; two_sided switches the growth check between
// an upper-only fit and a pinched two-sided fit at the same exponent.
void append_phi_reports(std::vector<CheckReport>& out, const std::string& pre,
                        const PotentialSpec& phi, double theta, double growth_e, bool two_sided,
                        const SampleConfig& sc) {
  for (CheckReport r : check_A1(phi, sc)) {
    r.name = pre + r.name;
    out.push_back(std::move(r));
  }
  if (theta > 0) {
    A3Estimate a3 = check_A3(phi, theta, sc);
    out.push_back(CheckReport{pre + "monotonicity", a3.positive && a3.c_min > 0, a3.c_min, a3.worst,
                              "smallest sampled uniform-monotonicity quotient"});
  }
  GrowthFit gf = check_growth(phi, growth_e, sc);
  if (two_sided) {
    bool ok = gf.lower_a > 0 && !gf.upper_unbounded && gf.upper_b <= 100.0 * gf.lower_a;
    out.push_back(CheckReport{pre + "two-sided-growth", ok, gf.lower_a, gf.worst,
                              "sampled pinch a*r^e <= value <= b*r^e with b/a <= 100"});
  } else {
    out.push_back(CheckReport{pre + "upper-growth", !gf.upper_unbounded, gf.upper_d, gf.worst,
                              "largest sampled ratio against the growth exponent must stop increasing"});
  }
  {
    std::mt19937_64 rng(sc.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    Witness w;
    int n = std::max(64, sc.samples / 16);
    for (int s = 0; s < n; ++s) {
      double r1 = sc.radius_lo * std::pow(sc.radius_hi / sc.radius_lo, u(rng));
      double r2 = r1 * (1.0 + u(rng));
      double v1 = phi.value_radial(r1);
      double v2 = phi.value_radial(r2);
      double gap = v2 - v1;
      if (gap < worst) {
        worst = gap;
        w = Witness{0, {r1}, {r2}, v1, v2, "radial values at the two radii"};
      }
      if (!(gap > 0)) ok = false;
    }
    out.push_back(CheckReport{pre + "radial-increase", ok, worst, w,
                              "value along a ray must strictly increase with the radius"});
  }
}

// Analytic gradient of a registered nonlinearity against central differences.
// Error is normalized by the largest gradient component at the base point so
// large-value kinds are not drowned by cancellation noise in tiny components.
CheckReport gradient_report(const std::string& name, const NonlinearFn& f, int T, int N,
                            const SampleConfig& sc) {
  CheckReport rep{name, true, 0.0, {}, "analytic gradient vs central difference"};
  std::mt19937_64 rng(sc.seed + 0x632be59bd9b4e019ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> x1(N), x2(N), g1(N), g2(N), d1(N), d2(N);
  double worst = 0;
  int samples = std::min(sc.samples, 200);
  for (int s = 0; s < samples; ++s) {
    double R = 1e-2 * std::pow(1e3, uni(rng));
    double n2 = 0;
    for (int i = 0; i < N; ++i) {
      x1[i] = gauss(rng);
      x2[i] = gauss(rng);
      n2 += x1[i] * x1[i] + x2[i] * x2[i];
    }
    if (n2 == 0) continue;
    double scale = R / std::sqrt(n2);
    for (int i = 0; i < N; ++i) {
      x1[i] *= scale;
      x2[i] *= scale;
    }
    int t = 1 + s % T;
    f(t, x1, x2, g1, g2);
    double gmax = 0;
    for (int i = 0; i < N; ++i) gmax = std::max({gmax, std::abs(g1[i]), std::abs(g2[i])});
    for (int blk = 0; blk < 2; ++blk) {
      auto& x = blk == 0 ? x1 : x2;
      const auto& g = blk == 0 ? g1 : g2;
      for (int j = 0; j < N; ++j) {
        double save = x[j];
        double h = 1e-6 * std::max(1.0, std::abs(save));
        x[j] = save + h;
        double fp = f(t, x1, x2, d1, d2);
        x[j] = save - h;
        double fm = f(t, x1, x2, d1, d2);
        x[j] = save;
        double fd = (fp - fm) / (2.0 * h);
        double err = std::abs(fd - g[j]) / (1.0 + gmax);
        if (err > worst) {
          worst = err;
          rep.worst = Witness{t, x1, x2, g[j], fd,
                              "gradient component " + std::to_string(blk * N + j)};
        }
      }
    }
  }
  rep.margin = worst;
  rep.passed = worst <= 1e-6;
  return rep;
}

FCheckParams f_params_from(const CheckSettings& cs) {
  FCheckParams fp;
  fp.samples = cs.samples;
  fp.seed = cs.seed;
  fp.ratio_threshold = cs.ratio_threshold;
  fp.radii = cs.radii;
  fp.ball_radius = cs.ball_radius;
  fp.s = cs.s;
  fp.h1 = cs.h1;
  fp.h2 = cs.h2;
  fp.lt = cs.lt;
  fp.alpha1 = cs.alpha1;
  fp.alpha2 = cs.alpha2;
  fp.beta1 = cs.beta1;
  fp.beta2 = cs.beta2;
  fp.M1 = cs.M1;
  fp.M2 = cs.M2;
  fp.delta = cs.delta;
  return fp;
}

}  // namespace

VerifyReport run_verification(const Config& cfg) {
  VerifyReport rep;
  rep.config_name = cfg.name;
  rep.system = cfg.system;

  SampleConfig sc;
  sc.samples = cfg.checks.samples;
  sc.seed = cfg.checks.seed;
  sc.dim = cfg.N;

  try {
    if (cfg.system == "T11") {
      ProblemT11 pb = build_t11(cfg);
      const PotentialSpec* phis[4] = {&pb.Phi1, &pb.Phi2, &pb.Phi3, &pb.Phi4};
      for (int i = 0; i < 4; ++i)
        append_phi_reports(rep.checks, "phi" + std::to_string(i + 1) + "-", *phis[i], pb.theta,
                           pb.l, false, sc);

      NonlinearFn Ffn = pb.F.fn(pb.T);
      NonlinearFn Gfn = pb.G.fn(pb.T);
      NonlinearFn Hfn = pb.H.fn(pb.T);
      rep.checks.push_back(gradient_report("F-gradient", Ffn, pb.T, pb.N, sc));
      if (pb.lambda != 0) rep.checks.push_back(gradient_report("G-gradient", Gfn, pb.T, pb.N, sc));
      if (pb.nu != 0) rep.checks.push_back(gradient_report("H-gradient", Hfn, pb.T, pb.N, sc));

      FCheckParams fp = f_params_from(cfg.checks);
      fp.growth_l = pb.l;
      fp.lambda = pb.lambda;
      fp.check_divergence = true;
      const NonlinearFn* Gp = pb.lambda != 0 ? &Gfn : nullptr;
      for (CheckReport r : check_F_conditions(pb.T, pb.N, Ffn, Gp, fp))
        rep.checks.push_back(std::move(r));
    } else if (cfg.system == "T12") {
      ProblemT12 pb = build_t12(cfg);
      {
        double m = std::min(std::min(pb.g1.min(), pb.g2.min()), std::min(pb.g3.min(), pb.g4.min()));
        rep.checks.push_back(
            CheckReport{"weights-positive", m > 0, m, {}, "smallest weight entry"});
      }
      append_phi_reports(rep.checks, "phi1-", pb.Phi1, 0.0, pb.q, true, sc);
      append_phi_reports(rep.checks, "phi2-", pb.Phi2, 0.0, pb.p, true, sc);
      append_phi_reports(rep.checks, "phi3-", pb.Phi3, 0.0, pb.q, true, sc);
      append_phi_reports(rep.checks, "phi4-", pb.Phi4, 0.0, pb.p, true, sc);

      NonlinearFn Ffn = pb.F.fn(pb.T);
      rep.checks.push_back(gradient_report("F-gradient", Ffn, pb.T, pb.N, sc));

      FCheckParams fp = f_params_from(cfg.checks);
      fp.check_divergence = false;  // the second family allows sublinear F
      fp.s = 0;
      fp.lambda = 0;
      for (CheckReport r : check_F_conditions(pb.T, pb.N, Ffn, nullptr, fp))
        rep.checks.push_back(std::move(r));
    } else {
      throw ConfigError("unknown system: " + cfg.system);
    }
  } catch (const std::invalid_argument& e) {
    rep.checks.clear();
    rep.checks.push_back(CheckReport{"structure", false, 0.0, {}, e.what()});
  }

  rep.all_passed = !rep.checks.empty();
  for (const auto& r : rep.checks) rep.all_passed = rep.all_passed && r.passed;
  return rep;
}

}  // namespace philap
