// Batch front end: configuration ingestion, structural verification suites,
// multi-start critical-point solving, critical-parameter estimation, named
// demonstration runs, and (r, mu) sweeps.  Exit codes: 0 success, 1 check or
// structure failure, 2 usage/config error.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "philap/action.hpp"
#include "philap/config.hpp"
#include "philap/periodic.hpp"
#include "philap/ricceri.hpp"
#include "philap/solve.hpp"
#include "philap/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace philap;

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

bool is_set(double v) { return !std::isnan(v); }

std::string format17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int env_threads() {
  const char* s = std::getenv("PHILAP_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || v < 1 || v > 1024) return 0;
  return static_cast<int>(v);
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* s = std::getenv("PHILAP_OUTDIR");
  if (s && *s) return s;
  return ".";
}

// Write via a temporary file in the same directory, then rename into place.
void write_atomic(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << body;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

json witness_json(const Witness& w) {
  return json{{"t", w.t},     {"x", w.x},     {"y", w.y},
              {"lhs", w.lhs}, {"rhs", w.rhs}, {"detail", w.detail}};
}

json check_json(const CheckReport& c) {
  return json{{"name", c.name},
              {"passed", c.passed},
              {"margin", c.margin},
              {"note", c.note},
              {"witness", witness_json(c.worst)}};
}

json verify_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(c));
  return json{{"config", rep.config_name},
              {"system", rep.system},
              {"all_passed", rep.all_passed},
              {"checks", std::move(checks)}};
}

json bundle_json(const RicceriBundle& b) {
  // Every estimate is one-sided; the "side" field records which side of the
  // true quantity it sits on.  The global-minimum set of the difference part
  // is taken to be the origin alone, which the structural checks back up.
  return json{
      {"r", b.r},
      {"mu", b.mu},
      {"gamma", json{{"estimate", b.gamma.value},
                     {"side", "upper"},
                     {"bounded_below", b.gamma.bounded_below}}},
      {"eta", json{{"estimate", b.eta.value}, {"side", "upper"}, {"level_gap", b.eta.level_gap}}},
      {"mu_star", json{{"estimate", b.mu_star.value}, {"side", "upper"}}},
      {"beta",
       json{{"estimate", b.beta.value}, {"side", "lower"}, {"inner_min", b.beta.inner_min}}},
      {"lambda_interval",
       json{{"lo", b.lambda_interval.lo},
            {"hi", b.lambda_interval.hi},
            {"valid", b.lambda_interval.valid}}},
      {"trivial_minimum_assumed", true}};
}

std::string solutions_csv(const std::vector<CriticalPoint>& pts) {
  std::ostringstream os;
  os << "index,action,grad_inf,residual_inf,start_index,iterations";
  size_t n = pts.empty() ? 0 : to_flat(pts.front().state).size();
  for (size_t j = 0; j < n; ++j) os << ",x" << j;
  os << "\n";
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    os << i << "," << format17(p.action) << "," << format17(p.grad_inf) << ","
       << format17(p.residual_inf) << "," << p.start_index << "," << p.iterations;
    for (double v : to_flat(p.state)) os << "," << format17(v);
    os << "\n";
  }
  return os.str();
}

struct SolveSummary {
  int total = 0;
  bool has_trivial = false;
  int nonzero = 0;
  int pairs = 0;
  bool closed_under_negation = true;
  double max_residual = 0;
  double best_action = std::numeric_limits<double>::infinity();
};

SolveSummary summarize(const std::vector<CriticalPoint>& pts, double dedup_tol) {
  SolveSummary s;
  s.total = static_cast<int>(pts.size());
  double zt = 10.0 * dedup_tol;
  std::vector<std::vector<double>> flats;
  flats.reserve(pts.size());
  for (const auto& p : pts) flats.push_back(to_flat(p.state));
  auto sup = [](const std::vector<double>& x) {
    double m = 0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    s.max_residual = std::max(s.max_residual, pts[i].residual_inf);
    s.best_action = std::min(s.best_action, pts[i].action);
    if (sup(flats[i]) <= zt) {
      s.has_trivial = true;
      continue;
    }
    ++s.nonzero;
    bool mate = false;
    for (size_t j = 0; j < pts.size() && !mate; ++j) {
      if (j == i) continue;
      double d = 0;
      for (size_t k = 0; k < flats[i].size(); ++k)
        d = std::max(d, std::abs(flats[i][k] + flats[j][k]));
      mate = d <= zt;
    }
    if (!mate) s.closed_under_negation = false;
  }
  s.pairs = s.nonzero / 2;
  return s;
}

struct CommonOpts {
  std::string config;
  std::string out;
  int threads = -1;
  bool dump = false;
  double mu = kUnset, lambda = kUnset, nu = kUnset;
  int starts = -1;
  double start_radius = kUnset;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string preset;
};

void apply_overrides(Config& cfg, const CommonOpts& o) {
  if (o.preset == "desk")
    apply_desk_preset(cfg);
  else if (!o.preset.empty())
    throw ConfigError("unknown preset: " + o.preset + " (expected: desk)");
  if (is_set(o.mu)) cfg.mu = o.mu;
  if (is_set(o.lambda)) cfg.lambda = o.lambda;
  if (is_set(o.nu)) cfg.nu = o.nu;
  if (o.starts >= 0) cfg.solver.starts = o.starts;
  if (is_set(o.start_radius)) {
    if (o.start_radius < 0) throw ConfigError("start radius must be >= 0");
    cfg.solver.start_radius = o.start_radius;
  }
  if (o.seed_set) {
    cfg.solver.seed = o.seed;
    cfg.estimator.seed = o.seed;
  }
  int th = o.threads >= 1 ? o.threads : env_threads();
  if (th >= 1) {
    cfg.solver.threads = th;
    cfg.estimator.threads = th;
  }
}

int cmd_verify(const CommonOpts& o) {
  Config cfg = load_config(o.config);
  apply_overrides(cfg, o);
  if (o.dump) {
    std::cout << config_to_json(cfg) << "\n";
    return 0;
  }
  VerifyReport rep = run_verification(cfg);
  int passed = 0;
  for (const auto& c : rep.checks) {
    if (c.passed) ++passed;
    std::printf("[%s] %-26s margin=%.6g%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.margin, c.note.empty() ? "" : "  ", c.note.c_str());
  }
  fs::path out = resolve_out_dir(o.out) / (cfg.name + "_verify.json");
  write_atomic(out, verify_json(rep).dump(2) + "\n");
  std::printf("%d/%zu checks passed; report: %s\n", passed, rep.checks.size(),
              out.string().c_str());
  return rep.all_passed ? 0 : 1;
}

int cmd_solve(const CommonOpts& o) {
  Config cfg = load_config(o.config);
  apply_overrides(cfg, o);
  if (o.dump) {
    std::cout << config_to_json(cfg) << "\n";
    return 0;
  }
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CriticalPoint> pts;
  if (cfg.system == "T11") {
    ProblemT11 pb = build_t11(cfg);
    pts = find_critical_points(pb, cfg.solver);
  } else if (cfg.system == "T12") {
    ProblemT12 pb = build_t12(cfg);
    pts = find_critical_points(pb, cfg.solver);
  } else {
    throw ConfigError("unknown system: " + cfg.system);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  SolveSummary s = summarize(pts, cfg.solver.dedup_tol);
  fs::path dir = resolve_out_dir(o.out);
  fs::path csv = dir / (cfg.name + "_solutions.csv");
  fs::path man = dir / (cfg.name + "_manifest.json");
  write_atomic(csv, solutions_csv(pts));
  json manifest{{"config", json::parse(config_to_json(cfg))},
                {"solutions_csv", csv.string()},
                {"count", s.total},
                {"has_trivial", s.has_trivial},
                {"nonzero", s.nonzero},
                {"nonzero_pairs", s.pairs},
                {"closed_under_negation", s.closed_under_negation},
                {"max_residual_inf", s.max_residual},
                {"best_action", s.best_action},
                {"runtime_ms", ms}};
  write_atomic(man, manifest.dump(2) + "\n");
  std::printf("found %d critical point(s): trivial=%s nonzero=%d pairs=%d max_residual=%.3g best_action=%.6g\n",
              s.total, s.has_trivial ? "yes" : "no", s.nonzero, s.pairs, s.max_residual,
              s.best_action);
  std::printf("solutions: %s\nmanifest:  %s\n", csv.string().c_str(), man.string().c_str());
  return 0;
}

int cmd_ricceri(const CommonOpts& o, double r, std::vector<double> mus, int samples) {
  Config cfg = load_config(o.config);
  apply_overrides(cfg, o);
  if (o.starts >= 1) cfg.estimator.starts = o.starts;
  if (samples >= 1) cfg.estimator.samples = samples;
  if (o.dump) {
    std::cout << config_to_json(cfg) << "\n";
    return 0;
  }
  if (!(r > 0)) throw ConfigError("r must be positive");
  if (cfg.system != "T11")
    throw ConfigError("critical-parameter estimates apply to system T11 only");
  ProblemT11 pb = build_t11(cfg);
  if (mus.empty()) mus.push_back(cfg.mu);
  json entries = json::array();
  for (double mu : mus) {
    if (!(mu > 0)) throw ConfigError("mu must be positive");
    RicceriBundle b = run_ricceri(pb, r, mu, cfg.estimator);
    std::printf("r=%.6g mu=%.6g: gamma<=%.9g eta<=%.9g mu*<=%.9g beta>=%.9g lambda in ]0, %.9g[%s\n",
                r, mu, b.gamma.value, b.eta.value, b.mu_star.value, b.beta.value,
                b.lambda_interval.hi, b.lambda_interval.valid ? "" : " (empty)");
    entries.push_back(bundle_json(b));
  }
  fs::path out = resolve_out_dir(o.out) / (cfg.name + "_ricceri.json");
  write_atomic(out, json{{"config", cfg.name}, {"entries", std::move(entries)}}.dump(2) + "\n");
  std::printf("report: %s\n", out.string().c_str());
  return 0;
}

int cmd_sweep(const CommonOpts& o, std::vector<double> rs, std::vector<double> mus) {
  Config cfg = load_config(o.config);
  apply_overrides(cfg, o);
  if (o.starts >= 1) cfg.estimator.starts = o.starts;
  if (o.dump) {
    std::cout << config_to_json(cfg) << "\n";
    return 0;
  }
  if (cfg.system != "T11")
    throw ConfigError("critical-parameter estimates apply to system T11 only");
  ProblemT11 pb = build_t11(cfg);
  if (rs.empty()) rs = {0.25, 0.5, 1.0, 2.0, 4.0};
  if (mus.empty()) mus.push_back(cfg.mu);
  std::ostringstream os;
  os << "r,mu,gamma_est,eta_est,mu_star_est,beta_est,lambda_lo,lambda_hi,interval_valid\n";
  for (double r : rs) {
    if (!(r > 0)) throw ConfigError("r must be positive");
    for (double mu : mus) {
      if (!(mu > 0)) throw ConfigError("mu must be positive");
      RicceriBundle b = run_ricceri(pb, r, mu, cfg.estimator);
      os << format17(r) << "," << format17(mu) << "," << format17(b.gamma.value) << ","
         << format17(b.eta.value) << "," << format17(b.mu_star.value) << ","
         << format17(b.beta.value) << "," << format17(b.lambda_interval.lo) << ","
         << format17(b.lambda_interval.hi) << "," << (b.lambda_interval.valid ? 1 : 0) << "\n";
    }
  }
  fs::path out = resolve_out_dir(o.out) / (cfg.name + "_sweep.csv");
  write_atomic(out, os.str());
  std::printf("sweep grid (%zu x %zu): %s\n", rs.size(), mus.size(), out.string().c_str());
  return 0;
}

int reproduce_example51(const CommonOpts& o) {
  Config cfg = builtin_config("example51");
  apply_overrides(cfg, o);
  ProblemT11 pb = build_t11(cfg);
  const double r = 1.0;

  SmallInstanceBundle ref = example51_oracle(pb.rho3, pb.rho4, r, 2.0);
  double mu_run = 1.1 * ref.mu_threshold;
  ref = example51_oracle(pb.rho3, pb.rho4, r, mu_run);

  EstimatorConfig ec = cfg.estimator;
  GammaEstimate g = estimate_gamma(pb, ec);
  BetaEstimate b = estimate_beta(pb, mu_run, r, ec);
  double lambda_run = b.value > 0 ? 0.5 * b.value : 0.5 * ref.beta_lower;

  std::printf("reference gamma %.9g, estimate %.9g (diff %.3g)\n", ref.gamma, g.value,
              std::abs(g.value - ref.gamma));
  std::printf("mu threshold %.9g -> run at mu=%.9g, lambda=%.9g (half of beta estimate %.9g)\n",
              ref.mu_threshold, mu_run, lambda_run, b.value);

  ProblemT11 inst = pb;
  inst.mu = mu_run;
  inst.lambda = lambda_run;
  inst.nu = 0.0;
  SolverConfig sc = cfg.solver;
  sc.even_symmetry = true;
  auto pts = find_critical_points(inst, sc);
  SolveSummary s = summarize(pts, sc.dedup_tol);
  std::printf("found %d critical point(s): trivial=%s nonzero=%d max_residual=%.3g\n", s.total,
              s.has_trivial ? "yes" : "no", s.nonzero, s.max_residual);

  bool gamma_ok = std::abs(g.value - ref.gamma) <= 1e-6;
  bool beta_ok = b.value >= ref.beta_lower - 1e-6;
  bool count_ok = s.has_trivial && s.total >= 3 && s.max_residual <= 1e-8;

  fs::path dir = resolve_out_dir(o.out);
  fs::path csv = dir / "example51_solutions.csv";
  write_atomic(csv, solutions_csv(pts));
  json rep{{"name", "example51"},
           {"r", r},
           {"reference",
            json{{"gamma", ref.gamma},
                 {"eta_lower", ref.eta_lower},
                 {"mu_star_upper", ref.mu_star_upper},
                 {"mu_threshold", ref.mu_threshold},
                 {"beta_lower", ref.beta_lower}}},
           {"estimates", json{{"gamma", g.value}, {"beta", b.value}}},
           {"run", json{{"mu", mu_run}, {"lambda", lambda_run}, {"nu", 0.0},
                        {"seed", cfg.solver.seed}}},
           {"solutions_csv", csv.string()},
           {"count", s.total},
           {"has_trivial", s.has_trivial},
           {"nonzero", s.nonzero},
           {"max_residual_inf", s.max_residual},
           {"gamma_matches_reference", gamma_ok},
           {"beta_above_reference", beta_ok},
           {"three_points_found", count_ok}};
  fs::path man = dir / "example51_reproduce.json";
  write_atomic(man, rep.dump(2) + "\n");
  std::printf("report: %s\n", man.string().c_str());
  return gamma_ok && beta_ok && count_ok ? 0 : 1;
}

int reproduce_example52(const CommonOpts& o) {
  Config cfg = builtin_config("example52");
  CommonOpts oo = o;
  oo.preset = "desk";
  apply_overrides(cfg, oo);
  ProblemT12 pb = build_t12(cfg);
  auto t0 = std::chrono::steady_clock::now();
  auto pts = find_critical_points(pb, cfg.solver);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  SolveSummary s = summarize(pts, cfg.solver.dedup_tol);
  bool action_neg = true;
  double zt = 10.0 * cfg.solver.dedup_tol;
  for (const auto& p : pts) {
    double m = 0;
    for (double v : to_flat(p.state)) m = std::max(m, std::abs(v));
    if (m > zt && !(p.action < 0)) action_neg = false;
  }
  bool ok = s.has_trivial && s.pairs >= 3 && s.closed_under_negation && s.max_residual <= 1e-8 &&
            action_neg;
  std::printf(
      "desk-size run (T=%d, N=%d, seed %llu): trivial=%s nonzero_pairs=%d closed=%s "
      "max_residual=%.3g negative_actions=%s (%lld ms)\n",
      cfg.T, cfg.N, static_cast<unsigned long long>(cfg.solver.seed), s.has_trivial ? "yes" : "no",
      s.pairs, s.closed_under_negation ? "yes" : "no", s.max_residual, action_neg ? "yes" : "no",
      static_cast<long long>(ms));

  fs::path dir = resolve_out_dir(o.out);
  fs::path csv = dir / "example52_solutions.csv";
  write_atomic(csv, solutions_csv(pts));
  json rep{{"name", "example52"},
           {"preset", "desk"},
           {"seed", cfg.solver.seed},
           {"solutions_csv", csv.string()},
           {"count", s.total},
           {"has_trivial", s.has_trivial},
           {"nonzero_pairs", s.pairs},
           {"closed_under_negation", s.closed_under_negation},
           {"max_residual_inf", s.max_residual},
           {"nonzero_actions_negative", action_neg},
           {"runtime_ms", ms},
           {"passed", ok}};
  fs::path man = dir / "example52_reproduce.json";
  write_atomic(man, rep.dump(2) + "\n");
  std::printf("report: %s\n", man.string().c_str());
  return ok ? 0 : 1;
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_config) {
  if (with_config)
    sub->add_option("config", o.config, "built-in name (example51, example52, remark11) or JSON path")
        ->required();
  sub->add_option("--out", o.out, "output directory (default: PHILAP_OUTDIR or .)");
  sub->add_option("--threads", o.threads, "worker thread cap (default: PHILAP_THREADS or 1)");
  sub->add_flag("--dump-config", o.dump, "print the effective JSON config and exit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Periodic solutions of weighted nonlinear difference systems: structural checks, "
      "multi-start critical-point search, and critical-parameter estimates."};
  app.require_subcommand(1);

  CommonOpts vo, so, ro, wo, po;
  double rr = kUnset;
  std::vector<double> rmus, wrs, wmus;
  int rsamples = -1;
  std::string which;

  auto* v = app.add_subcommand("verify", "run the structural check suites for a configuration");
  add_common(v, vo, true);

  auto* sl = app.add_subcommand("solve", "multi-start critical-point search with deflation");
  add_common(sl, so, true);
  sl->add_option("--mu", so.mu, "override the mu scalar");
  sl->add_option("--lambda", so.lambda, "override the lambda scalar");
  sl->add_option("--nu", so.nu, "override the nu scalar");
  sl->add_option("--starts", so.starts, "number of first-phase starts");
  sl->add_option("--start-radius", so.start_radius, "radius of the random start cloud");
  auto* slseed = sl->add_option("--seed", so.seed, "solver seed");
  sl->add_option("--preset", so.preset, "named preset (desk)");

  auto* rc = app.add_subcommand("ricceri", "estimate the critical-parameter quantities");
  add_common(rc, ro, true);
  rc->add_option("--r", rr, "level value r > 0")->required();
  rc->add_option("--mu", rmus, "mu value(s); default: the config's mu");
  rc->add_option("--starts", ro.starts, "estimator starts");
  rc->add_option("--samples", rsamples, "estimator samples");
  auto* rcseed = rc->add_option("--seed", ro.seed, "estimator seed");

  auto* sw = app.add_subcommand("sweep", "tabulate the estimates over an (r, mu) grid");
  add_common(sw, wo, true);
  sw->add_option("--r", wrs, "r grid values (default: 0.25 0.5 1 2 4)");
  sw->add_option("--mu", wmus, "mu grid values (default: the config's mu)");
  sw->add_option("--starts", wo.starts, "estimator starts");
  auto* swseed = sw->add_option("--seed", wo.seed, "estimator seed");

  auto* rp = app.add_subcommand("reproduce", "run a named demonstration end to end");
  rp->add_option("name", which, "example51 | example52")
      ->required()
      ->check(CLI::IsMember({"example51", "example52"}));
  add_common(rp, po, false);
  auto* rpseed = rp->add_option("--seed", po.seed, "solver seed");

  int rcode = 0;
  try {
    app.parse(argc, argv);
    so.seed_set = slseed->count() > 0;
    ro.seed_set = rcseed->count() > 0;
    wo.seed_set = swseed->count() > 0;
    po.seed_set = rpseed->count() > 0;
    if (v->parsed())
      rcode = cmd_verify(vo);
    else if (sl->parsed())
      rcode = cmd_solve(so);
    else if (rc->parsed())
      rcode = cmd_ricceri(ro, rr, rmus, rsamples);
    else if (sw->parsed())
      rcode = cmd_sweep(wo, wrs, wmus);
    else if (rp->parsed())
      rcode = which == "example51" ? reproduce_example51(po) : reproduce_example52(po);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rcode;
}
