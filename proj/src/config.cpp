#include "philap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace philap {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

json terms_to_json(const std::vector<PotentialTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back(json{{"c", t.c}, {"p", t.p}});
  return a;
}

std::vector<PotentialTerm> terms_from_json(const json& a, const std::string& where) {
  if (!a.is_array()) throw ConfigError("field '" + where + "' must be an array of {c, p} terms");
  std::vector<PotentialTerm> out;
  for (const auto& e : a) {
    if (!e.is_object() || !e.contains("c") || !e.contains("p"))
      throw ConfigError("field '" + where + "' entries must be objects with keys c and p");
    out.push_back(PotentialTerm{e.at("c").get<double>(), e.at("p").get<double>()});
  }
  return out;
}

json power_terms_to_json(const std::vector<PowerTerm>& terms) {
  json a = json::array();
  for (const auto& t : terms) a.push_back(json{{"c", t.c}, {"p", t.p}});
  return a;
}

std::vector<PowerTerm> power_terms_from_json(const json& a, const std::string& where) {
  if (!a.is_array()) throw ConfigError("field '" + where + "' must be an array of {c, p} terms");
  std::vector<PowerTerm> out;
  for (const auto& e : a) {
    if (!e.is_object() || !e.contains("c") || !e.contains("p"))
      throw ConfigError("field '" + where + "' entries must be objects with keys c and p");
    out.push_back(PowerTerm{e.at("c").get<double>(), e.at("p").get<double>()});
  }
  return out;
}

json nl_to_json(const NonlinearitySetting& s) {
  json j{{"kind", s.kind}};
  j["l"] = s.l;
  if (!s.terms1.empty()) j["terms1"] = power_terms_to_json(s.terms1);
  if (!s.terms2.empty()) j["terms2"] = power_terms_to_json(s.terms2);
  return j;
}

NonlinearitySetting nl_from_json(const json& j, const std::string& where) {
  NonlinearitySetting s;
  if (!j.is_object()) throw ConfigError("field '" + where + "' must be an object");
  if (j.contains("kind")) s.kind = j.at("kind").get<std::string>();
  try {
    NonlinearitySpec::kind_from_name(s.kind);
  } catch (const std::exception&) {
    throw ConfigError("field '" + where + ".kind' names an unknown nonlinearity: " + s.kind);
  }
  if (j.contains("l")) s.l = j.at("l").get<double>();
  if (j.contains("terms1")) s.terms1 = power_terms_from_json(j.at("terms1"), where + ".terms1");
  if (j.contains("terms2")) s.terms2 = power_terms_from_json(j.at("terms2"), where + ".terms2");
  return s;
}

std::vector<double> doubles_from_json(const json& a, const std::string& where) {
  if (!a.is_array()) throw ConfigError("field '" + where + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : a) {
    if (!e.is_number()) throw ConfigError("field '" + where + "' must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

std::string config_to_json(const Config& cfg) {
  json j;
  j["name"] = cfg.name;
  j["system"] = cfg.system;
  j["T"] = cfg.T;
  j["N"] = cfg.N;
  j["weights"] = json{{"w1", cfg.w1}, {"w2", cfg.w2}, {"w3", cfg.w3}, {"w4", cfg.w4}};
  j["potentials"] = json{{"phi1", terms_to_json(cfg.phi1)},
                         {"phi2", terms_to_json(cfg.phi2)},
                         {"phi3", terms_to_json(cfg.phi3)},
                         {"phi4", terms_to_json(cfg.phi4)}};
  j["scalars"] = json{{"mu", cfg.mu}, {"lambda", cfg.lambda}, {"nu", cfg.nu}};
  j["exponents"] = json{{"theta", cfg.theta}, {"l", cfg.l}, {"q", cfg.q}, {"p", cfg.p}};
  j["nonlinearity"] =
      json{{"F", nl_to_json(cfg.F)}, {"G", nl_to_json(cfg.G)}, {"H", nl_to_json(cfg.H)}};
  const SolverConfig& sv = cfg.solver;
  j["solver"] = json{{"starts", sv.starts},
                     {"start_radius", sv.start_radius},
                     {"seed", sv.seed},
                     {"tol_grad", sv.tol_grad},
                     {"max_iter", sv.max_iter},
                     {"dedup_tol", sv.dedup_tol},
                     {"even_symmetry", sv.even_symmetry},
                     {"clark_seed_count", sv.clark_seed_count},
                     {"clark_delta", sv.clark_delta},
                     {"deflate", sv.deflate},
                     {"deflation_exponent", sv.deflation_exponent},
                     {"deflation_shift", sv.deflation_shift},
                     {"deflation_rounds", sv.deflation_rounds},
                     {"deflation_starts", sv.deflation_starts},
                     {"threads", sv.threads}};
  const EstimatorConfig& es = cfg.estimator;
  j["estimator"] = json{{"starts", es.starts},
                        {"samples", es.samples},
                        {"seed", es.seed},
                        {"start_radius", es.start_radius},
                        {"max_iter", es.max_iter},
                        {"tol_grad", es.tol_grad},
                        {"penalty_stages", es.penalty_stages},
                        {"penalty_init", es.penalty_init},
                        {"refine_top", es.refine_top},
                        {"threads", es.threads}};
  const CheckSettings& ck = cfg.checks;
  json jck{{"samples", ck.samples},
           {"seed", ck.seed},
           {"ratio_threshold", ck.ratio_threshold},
           {"radii", ck.radii},
           {"ball_radius", ck.ball_radius},
           {"s", ck.s},
           {"alpha1", ck.alpha1},
           {"alpha2", ck.alpha2},
           {"beta1", ck.beta1},
           {"beta2", ck.beta2},
           {"M1", ck.M1},
           {"M2", ck.M2},
           {"delta", ck.delta}};
  if (!ck.h1.empty()) jck["h1"] = ck.h1;
  if (!ck.h2.empty()) jck["h2"] = ck.h2;
  if (!ck.lt.empty()) jck["lt"] = ck.lt;
  j["checks"] = jck;
  return j.dump(2);
}

Config config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("the configuration document must be a JSON object");

  Config cfg;
  try {
    cfg.name = field_or<std::string>(j, "name", "unnamed");
    if (!j.contains("system")) throw ConfigError("missing field 'system' (\"T11\" or \"T12\")");
    cfg.system = j.at("system").get<std::string>();
    if (cfg.system != "T11" && cfg.system != "T12")
      throw ConfigError("field 'system' must be \"T11\" or \"T12\", got \"" + cfg.system + "\"");
    if (!j.contains("T") || !j.contains("N")) throw ConfigError("missing field 'T' or 'N'");
    cfg.T = j.at("T").get<int>();
    cfg.N = j.at("N").get<int>();

    if (!j.contains("weights")) throw ConfigError("missing field 'weights'");
    const json& w = j.at("weights");
    cfg.w1 = doubles_from_json(w.value("w1", json::array()), "weights.w1");
    cfg.w2 = doubles_from_json(w.value("w2", json::array()), "weights.w2");
    cfg.w3 = doubles_from_json(w.value("w3", json::array()), "weights.w3");
    cfg.w4 = doubles_from_json(w.value("w4", json::array()), "weights.w4");
    for (const auto* wp : {&cfg.w1, &cfg.w2, &cfg.w3, &cfg.w4})
      if (static_cast<int>(wp->size()) != cfg.T)
        throw ConfigError("each weight array must have exactly T entries");

    if (!j.contains("potentials")) throw ConfigError("missing field 'potentials'");
    const json& ph = j.at("potentials");
    cfg.phi1 = terms_from_json(ph.value("phi1", json::array()), "potentials.phi1");
    cfg.phi2 = terms_from_json(ph.value("phi2", json::array()), "potentials.phi2");
    cfg.phi3 = terms_from_json(ph.value("phi3", json::array()), "potentials.phi3");
    cfg.phi4 = terms_from_json(ph.value("phi4", json::array()), "potentials.phi4");

    if (j.contains("scalars")) {
      const json& s = j.at("scalars");
      cfg.mu = field_or<double>(s, "mu", 1.0);
      cfg.lambda = field_or<double>(s, "lambda", 0.0);
      cfg.nu = field_or<double>(s, "nu", 0.0);
    }
    if (j.contains("exponents")) {
      const json& e = j.at("exponents");
      cfg.theta = field_or<double>(e, "theta", 2.0);
      cfg.l = field_or<double>(e, "l", 2.0);
      cfg.q = field_or<double>(e, "q", 2.0);
      cfg.p = field_or<double>(e, "p", 2.0);
    }
    if (j.contains("nonlinearity")) {
      const json& nl = j.at("nonlinearity");
      if (nl.contains("F")) cfg.F = nl_from_json(nl.at("F"), "nonlinearity.F");
      if (nl.contains("G")) cfg.G = nl_from_json(nl.at("G"), "nonlinearity.G");
      if (nl.contains("H")) cfg.H = nl_from_json(nl.at("H"), "nonlinearity.H");
    }
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      SolverConfig& sv = cfg.solver;
      sv.starts = field_or<int>(s, "starts", sv.starts);
      sv.start_radius = field_or<double>(s, "start_radius", sv.start_radius);
      sv.seed = field_or<std::uint64_t>(s, "seed", sv.seed);
      sv.tol_grad = field_or<double>(s, "tol_grad", sv.tol_grad);
      sv.max_iter = field_or<int>(s, "max_iter", sv.max_iter);
      sv.dedup_tol = field_or<double>(s, "dedup_tol", sv.dedup_tol);
      sv.even_symmetry = field_or<bool>(s, "even_symmetry", sv.even_symmetry);
      sv.clark_seed_count = field_or<int>(s, "clark_seed_count", sv.clark_seed_count);
      sv.clark_delta = field_or<double>(s, "clark_delta", sv.clark_delta);
      sv.deflate = field_or<bool>(s, "deflate", sv.deflate);
      sv.deflation_exponent = field_or<double>(s, "deflation_exponent", sv.deflation_exponent);
      sv.deflation_shift = field_or<double>(s, "deflation_shift", sv.deflation_shift);
      sv.deflation_rounds = field_or<int>(s, "deflation_rounds", sv.deflation_rounds);
      sv.deflation_starts = field_or<int>(s, "deflation_starts", sv.deflation_starts);
      sv.threads = field_or<int>(s, "threads", sv.threads);
    }
    if (j.contains("estimator")) {
      const json& s = j.at("estimator");
      EstimatorConfig& es = cfg.estimator;
      es.starts = field_or<int>(s, "starts", es.starts);
      es.samples = field_or<int>(s, "samples", es.samples);
      es.seed = field_or<std::uint64_t>(s, "seed", es.seed);
      es.start_radius = field_or<double>(s, "start_radius", es.start_radius);
      es.max_iter = field_or<int>(s, "max_iter", es.max_iter);
      es.tol_grad = field_or<double>(s, "tol_grad", es.tol_grad);
      es.penalty_stages = field_or<int>(s, "penalty_stages", es.penalty_stages);
      es.penalty_init = field_or<double>(s, "penalty_init", es.penalty_init);
      es.refine_top = field_or<int>(s, "refine_top", es.refine_top);
      es.threads = field_or<int>(s, "threads", es.threads);
    }
    if (j.contains("checks")) {
      const json& s = j.at("checks");
      CheckSettings& ck = cfg.checks;
      ck.samples = field_or<int>(s, "samples", ck.samples);
      ck.seed = field_or<std::uint64_t>(s, "seed", ck.seed);
      ck.ratio_threshold = field_or<double>(s, "ratio_threshold", ck.ratio_threshold);
      if (s.contains("radii")) ck.radii = doubles_from_json(s.at("radii"), "checks.radii");
      ck.ball_radius = field_or<double>(s, "ball_radius", ck.ball_radius);
      ck.s = field_or<double>(s, "s", ck.s);
      if (s.contains("h1")) ck.h1 = doubles_from_json(s.at("h1"), "checks.h1");
      if (s.contains("h2")) ck.h2 = doubles_from_json(s.at("h2"), "checks.h2");
      if (s.contains("lt")) ck.lt = doubles_from_json(s.at("lt"), "checks.lt");
      ck.alpha1 = field_or<double>(s, "alpha1", ck.alpha1);
      ck.alpha2 = field_or<double>(s, "alpha2", ck.alpha2);
      ck.beta1 = field_or<double>(s, "beta1", ck.beta1);
      ck.beta2 = field_or<double>(s, "beta2", ck.beta2);
      ck.M1 = field_or<double>(s, "M1", ck.M1);
      ck.M2 = field_or<double>(s, "M2", ck.M2);
      ck.delta = field_or<double>(s, "delta", ck.delta);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration value: ") + e.what());
  }
  return cfg;
}

std::vector<std::string> builtin_names() { return {"example51", "example52", "remark11"}; }

bool is_builtin(const std::string& name) {
  for (const auto& n : builtin_names())
    if (n == name) return true;
  return false;
}

Config builtin_config(const std::string& name) {
  if (name == "example51") {
    Config c;
    c.name = "example51";
    c.system = "T11";
    c.T = 2;
    c.N = 1;
    c.w1 = c.w2 = c.w3 = c.w4 = {1.0, 1.0};
    c.phi1 = {{1.0, 2.0}, {1.0, 7.0 / 3.0}};
    c.phi2 = {{1.0, 2.0}, {1.0, 5.0 / 2.0}};
    c.phi3 = {{2.0, 2.0}};
    c.phi4 = {{2.0, 2.0}};
    c.mu = 1.0;
    c.lambda = 1.0;
    c.nu = 0.0;
    c.theta = 2.0;
    c.l = 5.0 / 2.0;
    c.F.kind = "example51_F";
    c.G.kind = "example51_G";
    c.H.kind = "example51_H";
    c.checks.ratio_threshold = 5.0;  // cubic-over-(5/2) growth clears ~sqrt(radius)
    return c;
  }
  if (name == "example52") {
    Config c;
    c.name = "example52";
    c.system = "T12";
    c.T = 4;
    c.N = 6;
    c.w1.resize(4);
    c.w2.resize(4);
    c.w3.resize(4);
    c.w4.resize(4);
    for (int t = 1; t <= 4; ++t) {
      double a = kPi * t / 4.0;
      c.w1[t - 1] = std::sin(a) * std::sin(a) + 1.0;
      c.w2[t - 1] = std::cos(a) * std::cos(a) + 1.0;
      c.w3[t - 1] = std::abs(std::sin(a)) + 1.0;
      c.w4[t - 1] = std::abs(std::cos(a)) + 1.0;
    }
    c.phi1 = {{1.0, 5.0}};
    c.phi2 = {{1.0, 3.0}};
    c.phi3 = {{1.0, 5.0}};
    c.phi4 = {{1.0, 3.0}};
    c.q = 5.0;
    c.p = 3.0;
    c.F.kind = "example52_F";
    c.checks.h1 = c.w3;  // the sublinear bound holds with equality
    c.checks.h2 = c.w2;
    c.checks.lt = {0.0, 0.0, 0.0, 0.0};
    c.checks.alpha1 = 1.5;
    c.checks.alpha2 = 2.0;
    c.checks.beta1 = 2.0;
    c.checks.beta2 = 2.5;
    c.checks.M1 = 1.0;
    c.checks.M2 = 1.0;
    c.checks.delta = 0.1;
    c.solver.even_symmetry = true;
    return c;
  }
  if (name == "remark11") {
    Config c;
    c.name = "remark11";
    c.system = "T11";
    c.T = 4;
    c.N = 2;
    c.w1 = {1.0, 2.0, 1.0, 2.0};
    c.w2 = {1.5, 1.0, 1.5, 1.0};
    c.w3 = {1.0, 1.0, 2.0, 1.0};
    c.w4 = {2.0, 1.0, 1.0, 1.0};
    c.theta = 2.0;
    c.l = 4.0;
    c.phi1 = {{1.0, 2.0}, {1.0, 3.0}};
    c.phi2 = {{1.0, 2.0}, {1.0, 5.0 / 2.0}};
    c.phi3 = {{1.0, 2.0}, {1.0, 2.0}};
    c.phi4 = {{1.0, 2.0}, {1.0, 4.0}};
    c.mu = 1.0;
    c.lambda = 1.0;
    c.nu = 0.1;
    c.F.kind = "remark11_F";
    c.F.l = 4.0;
    c.G.kind = "remark11_G";
    c.G.l = 4.0;
    c.H.kind = "remark11_H";
    c.checks.ratio_threshold = 5.0;  // logarithmic divergence clears a small bar
    c.checks.s = 6.0;
    return c;
  }
  throw ConfigError("unknown built-in configuration: " + name);
}

Config load_config(const std::string& name_or_path) {
  if (is_builtin(name_or_path)) return builtin_config(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("cannot open configuration file: " + name_or_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

void apply_desk_preset(Config& cfg) {
  cfg.N = 1;
  cfg.solver.seed = 42;
  cfg.solver.even_symmetry = true;
  cfg.solver.starts = 24;
  cfg.solver.clark_seed_count = 8;
  cfg.solver.deflation_rounds = 4;
}

NonlinearitySpec build_nonlinearity(const NonlinearitySetting& s) {
  NonlinearityKind k = NonlinearitySpec::kind_from_name(s.kind);
  switch (k) {
    case NonlinearityKind::remark11_F:
      return NonlinearitySpec::remark11F(s.l);
    case NonlinearityKind::remark11_G:
      return NonlinearitySpec::remark11G(s.l);
    case NonlinearityKind::remark11_H:
      return NonlinearitySpec::remark11H();
    case NonlinearityKind::example51_F:
      return NonlinearitySpec::example51F();
    case NonlinearityKind::example51_G:
      return NonlinearitySpec::example51G();
    case NonlinearityKind::example51_H:
      return NonlinearitySpec::example51H();
    case NonlinearityKind::example52_F:
      return NonlinearitySpec::example52F();
    case NonlinearityKind::power_sum:
      return NonlinearitySpec::powerSum(s.terms1, s.terms2);
  }
  throw std::invalid_argument("unhandled nonlinearity kind");
}

ProblemT11 build_t11(const Config& cfg) {
  if (cfg.system != "T11")
    throw ConfigError("configuration '" + cfg.name + "' describes system " + cfg.system +
                      ", not T11");
  ProblemT11 pb{cfg.T,
                cfg.N,
                WeightSequence(cfg.w1),
                WeightSequence(cfg.w2),
                WeightSequence(cfg.w3),
                WeightSequence(cfg.w4),
                PotentialSpec(cfg.phi1),
                PotentialSpec(cfg.phi2),
                PotentialSpec(cfg.phi3),
                PotentialSpec(cfg.phi4),
                build_nonlinearity(cfg.F),
                build_nonlinearity(cfg.G),
                build_nonlinearity(cfg.H),
                cfg.mu,
                cfg.lambda,
                cfg.nu,
                cfg.theta,
                cfg.l};
  pb.validate();
  return pb;
}

ProblemT12 build_t12(const Config& cfg) {
  if (cfg.system != "T12")
    throw ConfigError("configuration '" + cfg.name + "' describes system " + cfg.system +
                      ", not T12");
  ProblemT12 pb{cfg.T,
                cfg.N,
                WeightSequence(cfg.w1),
                WeightSequence(cfg.w2),
                WeightSequence(cfg.w3),
                WeightSequence(cfg.w4),
                PotentialSpec(cfg.phi1),
                PotentialSpec(cfg.phi2),
                PotentialSpec(cfg.phi3),
                PotentialSpec(cfg.phi4),
                build_nonlinearity(cfg.F),
                cfg.q,
                cfg.p};
  pb.validate();
  return pb;
}

}  // namespace philap
