#include <string>
#include <vector>

#include "doctest.h"
#include "philap/config.hpp"
#include "philap/verify.hpp"

using namespace philap;

TEST_CASE("built-in instances exist and build cleanly") {
  auto names = builtin_names();
  REQUIRE(names.size() == 3);
  for (const auto& n : {"example51", "example52", "remark11"}) {
    CHECK(is_builtin(n));
    Config cfg = builtin_config(n);
    CHECK(cfg.name == n);
    if (cfg.system == "T11")
      CHECK_NOTHROW(build_t11(cfg));
    else
      CHECK_NOTHROW(build_t12(cfg));
  }
  CHECK(!is_builtin("example53"));
  CHECK_THROWS_AS(builtin_config("example53"), ConfigError);
}

TEST_CASE("JSON round trip is bit-exact") {
  for (const auto& n : {"example51", "example52", "remark11"}) {
    Config cfg = builtin_config(n);
    std::string a = config_to_json(cfg);
    Config back = config_from_json(a);
    std::string b = config_to_json(back);
    CHECK(a == b);
  }
}

TEST_CASE("malformed documents are rejected with a usage error") {
  CHECK_THROWS_AS(config_from_json("not json at all"), ConfigError);
  CHECK_THROWS_AS(config_from_json("{}"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"system": "T13", "T": 2, "N": 1})"), ConfigError);

  Config cfg = builtin_config("example51");
  std::string good = config_to_json(cfg);
  // wrong weight count is a document-shape error
  std::string bad = good;
  auto pos = bad.find("\"w1\"");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 4, "\"wx\"");
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
}

TEST_CASE("unknown nonlinearity kinds are usage errors") {
  Config cfg = builtin_config("example51");
  std::string text = config_to_json(cfg);
  auto pos = text.find("example51_F");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "no_such_fun");
  CHECK_THROWS_AS(config_from_json(text), ConfigError);
}

TEST_CASE("structural violations surface when the problem is built") {
  Config zero_weight = builtin_config("example51");
  zero_weight.w3[0] = 0.0;
  CHECK_THROWS_AS(build_t11(zero_weight), std::invalid_argument);
  try {
    build_t11(zero_weight);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);  // names index 1
  }

  Config neg_coeff = builtin_config("example52");
  neg_coeff.phi1[0].c = -1.0;
  CHECK_THROWS_AS(build_t12(neg_coeff), std::invalid_argument);
  try {
    build_t12(neg_coeff);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("term") != std::string::npos);
  }
}

TEST_CASE("verification folds structural throws into a failed report") {
  Config cfg = builtin_config("example51");
  cfg.phi2[0].c = -2.0;
  VerifyReport rep = run_verification(cfg);
  CHECK(!rep.all_passed);
  REQUIRE(rep.checks.size() == 1);
  CHECK(rep.checks[0].name == "structure");
  CHECK(!rep.checks[0].passed);
  CHECK(rep.checks[0].note.find("term") != std::string::npos);
}

TEST_CASE("desk preset narrows the instance and pins the demonstration seed") {
  Config cfg = builtin_config("example52");
  apply_desk_preset(cfg);
  CHECK(cfg.N == 1);
  CHECK(cfg.T == 4);
  CHECK(cfg.solver.seed == 42);
  CHECK(cfg.solver.even_symmetry);
  CHECK(cfg.solver.clark_seed_count > 0);
}

TEST_CASE("load_config resolves built-ins first, then paths") {
  Config cfg = load_config("example52");
  CHECK(cfg.name == "example52");
  CHECK_THROWS_AS(load_config("/no/such/file.json"), ConfigError);
}

TEST_CASE("scalar overrides survive the round trip") {
  Config cfg = builtin_config("example51");
  cfg.mu = 1.5640625;
  cfg.lambda = 0.0625;
  cfg.solver.seed = 4242;
  cfg.estimator.samples = 1234;
  Config back = config_from_json(config_to_json(cfg));
  CHECK(back.mu == 1.5640625);
  CHECK(back.lambda == 0.0625);
  CHECK(back.solver.seed == 4242);
  CHECK(back.estimator.samples == 1234);
}
