#include <map>

#include "doctest.h"

#include "cartan/report.hpp"

using namespace cartan;

namespace {

RunConfig config(std::vector<std::string> command) {
  RunConfig c;
  c.command = std::move(command);
  return c;
}

}  // namespace

TEST_CASE("validate rejects unknown commands and bad tolerances") {
  CHECK_THROWS_AS(validate(config({"nope"})), UsageError);
  RunConfig c = config({"ek", "classify"});
  CHECK_THROWS_AS(validate(c), UsageError);  // missing levels
  c.c1 = 1.0;
  c.c2 = 0.0;
  validate(c);
  c.tol.quad = 0.0;
  CHECK_THROWS_AS(validate(c), UsageError);
  c = config({"leaf"});
  CHECK_THROWS_AS(validate(c), UsageError);
  c.point = {0, 1, 0, 1};
  c.flow_section = "e7";
  CHECK_THROWS_AS(validate(c), UsageError);
}

TEST_CASE("reports carry provenance and are deterministic") {
  RunConfig c = config({"verify"});
  c.seed = 123;
  const RunResult a = run(c), b = run(c);
  CHECK(a.exit_code == 0);
  CHECK(a.report["provenance"]["seed"] == 123);
  CHECK(a.report["provenance"]["tool"] == "cartan");
  CHECK(render(a) == render(b));
  c.params = {{"curvature_scale", 1.1}};
  CHECK(run(c).exit_code == 1);
  c.model = "missing";
  CHECK_THROWS_AS(run(c), UsageError);
}

TEST_CASE("config json fills fields and rejects unknown keys") {
  RunConfig c;
  apply_config_json(c, {{"command", "ek su21"}, {"a", 1.0}, {"b", 0.5}, {"quad_tol", 1e-8}, {"seed", 4}});
  CHECK(c.command == std::vector<std::string>{"ek", "su21"});
  CHECK(*c.a == 1.0);
  CHECK(c.tol.quad == 1e-8);
  CHECK(c.seed == 4u);
  CHECK_THROWS_AS(apply_config_json(c, {{"colour", "red"}}), UsageError);
  CHECK_THROWS_AS(apply_config_json(c, {{"quad_tol", -1.0}}), UsageError);
  CHECK_THROWS_AS(apply_config_json(c, {{"a", "one"}}), UsageError);
}

TEST_CASE("environment overrides tolerances") {
  std::map<std::string, std::string> env = {{"CARTAN_QUAD_TOL", "1e-7"}, {"CARTAN_DENOMINATOR_BOUND", "1000"}};
  auto lookup = [&](const char* name) -> const char* {
    const auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  RunConfig c;
  apply_environment(c, lookup);
  CHECK(c.tol.quad == 1e-7);
  CHECK(c.tol.denominator_bound == 1000);
  CHECK(c.tol.rank == 1e-9);
  env["CARTAN_TOL"] = "abc";
  CHECK_THROWS_AS(apply_environment(c, lookup), UsageError);
}

TEST_CASE("table command renders text by default") {
  const RunResult r = run(config({"ek", "table1"}));
  CHECK(r.format == "text");
  CHECK(render(r).rfind("Conditions", 0) == 0);
  CHECK(r.report["rows"].size() == 9);
}
