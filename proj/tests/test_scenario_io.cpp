#include <doctest.h>

#include <fstream>

#include "brnav/scenario_io.hpp"

using namespace brnav;

namespace {

const char* kMinimal = R"(
[agents]
start = 3 0 1
goal = -3 0 1
beta = 0.05

[agents]
start = -3 0 1
goal = 3 0 1
)";

}  // namespace

TEST_CASE("parse: minimal scenario fills defaults") {
  const ScenarioConfig scenario = parse_scenario_text(kMinimal);
  REQUIRE(scenario.agents.size() == 2);
  CHECK(scenario.agents[0].start.isApprox(Vec3(3, 0, 1)));
  CHECK(scenario.agents[0].beta == 0.05);
  CHECK(scenario.agents[1].beta == 0.05);  // default
  CHECK(scenario.episode.timesteps == 80);
  CHECK(scenario.solver.max_iterations == 10);
  CHECK(scenario.prior.a_max == 1.0);
}

TEST_CASE("parse: missing agents section") {
  const char* text = "[reward]\ngoal_weight = 1\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(text),
                       doctest::Contains("missing field: agents"), ParseError);
}

TEST_CASE("parse: missing required agent field names the key") {
  const char* text = "[agents]\nstart = 0 0 0\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(text), doctest::Contains("goal"),
                       ParseError);
}

TEST_CASE("parse: unknown key and section carry line numbers") {
  const char* unknown_key = "[agents]\nstart = 0 0 1\ngoal = 1 0 1\nspeed = 3\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(unknown_key, "cfg"),
                       doctest::Contains("cfg:4: unknown key"), ParseError);
  const char* unknown_section = "[agents]\nstart = 0 0 1\ngoal = 1 0 1\n[limits]\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(unknown_section, "cfg"),
                       doctest::Contains("cfg:4: unknown section"), ParseError);
}

TEST_CASE("parse: duplicate key rejected") {
  const char* text = "[agents]\nstart = 0 0 1\nstart = 1 1 1\ngoal = 1 0 1\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(text), doctest::Contains("duplicate key"),
                       ParseError);
}

TEST_CASE("parse: malformed values carry the key name") {
  const char* text = "[agents]\nstart = 0 0 1\ngoal = 1 0 1\nbeta = fast\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(text), doctest::Contains("beta"),
                       ParseError);
  const char* short_vec = "[agents]\nstart = 0 0\ngoal = 1 0 1\n";
  CHECK_THROWS_WITH_AS(parse_scenario_text(short_vec), doctest::Contains("start"),
                       ParseError);
}

TEST_CASE("parse: invariant violations surface as ParseError") {
  const char* overlapping = R"(
[agents]
start = 0 0 1
goal = 1 0 1

[agents]
start = 0.1 0 1
goal = -1 0 1
)";
  CHECK_THROWS_WITH_AS(parse_scenario_text(overlapping),
                       doctest::Contains("safety_radius"), ParseError);
}

TEST_CASE("round-trip: parse(serialize(c)) is the identity on resolved configs") {
  ScenarioConfig scenario = position_swap_scenario(3, 6.0, 1.0, 0.07);
  scenario.obstacles.push_back(Obstacle{Vec3(0.25, -0.5, 1.0), Vec3(0.4, 0.3, 0.9)});
  scenario.solver.samples_per_response = 12345;
  scenario.episode.base_seed = 0xdeadbeefcafeull;
  scenario.episode.dt = 0.2;

  const std::string once = serialize_scenario(scenario);
  const ScenarioConfig reparsed = parse_scenario_text(once);
  const std::string twice = serialize_scenario(reparsed);
  CHECK(once == twice);
}

TEST_CASE("bundled swap6 scenario encodes the reference setup") {
  const ScenarioConfig scenario =
      parse_scenario(std::filesystem::path(SCENARIO_DIR) / "swap6.scenario");
  REQUIRE(scenario.agents.size() == 6);
  for (const AgentSpec& agent : scenario.agents) {
    CHECK((agent.start - agent.goal).norm() == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(agent.beta == 0.05);
  }
  CHECK(scenario.episode.timesteps == 80);
  CHECK(scenario.episode.runs == 50);
  CHECK(scenario.solver.samples_per_response == 500'000);
  CHECK(scenario.solver.max_iterations == 10);
}

TEST_CASE("parse: comments and blank lines are ignored") {
  const char* text = R"(
# a scenario
[agents]
start = 3 0 1   # right side
goal = -3 0 1

[agents]
start = -3 0 1
goal = 3 0 1

[episode]
T = 12
)";
  const ScenarioConfig scenario = parse_scenario_text(text);
  CHECK(scenario.episode.timesteps == 12);
}
