#include "brnav/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "brnav/numeric.hpp"

namespace brnav {

namespace {

struct Line {
  int number;
  std::string key;
  std::string value;
};

struct Block {
  std::string section;
  int line;  // of the section header
  std::vector<Line> entries;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + message);
}

std::vector<Block> lex(const std::string& text, const std::string& origin) {
  std::vector<Block> blocks;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, number, "unterminated section header");
      blocks.push_back(Block{trim(line.substr(1, line.size() - 2)), number, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, number, "expected key = value");
    if (blocks.empty()) fail(origin, number, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, number, "empty key");
    if (value.empty()) fail(origin, number, "empty value for key: " + key);
    blocks.back().entries.push_back(Line{number, key, value});
  }
  return blocks;
}

// Typed readers over one block; tracks consumption so leftovers are errors.
class Fields {
 public:
  Fields(const Block& block, const std::string& origin)
      : block_(block), origin_(origin), used_(block.entries.size(), false) {}

  const Line* find(const std::string& key) {
    const Line* found = nullptr;
    for (std::size_t i = 0; i < block_.entries.size(); ++i) {
      if (block_.entries[i].key != key) continue;
      if (found) fail(origin_, block_.entries[i].number, "duplicate key: " + key);
      found = &block_.entries[i];
      used_[i] = true;
    }
    return found;
  }

  const Line& require(const std::string& key) {
    const Line* found = find(key);
    if (!found) {
      fail(origin_, block_.line,
           "missing field: " + key + " in [" + block_.section + "]");
    }
    return *found;
  }

  double number(const Line& line) {
    double value = 0.0;
    const char* begin = line.value.data();
    const char* end = begin + line.value.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
      fail(origin_, line.number, "expected a number for key: " + line.key);
    }
    return value;
  }

  long long integer(const Line& line) {
    long long value = 0;
    const char* begin = line.value.data();
    const char* end = begin + line.value.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
      fail(origin_, line.number, "expected an integer for key: " + line.key);
    }
    return value;
  }

  std::uint64_t unsigned64(const Line& line) {
    std::uint64_t value = 0;
    const char* begin = line.value.data();
    const char* end = begin + line.value.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
      fail(origin_, line.number, "expected an unsigned integer for key: " + line.key);
    }
    return value;
  }

  bool boolean(const Line& line) {
    if (line.value == "true" || line.value == "1") return true;
    if (line.value == "false" || line.value == "0") return false;
    fail(origin_, line.number, "expected true/false for key: " + line.key);
  }

  Vec3 vec3(const Line& line) {
    std::istringstream in(line.value);
    double x, y, z;
    std::string rest;
    if (!(in >> x >> y >> z) || (in >> rest)) {
      fail(origin_, line.number, "expected three numbers for key: " + line.key);
    }
    return Vec3(x, y, z);
  }

  void finish() {
    for (std::size_t i = 0; i < block_.entries.size(); ++i) {
      if (!used_[i]) {
        fail(origin_, block_.entries[i].number,
             "unknown key in [" + block_.section + "]: " + block_.entries[i].key);
      }
    }
  }

 private:
  const Block& block_;
  const std::string& origin_;
  std::vector<bool> used_;
};

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin) {
  const std::vector<Block> blocks = lex(text, origin);
  ScenarioConfig scenario;
  bool saw_agents = false;
  std::map<std::string, int> seen;  // singleton sections

  for (const Block& block : blocks) {
    Fields fields(block, origin);
    if (block.section == "agents") {
      saw_agents = true;
      AgentSpec agent;
      agent.start = fields.vec3(fields.require("start"));
      agent.goal = fields.vec3(fields.require("goal"));
      if (const Line* line = fields.find("beta")) agent.beta = fields.number(*line);
      scenario.agents.push_back(agent);
    } else if (block.section == "obstacles") {
      Obstacle obstacle;
      obstacle.center = fields.vec3(fields.require("center"));
      obstacle.half_extents = fields.vec3(fields.require("half_extents"));
      scenario.obstacles.push_back(obstacle);
    } else if (block.section == "reward" || block.section == "prior" ||
               block.section == "solver" || block.section == "episode") {
      if (++seen[block.section] > 1) {
        fail(origin, block.line, "repeated section: [" + block.section + "]");
      }
      if (block.section == "reward") {
        RewardParams& r = scenario.reward;
        if (const Line* l = fields.find("goal_weight")) r.goal_weight = fields.number(*l);
        if (const Line* l = fields.find("collision_penalty")) r.collision_penalty = fields.number(*l);
        if (const Line* l = fields.find("obstacle_penalty")) r.obstacle_penalty = fields.number(*l);
        if (const Line* l = fields.find("safety_radius")) r.safety_radius = fields.number(*l);
      } else if (block.section == "prior") {
        UniformPrior& p = scenario.prior;
        if (const Line* l = fields.find("a_min")) p.a_min = fields.number(*l);
        if (const Line* l = fields.find("a_max")) p.a_max = fields.number(*l);
        if (const Line* l = fields.find("horizon")) p.horizon = static_cast<int>(fields.integer(*l));
      } else if (block.section == "solver") {
        SolverConfig& s = scenario.solver;
        if (const Line* l = fields.find("max_iterations")) s.max_iterations = static_cast<int>(fields.integer(*l));
        if (const Line* l = fields.find("convergence_tolerance")) s.convergence_tolerance = fields.number(*l);
        if (const Line* l = fields.find("samples_per_response")) s.samples_per_response = static_cast<int>(fields.integer(*l));
        if (const Line* l = fields.find("deterministic")) s.deterministic = fields.boolean(*l);
      } else {
        EpisodeParams& e = scenario.episode;
        if (const Line* l = fields.find("T")) e.timesteps = static_cast<int>(fields.integer(*l));
        if (const Line* l = fields.find("dt")) e.dt = fields.number(*l);
        if (const Line* l = fields.find("runs")) e.runs = static_cast<int>(fields.integer(*l));
        if (const Line* l = fields.find("base_seed")) e.base_seed = fields.unsigned64(*l);
      }
    } else {
      fail(origin, block.line, "unknown section: [" + block.section + "]");
    }
    fields.finish();
  }

  if (!saw_agents) {
    throw ParseError(origin + ": missing field: agents");
  }
  try {
    validate(scenario);
  } catch (const std::invalid_argument& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return scenario;
}

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path.string());
}

namespace {

std::string vec_text(const Vec3& v) {
  return format_exact(v.x()) + " " + format_exact(v.y()) + " " + format_exact(v.z());
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& scenario) {
  std::ostringstream out;
  for (const AgentSpec& agent : scenario.agents) {
    out << "[agents]\n";
    out << "start = " << vec_text(agent.start) << "\n";
    out << "goal = " << vec_text(agent.goal) << "\n";
    out << "beta = " << format_exact(agent.beta) << "\n\n";
  }
  for (const Obstacle& obstacle : scenario.obstacles) {
    out << "[obstacles]\n";
    out << "center = " << vec_text(obstacle.center) << "\n";
    out << "half_extents = " << vec_text(obstacle.half_extents) << "\n\n";
  }
  out << "[reward]\n";
  out << "goal_weight = " << format_exact(scenario.reward.goal_weight) << "\n";
  out << "collision_penalty = " << format_exact(scenario.reward.collision_penalty) << "\n";
  out << "obstacle_penalty = " << format_exact(scenario.reward.obstacle_penalty) << "\n";
  out << "safety_radius = " << format_exact(scenario.reward.safety_radius) << "\n\n";
  out << "[prior]\n";
  out << "a_min = " << format_exact(scenario.prior.a_min) << "\n";
  out << "a_max = " << format_exact(scenario.prior.a_max) << "\n";
  out << "horizon = " << scenario.prior.horizon << "\n\n";
  out << "[solver]\n";
  out << "max_iterations = " << scenario.solver.max_iterations << "\n";
  out << "convergence_tolerance = " << format_exact(scenario.solver.convergence_tolerance) << "\n";
  out << "samples_per_response = " << scenario.solver.samples_per_response << "\n";
  out << "deterministic = " << (scenario.solver.deterministic ? "true" : "false") << "\n\n";
  out << "[episode]\n";
  out << "T = " << scenario.episode.timesteps << "\n";
  out << "dt = " << format_exact(scenario.episode.dt) << "\n";
  out << "runs = " << scenario.episode.runs << "\n";
  out << "base_seed = " << scenario.episode.base_seed << "\n";
  return out.str();
}

}  // namespace brnav
