#ifndef BRNAV_SCENARIO_IO_HPP
#define BRNAV_SCENARIO_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "brnav/scenario.hpp"

namespace brnav {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text form: '#' comments, [section] headers, key = value lines. Sections
// [agents] and [obstacles] repeat, one block per entry; [reward], [prior],
// [solver], [episode] are optional and default-filled. Unknown sections or
// keys, duplicate keys, and invariant violations raise ParseError naming the
// offending key and line.
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin = "<string>");

ScenarioConfig parse_scenario(const std::filesystem::path& path);

// Canonical resolved dump; parse(serialize(c)) reproduces c exactly.
std::string serialize_scenario(const ScenarioConfig& scenario);

}  // namespace brnav

#endif  // BRNAV_SCENARIO_IO_HPP
