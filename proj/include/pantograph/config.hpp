#pragma once

// Scenario documents: a single JSON object with unit-suffixed keys.
// Unknown keys are rejected, so a wrong unit suffix (`l1_mm`) fails before
// anything runs. Gram-force and millimetre inputs are converted here.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pantograph/contact.hpp"
#include "pantograph/design.hpp"
#include "pantograph/linkage.hpp"
#include "pantograph/statics.hpp"

namespace pantograph {

struct ScenarioConfig {
  PantographConfig pantograph;
  SpringModel spring;
  LossModel loss;

  std::vector<double> sweep_heights;  // m
  Direction direction = Direction::extending;

  std::optional<ContactScenario> contact;
  std::optional<SpringProbe> spring_probe;
  std::optional<DesignSpec> design;

  std::uint64_t seed = 42;
  std::optional<std::string> output_dir;

  /// Ideal endpoint force for the spring's nominal pull (tension, or preload for a
  /// linear spring).
  [[nodiscard]] double nominal_force() const;
};

/// Built-in defaults: 100-400 mm sweep in 25 mm steps, no contact or design section.
ScenarioConfig default_scenario();

/// Parses a scenario document. `source` names the document in diagnostics.
/// Throws ConfigError carrying line (for syntax) or key path information.
ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<config>");

ScenarioConfig load_scenario(const std::string& path);

/// DesignSpec in the same key layout the `design` section accepts.
nlohmann::json design_spec_json(const DesignSpec& spec);

/// Inverse of design_spec_json; strict like the config section.
DesignSpec design_spec_from_json(const nlohmann::json& section);

}  // namespace pantograph
