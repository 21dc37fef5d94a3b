#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nomasec/model.hpp"
#include "nomasec/monte_carlo.hpp"

namespace nomasec {

enum class SweepAxis { Gamma0dB, GammaEdB, AlphaF, LS, LN, LF, LE, mN, mF, mE };

const char* to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);  // throws ConfigError listing the valid names

struct SweepOutputs {
  bool exact = false;
  bool asymptotic = false;
  bool montecarlo = false;

  bool any() const { return exact || asymptotic || montecarlo; }
};

struct SweepSpec {
  std::string name;
  SystemConfig base;
  SweepAxis axis = SweepAxis::Gamma0dB;
  std::vector<double> values;
  std::vector<SolutionId> solutions{SolutionId::SolutionI, SolutionId::SolutionII};
  SweepOutputs outputs{true, false, false};
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  EavesdropperMode mode = EavesdropperMode::SicWithInterference;

  // Checks the base config, the outputs and every axis value (each must give a valid config).
  void validate() const;
};

// The base config with one axis set to value. alphaF also sets alphaN = 1 - alphaF.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

// "a:b:c" (inclusive, step c) or a comma/space separated list.
std::vector<double> parse_values(std::string_view text);

// Scenario text (grammar in docs/scenario-format.md). Throws ParseError with
// line and column for syntax problems and ConfigError for invalid values.
SweepSpec parse_scenario(std::string_view text, std::string name = "scenario");

// A built-in preset name (fig2 .. fig10) or a path to a scenario file.
SweepSpec load_scenario(const std::string& presetOrPath);

std::vector<std::string> preset_names();
// Scenario text of a preset; empty when the name is unknown.
std::string_view preset_text(std::string_view name);

}  // namespace nomasec
