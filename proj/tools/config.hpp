#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gfix/contractions.hpp"
#include "gfix/maps.hpp"
#include "gfix/series.hpp"
#include "gfix/spaces.hpp"

namespace gfix::cli {

// constant | harmonic | inverse-square | geometric | values | expression
struct SequenceSpec {
  std::string kind = "constant";
  double value = 0.0;
  double ratio = 0.5;
  std::vector<double> values;  // inline or loaded from "file"
  std::string expr;            // over i (and j, l for coefficient sources)
};

Sequence build_sequence(const SequenceSpec& spec);

enum class MapsMode { Single, Triplet, Family };

struct MapsConfig {
  MapsMode mode = MapsMode::Single;
  std::vector<MapSpec> maps;                    // 1 (single) or 3 (triplet)
  std::vector<std::string> family_expressions;  // T_i over x, y, i
  std::vector<MapSpec> family_cycle;            // T_i = cycle[(i-1) mod m]
};

MapSet build_maps(const MapsConfig& cfg);

struct ConditionConfig {
  Variant variant = Variant::SingleOddPower;
  std::size_t k = 1;
  std::size_t p = 1;
  double lambda = 0.0;
  std::optional<SequenceSpec> coefficients;  // delta(i, j, l) = s(i), or an expression in i, j, l
  std::size_t index_horizon = 3;
  std::size_t coefficient_horizon = 1000;
};

Condition build_condition(const ConditionConfig& cfg);
// r_i = delta(i, i+1, i+2)
Sequence coefficient_sequence(const ConditionConfig& cfg);

struct SolverConfig {
  std::vector<double> x0;
  std::optional<std::size_t> x0_index;
  std::size_t p = 1;  // > 1 selects iterate-power mode
  std::vector<std::size_t> probes{1, 2, 3, 4, 5};
};

enum class SeriesMode { Alpha, Lambda, Limsup };

struct SeriesConfig {
  SeriesMode mode = SeriesMode::Alpha;
  SequenceSpec sequence;
  std::optional<std::size_t> horizon;
};

struct ProblemConfig {
  SpaceRecipe space;
  Tolerance tolerance;
  std::size_t samples = 1000;
  std::optional<MapsConfig> maps;
  std::optional<ConditionConfig> condition;
  std::optional<SolverConfig> solver;
  std::optional<SeriesConfig> series;
};

// Relative file references resolve against `base_dir`. Throws ConfigError.
ProblemConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir);
ProblemConfig load_config(const std::filesystem::path& path);

// GFIX_ABS_TOL / GFIX_REL_TOL, when set, replace the configured tolerances.
void apply_tolerance_env(Tolerance& tol);

Point build_x0(const SolverConfig& cfg);

}  // namespace gfix::cli
