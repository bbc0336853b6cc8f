#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipm/problems.hpp"
#include "ipm/solver.hpp"

namespace ipm {

/// Sweep axes; an empty axis keeps the base value.
struct SweepAxes {
  std::vector<double> tau;
  std::vector<double> delta_u;
  std::vector<double> gamma;
  std::vector<Scheme> scheme;
  std::vector<int> n_cells;

  std::size_t product_size() const;
};

struct RunConfig {
  std::string preset_name;
  ProblemSpec problem;
  SolverConfig solver;
  std::filesystem::path output_dir = "out";
  SweepAxes sweep;
  std::vector<double> slices = {-1.0, 0.0, 1.0};
  unsigned long seed = 0;  // reserved, the solver is deterministic
};

/// Parsed `key = value` entries, keyed by "section.key", with the line each
/// came from.
struct ConfigEntries {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> values;
};

/// Grammar: blank lines and lines starting with '#' or ';' are ignored,
/// "[name]" opens a section, everything else must be "key = value". Keys
/// before the first section live in section "run". Throws ConfigError with
/// the line number on malformed input or duplicate keys.
ConfigEntries parse_config_text(const std::string& text);

/// Resolves a run configuration: the preset (from `preset_override`, else the
/// file's run.preset, else burgers_ic1) is loaded first and the file's
/// entries are applied on top. Unknown keys and bad values throw ConfigError
/// naming the key and line. A missing file is an IoError.
RunConfig load_run_config(const std::optional<std::filesystem::path>& path,
                          const std::optional<std::string>& preset_override);
RunConfig run_config_from_text(const std::string& text,
                               const std::optional<std::string>& preset_override);

}  // namespace ipm
