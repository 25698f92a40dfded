#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace gfix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // violation, non-contractive, not a series, disagreement
inline constexpr int kExitUsage = 2;     // bad config, bad flags, refused budget

struct CommandOptions {
  std::filesystem::path config;
  std::uint64_t seed = 42;
  std::filesystem::path out = ".";
  std::optional<std::size_t> samples;
  bool exhaustive = false;
};

// Each command writes <out>/<command>.json (solve also writes trace.csv), prints a
// one-line summary to `log` and errors to `err`, and returns the exit code.
int cmd_check_axioms(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_solve(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_series(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_oracle(const CommandOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace gfix::cli
