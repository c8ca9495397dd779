#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace oulab::cli {

// Command-line overrides of the configuration.
struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<unsigned> jobs;
};

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitConfig = 2;

// Runs every configured check; writes reports.csv and summary.txt.
// 0 when all pass, 1 when any fails, 2 on a configuration error.
int cmd_verify(const std::string& config_path, const CommandOptions& options, std::ostream& out,
               std::ostream& err);
// Leading eigenvalues per spectrum entry; writes eigenvalues.csv.
// 1 when some gap falls below 0.98.
int cmd_spectrum(const std::string& config_path, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);
// Grid snapshots of T(t)f; writes evolve.csv.
int cmd_evolve(const std::string& config_path, const CommandOptions& options, std::ostream& out,
               std::ostream& err);
// Polygon convergence study; writes convergence.csv.
int cmd_converge(const std::string& config_path, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);

// Writes content to dir/name through a temporary file and a rename.
void write_atomically(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace oulab::cli
