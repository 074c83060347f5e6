#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "hhlab/bimodule_resolution.hpp"
#include "hhlab/families.hpp"
#include "hhlab/graded_center.hpp"
#include "hhlab/hochschild.hpp"
#include "hhlab/quad_algebra.hpp"

namespace hhlab {

enum class OutputFormat { Table, Machine };

// Raw command-line values; unset fields fall back to the config file.
struct CliOptions {
  std::string command;
  std::optional<std::string> family, field, q, format, config_file, presentation_file;
  std::optional<int> m, n, max_degree;
  std::optional<std::size_t> max_length;
};

struct RunConfig {
  std::string command;
  std::optional<FamilyParams> params;
  std::optional<std::string> presentation_text;  // contents of --presentation
  std::optional<int> max_degree;
  std::optional<std::size_t> max_length;
  std::size_t path_cap = Resolution::kDefaultPathCap;
  OutputFormat format = OutputFormat::Table;
};

// Flags take precedence over the config file.
RunConfig make_run_config(const CliOptions& options);

struct CommandResult {
  int status = 0;  // 0 iff every executed check passed
  std::string output;
};

// An unreadable presentation file counts as a failed check (status 1).
CommandResult cmd_koszul_check(const RunConfig& config);
CommandResult cmd_dual_print(const RunConfig& config);
CommandResult cmd_hh_dims(const RunConfig& config);
CommandResult cmd_cup(const RunConfig& config);
CommandResult cmd_center(const RunConfig& config);
// `perturb` may edit d_l before the minimality scan.
CommandResult cmd_resolution_check(const RunConfig& config,
                                   const std::function<void(int, GeneratorMap&)>& perturb = {});

// Dispatch on config.command; errors become status 2 with a message.
CommandResult run_command(const RunConfig& config);

std::string match_table(const MatchReport& report);

}  // namespace hhlab
