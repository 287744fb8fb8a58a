#pragma once

#include <string_view>
#include <vector>

#include "bergman/operator_matrix.hpp"
#include "config.hpp"
#include "report.hpp"

namespace lab {

const std::vector<std::string_view>& command_names();

/// Product of the Toeplitz operators named by the config (identity if none).
bergman::OperatorMatrix build_operator(const ExperimentConfig& config, double resolution_scale);

/// Runs one subcommand. Throws bergman::Error on precondition violations and
/// PreconditionError for unknown commands.
Report run_command(std::string_view name, const ExperimentConfig& config, const RunOptions& options);

} // namespace lab
