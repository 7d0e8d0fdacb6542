#pragma once

#include "asam/simulation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace asam::output {

/// Writes every result CSV into `dir` (created if needed). Returns the file
/// names written. Formatting is fixed-decimal so equal runs give equal bytes.
std::vector<std::string> write_all(const Simulation& sim, const std::filesystem::path& dir);

} // namespace asam::output
