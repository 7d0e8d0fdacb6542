#pragma once

#include <string>

namespace asam::log {

// Thin wrapper so spdlog stays out of public headers. Level comes from
// ASAM_LOG_LEVEL (trace, debug, info, warn, error, off); default warn.
void init_from_env();
void debug(const std::string& msg);
void info(const std::string& msg);
void warn(const std::string& msg);
void error(const std::string& msg);

} // namespace asam::log
