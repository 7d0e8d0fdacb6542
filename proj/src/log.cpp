#include "asam/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <mutex>

namespace asam::log {

namespace {

std::shared_ptr<spdlog::logger> logger()
{
    static std::once_flag once;
    static std::shared_ptr<spdlog::logger> lg;
    std::call_once(once, [] {
        lg = spdlog::stderr_color_mt("asam");
        lg->set_pattern("[%l] %v");
        lg->set_level(spdlog::level::warn);
        if (const char* env = std::getenv("ASAM_LOG_LEVEL"))
            lg->set_level(spdlog::level::from_str(env));
    });
    return lg;
}

} // namespace

void init_from_env() { logger(); }
void debug(const std::string& msg) { logger()->debug(msg); }
void info(const std::string& msg) { logger()->info(msg); }
void warn(const std::string& msg) { logger()->warn(msg); }
void error(const std::string& msg) { logger()->error(msg); }

} // namespace asam::log
