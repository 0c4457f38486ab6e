#include "msx/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace msx {

void configure_logging_from_env() {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("msx");
    spdlog::set_default_logger(l);
    return l;
  }();
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("MAGIC_SIMPLEX_LOG")) {
    const auto parsed = spdlog::level::from_str(env);
    if (parsed != spdlog::level::off || std::string(env) == "off") level = parsed;
  }
  logger->set_level(level);
}

}  // namespace msx
