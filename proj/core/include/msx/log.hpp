#pragma once

namespace msx {

/// Sets the spdlog level from MAGIC_SIMPLEX_LOG (trace, debug, info, warn,
/// error, critical, off). Unset or unknown values leave the level at warn.
/// Diagnostics go to stderr.
void configure_logging_from_env();

}  // namespace msx
