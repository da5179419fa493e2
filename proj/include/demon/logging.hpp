#pragma once

#include <string>

namespace demon {

// Levels: off < info < debug. Chosen once from DEMON_ENGINE_LOG
// (values "off", "info", "debug"; anything else means info).
enum class LogLevel { off = 0, info = 1, debug = 2 };

LogLevel log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

} // namespace demon
