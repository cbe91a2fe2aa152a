#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace jsr {

enum class LogLevel { kOff = 0, kInfo = 1, kDebug = 2 };

// Verbosity comes from the JSR_LOG environment variable ("info" or "debug");
// anything else (or unset) silences the log.  Messages go to stderr so they
// never pollute machine-readable stdout.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("JSR_LOG");
    if (env == nullptr) return LogLevel::kOff;
    const std::string v(env);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kOff;
  }();
  return level;
}

inline void log_line(LogLevel at, const std::string& msg) {
  if (static_cast<int>(log_level()) >= static_cast<int>(at)) {
    std::cerr << "[jsr] " << msg << "\n";
  }
}

template <typename... Args>
void log_info(Args&&... args) {
  if (log_level() >= LogLevel::kInfo) {
    std::ostringstream os;
    (os << ... << args);
    log_line(LogLevel::kInfo, os.str());
  }
}

template <typename... Args>
void log_debug(Args&&... args) {
  if (log_level() >= LogLevel::kDebug) {
    std::ostringstream os;
    (os << ... << args);
    log_line(LogLevel::kDebug, os.str());
  }
}

}  // namespace jsr
