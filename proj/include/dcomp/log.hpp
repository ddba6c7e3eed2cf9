#pragma once

#include <string_view>

namespace dcomp {

enum class LogLevel { Debug = 0, Info = 1, Notice = 2, Warning = 3, Silent = 4 };

/// Messages below the threshold are dropped. Default: Warning, or the value
/// of DCOMP_LOG_LEVEL (debug|info|notice|warning|silent) when set.
void set_log_threshold(LogLevel level);
LogLevel log_threshold();

/// Writes "dcomp [level] message" to standard error. Thread-safe.
void log(LogLevel level, std::string_view message);

}  // namespace dcomp
