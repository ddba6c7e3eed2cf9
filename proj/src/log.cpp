#include "dcomp/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace dcomp {

namespace {

LogLevel initial_threshold() {
  const char* env = std::getenv("DCOMP_LOG_LEVEL");
  if (!env) return LogLevel::Warning;
  const std::string v(env);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  if (v == "notice") return LogLevel::Notice;
  if (v == "silent") return LogLevel::Silent;
  return LogLevel::Warning;
}

std::atomic<LogLevel>& threshold() {
  static std::atomic<LogLevel> t{initial_threshold()};
  return t;
}

const char* label(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Notice: return "notice";
    case LogLevel::Warning: return "WARNING";
    default: return "";
  }
}

}  // namespace

void set_log_threshold(LogLevel level) { threshold().store(level); }

LogLevel log_threshold() { return threshold().load(); }

void log(LogLevel level, std::string_view message) {
  if (level < threshold().load() || level == LogLevel::Silent) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "dcomp [" << label(level) << "] " << message << '\n';
}

}  // namespace dcomp
