#include "nsk/log.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <sstream>

namespace nsk {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& current_sink() {
  static LogSink sink = [](const LogRecord& r) { std::cerr << r.to_json() << '\n'; };
  return sink;
}

std::atomic<int> g_min_level{static_cast<int>(LogLevel::Warning)};

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warning: return "warning";
    case LogLevel::Error: return "error";
  }
  return "unknown";
}

}  // namespace

std::string LogRecord::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"level\":\"" << level_name(level) << "\",\"event\":\"" << event << '"';
  for (const auto& [key, value] : fields) {
    os << ",\"" << key << "\":";
    if (std::isfinite(value))
      os << value;
    else
      os << "null";
  }
  os << '}';
  return os.str();
}

LogSink set_log_sink(LogSink sink) {
  std::lock_guard lock(sink_mutex());
  auto previous = std::move(current_sink());
  current_sink() = std::move(sink);
  return previous;
}

void set_log_level(LogLevel level) { g_min_level = static_cast<int>(level); }

void log_event(LogLevel level, std::string_view event,
               std::initializer_list<std::pair<std::string_view, double>> fields) {
  if (static_cast<int>(level) < g_min_level.load()) return;
  LogRecord record{level, std::string(event), {}};
  record.fields.reserve(fields.size());
  for (const auto& [k, v] : fields) record.fields.emplace_back(std::string(k), v);
  std::lock_guard lock(sink_mutex());
  if (current_sink()) current_sink()(record);
}

}  // namespace nsk
