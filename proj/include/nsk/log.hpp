#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsk {

enum class LogLevel { Debug, Info, Warning, Error };

/// One structured diagnostic record: an event name plus numeric key/value pairs.
struct LogRecord {
  LogLevel level;
  std::string event;
  std::vector<std::pair<std::string, double>> fields;

  /// Renders the record as a single JSON object line.
  std::string to_json() const;
};

using LogSink = std::function<void(const LogRecord&)>;

/// Replaces the process-wide sink and returns the previous one. Thread-safe.
LogSink set_log_sink(LogSink sink);

/// Sets the minimum level forwarded to the sink (default: Warning).
void set_log_level(LogLevel level);

void log_event(LogLevel level, std::string_view event,
               std::initializer_list<std::pair<std::string_view, double>> fields = {});

}  // namespace nsk
