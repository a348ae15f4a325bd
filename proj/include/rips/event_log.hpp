// Copyright (c) 2026 The RIPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIPS__EVENT_LOG_HPP_
#define RIPS__EVENT_LOG_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace rips
{

/// One engine record. Records are never modified once appended.
struct LogRecord
{
  enum class Kind { kAlert, kWarning, kAction, kTransition };

  Kind kind{Kind::kAlert};
  std::int64_t tick{0};
  std::string rule;
  std::string message;

  friend bool operator==(const LogRecord &, const LogRecord &) = default;
};

std::string_view to_string(LogRecord::Kind k);

/// Append-only engine log. Alert records are mirrored as JSON lines to an
/// optional alert stream; every record goes to the optional record stream.
class EventLog
{
public:
  void set_alert_stream(std::ostream * os) {alert_stream_ = os;}
  void set_record_stream(std::ostream * os) {record_stream_ = os;}

  /// Returns false when the alert stream is in a failed state.
  bool append_alert(std::int64_t tick, const std::string & rule, const std::string & message);
  void append_warning(std::int64_t tick, const std::string & rule, const std::string & message);
  void append(LogRecord record);

  const std::vector<LogRecord> & records() const {return records_;}
  std::size_t count(LogRecord::Kind kind) const;
  std::vector<LogRecord> of_kind(LogRecord::Kind kind) const;

private:
  bool write_line(std::ostream * os, const LogRecord & r);

  std::vector<LogRecord> records_;
  std::ostream * alert_stream_{nullptr};
  std::ostream * record_stream_{nullptr};
};

}  // namespace rips

#endif  // RIPS__EVENT_LOG_HPP_
