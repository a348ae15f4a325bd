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

#include "rips/event_log.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace rips
{

std::string_view to_string(LogRecord::Kind k)
{
  switch (k) {
    case LogRecord::Kind::kAlert: return "alert";
    case LogRecord::Kind::kWarning: return "warning";
    case LogRecord::Kind::kAction: return "action";
    case LogRecord::Kind::kTransition: return "transition";
  }
  return "unknown";
}

bool EventLog::write_line(std::ostream * os, const LogRecord & r)
{
  if (!os) {
    return true;
  }
  nlohmann::json j{
    {"tick", r.tick}, {"kind", to_string(r.kind)}, {"rule", r.rule}, {"msg", r.message}};
  *os << j.dump() << '\n';
  os->flush();
  return os->good();
}

bool EventLog::append_alert(
  std::int64_t tick, const std::string & rule, const std::string & message)
{
  LogRecord r{LogRecord::Kind::kAlert, tick, rule, message};
  bool ok = !alert_stream_ || alert_stream_->good();
  if (ok) {
    ok = write_line(alert_stream_, r);
  }
  append(std::move(r));
  return ok;
}

void EventLog::append_warning(
  std::int64_t tick, const std::string & rule, const std::string & message)
{
  append(LogRecord{LogRecord::Kind::kWarning, tick, rule, message});
}

void EventLog::append(LogRecord record)
{
  write_line(record_stream_, record);
  records_.push_back(std::move(record));
}

std::size_t EventLog::count(LogRecord::Kind kind) const
{
  return static_cast<std::size_t>(std::count_if(
    records_.begin(), records_.end(), [kind](const LogRecord & r) {return r.kind == kind;}));
}

std::vector<LogRecord> EventLog::of_kind(LogRecord::Kind kind) const
{
  std::vector<LogRecord> out;
  std::copy_if(
    records_.begin(), records_.end(), std::back_inserter(out),
    [kind](const LogRecord & r) {return r.kind == kind;});
  return out;
}

}  // namespace rips
