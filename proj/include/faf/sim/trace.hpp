#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace faf::sim {

enum class RecordKind {
    tick,
    injection,
    percept,
    rule_fired,
    message_sent,
    message_delivered,
    env_effect,
    role_update,
    error,
};

std::string record_kind_name(RecordKind k);
RecordKind record_kind_from_name(const std::string& name);

// One appended observation. Records are totally ordered by (tick, seq); seq
// is unique across the whole run.
struct TraceRecord {
    std::int64_t tick = 0;
    std::uint64_t seq = 0;
    RecordKind kind = RecordKind::tick;
    std::string agent;
    std::string detail;
    std::optional<double> degree;

    bool operator==(const TraceRecord&) const = default;
};

// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

// CSV with header tick,seq,kind,agent,detail,degree; fields quote only when
// they contain a comma, quote or newline. JSONL emits one object per line
// with fixed key order. Both round-trip losslessly through their readers.
std::string export_csv(const std::vector<TraceRecord>& records);
std::string export_jsonl(const std::vector<TraceRecord>& records);
std::vector<TraceRecord> import_csv(const std::string& text);
std::vector<TraceRecord> import_jsonl(const std::string& text);

} // namespace faf::sim
