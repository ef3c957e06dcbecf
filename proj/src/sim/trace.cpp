#include "faf/sim/trace.hpp"

#include <array>
#include <charconv>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace faf::sim {

namespace {

constexpr std::array<const char*, 9> kKindNames = {
    "tick",         "injection",    "percept",
    "rule-fired",   "message-sent", "message-delivered",
    "env-effect",   "role-update",  "error",
};

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n") != std::string::npos;
}

std::string quote_csv(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Splits one CSV record (which may span input lines when a quoted field
// contains a newline). `pos` is advanced past the record's terminator.
std::vector<std::string> split_csv_record(const std::string& text, std::size_t& pos) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    current += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else if (c == '\n') {
            ++pos;
            fields.push_back(std::move(current));
            return fields;
        } else if (c != '\r') {
            current += c;
        }
        ++pos;
    }
    fields.push_back(std::move(current));
    return fields;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("trace: bad numeric field '" + s + "'");
    }
    return v;
}

} // namespace

std::string record_kind_name(RecordKind k) {
    return kKindNames.at(static_cast<std::size_t>(k));
}

RecordKind record_kind_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (name == kKindNames[i]) return static_cast<RecordKind>(i);
    }
    throw std::invalid_argument("unknown trace record kind: " + name);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), ptr);
}

std::string export_csv(const std::vector<TraceRecord>& records) {
    std::string out = "tick,seq,kind,agent,detail,degree\n";
    for (const auto& r : records) {
        out += std::to_string(r.tick);
        out += ',';
        out += std::to_string(r.seq);
        out += ',';
        out += record_kind_name(r.kind);
        out += ',';
        out += quote_csv(r.agent);
        out += ',';
        out += quote_csv(r.detail);
        out += ',';
        if (r.degree) out += format_double(*r.degree);
        out += '\n';
    }
    return out;
}

std::vector<TraceRecord> import_csv(const std::string& text) {
    std::size_t pos = 0;
    auto header = split_csv_record(text, pos);
    const std::vector<std::string> expected = {"tick", "seq", "kind",
                                               "agent", "detail", "degree"};
    if (header != expected) throw std::invalid_argument("trace: bad CSV header");
    std::vector<TraceRecord> records;
    while (pos < text.size()) {
        auto fields = split_csv_record(text, pos);
        if (fields.size() == 1 && fields[0].empty()) continue; // trailing blank line
        if (fields.size() != 6) {
            throw std::invalid_argument("trace: expected 6 fields per row");
        }
        TraceRecord r;
        r.tick = static_cast<std::int64_t>(std::stoll(fields[0]));
        r.seq = static_cast<std::uint64_t>(std::stoull(fields[1]));
        r.kind = record_kind_from_name(fields[2]);
        r.agent = fields[3];
        r.detail = fields[4];
        if (!fields[5].empty()) r.degree = parse_double(fields[5]);
        records.push_back(std::move(r));
    }
    return records;
}

std::string export_jsonl(const std::vector<TraceRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["tick"] = r.tick;
        j["seq"] = r.seq;
        j["kind"] = record_kind_name(r.kind);
        j["agent"] = r.agent;
        j["detail"] = r.detail;
        if (r.degree) {
            j["degree"] = *r.degree;
        } else {
            j["degree"] = nullptr;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<TraceRecord> import_jsonl(const std::string& text) {
    std::vector<TraceRecord> records;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        TraceRecord r;
        r.tick = j.at("tick").get<std::int64_t>();
        r.seq = j.at("seq").get<std::uint64_t>();
        r.kind = record_kind_from_name(j.at("kind").get<std::string>());
        r.agent = j.at("agent").get<std::string>();
        r.detail = j.at("detail").get<std::string>();
        if (!j.at("degree").is_null()) r.degree = j.at("degree").get<double>();
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace faf::sim
