#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bnpsched {

/// One benchmark row: an (instance, algorithm, configuration) result.
/// Serialized to CSV with a fixed header; optional fields stay empty.
struct RunRecord {
    std::string instance_id;
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    std::string algorithm; // dfs | sched | oracle
    std::optional<std::int64_t> objective;
    std::optional<double> lb;
    std::optional<double> gap_lb_pct;
    std::optional<double> gap_sched_pct;
    long nodes = 0;
    long columns = 0;
    double wall_ms = 0.0;
    int lanes = 1;
    int workers = 1;
    std::string strategy; // serial | pool
    std::optional<double> serial_ms;
    std::optional<double> parallel_ms;
    std::string status = "ok"; // ok | node_budget | time_budget | error

    bool operator==(const RunRecord&) const = default;
};

extern const char* const kRunRecordHeader;

std::string to_csv_row(const RunRecord& rec);
RunRecord from_csv_row(const std::string& line);

/// Appends rows, writing the header when the file does not exist yet.
void append_records(const std::string& path, const std::vector<RunRecord>& records);

/// Loads a whole results file; throws on a bad header or malformed row.
std::vector<RunRecord> load_records(const std::string& path);

} // namespace bnpsched
