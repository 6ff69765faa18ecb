#include "bnpsched/runrecord.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bnpsched {

const char* const kRunRecordHeader =
    "instance_id,n,m,seed,algorithm,objective,lb,gap_lb_pct,gap_sched_pct,nodes,columns,wall_ms,lanes,workers,"
    "strategy,serial_ms,parallel_ms,status";

namespace {

std::string fmt_double(double v) {
    char buf[64];
    // Shortest round-trip representation.
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_double(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
    return v;
}

template <typename T>
T parse_int(const std::string& s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed integer '" + s + "'");
    return v;
}

void no_commas(const std::string& s, const char* what) {
    if (s.find(',') != std::string::npos)
        throw std::invalid_argument(std::string(what) + " may not contain commas: '" + s + "'");
}

} // namespace

std::string to_csv_row(const RunRecord& rec) {
    no_commas(rec.instance_id, "instance id");
    no_commas(rec.algorithm, "algorithm tag");
    no_commas(rec.strategy, "strategy tag");
    no_commas(rec.status, "status tag");
    std::ostringstream os;
    os << rec.instance_id << ',' << rec.n << ',' << rec.m << ',' << rec.seed << ',' << rec.algorithm << ','
       << (rec.objective ? std::to_string(*rec.objective) : std::string()) << ',' << opt_double(rec.lb) << ','
       << opt_double(rec.gap_lb_pct) << ',' << opt_double(rec.gap_sched_pct) << ',' << rec.nodes << ',' << rec.columns
       << ',' << fmt_double(rec.wall_ms) << ',' << rec.lanes << ',' << rec.workers << ',' << rec.strategy << ','
       << opt_double(rec.serial_ms) << ',' << opt_double(rec.parallel_ms) << ',' << rec.status;
    return os.str();
}

RunRecord from_csv_row(const std::string& line) {
    const auto f = split(line);
    if (f.size() != 18) throw std::invalid_argument("expected 18 CSV fields, got " + std::to_string(f.size()));
    RunRecord rec;
    rec.instance_id = f[0];
    rec.n = parse_int<int>(f[1]);
    rec.m = parse_int<int>(f[2]);
    rec.seed = parse_int<std::uint64_t>(f[3]);
    rec.algorithm = f[4];
    if (!f[5].empty()) rec.objective = parse_int<std::int64_t>(f[5]);
    if (!f[6].empty()) rec.lb = parse_double(f[6]);
    if (!f[7].empty()) rec.gap_lb_pct = parse_double(f[7]);
    if (!f[8].empty()) rec.gap_sched_pct = parse_double(f[8]);
    rec.nodes = parse_int<long>(f[9]);
    rec.columns = parse_int<long>(f[10]);
    rec.wall_ms = parse_double(f[11]);
    rec.lanes = parse_int<int>(f[12]);
    rec.workers = parse_int<int>(f[13]);
    rec.strategy = f[14];
    if (!f[15].empty()) rec.serial_ms = parse_double(f[15]);
    if (!f[16].empty()) rec.parallel_ms = parse_double(f[16]);
    rec.status = f[17];
    return rec;
}

void append_records(const std::string& path, const std::vector<RunRecord>& records) {
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + path + " for appending");
    if (fresh) out << kRunRecordHeader << '\n';
    for (const auto& rec : records) out << to_csv_row(rec) << '\n';
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<RunRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + " is empty");
    if (line != kRunRecordHeader) throw std::runtime_error(path + " does not carry the expected results header");
    std::vector<RunRecord> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(from_csv_row(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

} // namespace bnpsched
