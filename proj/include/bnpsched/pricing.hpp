#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bnpsched/column.hpp"
#include "bnpsched/constraints.hpp"
#include "bnpsched/instance.hpp"

namespace bnpsched::pricing {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Dual prices of the restricted master: pi per job (pi[0] unused) and sigma
/// per machine.
struct DualPrices {
    std::vector<double> pi;    // [n+1]
    std::vector<double> sigma; // [m]
};

/// Allowed immediate predecessors per (machine, job), plus whether a job may
/// close a schedule on that machine. preds[k][j] empty means j cannot appear
/// on k at all. Predecessor 0 is the fictitious start.
struct PredecessorSets {
    int n = 0, m = 0;
    std::vector<std::vector<std::vector<int>>> preds; // [m][n+1]; index 0 unused
    std::vector<std::vector<std::uint8_t>> can_end;   // [m][n+1]

    /// Unconstrained sets: every eligible job may follow 0 or any other
    /// eligible job and may end the schedule.
    static PredecessorSets base(const Instance& inst);
};

/// Predecessor sets of a branching node: forbidden (k,i,j) removes i from
/// P_j^k; forced (k,i,j) makes i the only predecessor of j on k, bars i from
/// preceding anything else or ending a schedule there, and pins both jobs to
/// machine k (only j when i is the fictitious start).
PredecessorSets derive_predecessor_sets(const Instance& inst, const NodeConstraints& constraints);

/// Value table of the pricing recursion: per machine, f(j, t) is the minimum
/// reduced cost over schedules that end with job j exactly at time t, with the
/// chosen predecessor stored for backtracking.
struct Table {
    struct MachineTable {
        std::vector<int> jobs;             // schedulable jobs, ascending; local index = position
        std::vector<std::uint8_t> can_end; // per local job
        std::vector<double> f;             // [jobs.size()][T+1]
        std::vector<std::int32_t> parent;  // local predecessor, kFromStart, or kNoParent
        int horizon = 0;

        double value(int local, int t) const { return f[static_cast<std::size_t>(local) * static_cast<std::size_t>(horizon + 1) + static_cast<std::size_t>(t)]; }
    };
    static constexpr std::int32_t kFromStart = -1;
    static constexpr std::int32_t kNoParent = -2;

    std::vector<MachineTable> machines;

    /// f-value for a global (machine, job, t) state; +inf where no state exists.
    double value(int k, int job, int t) const;
};

/// Most negative admissible terminal state, lexicographically smallest
/// (machine, job, time) among equals. found = false when no schedulable job
/// exists anywhere.
struct PriceResult {
    bool found = false;
    double min_value = kUnreachable;
    int machine = 0;
    int job = 0;
    int t = 0;
};

/// Machine-loop parallel width for price/extract; 1 = serial. Thread-safe.
void set_lanes(int count);
int lanes();

/// Fills the table for horizon T and returns the minimum reduced cost over
/// admissible terminal states. Results are identical for every lane count.
/// Throws if T < 1 or if some usable transition has zero duration (such
/// instances admit unbounded cyclic schedules).
PriceResult price(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T, Table& table);

/// Convenience overload allocating a fresh table.
PriceResult price(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T);

/// Serial reference implementation of price; kept for tests and benchmarks.
PriceResult price_serial(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T,
                         Table& table);

/// Backtracks columns from terminal states with value < -eps, most negative
/// first (ties by lexicographic state), at most max_cols in total across all
/// machines. Duplicate (machine, sequence) pairs are dropped.
std::vector<Column> extract_columns(const Instance& inst, const Table& table, const DualPrices& duals, int max_cols,
                                    double eps);

} // namespace bnpsched::pricing
