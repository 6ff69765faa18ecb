#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bnpsched/constraints.hpp"
#include "bnpsched/instance.hpp"

namespace bnpsched {

/// One machine schedule: an ordered job sequence on a fixed machine together
/// with its coverage counts and exact weighted-completion-time cost. Job
/// repeats are allowed (cyclic schedules), they just cannot survive into an
/// integer solution.
struct Column {
    int machine = 0;
    std::vector<int> seq;
    std::vector<std::int32_t> coverage; // [n+1], coverage[j] = occurrences of j in seq
    std::int64_t cost = 0;

    /// Number of times i is processed immediately before j, counting the
    /// fictitious start: adjacency over (0, seq...).
    int delta(int i, int j) const;
    /// Completion time of the last job.
    std::int64_t makespan(const Instance& inst) const;
};

using ColumnPtr = std::shared_ptr<const Column>;

/// Builds the column for `seq` on `machine`, accumulating completion times
/// left to right. Throws if a job in `seq` is not eligible on the machine.
Column evaluate(const Instance& inst, int machine, std::vector<int> seq);

/// c - sum_j a_j * pi_j - sigma_k. `pi` is indexed by job id (pi[0] unused).
double reduced_cost(const Column& col, std::span<const double> pi, double sigma_k);

/// True iff the column is admissible under the node's forced and forbidden arcs.
bool satisfies(const Column& col, const NodeConstraints& constraints);

/// A complete schedule: at most one column per machine, each job exactly once.
struct FullSolution {
    std::vector<Column> columns;
    std::int64_t objective = 0;
};

struct VerifyResult {
    std::int64_t objective = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Recomputes every column cost and checks coverage, eligibility, acyclicity
/// and one-column-per-machine. All violations are reported, not just the first.
VerifyResult verify(const Instance& inst, const FullSolution& sol);

} // namespace bnpsched
