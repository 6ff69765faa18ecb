#pragma once

#include <cstdint>

#include "bnpsched/column.hpp"
#include "bnpsched/instance.hpp"

namespace bnpsched {

/// Greedy list scheduler: repeatedly place the eligible (job, machine) pair
/// minimizing the job's new completion time divided by its weight, ties by
/// smallest job then smallest machine. Deterministic.
FullSolution sched(const Instance& inst);

struct BruteForceResult {
    std::int64_t objective = 0;
    FullSolution solution;
};

/// Exhaustive optimum over all eligible assignments and all per-machine
/// orderings. Exact integer arithmetic; refuses instances with more than
/// `cap` jobs.
BruteForceResult brute_force(const Instance& inst, int cap = 9);

} // namespace bnpsched
