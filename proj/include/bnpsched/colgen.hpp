#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "bnpsched/column.hpp"
#include "bnpsched/constraints.hpp"
#include "bnpsched/instance.hpp"
#include "bnpsched/pricing.hpp"

namespace bnpsched {

struct RelaxParams {
    int max_cols = 20;          // columns added per pricing round, across all machines
    double eps = 1e-7;          // reduced-cost convergence threshold
    int max_master_solves = 10000;
    long max_lp_pivots = 500000;
    // Cooperative cancellation for pooled search; checked between iterations.
    const std::atomic<bool>* cancel = nullptr;
};

/// LP relaxation of one branching node, solved by column generation.
struct RelaxationResult {
    enum class Status { optimal, infeasible, iteration_limit, cancelled };

    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<ColumnPtr> pool; // final column pool; x and the master run parallel to it
    std::vector<double> x;
    pricing::DualPrices duals;
    int iterations = 0;          // master solves
    long columns_generated = 0;  // columns added by pricing (warm start excluded)
    std::int64_t pricing_ns = 0; // time spent in the machine-parallel pricing kernel
};

/// Alternates restricted-master solves with exact pricing until no column
/// prices out below -eps. The warm pool must already satisfy `constraints`
/// (callers filter); infeasibility shows up as artificials that survive to
/// convergence. `T` is the pricing horizon of the instance.
RelaxationResult solve_relaxation(const Instance& inst, const NodeConstraints& constraints,
                                  std::vector<ColumnPtr> warm_pool, int T, const RelaxParams& params);

} // namespace bnpsched
