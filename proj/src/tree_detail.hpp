#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "bnpsched/tree.hpp"

namespace bnpsched::detail {

using clock_type = std::chrono::steady_clock;

inline double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::vector<ColumnPtr> sched_columns(const Instance& inst);
std::vector<ColumnPtr> filter_pool(const std::vector<ColumnPtr>& pool, const NodeConstraints& constraints);
FullSolution decode_integral(const std::vector<ColumnPtr>& pool, const std::vector<double>& x);
std::optional<FullSolution> decompose_integral_flows(const Instance& inst, const FlowMatrix& fm, double int_tol);
std::size_t select_active(const std::vector<Node>& actives);
double frontier_bound(const std::vector<Node>& actives);
bool check_incumbent(const Instance& inst, const FullSolution& sol, std::int64_t T, std::string& problem);

/// What the driver does with one solved node.
struct NodeOutcome {
    enum class Kind { infeasible, incumbent, branched, failed };
    Kind kind = Kind::failed;
    FullSolution incumbent;
    Node force_child, forbid_child;
    std::string diagnostic;
};

/// Shared post-relaxation step of the serial and pooled drivers: fathom,
/// terminate with an incumbent, or branch on the most fractional flow.
NodeOutcome process_solved(const Instance& inst, const Node& node, const RelaxationResult& relax, long& next_id,
                           const SearchParams& params, double& flows_ms);

} // namespace bnpsched::detail
