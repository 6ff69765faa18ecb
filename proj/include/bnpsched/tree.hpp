#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bnpsched/colgen.hpp"
#include "bnpsched/column.hpp"
#include "bnpsched/constraints.hpp"
#include "bnpsched/instance.hpp"

namespace bnpsched {

/// Total flow X_ij^k of arc (i before j on machine k) under a fractional
/// master solution.
struct FlowMatrix {
    int n = 0, m = 0;
    std::vector<double> x; // [m][(n+1)][n]

    FlowMatrix() = default;
    FlowMatrix(int n_, int m_)
        : n(n_), m(m_),
          x(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_), 0.0) {}

    double& at(int k, int i, int j) {
        return x[(static_cast<std::size_t>(k) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i)) *
                     static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j - 1)];
    }
    double at(int k, int i, int j) const {
        return x[(static_cast<std::size_t>(k) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i)) *
                     static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(j - 1)];
    }
};

/// One active node of the branch-and-price tree.
struct Node {
    long id = 0;
    int depth = 0;
    NodeConstraints constraints;
    std::shared_ptr<const std::vector<ColumnPtr>> parent_pool;
    double bound = 0.0; // parent relaxation objective; -inf sentinel at the root
};

struct SearchParams {
    RelaxParams relax;
    double int_tol = 1e-6;
    long node_budget = 1000000;
    double time_budget_s = 0.0; // 0 = unlimited
    // Test hook: called with the active list after every branching step.
    std::function<void(const std::vector<Node>&)> frontier_hook;
};

struct SearchResult {
    enum class Status { solved, node_budget_exceeded, time_budget_exceeded, error };

    Status status = Status::error;
    FullSolution incumbent;
    std::int64_t objective = 0;
    double lower_bound = 0.0;
    long nodes_explored = 0;
    long columns_generated = 0;
    double wall_ms = 0.0;
    double pricing_ms = 0.0; // machine-parallel phases
    double flows_ms = 0.0;
    std::vector<long> explored_ids; // in order of solve start
    std::vector<std::string> diagnostics;

    bool solved() const { return status == Status::solved; }
    double serial_ms() const { return wall_ms - pricing_ms - flows_ms; }
};

/// X_ij^k = sum over pool columns of delta_ij * x. Machine-major work,
/// parallel over machines with lane-count-independent results.
FlowMatrix flows(int n, int m, const std::vector<ColumnPtr>& pool, const std::vector<double>& x);

/// Arc whose flow has the largest integer infeasibility (closest to 0.5),
/// ties broken lexicographically; nullopt when all flows are integral.
std::optional<Arc> select_edge(const FlowMatrix& flows, double int_tol);

/// Child constraint sets for branching on `arc`: (forced child, forbidden child).
std::pair<NodeConstraints, NodeConstraints> branch(const NodeConstraints& parent, const Arc& arc);

bool is_integer(const std::vector<double>& x, double int_tol);

/// Lazy depth-first branch-and-price: solve a node's relaxation, branch on the
/// most fractional flow, always explore the deepest active node next, stop at
/// the first integral relaxation. The root is warm-started from the greedy
/// baseline.
SearchResult solve_dfs(const Instance& inst, const SearchParams& params = {});

/// Same search run by an in-process master/worker pool: the master owns the
/// active list, branches and assigns nodes; workers solve relaxations.
/// workers = 1 reproduces solve_dfs node for node.
SearchResult solve_dfs_pool(const Instance& inst, int workers, const SearchParams& params = {});

} // namespace bnpsched
