#include "bnpsched/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bnpsched/baseline.hpp"
#include "bnpsched/pricing.hpp"
#include "tree_detail.hpp"

namespace bnpsched {

FlowMatrix flows(int n, int m, const std::vector<ColumnPtr>& pool, const std::vector<double>& x) {
    if (pool.size() != x.size()) throw std::invalid_argument("pool and x must have matching size");
    FlowMatrix fm(n, m);

    const int nlanes = pricing::lanes();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nlanes) if (nlanes > 1 && m > 1)
    for (int k = 0; k < m; ++k) {
        for (std::size_t c = 0; c < pool.size(); ++c) {
            if (pool[c]->machine != k || x[c] == 0.0) continue;
            int prev = 0;
            for (int j : pool[c]->seq) {
                fm.at(k, prev, j) += x[c];
                prev = j;
            }
        }
    }
    return fm;
}

std::optional<Arc> select_edge(const FlowMatrix& fm, double int_tol) {
    std::optional<Arc> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < fm.m; ++k)
        for (int i = 0; i <= fm.n; ++i)
            for (int j = 1; j <= fm.n; ++j) {
                if (i == j) continue;
                const double v = fm.at(k, i, j);
                const double frac = v - std::floor(v);
                if (std::min(frac, 1.0 - frac) <= int_tol) continue;
                const double dist = std::fabs(v - 0.5);
                if (dist < best_dist) { // ties keep the lexicographically first
                    best_dist = dist;
                    best = Arc{k, i, j};
                }
            }
    return best;
}

std::pair<NodeConstraints, NodeConstraints> branch(const NodeConstraints& parent, const Arc& arc) {
    return {parent.with_forced(arc), parent.with_forbidden(arc)};
}

bool is_integer(const std::vector<double>& x, double int_tol) {
    for (double v : x)
        if (std::fabs(v) > int_tol && std::fabs(v - 1.0) > int_tol) return false;
    return true;
}

namespace detail {

std::vector<ColumnPtr> sched_columns(const Instance& inst) {
    FullSolution start = sched(inst);
    std::vector<ColumnPtr> pool;
    pool.reserve(start.columns.size());
    for (auto& col : start.columns) pool.push_back(std::make_shared<const Column>(std::move(col)));
    return pool;
}

std::vector<ColumnPtr> filter_pool(const std::vector<ColumnPtr>& pool, const NodeConstraints& constraints) {
    std::vector<ColumnPtr> out;
    out.reserve(pool.size());
    for (const auto& col : pool)
        if (satisfies(*col, constraints)) out.push_back(col);
    return out;
}

FullSolution decode_integral(const std::vector<ColumnPtr>& pool, const std::vector<double>& x) {
    FullSolution sol;
    for (std::size_t c = 0; c < pool.size(); ++c)
        if (x[c] > 0.5) sol.columns.push_back(*pool[c]);
    for (const Column& col : sol.columns) sol.objective += col.cost;
    return sol;
}

// Fallback for an integral flow matrix under a fractional x: walk the unique
// near-1 arcs from the fictitious start of each machine.
std::optional<FullSolution> decompose_integral_flows(const Instance& inst, const FlowMatrix& fm, double int_tol) {
    FullSolution sol;
    for (int k = 0; k < fm.m; ++k) {
        std::vector<int> seq;
        int cur = 0;
        while (true) {
            int next = 0;
            for (int j = 1; j <= fm.n; ++j) {
                if (j == cur) continue;
                if (std::fabs(fm.at(k, cur, j) - 1.0) <= int_tol) {
                    next = j;
                    break;
                }
            }
            if (next == 0) break;
            seq.push_back(next);
            if (seq.size() > static_cast<std::size_t>(fm.n)) return std::nullopt; // cycle guard
            cur = next;
        }
        if (!seq.empty()) sol.columns.push_back(evaluate(inst, k, std::move(seq)));
    }
    for (const Column& col : sol.columns) sol.objective += col.cost;
    if (!verify(inst, sol).ok()) return std::nullopt;
    return sol;
}

// The deepest active node wins; among equals the most recently pushed.
std::size_t select_active(const std::vector<Node>& actives) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < actives.size(); ++i)
        if (actives[i].depth >= actives[best].depth) best = i;
    return best;
}

double frontier_bound(const std::vector<Node>& actives) {
    double lb = std::numeric_limits<double>::infinity();
    for (const Node& node : actives) lb = std::min(lb, node.bound);
    return lb;
}

// Every returned incumbent must verify and fit under the horizon bound.
bool check_incumbent(const Instance& inst, const FullSolution& sol, std::int64_t T, std::string& problem) {
    const VerifyResult vr = verify(inst, sol);
    if (!vr.ok()) {
        problem = "incumbent fails verification: " + vr.violations.front();
        return false;
    }
    for (const Column& col : sol.columns)
        if (col.makespan(inst) > T) {
            problem = "incumbent column on machine " + std::to_string(col.machine) + " exceeds the horizon";
            return false;
        }
    return true;
}

NodeOutcome process_solved(const Instance& inst, const Node& node, const RelaxationResult& relax, long& next_id,
                           const SearchParams& params, double& flows_ms) {
    NodeOutcome out;
    if (relax.status == RelaxationResult::Status::infeasible) {
        out.kind = NodeOutcome::Kind::infeasible;
        return out;
    }
    if (relax.status != RelaxationResult::Status::optimal) {
        out.kind = NodeOutcome::Kind::failed;
        out.diagnostic = "node " + std::to_string(node.id) + ": column generation stopped without convergence";
        return out;
    }

    if (is_integer(relax.x, params.int_tol)) {
        out.kind = NodeOutcome::Kind::incumbent;
        out.incumbent = decode_integral(relax.pool, relax.x);
        return out;
    }

    const auto t0 = clock_type::now();
    const FlowMatrix fm = flows(inst.jobs(), inst.machines(), relax.pool, relax.x);
    const std::optional<Arc> arc = select_edge(fm, params.int_tol);
    flows_ms += ms_since(t0);

    if (!arc) {
        auto sol = decompose_integral_flows(inst, fm, params.int_tol);
        if (sol) {
            out.kind = NodeOutcome::Kind::incumbent;
            out.incumbent = std::move(*sol);
        } else {
            out.kind = NodeOutcome::Kind::failed;
            out.diagnostic =
                "node " + std::to_string(node.id) + ": fractional solution with integral flows failed to decompose";
        }
        return out;
    }
    if (node.constraints.constrains(*arc)) {
        out.kind = NodeOutcome::Kind::failed;
        out.diagnostic = "node " + std::to_string(node.id) + ": branching arc already constrained";
        return out;
    }

    auto [forced, forbidden] = branch(node.constraints, *arc);
    auto pool = std::make_shared<const std::vector<ColumnPtr>>(relax.pool);
    out.kind = NodeOutcome::Kind::branched;
    out.forbid_child = Node{next_id++, node.depth + 1, std::move(forbidden), pool, relax.objective};
    out.force_child = Node{next_id++, node.depth + 1, std::move(forced), pool, relax.objective};
    return out;
}

} // namespace detail

SearchResult solve_dfs(const Instance& inst, const SearchParams& params) {
    using detail::clock_type;
    const auto t0 = clock_type::now();
    SearchResult res;
    const std::int64_t T64 = horizon(inst);
    const int T = static_cast<int>(T64);

    auto finish = [&](SearchResult::Status status) {
        res.status = status;
        res.wall_ms = detail::ms_since(t0);
        return std::move(res);
    };

    long next_id = 0;
    std::vector<Node> actives;
    actives.push_back(Node{next_id++, 0, {},
                           std::make_shared<const std::vector<ColumnPtr>>(detail::sched_columns(inst)),
                           -std::numeric_limits<double>::infinity()});

    while (!actives.empty()) {
        if (res.nodes_explored >= params.node_budget) {
            res.lower_bound = detail::frontier_bound(actives);
            res.diagnostics.push_back("node budget of " + std::to_string(params.node_budget) + " exhausted");
            return finish(SearchResult::Status::node_budget_exceeded);
        }
        if (params.time_budget_s > 0 && detail::ms_since(t0) > params.time_budget_s * 1000.0) {
            res.lower_bound = detail::frontier_bound(actives);
            res.diagnostics.push_back("time budget exhausted");
            return finish(SearchResult::Status::time_budget_exceeded);
        }

        const std::size_t pick = detail::select_active(actives);
        Node node = std::move(actives[pick]);
        actives.erase(actives.begin() + static_cast<std::ptrdiff_t>(pick));

        const RelaxationResult relax = solve_relaxation(
            inst, node.constraints, detail::filter_pool(*node.parent_pool, node.constraints), T, params.relax);
        ++res.nodes_explored;
        res.explored_ids.push_back(node.id);
        res.columns_generated += relax.columns_generated;
        res.pricing_ms += static_cast<double>(relax.pricing_ns) / 1e6;

        detail::NodeOutcome outcome = detail::process_solved(inst, node, relax, next_id, params, res.flows_ms);
        switch (outcome.kind) {
        case detail::NodeOutcome::Kind::infeasible:
            continue;
        case detail::NodeOutcome::Kind::incumbent: {
            std::string problem;
            if (!detail::check_incumbent(inst, outcome.incumbent, T64, problem)) {
                res.diagnostics.push_back(problem);
                return finish(SearchResult::Status::error);
            }
            res.incumbent = std::move(outcome.incumbent);
            res.objective = res.incumbent.objective;
            res.lower_bound = std::min(static_cast<double>(res.objective), detail::frontier_bound(actives));
            return finish(SearchResult::Status::solved);
        }
        case detail::NodeOutcome::Kind::branched:
            actives.push_back(std::move(outcome.forbid_child));
            actives.push_back(std::move(outcome.force_child)); // explored first
            if (params.frontier_hook) params.frontier_hook(actives);
            continue;
        case detail::NodeOutcome::Kind::failed:
            res.lower_bound = detail::frontier_bound(actives);
            res.diagnostics.push_back(outcome.diagnostic);
            return finish(SearchResult::Status::error);
        }
    }

    res.diagnostics.push_back("active list exhausted without an integral relaxation");
    return finish(SearchResult::Status::error);
}

} // namespace bnpsched
