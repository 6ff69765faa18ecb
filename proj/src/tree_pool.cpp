#include <atomic>
#include <condition_variable>
#include <deque>
#include <limits>
#include <mutex>
#include <thread>

#include "bnpsched/tree.hpp"
#include "tree_detail.hpp"

namespace bnpsched {

namespace {

/// Single-direction message channel between the master and the workers.
template <typename T>
class Channel {
public:
    void push(T value) {
        {
            std::lock_guard lock(mutex_);
            items_.push_back(std::move(value));
        }
        cv_.notify_one();
    }

    /// Blocks until an item arrives; nullopt once closed and drained.
    std::optional<T> pop() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return !items_.empty() || closed_; });
        if (items_.empty()) return std::nullopt;
        T value = std::move(items_.front());
        items_.pop_front();
        return value;
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        cv_.notify_all();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<T> items_;
    bool closed_ = false;
};

struct ResultMsg {
    Node node;
    RelaxationResult relax;
};

} // namespace

SearchResult solve_dfs_pool(const Instance& inst, int workers, const SearchParams& params) {
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    using detail::clock_type;
    const auto t0 = clock_type::now();

    SearchResult res;
    const std::int64_t T64 = horizon(inst);
    const int T = static_cast<int>(T64);

    std::atomic<bool> cancel{false};
    RelaxParams worker_relax = params.relax;
    worker_relax.cancel = &cancel;

    Channel<Node> tasks;
    Channel<ResultMsg> results;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            // Table 5 discipline: receive a node, solve its relaxation, send
            // the solved node back, repeat until the master closes the stream.
            while (auto node = tasks.pop()) {
                RelaxationResult relax =
                    solve_relaxation(inst, node->constraints,
                                     detail::filter_pool(*node->parent_pool, node->constraints), T, worker_relax);
                results.push(ResultMsg{std::move(*node), std::move(relax)});
            }
        });

    auto shut_down = [&] {
        cancel.store(true, std::memory_order_relaxed);
        tasks.close();
        for (auto& t : pool) t.join();
    };

    auto account = [&res](const RelaxationResult& relax) {
        res.columns_generated += relax.columns_generated;
        res.pricing_ms += static_cast<double>(relax.pricing_ns) / 1e6;
    };

    long next_id = 0;
    std::vector<Node> actives;
    std::vector<Node> in_flight;

    auto remaining_bound = [&] {
        return std::min(detail::frontier_bound(actives), detail::frontier_bound(in_flight));
    };

    auto fail = [&](SearchResult::Status status, std::string diagnostic) {
        res.lower_bound = remaining_bound();
        shut_down();
        res.status = status;
        res.diagnostics.push_back(std::move(diagnostic));
        res.wall_ms = detail::ms_since(t0);
        return std::move(res);
    };

    auto accept_incumbent = [&](FullSolution sol) {
        res.lower_bound = remaining_bound();
        shut_down();
        std::string problem;
        if (!detail::check_incumbent(inst, sol, T64, problem)) {
            res.status = SearchResult::Status::error;
            res.diagnostics.push_back(problem);
        } else {
            res.incumbent = std::move(sol);
            res.objective = res.incumbent.objective;
            res.lower_bound = std::min(static_cast<double>(res.objective), res.lower_bound);
            res.status = SearchResult::Status::solved;
        }
        res.wall_ms = detail::ms_since(t0);
        return std::move(res);
    };

    // The master solves the root relaxation itself (Table 4); workers only
    // ever see descendants.
    {
        Node root{next_id++, 0, {},
                  std::make_shared<const std::vector<ColumnPtr>>(detail::sched_columns(inst)),
                  -std::numeric_limits<double>::infinity()};
        const RelaxationResult relax = solve_relaxation(inst, root.constraints, *root.parent_pool, T, params.relax);
        ++res.nodes_explored;
        res.explored_ids.push_back(root.id);
        account(relax);

        detail::NodeOutcome outcome = detail::process_solved(inst, root, relax, next_id, params, res.flows_ms);
        switch (outcome.kind) {
        case detail::NodeOutcome::Kind::infeasible:
            return fail(SearchResult::Status::error, "root relaxation is infeasible");
        case detail::NodeOutcome::Kind::incumbent:
            return accept_incumbent(std::move(outcome.incumbent));
        case detail::NodeOutcome::Kind::failed:
            return fail(SearchResult::Status::error, outcome.diagnostic);
        case detail::NodeOutcome::Kind::branched:
            actives.push_back(std::move(outcome.forbid_child));
            actives.push_back(std::move(outcome.force_child));
            if (params.frontier_hook) params.frontier_hook(actives);
            break;
        }
    }

    while (true) {
        // Hand the deepest active nodes to every idle worker.
        while (static_cast<int>(in_flight.size()) < workers && !actives.empty()) {
            if (res.nodes_explored + static_cast<long>(in_flight.size()) >= params.node_budget) break;
            const std::size_t pick = detail::select_active(actives);
            Node node = std::move(actives[pick]);
            actives.erase(actives.begin() + static_cast<std::ptrdiff_t>(pick));
            res.explored_ids.push_back(node.id);
            in_flight.push_back(node);
            tasks.push(std::move(node));
        }

        if (in_flight.empty()) {
            if (!actives.empty()) // dispatch was blocked by the node budget
                return fail(SearchResult::Status::node_budget_exceeded,
                            "node budget of " + std::to_string(params.node_budget) + " exhausted");
            return fail(SearchResult::Status::error, "active list exhausted without an integral relaxation");
        }
        if (params.time_budget_s > 0 && detail::ms_since(t0) > params.time_budget_s * 1000.0)
            return fail(SearchResult::Status::time_budget_exceeded, "time budget exhausted");

        auto msg = results.pop();
        if (!msg) return fail(SearchResult::Status::error, "result channel closed unexpectedly");

        for (std::size_t i = 0; i < in_flight.size(); ++i)
            if (in_flight[i].id == msg->node.id) {
                in_flight.erase(in_flight.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        ++res.nodes_explored;
        account(msg->relax);

        detail::NodeOutcome outcome = detail::process_solved(inst, msg->node, msg->relax, next_id, params, res.flows_ms);
        switch (outcome.kind) {
        case detail::NodeOutcome::Kind::infeasible:
            continue;
        case detail::NodeOutcome::Kind::incumbent:
            return accept_incumbent(std::move(outcome.incumbent));
        case detail::NodeOutcome::Kind::branched:
            actives.push_back(std::move(outcome.forbid_child));
            actives.push_back(std::move(outcome.force_child));
            if (params.frontier_hook) params.frontier_hook(actives);
            continue;
        case detail::NodeOutcome::Kind::failed:
            return fail(SearchResult::Status::error, outcome.diagnostic);
        }
    }
}

} // namespace bnpsched
