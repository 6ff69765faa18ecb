#include "bnpsched/baseline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace bnpsched {

FullSolution sched(const Instance& inst) {
    const int n = inst.jobs();
    const int m = inst.machines();
    std::vector<std::int64_t> completion(static_cast<std::size_t>(m), 0);
    std::vector<int> last(static_cast<std::size_t>(m), 0);
    std::vector<std::vector<int>> seqs(static_cast<std::size_t>(m));
    std::vector<bool> remaining(static_cast<std::size_t>(n) + 1, true);

    for (int placed = 0; placed < n; ++placed) {
        int best_j = -1, best_k = -1;
        std::int64_t best_num = 0, best_den = 1;
        for (int j = 1; j <= n; ++j) {
            if (!remaining[static_cast<std::size_t>(j)]) continue;
            for (int k = 0; k < m; ++k) {
                if (!inst.eligible(k, j)) continue;
                const std::int64_t num =
                    completion[static_cast<std::size_t>(k)] + inst.setup(k, last[static_cast<std::size_t>(k)], j) +
                    inst.proc(k, j);
                // Compare num/w ratios exactly: num * w_best < best_num * w.
                if (best_j < 0 || num * best_den < best_num * inst.weight(j)) {
                    best_j = j;
                    best_k = k;
                    best_num = num;
                    best_den = inst.weight(j);
                }
            }
        }
        if (best_j < 0) throw std::invalid_argument("instance leaves a job with no eligible machine");
        completion[static_cast<std::size_t>(best_k)] = best_num;
        last[static_cast<std::size_t>(best_k)] = best_j;
        seqs[static_cast<std::size_t>(best_k)].push_back(best_j);
        remaining[static_cast<std::size_t>(best_j)] = false;
    }

    FullSolution sol;
    for (int k = 0; k < m; ++k) {
        if (seqs[static_cast<std::size_t>(k)].empty()) continue;
        sol.columns.push_back(evaluate(inst, k, std::move(seqs[static_cast<std::size_t>(k)])));
        sol.objective += sol.columns.back().cost;
    }
    return sol;
}

namespace {

struct OrderCost {
    std::int64_t cost = 0;
    std::vector<int> order;
};

// Cheapest ordering of a fixed job subset on one machine, by enumeration.
OrderCost best_order(const Instance& inst, int k, const std::vector<int>& jobs) {
    OrderCost best;
    if (jobs.empty()) return best;
    std::vector<int> perm = jobs;
    std::sort(perm.begin(), perm.end());
    best.cost = std::numeric_limits<std::int64_t>::max();
    do {
        std::int64_t t = 0, cost = 0;
        int prev = 0;
        for (int j : perm) {
            t += inst.setup(k, prev, j) + inst.proc(k, j);
            cost += inst.weight(j) * t;
            prev = j;
            if (cost >= best.cost) break;
        }
        if (cost < best.cost) {
            best.cost = cost;
            best.order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct Enumerator {
    const Instance& inst;
    std::vector<std::vector<int>> assigned; // per machine
    std::vector<std::unordered_map<std::uint32_t, OrderCost>> memo;
    std::int64_t best_obj = std::numeric_limits<std::int64_t>::max();
    std::vector<std::vector<int>> best_orders;

    explicit Enumerator(const Instance& i)
        : inst(i), assigned(static_cast<std::size_t>(i.machines())),
          memo(static_cast<std::size_t>(i.machines())), best_orders(static_cast<std::size_t>(i.machines())) {}

    const OrderCost& machine_cost(int k) {
        std::uint32_t mask = 0;
        for (int j : assigned[static_cast<std::size_t>(k)]) mask |= 1u << (j - 1);
        auto [it, fresh] = memo[static_cast<std::size_t>(k)].try_emplace(mask);
        if (fresh) it->second = best_order(inst, k, assigned[static_cast<std::size_t>(k)]);
        return it->second;
    }

    void recurse(int j) {
        if (j > inst.jobs()) {
            std::int64_t total = 0;
            for (int k = 0; k < inst.machines(); ++k) total += machine_cost(k).cost;
            if (total < best_obj) {
                best_obj = total;
                for (int k = 0; k < inst.machines(); ++k)
                    best_orders[static_cast<std::size_t>(k)] = machine_cost(k).order;
            }
            return;
        }
        for (int k = 0; k < inst.machines(); ++k) {
            if (!inst.eligible(k, j)) continue;
            assigned[static_cast<std::size_t>(k)].push_back(j);
            recurse(j + 1);
            assigned[static_cast<std::size_t>(k)].pop_back();
        }
    }
};

} // namespace

BruteForceResult brute_force(const Instance& inst, int cap) {
    if (inst.jobs() > cap)
        throw std::invalid_argument("brute force refused: " + std::to_string(inst.jobs()) + " jobs exceed the cap of " +
                                    std::to_string(cap));
    if (inst.jobs() > 31) throw std::invalid_argument("brute force supports at most 31 jobs");

    Enumerator e(inst);
    e.recurse(1);
    if (e.best_obj == std::numeric_limits<std::int64_t>::max())
        throw std::invalid_argument("no feasible assignment exists");

    BruteForceResult out;
    out.objective = e.best_obj;
    for (int k = 0; k < inst.machines(); ++k) {
        if (e.best_orders[static_cast<std::size_t>(k)].empty()) continue;
        out.solution.columns.push_back(evaluate(inst, k, e.best_orders[static_cast<std::size_t>(k)]));
    }
    for (const Column& col : out.solution.columns) out.solution.objective += col.cost;
    return out;
}

} // namespace bnpsched
