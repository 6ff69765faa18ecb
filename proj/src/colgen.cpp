#include "bnpsched/colgen.hpp"

#include <chrono>
#include <set>
#include <stdexcept>
#include <utility>

#include "bnpsched/lp.hpp"

namespace bnpsched {

namespace {

std::vector<std::pair<int, double>> coverage_coeffs(const Column& col) {
    std::vector<std::pair<int, double>> eq;
    for (std::size_t j = 1; j < col.coverage.size(); ++j)
        if (col.coverage[j] != 0) eq.emplace_back(static_cast<int>(j) - 1, static_cast<double>(col.coverage[j]));
    return eq;
}

} // namespace

RelaxationResult solve_relaxation(const Instance& inst, const NodeConstraints& constraints,
                                  std::vector<ColumnPtr> warm_pool, int T, const RelaxParams& params) {
    using clock = std::chrono::steady_clock;
    const int n = inst.jobs();
    const int m = inst.machines();

    // Artificial cost strictly above any genuine column cost: sum_j w_j * T
    // bounds every weighted completion time the horizon admits.
    std::int64_t weight_sum = 0;
    for (int j = 1; j <= n; ++j) weight_sum += inst.weight(j);
    const double big_m = static_cast<double>(weight_sum) * static_cast<double>(T) + 1.0;

    lp::Params lp_params;
    lp_params.max_pivots = params.max_lp_pivots;
    lp::Solver master(n, m, big_m, lp_params);

    RelaxationResult res;
    std::set<std::pair<int, std::vector<int>>> seen;
    for (auto& col : warm_pool) {
        if (!seen.emplace(col->machine, col->seq).second) continue; // pool hygiene
        master.add_column(static_cast<double>(col->cost), coverage_coeffs(*col), col->machine);
        res.pool.push_back(std::move(col));
    }

    const pricing::PredecessorSets preds = pricing::derive_predecessor_sets(inst, constraints);
    pricing::Table table;

    while (true) {
        if (params.cancel && params.cancel->load(std::memory_order_relaxed)) {
            res.status = RelaxationResult::Status::cancelled;
            return res;
        }
        if (res.iterations >= params.max_master_solves) {
            res.status = RelaxationResult::Status::iteration_limit;
            res.objective = master.objective();
            return res;
        }

        master.solve();
        ++res.iterations;

        res.duals.pi.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 1; j <= n; ++j) res.duals.pi[static_cast<std::size_t>(j)] = master.pi()[static_cast<std::size_t>(j - 1)];
        res.duals.sigma = master.sigma();

        const auto t0 = clock::now();
        const pricing::PriceResult priced = pricing::price(inst, preds, res.duals, T, table);
        res.pricing_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();

        if (!priced.found || priced.min_value >= -params.eps) break;

        auto cols = pricing::extract_columns(inst, table, res.duals, params.max_cols, params.eps);
        long added = 0;
        for (auto& col : cols) {
            if (!seen.emplace(col.machine, col.seq).second) continue;
            master.add_column(static_cast<double>(col.cost), coverage_coeffs(col), col.machine);
            res.pool.push_back(std::make_shared<const Column>(std::move(col)));
            ++added;
        }
        if (added == 0)
            throw std::logic_error("column generation stalled: pricing found value " +
                                   std::to_string(priced.min_value) + " but produced no new column");
        res.columns_generated += added;
    }

    res.status = master.max_artificial() > 1e-6 ? RelaxationResult::Status::infeasible
                                                : RelaxationResult::Status::optimal;
    res.objective = master.objective();
    res.x.resize(res.pool.size());
    for (std::size_t c = 0; c < res.pool.size(); ++c) res.x[c] = master.x(static_cast<int>(c));
    return res;
}

} // namespace bnpsched
