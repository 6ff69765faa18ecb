#include "bnpsched/column.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnpsched {

int Column::delta(int i, int j) const {
    int count = 0;
    int prev = 0;
    for (int cur : seq) {
        if (prev == i && cur == j) ++count;
        prev = cur;
    }
    return count;
}

std::int64_t Column::makespan(const Instance& inst) const {
    std::int64_t t = 0;
    int prev = 0;
    for (int j : seq) {
        t += inst.setup(machine, prev, j) + inst.proc(machine, j);
        prev = j;
    }
    return t;
}

Column evaluate(const Instance& inst, int machine, std::vector<int> seq) {
    if (machine < 0 || machine >= inst.machines()) throw std::invalid_argument("machine index out of range");
    Column col;
    col.machine = machine;
    col.coverage.assign(static_cast<std::size_t>(inst.jobs()) + 1, 0);
    std::int64_t t = 0;
    int prev = 0;
    for (int j : seq) {
        if (j < 1 || j > inst.jobs()) throw std::invalid_argument("job id " + std::to_string(j) + " out of range");
        if (!inst.eligible(machine, j))
            throw std::invalid_argument("job " + std::to_string(j) + " is not eligible on machine " +
                                        std::to_string(machine));
        t += inst.setup(machine, prev, j) + inst.proc(machine, j);
        col.cost += inst.weight(j) * t;
        ++col.coverage[static_cast<std::size_t>(j)];
        prev = j;
    }
    col.seq = std::move(seq);
    return col;
}

double reduced_cost(const Column& col, std::span<const double> pi, double sigma_k) {
    double value = static_cast<double>(col.cost) - sigma_k;
    for (std::size_t j = 1; j < col.coverage.size(); ++j)
        if (col.coverage[j] != 0) value -= static_cast<double>(col.coverage[j]) * pi[j];
    return value;
}

namespace {

bool contains_job(const Column& col, int j) {
    return j >= 1 && j < static_cast<int>(col.coverage.size()) && col.coverage[static_cast<std::size_t>(j)] > 0;
}

// Forced-arc admissibility: on the arc's machine every occurrence of i must be
// immediately followed by j and every occurrence of j immediately preceded by
// i; on any other machine the column may contain neither job (only j when i
// is the fictitious start, which exists on every machine).
bool respects_forced(const Column& col, const Arc& a) {
    if (col.machine != a.k) {
        if (contains_job(col, a.j)) return false;
        if (a.i >= 1 && contains_job(col, a.i)) return false;
        return true;
    }
    int prev = 0;
    for (std::size_t r = 0; r < col.seq.size(); ++r) {
        const int cur = col.seq[r];
        if (prev == a.i && cur != a.j) return false;
        if (cur == a.j && prev != a.i) return false;
        prev = cur;
    }
    if (prev == a.i) return false; // i last, never followed by j
    return true;
}

} // namespace

bool satisfies(const Column& col, const NodeConstraints& constraints) {
    for (const Arc& a : constraints.forbidden())
        if (col.machine == a.k && col.delta(a.i, a.j) >= 1) return false;
    for (const Arc& a : constraints.forced())
        if (!respects_forced(col, a)) return false;
    return true;
}

VerifyResult verify(const Instance& inst, const FullSolution& sol) {
    VerifyResult res;
    const int n = inst.jobs();
    std::vector<int> covered(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> machine_use(static_cast<std::size_t>(inst.machines()), 0);

    for (const Column& col : sol.columns) {
        if (col.machine < 0 || col.machine >= inst.machines()) {
            res.violations.push_back("column references machine " + std::to_string(col.machine) +
                                     " outside the instance");
            continue;
        }
        ++machine_use[static_cast<std::size_t>(col.machine)];
        std::vector<int> local(static_cast<std::size_t>(n) + 1, 0);
        bool evaluable = true;
        for (int j : col.seq) {
            if (j < 1 || j > n) {
                res.violations.push_back("column on machine " + std::to_string(col.machine) + " names job " +
                                         std::to_string(j) + " outside the instance");
                evaluable = false;
                break;
            }
            if (!inst.eligible(col.machine, j)) {
                res.violations.push_back("job " + std::to_string(j) + " is not eligible on machine " +
                                         std::to_string(col.machine));
                evaluable = false;
            }
            ++local[static_cast<std::size_t>(j)];
        }
        if (!evaluable) continue;
        for (int j = 1; j <= n; ++j) {
            if (local[static_cast<std::size_t>(j)] > 1)
                res.violations.push_back("column on machine " + std::to_string(col.machine) + " is cyclic: job " +
                                         std::to_string(j) + " appears " +
                                         std::to_string(local[static_cast<std::size_t>(j)]) + " times");
            covered[static_cast<std::size_t>(j)] += local[static_cast<std::size_t>(j)];
        }
        res.objective += evaluate(inst, col.machine, col.seq).cost;
    }

    for (int k = 0; k < inst.machines(); ++k)
        if (machine_use[static_cast<std::size_t>(k)] > 1)
            res.violations.push_back("machine " + std::to_string(k) + " carries " +
                                     std::to_string(machine_use[static_cast<std::size_t>(k)]) + " columns");
    for (int j = 1; j <= n; ++j)
        if (covered[static_cast<std::size_t>(j)] != 1)
            res.violations.push_back("job " + std::to_string(j) + " covered " +
                                     std::to_string(covered[static_cast<std::size_t>(j)]) + " times");
    return res;
}

} // namespace bnpsched
