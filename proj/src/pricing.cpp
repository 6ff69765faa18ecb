#include "bnpsched/pricing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace bnpsched::pricing {

namespace {
std::atomic<int> g_lanes{1};
} // namespace

void set_lanes(int count) {
    if (count < 1) throw std::invalid_argument("lane count must be >= 1");
    g_lanes.store(count, std::memory_order_relaxed);
}

int lanes() { return g_lanes.load(std::memory_order_relaxed); }

PredecessorSets PredecessorSets::base(const Instance& inst) {
    PredecessorSets out;
    out.n = inst.jobs();
    out.m = inst.machines();
    out.preds.assign(static_cast<std::size_t>(out.m), {});
    out.can_end.assign(static_cast<std::size_t>(out.m), {});
    for (int k = 0; k < out.m; ++k) {
        auto& pk = out.preds[static_cast<std::size_t>(k)];
        auto& ek = out.can_end[static_cast<std::size_t>(k)];
        pk.assign(static_cast<std::size_t>(out.n) + 1, {});
        ek.assign(static_cast<std::size_t>(out.n) + 1, 0);
        const auto& elig = inst.eligible_jobs(k);
        for (int j : elig) {
            auto& pj = pk[static_cast<std::size_t>(j)];
            pj.reserve(elig.size());
            pj.push_back(0);
            for (int i : elig)
                if (i != j) pj.push_back(i);
            ek[static_cast<std::size_t>(j)] = 1;
        }
    }
    return out;
}

namespace {

void erase_value(std::vector<int>& v, int x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
}

// Drops job j from machine k entirely: as a state and as anyone's predecessor.
void remove_job_from_machine(PredecessorSets& ps, int k, int j) {
    auto& pk = ps.preds[static_cast<std::size_t>(k)];
    pk[static_cast<std::size_t>(j)].clear();
    ps.can_end[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = 0;
    for (auto& pl : pk) erase_value(pl, j);
}

} // namespace

PredecessorSets derive_predecessor_sets(const Instance& inst, const NodeConstraints& constraints) {
    PredecessorSets ps = PredecessorSets::base(inst);

    for (const Arc& a : constraints.forbidden())
        erase_value(ps.preds[static_cast<std::size_t>(a.k)][static_cast<std::size_t>(a.j)], a.i);

    for (const Arc& a : constraints.forced()) {
        auto& pk = ps.preds[static_cast<std::size_t>(a.k)];
        // Pin the two jobs to the arc's machine.
        for (int k = 0; k < ps.m; ++k) {
            if (k == a.k) continue;
            remove_job_from_machine(ps, k, a.j);
            if (a.i >= 1) remove_job_from_machine(ps, k, a.i);
        }
        // j accepts only i; i precedes nothing but j and cannot close a schedule.
        auto& pj = pk[static_cast<std::size_t>(a.j)];
        const bool i_allowed = std::find(pj.begin(), pj.end(), a.i) != pj.end();
        pj.clear();
        if (i_allowed) pj.push_back(a.i);
        for (int l = 1; l <= ps.n; ++l)
            if (l != a.j) erase_value(pk[static_cast<std::size_t>(l)], a.i);
        if (a.i >= 1) ps.can_end[static_cast<std::size_t>(a.k)][static_cast<std::size_t>(a.i)] = 0;
    }
    return ps;
}

double Table::value(int k, int job, int t) const {
    const MachineTable& mt = machines[static_cast<std::size_t>(k)];
    if (t < 0 || t > mt.horizon) return kUnreachable;
    const auto it = std::lower_bound(mt.jobs.begin(), mt.jobs.end(), job);
    if (it == mt.jobs.end() || *it != job) return kUnreachable;
    return mt.value(static_cast<int>(it - mt.jobs.begin()), t);
}

namespace {

struct LocalBest {
    double value = kUnreachable;
    int job = 0;
    int t = 0;
    bool found = false;
};

// Fills one machine's table. Returns false (with a message) instead of
// throwing so it can run inside a parallel region.
bool fill_machine(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T, int k,
                  Table::MachineTable& mt, LocalBest& best, std::string& error) {
    const auto& pk = preds.preds[static_cast<std::size_t>(k)];
    const auto& ek = preds.can_end[static_cast<std::size_t>(k)];

    mt.jobs.clear();
    for (int j = 1; j <= preds.n; ++j)
        if (!pk[static_cast<std::size_t>(j)].empty()) mt.jobs.push_back(j);
    const int L = static_cast<int>(mt.jobs.size());
    mt.horizon = T;
    mt.can_end.assign(static_cast<std::size_t>(L), 0);
    mt.f.assign(static_cast<std::size_t>(L) * static_cast<std::size_t>(T + 1), kUnreachable);
    mt.parent.assign(static_cast<std::size_t>(L) * static_cast<std::size_t>(T + 1), Table::kNoParent);
    best = {};
    if (L == 0) return true;

    std::vector<int> local_of(static_cast<std::size_t>(preds.n) + 1, -1);
    for (int l = 0; l < L; ++l) local_of[static_cast<std::size_t>(mt.jobs[static_cast<std::size_t>(l)])] = l;

    // Per local job: start offset (or 0 when the fictitious start is barred)
    // and flat (local pred, offset) transitions in ascending predecessor order.
    std::vector<std::int64_t> start_off(static_cast<std::size_t>(L), -1);
    std::vector<double> wj(static_cast<std::size_t>(L));
    std::vector<double> pij(static_cast<std::size_t>(L));
    std::vector<int> head(static_cast<std::size_t>(L) + 1, 0);
    std::vector<int> pred_local;
    std::vector<std::int64_t> pred_off;
    for (int l = 0; l < L; ++l) {
        const int gj = mt.jobs[static_cast<std::size_t>(l)];
        mt.can_end[static_cast<std::size_t>(l)] = ek[static_cast<std::size_t>(gj)];
        wj[static_cast<std::size_t>(l)] = static_cast<double>(inst.weight(gj));
        pij[static_cast<std::size_t>(l)] = duals.pi[static_cast<std::size_t>(gj)];
        for (int gi : pk[static_cast<std::size_t>(gj)]) {
            const std::int64_t off = inst.setup(k, gi, gj) + inst.proc(k, gj);
            if (off == 0) {
                error = "zero-duration transition " + std::to_string(gi) + " -> " + std::to_string(gj) +
                        " on machine " + std::to_string(k) + " admits unbounded cyclic schedules";
                return false;
            }
            if (gi == 0) {
                start_off[static_cast<std::size_t>(l)] = off;
            } else if (local_of[static_cast<std::size_t>(gi)] >= 0) {
                pred_local.push_back(local_of[static_cast<std::size_t>(gi)]);
                pred_off.push_back(off);
            }
        }
        head[static_cast<std::size_t>(l) + 1] = static_cast<int>(pred_local.size());
    }

    const double sigma = duals.sigma[static_cast<std::size_t>(k)];
    const std::size_t stride = static_cast<std::size_t>(T) + 1;
    double* f = mt.f.data();
    std::int32_t* par = mt.parent.data();

    for (int t = 1; t <= T; ++t) {
        for (int l = 0; l < L; ++l) {
            double bestv = kUnreachable;
            std::int32_t arg = Table::kNoParent;
            if (start_off[static_cast<std::size_t>(l)] == t) {
                bestv = -sigma;
                arg = Table::kFromStart;
            }
            for (int e = head[static_cast<std::size_t>(l)]; e < head[static_cast<std::size_t>(l) + 1]; ++e) {
                const std::int64_t tp = t - pred_off[static_cast<std::size_t>(e)];
                if (tp < 1) continue;
                const double cand = f[static_cast<std::size_t>(pred_local[static_cast<std::size_t>(e)]) * stride +
                                      static_cast<std::size_t>(tp)];
                if (cand < bestv) {
                    bestv = cand;
                    arg = pred_local[static_cast<std::size_t>(e)];
                }
            }
            if (bestv == kUnreachable) continue;
            const double step = wj[static_cast<std::size_t>(l)] * static_cast<double>(t) - pij[static_cast<std::size_t>(l)];
            const double value = bestv + step;
            f[static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(t)] = value;
            par[static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(t)] = arg;
            if (mt.can_end[static_cast<std::size_t>(l)]) {
                const int gj = mt.jobs[static_cast<std::size_t>(l)];
                if (value < best.value ||
                    (value == best.value && (gj < best.job || (gj == best.job && t < best.t)))) {
                    best.value = value;
                    best.job = gj;
                    best.t = t;
                    best.found = true;
                }
            }
        }
    }
    return true;
}

void validate_price_inputs(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T) {
    if (T < 1) throw std::invalid_argument("pricing horizon must be >= 1");
    if (preds.n != inst.jobs() || preds.m != inst.machines())
        throw std::invalid_argument("predecessor sets do not match the instance");
    if (duals.pi.size() != static_cast<std::size_t>(inst.jobs()) + 1 ||
        duals.sigma.size() != static_cast<std::size_t>(inst.machines()))
        throw std::invalid_argument("dual prices do not match the instance");
}

PriceResult merge_local(const std::vector<LocalBest>& local) {
    PriceResult out;
    for (std::size_t k = 0; k < local.size(); ++k) {
        if (!local[k].found) continue;
        if (!out.found || local[k].value < out.min_value) {
            out.found = true;
            out.min_value = local[k].value;
            out.machine = static_cast<int>(k);
            out.job = local[k].job;
            out.t = local[k].t;
        }
    }
    return out;
}

void raise_first_error(const std::vector<std::string>& errors) {
    for (const auto& e : errors)
        if (!e.empty()) throw std::invalid_argument(e);
}

} // namespace

PriceResult price(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T, Table& table) {
    validate_price_inputs(inst, preds, duals, T);
    const int m = inst.machines();
    table.machines.resize(static_cast<std::size_t>(m));
    std::vector<LocalBest> local(static_cast<std::size_t>(m));
    std::vector<std::string> errors(static_cast<std::size_t>(m));

    const int nlanes = lanes();
    if (nlanes > 1 && m > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(nlanes)
        for (int k = 0; k < m; ++k)
            fill_machine(inst, preds, duals, T, k, table.machines[static_cast<std::size_t>(k)],
                         local[static_cast<std::size_t>(k)], errors[static_cast<std::size_t>(k)]);
    } else {
        for (int k = 0; k < m; ++k)
            fill_machine(inst, preds, duals, T, k, table.machines[static_cast<std::size_t>(k)],
                         local[static_cast<std::size_t>(k)], errors[static_cast<std::size_t>(k)]);
    }
    raise_first_error(errors);
    return merge_local(local);
}

PriceResult price(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T) {
    Table table;
    return price(inst, preds, duals, T, table);
}

// Straightforward dense implementation over global job ids. Deliberately
// independent of the compacted kernel above; tests require both to produce
// bit-identical tables, so the candidate order and the floating-point
// expression must match fill_machine exactly.
PriceResult price_serial(const Instance& inst, const PredecessorSets& preds, const DualPrices& duals, int T,
                         Table& table) {
    validate_price_inputs(inst, preds, duals, T);
    const int n = inst.jobs();
    const int m = inst.machines();
    table.machines.resize(static_cast<std::size_t>(m));
    std::vector<LocalBest> local(static_cast<std::size_t>(m));

    const std::size_t stride = static_cast<std::size_t>(T) + 1;
    std::vector<double> fg;
    std::vector<std::int32_t> pg;

    for (int k = 0; k < m; ++k) {
        const auto& pk = preds.preds[static_cast<std::size_t>(k)];
        fg.assign(static_cast<std::size_t>(n + 1) * stride, kUnreachable);
        pg.assign(static_cast<std::size_t>(n + 1) * stride, Table::kNoParent);
        const double sigma = duals.sigma[static_cast<std::size_t>(k)];
        LocalBest& best = local[static_cast<std::size_t>(k)];

        for (int j = 1; j <= n; ++j)
            for (int i : pk[static_cast<std::size_t>(j)])
                if (inst.setup(k, i, j) + inst.proc(k, j) == 0)
                    throw std::invalid_argument("zero-duration transition " + std::to_string(i) + " -> " +
                                                std::to_string(j) + " on machine " + std::to_string(k) +
                                                " admits unbounded cyclic schedules");

        for (int t = 1; t <= T; ++t) {
            for (int j = 1; j <= n; ++j) {
                const auto& pj = pk[static_cast<std::size_t>(j)];
                if (pj.empty()) continue;
                double bestv = kUnreachable;
                std::int32_t arg = Table::kNoParent;
                for (int i : pj) {
                    const std::int64_t tp = t - (inst.setup(k, i, j) + inst.proc(k, j));
                    double cand;
                    if (i == 0) {
                        if (tp != 0) continue;
                        cand = -sigma;
                    } else {
                        if (tp < 1) continue;
                        cand = fg[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(tp)];
                    }
                    if (cand < bestv) {
                        bestv = cand;
                        arg = i; // global id here; Table::kFromStart when i == 0
                        if (i == 0) arg = Table::kFromStart;
                    }
                }
                if (bestv == kUnreachable) continue;
                const double step =
                    static_cast<double>(inst.weight(j)) * static_cast<double>(t) - duals.pi[static_cast<std::size_t>(j)];
                const double value = bestv + step;
                fg[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(t)] = value;
                pg[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(t)] = arg;
                if (preds.can_end[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
                    if (value < best.value ||
                        (value == best.value && (j < best.job || (j == best.job && t < best.t)))) {
                        best.value = value;
                        best.job = j;
                        best.t = t;
                        best.found = true;
                    }
                }
            }
        }

        // Copy into the compacted table layout shared with price().
        Table::MachineTable& mt = table.machines[static_cast<std::size_t>(k)];
        mt.jobs.clear();
        for (int j = 1; j <= n; ++j)
            if (!pk[static_cast<std::size_t>(j)].empty()) mt.jobs.push_back(j);
        const int L = static_cast<int>(mt.jobs.size());
        mt.horizon = T;
        mt.can_end.assign(static_cast<std::size_t>(L), 0);
        mt.f.assign(static_cast<std::size_t>(L) * stride, kUnreachable);
        mt.parent.assign(static_cast<std::size_t>(L) * stride, Table::kNoParent);
        std::vector<int> local_of(static_cast<std::size_t>(n) + 1, -1);
        for (int l = 0; l < L; ++l) local_of[static_cast<std::size_t>(mt.jobs[static_cast<std::size_t>(l)])] = l;
        for (int l = 0; l < L; ++l) {
            const int gj = mt.jobs[static_cast<std::size_t>(l)];
            mt.can_end[static_cast<std::size_t>(l)] =
                preds.can_end[static_cast<std::size_t>(k)][static_cast<std::size_t>(gj)];
            for (int t = 0; t <= T; ++t) {
                const std::size_t src = static_cast<std::size_t>(gj) * stride + static_cast<std::size_t>(t);
                const std::size_t dst = static_cast<std::size_t>(l) * stride + static_cast<std::size_t>(t);
                mt.f[dst] = fg[src];
                const std::int32_t par = pg[src];
                mt.parent[dst] = par >= 1 ? local_of[static_cast<std::size_t>(par)] : par;
            }
        }
    }
    return merge_local(local);
}

namespace {

struct Candidate {
    double value;
    int machine;
    int job; // global
    int t;
    int local;

    bool operator<(const Candidate& o) const {
        if (value != o.value) return value < o.value;
        if (machine != o.machine) return machine < o.machine;
        if (job != o.job) return job < o.job;
        return t < o.t;
    }
};

std::vector<int> backtrack(const Instance& inst, const Table::MachineTable& mt, int machine, int local, int t) {
    std::vector<int> rev;
    int cur = local;
    int cur_t = t;
    while (true) {
        const int gj = mt.jobs[static_cast<std::size_t>(cur)];
        rev.push_back(gj);
        const std::int32_t par =
            mt.parent[static_cast<std::size_t>(cur) * static_cast<std::size_t>(mt.horizon + 1) + static_cast<std::size_t>(cur_t)];
        if (par == Table::kFromStart) break;
        if (par == Table::kNoParent) throw std::logic_error("pricing backtrack hit an unreachable state");
        const int gi = mt.jobs[static_cast<std::size_t>(par)];
        cur_t -= static_cast<int>(inst.setup(machine, gi, gj) + inst.proc(machine, gj));
        cur = par;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

} // namespace

std::vector<Column> extract_columns(const Instance& inst, const Table& table, const DualPrices& duals, int max_cols,
                                    double eps) {
    if (max_cols < 1) throw std::invalid_argument("max_cols must be >= 1");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");

    const int m = static_cast<int>(table.machines.size());
    std::vector<std::vector<Candidate>> per_machine(static_cast<std::size_t>(m));

    const int nlanes = lanes();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nlanes) if (nlanes > 1 && m > 1)
    for (int k = 0; k < m; ++k) {
        const Table::MachineTable& mt = table.machines[static_cast<std::size_t>(k)];
        auto& cands = per_machine[static_cast<std::size_t>(k)];
        const std::size_t stride = static_cast<std::size_t>(mt.horizon) + 1;
        for (int l = 0; l < static_cast<int>(mt.jobs.size()); ++l) {
            if (!mt.can_end[static_cast<std::size_t>(l)]) continue;
            const double* row = mt.f.data() + static_cast<std::size_t>(l) * stride;
            for (int t = 1; t <= mt.horizon; ++t)
                if (row[static_cast<std::size_t>(t)] < -eps)
                    cands.push_back({row[static_cast<std::size_t>(t)], k, mt.jobs[static_cast<std::size_t>(l)], t, l});
        }
        // Only the overall top max_cols can survive the merge.
        if (static_cast<int>(cands.size()) > max_cols) {
            std::nth_element(cands.begin(), cands.begin() + max_cols, cands.end());
            cands.resize(static_cast<std::size_t>(max_cols));
        }
    }

    std::vector<Candidate> all;
    for (auto& cands : per_machine) all.insert(all.end(), cands.begin(), cands.end());
    std::sort(all.begin(), all.end());

    std::vector<Column> out;
    std::set<std::pair<int, std::vector<int>>> seen;
    for (const Candidate& c : all) {
        if (static_cast<int>(out.size()) >= max_cols) break;
        auto seq = backtrack(inst, table.machines[static_cast<std::size_t>(c.machine)], c.machine, c.local, c.t);
        if (!seen.emplace(c.machine, seq).second) continue;
        Column col = evaluate(inst, c.machine, std::move(seq));
        const double rc = reduced_cost(col, duals.pi, duals.sigma[static_cast<std::size_t>(c.machine)]);
        if (std::fabs(rc - c.value) > 1e-6 * (1.0 + std::fabs(c.value)))
            throw std::logic_error("extracted column's reduced cost " + std::to_string(rc) +
                                   " disagrees with its table value " + std::to_string(c.value));
        out.push_back(std::move(col));
    }
    return out;
}

} // namespace bnpsched::pricing
