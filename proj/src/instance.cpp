#include "bnpsched/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bnpsched {

Instance::Instance(int n, int m) : n_(n), m_(m) {
    if (n < 0 || m < 0) throw std::invalid_argument("instance dimensions must be nonnegative");
    w_.assign(static_cast<std::size_t>(n) + 1, 0);
    elig_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0);
    p_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0);
    s_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n), 0);
    elig_jobs_.assign(static_cast<std::size_t>(m), {});
}

void Instance::refresh() {
    for (int k = 0; k < m_; ++k) {
        auto& v = elig_jobs_[static_cast<std::size_t>(k)];
        v.clear();
        for (int j = 1; j <= n_; ++j)
            if (eligible(k, j)) v.push_back(j);
    }
}

namespace {

// Rejection-sampled bounded draw; uniform_int_distribution is
// implementation-defined and would break cross-platform determinism.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % range;
}

std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Canonical 53-bit mantissa draw in [0, 1).
double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_range(const char* name, std::int64_t lo, std::int64_t hi, std::int64_t min_lo) {
    if (lo < min_lo || hi < lo) {
        std::ostringstream os;
        os << "invalid " << name << " range [" << lo << ", " << hi << "]";
        throw std::invalid_argument(os.str());
    }
}

} // namespace

Instance generate(const GenConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("job count must be >= 1");
    if (cfg.m < 1) throw std::invalid_argument("machine count must be >= 1");
    check_range("processing-time", cfg.p_lo, cfg.p_hi, 0);
    check_range("setup-time", cfg.s_lo, cfg.s_hi, 0);
    check_range("weight", cfg.w_lo, cfg.w_hi, 1);
    if (!(cfg.elig_prob > 0.0 && cfg.elig_prob <= 1.0))
        throw std::invalid_argument("eligibility probability must be in (0, 1]");

    std::mt19937_64 rng(cfg.seed);
    Instance inst(cfg.n, cfg.m);

    // Draw order is fixed: weights, eligibility, repair, processing, setups.
    for (int j = 1; j <= cfg.n; ++j) inst.set_weight(j, draw_int(rng, cfg.w_lo, cfg.w_hi));

    for (int k = 0; k < cfg.m; ++k)
        for (int j = 1; j <= cfg.n; ++j) inst.set_eligible(k, j, draw_unit(rng) < cfg.elig_prob);

    for (int j = 1; j <= cfg.n; ++j) {
        bool any = false;
        for (int k = 0; k < cfg.m && !any; ++k) any = inst.eligible(k, j);
        if (!any) inst.set_eligible(static_cast<int>(bounded(rng, static_cast<std::uint64_t>(cfg.m))), j, true);
    }

    // Processing and setup values are drawn for every pair to keep the stream
    // and the file layout rectangular; entries for ineligible pairs and the
    // i == j diagonal are never consulted.
    for (int k = 0; k < cfg.m; ++k)
        for (int j = 1; j <= cfg.n; ++j) inst.set_proc(k, j, draw_int(rng, cfg.p_lo, cfg.p_hi));

    for (int k = 0; k < cfg.m; ++k)
        for (int i = 0; i <= cfg.n; ++i)
            for (int j = 1; j <= cfg.n; ++j) inst.set_setup(k, i, j, draw_int(rng, cfg.s_lo, cfg.s_hi));

    inst.refresh();
    return inst;
}

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.jobs() < 1) out.push_back("job count must be >= 1");
    if (inst.machines() < 1) out.push_back("machine count must be >= 1");
    if (!out.empty()) return out;

    for (int j = 1; j <= inst.jobs(); ++j) {
        if (inst.weight(j) < 1) out.push_back("weight of job " + std::to_string(j) + " is below the bound w >= 1");
        bool any = false;
        for (int k = 0; k < inst.machines() && !any; ++k) any = inst.eligible(k, j);
        if (!any) out.push_back("job " + std::to_string(j) + " has no eligible machine");
    }
    for (int k = 0; k < inst.machines(); ++k) {
        for (int j = 1; j <= inst.jobs(); ++j) {
            if (!inst.eligible(k, j)) continue;
            if (inst.proc(k, j) < 0)
                out.push_back("processing time of job " + std::to_string(j) + " on machine " + std::to_string(k) +
                              " is negative");
            for (int i = 0; i <= inst.jobs(); ++i) {
                if (i == j) continue;
                if (inst.setup(k, i, j) < 0)
                    out.push_back("setup time (" + std::to_string(i) + " -> " + std::to_string(j) + ") on machine " +
                                  std::to_string(k) + " is negative");
            }
        }
    }
    return out;
}

std::int64_t horizon(const Instance& inst) {
    std::int64_t best = 0;
    for (int k = 0; k < inst.machines(); ++k) {
        std::int64_t total = 0;
        for (int j : inst.eligible_jobs(k)) {
            std::int64_t worst_setup = 0;
            for (int i = 0; i <= inst.jobs(); ++i)
                if (i != j) worst_setup = std::max(worst_setup, inst.setup(k, i, j));
            total += inst.proc(k, j) + worst_setup;
        }
        best = std::max(best, total);
    }
    return best;
}

std::string to_json(const Instance& inst) {
    nlohmann::json j;
    const int n = inst.jobs();
    const int m = inst.machines();
    j["n"] = n;
    j["m"] = m;
    auto& weights = j["weights"] = nlohmann::json::array();
    for (int jj = 1; jj <= n; ++jj) weights.push_back(inst.weight(jj));
    auto& elig = j["eligible"] = nlohmann::json::array();
    auto& proc = j["processing"] = nlohmann::json::array();
    auto& setup = j["setup"] = nlohmann::json::array();
    for (int k = 0; k < m; ++k) {
        nlohmann::json erow = nlohmann::json::array();
        nlohmann::json prow = nlohmann::json::array();
        for (int jj = 1; jj <= n; ++jj) {
            erow.push_back(inst.eligible(k, jj));
            prow.push_back(inst.proc(k, jj));
        }
        elig.push_back(std::move(erow));
        proc.push_back(std::move(prow));
        nlohmann::json smat = nlohmann::json::array();
        for (int i = 0; i <= n; ++i) {
            nlohmann::json srow = nlohmann::json::array();
            for (int jj = 1; jj <= n; ++jj) srow.push_back(inst.setup(k, i, jj));
            smat.push_back(std::move(srow));
        }
        setup.push_back(std::move(smat));
    }
    return j.dump();
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
    return *it;
}

void require_array(const nlohmann::json& j, const char* what, std::size_t size) {
    if (!j.is_array() || j.size() != size)
        throw ParseError(std::string(what) + " must be an array of length " + std::to_string(size));
}

} // namespace

Instance from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("instance file must hold a JSON object");

    const int n = field(j, "n").get<int>();
    const int m = field(j, "m").get<int>();
    if (n < 0 || m < 0) throw ParseError("dimensions must be nonnegative");

    Instance inst(n, m);
    const auto& weights = field(j, "weights");
    require_array(weights, "'weights'", static_cast<std::size_t>(n));
    for (int jj = 1; jj <= n; ++jj) inst.set_weight(jj, weights[static_cast<std::size_t>(jj - 1)].get<std::int64_t>());

    const auto& elig = field(j, "eligible");
    const auto& proc = field(j, "processing");
    const auto& setup = field(j, "setup");
    require_array(elig, "'eligible'", static_cast<std::size_t>(m));
    require_array(proc, "'processing'", static_cast<std::size_t>(m));
    require_array(setup, "'setup'", static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const auto& erow = elig[static_cast<std::size_t>(k)];
        const auto& prow = proc[static_cast<std::size_t>(k)];
        const auto& smat = setup[static_cast<std::size_t>(k)];
        require_array(erow, "'eligible' row", static_cast<std::size_t>(n));
        require_array(prow, "'processing' row", static_cast<std::size_t>(n));
        require_array(smat, "'setup' block", static_cast<std::size_t>(n) + 1);
        for (int jj = 1; jj <= n; ++jj) {
            inst.set_eligible(k, jj, erow[static_cast<std::size_t>(jj - 1)].get<bool>());
            inst.set_proc(k, jj, prow[static_cast<std::size_t>(jj - 1)].get<std::int64_t>());
        }
        for (int i = 0; i <= n; ++i) {
            const auto& srow = smat[static_cast<std::size_t>(i)];
            require_array(srow, "'setup' row", static_cast<std::size_t>(n));
            for (int jj = 1; jj <= n; ++jj)
                inst.set_setup(k, i, jj, srow[static_cast<std::size_t>(jj - 1)].get<std::int64_t>());
        }
    }
    inst.refresh();

    auto problems = validate(inst);
    if (!problems.empty()) {
        std::string msg = "instance violates invariants:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
    return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    out << to_json(inst) << '\n';
    if (!out) throw std::runtime_error("write to " + file.string() + " failed");
}

Instance load_instance(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

} // namespace bnpsched
