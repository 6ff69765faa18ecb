#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnpsched {

/// Thrown when an instance file is structurally malformed.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when data parses but violates an instance invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem data for unrelated-parallel-machine scheduling with
/// sequence- and machine-dependent setup times and machine eligibility.
///
/// Jobs are 1..n; job 0 is the fictitious start job that only supplies
/// initial setup times. Machines are 0..m-1. Values are immutable after
/// construction; any number of threads may read one instance concurrently.
class Instance {
public:
    Instance() = default;
    Instance(int n, int m);

    int jobs() const { return n_; }
    int machines() const { return m_; }

    std::int64_t weight(int j) const { return w_[static_cast<std::size_t>(j)]; }
    bool eligible(int k, int j) const { return elig_[pj(k, j)] != 0; }
    std::int64_t proc(int k, int j) const { return p_[pj(k, j)]; }
    /// Setup time for running j directly after i on machine k; i = 0 means j is first.
    std::int64_t setup(int k, int i, int j) const { return s_[sij(k, i, j)]; }

    /// Jobs eligible on machine k, ascending.
    const std::vector<int>& eligible_jobs(int k) const { return elig_jobs_[static_cast<std::size_t>(k)]; }

    void set_weight(int j, std::int64_t w) { w_[static_cast<std::size_t>(j)] = w; }
    void set_eligible(int k, int j, bool e) { elig_[pj(k, j)] = e ? 1 : 0; }
    void set_proc(int k, int j, std::int64_t p) { p_[pj(k, j)] = p; }
    void set_setup(int k, int i, int j, std::int64_t s) { s_[sij(k, i, j)] = s; }

    /// Rebuilds the per-machine eligible-job lists; call after mutating eligibility.
    void refresh();

private:
    std::size_t pj(int k, int j) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1);
    }
    std::size_t sij(int k, int i, int j) const {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(i)) *
                   static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j - 1);
    }

    int n_ = 0;
    int m_ = 0;
    std::vector<std::int64_t> w_;       // [n+1], w_[0] unused
    std::vector<std::uint8_t> elig_;    // [m*n]
    std::vector<std::int64_t> p_;       // [m*n]
    std::vector<std::int64_t> s_;       // [m*(n+1)*n], predecessor 0 = fictitious job
    std::vector<std::vector<int>> elig_jobs_;
};

/// Parameters for the seeded instance generator.
struct GenConfig {
    int n = 0;
    int m = 0;
    std::int64_t p_lo = 10, p_hi = 100;
    std::int64_t s_lo = 0, s_hi = 10;
    std::int64_t w_lo = 1, w_hi = 10;
    double elig_prob = 0.2;
    std::uint64_t seed = 1;
};

/// Draws an instance from the configured uniform ranges. Fully deterministic
/// given the seed, including across platforms. Jobs left without an eligible
/// machine by the independent Bernoulli draws are repaired by granting one
/// machine drawn from the same stream.
Instance generate(const GenConfig& config);

/// Empty iff all instance invariants hold; otherwise one located message per violation.
std::vector<std::string> validate(const Instance& inst);

/// Upper bound on the makespan of any machine schedule in any feasible solution:
/// max over machines of sum over eligible jobs of (processing + worst-case setup).
std::int64_t horizon(const Instance& inst);

void save_instance(const Instance& inst, const std::filesystem::path& file);
Instance load_instance(const std::filesystem::path& file);

std::string to_json(const Instance& inst);
Instance from_json(const std::string& text);

} // namespace bnpsched
