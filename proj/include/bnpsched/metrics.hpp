#pragma once

namespace bnpsched {

/// Percentage gap of a heuristic value Z above a positive lower bound:
/// 100 * (Z - LB) / LB.
double gap_lb(double z, double lb);

/// Improvement of the search heuristic over the greedy baseline:
/// 100 * (Z_sched - Z_dfs) / Z_sched, Z_sched > 0.
double gap_sched(double z_sched, double z_dfs);

/// Theoretical speedup 1 / (s + (1 - s) / k) for serial fraction s in [0, 1]
/// and k >= 1 lanes. k may be infinite, giving the 1/s limit.
double amdahl(double s, double k);

/// Phase-split wall-clock measurement of one instrumented run.
struct PhaseTiming {
    int lanes = 1;
    double wall_ms = 0.0;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
};

struct SpeedupRecord {
    int lanes = 1;
    double wall_ms = 0.0;
    double serial_ms = 0.0;   // of the multi-lane run
    double parallel_ms = 0.0;
    double serial_fraction = 0.0; // measured on the 1-lane reference
    double observed = 1.0;        // t(1 lane) / t(k lanes)
    double theoretical = 1.0;     // amdahl(serial_fraction, k)
};

/// Combines the 1-lane reference with a k-lane run. The serial fraction is
/// always taken from the reference; throws when the reference is not 1-lane.
SpeedupRecord measure(const PhaseTiming& one_lane, const PhaseTiming& k_lane);

} // namespace bnpsched
