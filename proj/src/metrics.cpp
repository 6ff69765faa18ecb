#include "bnpsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bnpsched {

double gap_lb(double z, double lb) {
    if (!(lb > 0.0)) throw std::invalid_argument("gap_lb requires a positive lower bound");
    return 100.0 * (z - lb) / lb;
}

double gap_sched(double z_sched, double z_dfs) {
    if (!(z_sched > 0.0)) throw std::invalid_argument("gap_sched requires a positive baseline value");
    return 100.0 * (z_sched - z_dfs) / z_sched;
}

double amdahl(double s, double k) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("serial fraction must lie in [0, 1]");
    if (!(k >= 1.0)) throw std::invalid_argument("lane count must be >= 1");
    if (std::isinf(k)) return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
    return 1.0 / (s + (1.0 - s) / k);
}

SpeedupRecord measure(const PhaseTiming& one_lane, const PhaseTiming& k_lane) {
    if (one_lane.lanes != 1) throw std::invalid_argument("speedup needs a 1-lane reference run");
    if (!(one_lane.wall_ms > 0.0) || !(k_lane.wall_ms > 0.0))
        throw std::invalid_argument("wall times must be positive");

    SpeedupRecord rec;
    rec.lanes = k_lane.lanes;
    rec.wall_ms = k_lane.wall_ms;
    rec.serial_ms = k_lane.serial_ms;
    rec.parallel_ms = k_lane.parallel_ms;
    rec.serial_fraction = std::clamp(one_lane.serial_ms / one_lane.wall_ms, 0.0, 1.0);
    rec.observed = one_lane.wall_ms / k_lane.wall_ms;
    rec.theoretical = amdahl(rec.serial_fraction, static_cast<double>(k_lane.lanes));
    return rec;
}

} // namespace bnpsched
