#include "bnpsched/constraints.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bnpsched {

namespace {
std::string arc_str(const Arc& a) {
    return "(" + std::to_string(a.k) + ", " + std::to_string(a.i) + ", " + std::to_string(a.j) + ")";
}
} // namespace

bool NodeConstraints::is_forced(const Arc& a) const {
    return std::find(forced_.begin(), forced_.end(), a) != forced_.end();
}

bool NodeConstraints::is_forbidden(const Arc& a) const {
    return std::find(forbidden_.begin(), forbidden_.end(), a) != forbidden_.end();
}

NodeConstraints NodeConstraints::with_forced(const Arc& a) const {
    if (constrains(a)) throw std::invalid_argument("arc " + arc_str(a) + " is already constrained");
    for (const Arc& f : forced_) {
        if (f.k == a.k && f.i == a.i && a.i >= 1)
            throw std::invalid_argument("forced arcs " + arc_str(f) + " and " + arc_str(a) +
                                        " share the same predecessor");
        if (f.k == a.k && f.j == a.j)
            throw std::invalid_argument("forced arcs " + arc_str(f) + " and " + arc_str(a) +
                                        " share the same successor");
    }
    NodeConstraints out = *this;
    out.forced_.push_back(a);
    return out;
}

NodeConstraints NodeConstraints::with_forbidden(const Arc& a) const {
    if (constrains(a)) throw std::invalid_argument("arc " + arc_str(a) + " is already constrained");
    NodeConstraints out = *this;
    out.forbidden_.push_back(a);
    return out;
}

} // namespace bnpsched
