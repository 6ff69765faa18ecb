#pragma once

#include <compare>
#include <vector>

namespace bnpsched {

/// Directed setup arc on one machine: i immediately before j on machine k.
/// i ranges over 0..n with 0 = "first on the machine"; j over 1..n.
struct Arc {
    int k = 0;
    int i = 0;
    int j = 0;
    auto operator<=>(const Arc&) const = default;
};

/// Branching state of one search-tree node: arcs forced into and banned from
/// every schedule of the affected machine. A forced arc (k, i, j) additionally
/// pins i (when i >= 1) and j to machine k.
class NodeConstraints {
public:
    const std::vector<Arc>& forced() const { return forced_; }
    const std::vector<Arc>& forbidden() const { return forbidden_; }

    bool is_forced(const Arc& a) const;
    bool is_forbidden(const Arc& a) const;
    bool constrains(const Arc& a) const { return is_forced(a) || is_forbidden(a); }
    bool empty() const { return forced_.empty() && forbidden_.empty(); }

    /// Returns a copy with the arc added; throws if the arc is already
    /// constrained or a forced arc would collide with an existing one
    /// (two forced arcs may not share (k, i) with i >= 1, nor (k, ., j)).
    NodeConstraints with_forced(const Arc& a) const;
    NodeConstraints with_forbidden(const Arc& a) const;

private:
    std::vector<Arc> forced_;
    std::vector<Arc> forbidden_;
};

} // namespace bnpsched
