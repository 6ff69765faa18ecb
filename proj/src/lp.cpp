#include "bnpsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bnpsched::lp {

Solver::Solver(int n_eq, int n_le, double big_m, Params params)
    : n_eq_(n_eq), n_le_(n_le), big_m_(big_m), params_(params) {
    if (n_eq < 0 || n_le < 0 || n_eq + n_le < 1) throw std::invalid_argument("solver needs at least one row");
    if (!(big_m > 0)) throw std::invalid_argument("artificial cost must be positive");

    const int R = rows();
    // Variable order: slacks for at-most rows, artificials for equality rows.
    vars_.reserve(static_cast<std::size_t>(R));
    for (int k = 0; k < n_le_; ++k) vars_.push_back({0.0, {{n_eq_ + k, 1.0}}});
    for (int j = 0; j < n_eq_; ++j) vars_.push_back({big_m_, {{j, 1.0}}});

    basis_.resize(static_cast<std::size_t>(R));
    var_row_.assign(vars_.size(), -1);
    for (int j = 0; j < n_eq_; ++j) {
        basis_[static_cast<std::size_t>(j)] = n_le_ + j;
        var_row_[static_cast<std::size_t>(n_le_ + j)] = j;
    }
    for (int k = 0; k < n_le_; ++k) {
        basis_[static_cast<std::size_t>(n_eq_ + k)] = k;
        var_row_[static_cast<std::size_t>(k)] = n_eq_ + k;
    }

    binv_.assign(static_cast<std::size_t>(R) * static_cast<std::size_t>(R), 0.0);
    for (int r = 0; r < R; ++r) binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(R) + static_cast<std::size_t>(r)] = 1.0;
    xb_.assign(static_cast<std::size_t>(R), 1.0); // every right-hand side is 1
    y_.assign(static_cast<std::size_t>(R), 0.0);
}

int Solver::add_column(double cost, const std::vector<std::pair<int, double>>& eq_coeffs, int le_row) {
    VarCol col;
    col.cost = cost;
    col.rows.reserve(eq_coeffs.size() + 1);
    for (auto [row, coeff] : eq_coeffs) {
        if (row < 0 || row >= n_eq_) throw std::invalid_argument("equality row index out of range");
        if (coeff != 0.0) col.rows.emplace_back(row, coeff);
    }
    if (le_row >= 0) {
        if (le_row >= n_le_) throw std::invalid_argument("at-most row index out of range");
        col.rows.emplace_back(n_eq_ + le_row, 1.0);
    }
    vars_.push_back(std::move(col));
    var_row_.push_back(-1);
    structural_.push_back(static_cast<int>(vars_.size()) - 1);
    duals_current_ = false;
    return n_structural_++;
}

void Solver::ftran(const VarCol& col, std::vector<double>& out) const {
    const int R = rows();
    out.assign(static_cast<std::size_t>(R), 0.0);
    for (auto [row, coeff] : col.rows) {
        const double* bc = binv_.data();
        for (int r = 0; r < R; ++r)
            out[static_cast<std::size_t>(r)] += coeff * bc[static_cast<std::size_t>(r) * static_cast<std::size_t>(R) + static_cast<std::size_t>(row)];
    }
}

void Solver::compute_duals() {
    const int R = rows();
    std::fill(y_.begin(), y_.end(), 0.0);
    for (int r = 0; r < R; ++r) {
        const double cb = vars_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])].cost;
        if (cb == 0.0) continue;
        const double* brow = binv_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(R);
        for (int c = 0; c < R; ++c) y_[static_cast<std::size_t>(c)] += cb * brow[static_cast<std::size_t>(c)];
    }
    pi_.assign(y_.begin(), y_.begin() + n_eq_);
    sigma_.assign(y_.begin() + n_eq_, y_.end());
    duals_current_ = true;
}

double Solver::column_reduced_cost(int structural) const {
    const VarCol& col = vars_[static_cast<std::size_t>(structural_[static_cast<std::size_t>(structural)])];
    double d = col.cost;
    for (auto [row, coeff] : col.rows) d -= coeff * y_[static_cast<std::size_t>(row)];
    return d;
}

namespace {
double sparse_reduced_cost(const double cost, const std::vector<std::pair<int, double>>& rows,
                           const std::vector<double>& y) {
    double d = cost;
    for (auto [row, coeff] : rows) d -= coeff * y[static_cast<std::size_t>(row)];
    return d;
}
} // namespace

int Solver::price_dantzig() const {
    int best = -1;
    double best_d = -1e-9;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (var_row_[v] >= 0) continue;
        const double d = sparse_reduced_cost(vars_[v].cost, vars_[v].rows, y_);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(v);
        }
    }
    return best;
}

int Solver::price_bland() const {
    for (std::size_t v = 0; v < vars_.size(); ++v) {
        if (var_row_[v] >= 0) continue;
        if (sparse_reduced_cost(vars_[v].cost, vars_[v].rows, y_) < -1e-9) return static_cast<int>(v);
    }
    return -1;
}

void Solver::refactorize() {
    const int R = rows();
    // Gauss-Jordan inversion of the basis matrix with partial pivoting.
    std::vector<double> aug(static_cast<std::size_t>(R) * static_cast<std::size_t>(2 * R), 0.0);
    auto at = [&](int r, int c) -> double& { return aug[static_cast<std::size_t>(r) * static_cast<std::size_t>(2 * R) + static_cast<std::size_t>(c)]; };
    for (int r = 0; r < R; ++r) at(r, R + r) = 1.0;
    for (int r = 0; r < R; ++r)
        for (auto [row, coeff] : vars_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])].rows) at(row, r) = coeff;

    for (int c = 0; c < R; ++c) {
        int piv = c;
        for (int r = c + 1; r < R; ++r)
            if (std::fabs(at(r, c)) > std::fabs(at(piv, c))) piv = r;
        if (std::fabs(at(piv, c)) < params_.pivot_tol) throw std::runtime_error("singular basis during refactorization");
        if (piv != c)
            for (int cc = 0; cc < 2 * R; ++cc) std::swap(at(piv, cc), at(c, cc));
        const double inv = 1.0 / at(c, c);
        for (int cc = 0; cc < 2 * R; ++cc) at(c, cc) *= inv;
        for (int r = 0; r < R; ++r) {
            if (r == c) continue;
            const double f = at(r, c);
            if (f == 0.0) continue;
            for (int cc = 0; cc < 2 * R; ++cc) at(r, cc) -= f * at(c, cc);
        }
    }
    for (int r = 0; r < R; ++r)
        for (int c = 0; c < R; ++c) binv_[static_cast<std::size_t>(r) * static_cast<std::size_t>(R) + static_cast<std::size_t>(c)] = at(r, R + c);

    // x_B = B^-1 b with b = ones.
    for (int r = 0; r < R; ++r) {
        double sum = 0.0;
        const double* brow = binv_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(R);
        for (int c = 0; c < R; ++c) sum += brow[static_cast<std::size_t>(c)];
        xb_[static_cast<std::size_t>(r)] = sum;
    }
    pivots_since_refactor_ = 0;
}

Status Solver::solve() {
    const int R = rows();
    std::vector<double> direction;
    long pivots_this_call = 0;

    while (true) {
        compute_duals();
        const int entering = degenerate_streak_ >= params_.bland_after ? price_bland() : price_dantzig();
        if (entering < 0) break;

        ftran(vars_[static_cast<std::size_t>(entering)], direction);

        int leave_row = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < R; ++r) {
            const double d = direction[static_cast<std::size_t>(r)];
            if (d <= params_.pivot_tol) continue;
            const double ratio = xb_[static_cast<std::size_t>(r)] / d;
            // Tie-break on the smallest leaving variable index (Bland-style).
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && (leave_row < 0 || basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave_row)])))
            {
                best_ratio = ratio;
                leave_row = r;
            }
        }
        if (leave_row < 0)
            throw std::runtime_error("LP is unbounded; master problems are bounded by construction");

        if (++pivots_this_call > params_.max_pivots)
            throw IterationLimitError("simplex exceeded the pivot limit of " + std::to_string(params_.max_pivots));

        degenerate_streak_ = best_ratio <= params_.feas_tol ? degenerate_streak_ + 1 : 0;

        // Pivot: replace basis_[leave_row] by the entering variable.
        const double piv = direction[static_cast<std::size_t>(leave_row)];
        double* brow_leave = binv_.data() + static_cast<std::size_t>(leave_row) * static_cast<std::size_t>(R);
        for (int c = 0; c < R; ++c) brow_leave[static_cast<std::size_t>(c)] /= piv;
        const double theta = xb_[static_cast<std::size_t>(leave_row)] / piv;
        xb_[static_cast<std::size_t>(leave_row)] = theta;
        for (int r = 0; r < R; ++r) {
            if (r == leave_row) continue;
            const double f = direction[static_cast<std::size_t>(r)];
            if (f == 0.0) continue;
            double* brow = binv_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(R);
            for (int c = 0; c < R; ++c) brow[static_cast<std::size_t>(c)] -= f * brow_leave[static_cast<std::size_t>(c)];
            xb_[static_cast<std::size_t>(r)] -= f * theta;
            if (xb_[static_cast<std::size_t>(r)] < 0.0 && xb_[static_cast<std::size_t>(r)] > -params_.feas_tol)
                xb_[static_cast<std::size_t>(r)] = 0.0;
        }

        var_row_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave_row)])] = -1;
        basis_[static_cast<std::size_t>(leave_row)] = entering;
        var_row_[static_cast<std::size_t>(entering)] = leave_row;
        ++total_pivots_;
        if (++pivots_since_refactor_ >= params_.refactor_every) refactorize();
    }

    return max_artificial() > params_.feas_tol ? Status::infeasible : Status::optimal;
}

double Solver::objective() const {
    double obj = 0.0;
    for (int s = 0; s < n_structural_; ++s) {
        const int v = structural_[static_cast<std::size_t>(s)];
        const int r = var_row_[static_cast<std::size_t>(v)];
        if (r >= 0) obj += vars_[static_cast<std::size_t>(v)].cost * xb_[static_cast<std::size_t>(r)];
    }
    return obj;
}

double Solver::x(int structural) const {
    const int v = structural_[static_cast<std::size_t>(structural)];
    const int r = var_row_[static_cast<std::size_t>(v)];
    return r >= 0 ? xb_[static_cast<std::size_t>(r)] : 0.0;
}

double Solver::max_artificial() const {
    double worst = 0.0;
    for (int j = 0; j < n_eq_; ++j) {
        const int r = var_row_[static_cast<std::size_t>(n_le_ + j)];
        if (r >= 0) worst = std::max(worst, xb_[static_cast<std::size_t>(r)]);
    }
    return worst;
}

Solution solve(const Problem& problem, Params params) {
    double cost_scale = 1.0;
    for (const auto& col : problem.cols) cost_scale += std::fabs(col.cost);
    Solver solver(problem.n_eq, problem.n_le, 1000.0 * cost_scale, params);
    for (const auto& col : problem.cols) solver.add_column(col.cost, col.eq, col.le_row);

    Solution out;
    out.status = solver.solve();
    out.pivots = solver.pivots();
    out.pi = solver.pi();
    out.sigma = solver.sigma();
    out.objective = solver.objective();
    out.x.resize(problem.cols.size());
    for (std::size_t c = 0; c < problem.cols.size(); ++c) out.x[c] = solver.x(static_cast<int>(c));
    return out;
}

} // namespace bnpsched::lp
