#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace bnpsched::lp {

/// Thrown when a solve exceeds its pivot budget.
struct IterationLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Status { optimal, infeasible };

struct Params {
    double pivot_tol = 1e-9;       // smallest usable pivot element
    double feas_tol = 1e-7;        // residual below which a basic artificial counts as zero
    int bland_after = 50;          // consecutive degenerate pivots before Bland's rule engages
    int refactor_every = 128;      // pivots between basis reinversions
    long max_pivots = 500000;      // per solve() call
};

/// Minimization problem over nonnegative variables with `n_eq` equality rows
/// (right-hand side 1) and `n_le` at-most rows (right-hand side 1). Each
/// column carries sparse equality-row coefficients and membership in at most
/// one at-most row.
struct Problem {
    int n_eq = 0;
    int n_le = 0;
    struct Col {
        double cost = 0.0;
        std::vector<std::pair<int, double>> eq; // (equality row, coefficient)
        int le_row = -1;                        // -1: none
    };
    std::vector<Col> cols;
};

struct Solution {
    Status status = Status::optimal;
    double objective = 0.0;        // over structural variables only
    std::vector<double> x;         // per structural column
    std::vector<double> pi;        // equality-row duals
    std::vector<double> sigma;     // at-most-row duals (<= 0 at a minimization optimum)
    long pivots = 0;
};

/// Incremental revised simplex on a dense basis inverse. Equality rows start
/// with big-M artificial variables, at-most rows with slacks, so the initial
/// basis always exists; columns may be added between solve() calls and the
/// basis is reused. Single-threaded per instance.
class Solver {
public:
    Solver(int n_eq, int n_le, double big_m, Params params = {});

    int add_column(double cost, const std::vector<std::pair<int, double>>& eq_coeffs, int le_row);

    Status solve();

    double objective() const;
    /// Objective including artificial-variable penalties; monotone under
    /// primal simplex across incremental column additions.
    double full_objective() const;
    double x(int structural) const;
    const std::vector<double>& pi() const { return pi_; }
    const std::vector<double>& sigma() const { return sigma_; }
    double max_artificial() const;
    long pivots() const { return total_pivots_; }
    int columns() const { return n_structural_; }

    /// Reduced cost of a structural column under the current duals.
    double column_reduced_cost(int structural) const;

private:
    struct VarCol {
        double cost;
        std::vector<std::pair<int, double>> rows; // (row, coeff), row in 0..R-1
    };

    int rows() const { return n_eq_ + n_le_; }
    void ftran(const VarCol& col, std::vector<double>& out) const;
    void compute_duals();
    void refactorize();
    int price_dantzig() const;
    int price_bland() const;

    int n_eq_, n_le_;
    double big_m_;
    Params params_;
    int n_structural_ = 0;

    std::vector<VarCol> vars_;       // slacks, artificials, then structural columns
    std::vector<int> structural_;    // structural index -> variable index
    std::vector<int> basis_;         // row -> variable index
    std::vector<int> var_row_;       // variable -> basic row or -1
    std::vector<double> binv_;       // dense row-major basis inverse
    std::vector<double> xb_;         // basic values
    std::vector<double> y_;          // row duals for the last pricing pass
    std::vector<double> pi_, sigma_;
    long total_pivots_ = 0;
    int degenerate_streak_ = 0;
    int pivots_since_refactor_ = 0;
    bool duals_current_ = false;
};

/// One-shot convenience wrapper around Solver. The artificial cost defaults to
/// a value dominating any vertex objective of the given problem.
Solution solve(const Problem& problem, Params params = {});

} // namespace bnpsched::lp
