#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace asam::opt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Linear (or mixed-integer) program in bounded row form:
///   min  c'x + offset
///   s.t. row_lower <= A x <= row_upper,  col_lower <= x <= col_upper
struct LinearProgram {
    struct Term {
        int var;
        double coef;
    };
    struct Row {
        std::vector<Term> terms;
        double lower = -kInf;
        double upper = kInf;
        std::string tag; // constraint class, used for diagnostics only
    };

    std::vector<double> cost;
    std::vector<double> col_lower;
    std::vector<double> col_upper;
    std::vector<bool> integer;
    std::vector<Row> rows;
    double objective_offset = 0.0;

    int add_variable(double lower, double upper, double cost_coef, bool is_integer = false);
    int add_row(std::vector<Term> terms, double lower, double upper, std::string tag = {});

    int num_vars() const { return static_cast<int>(cost.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

std::string to_string(LpStatus s);

enum class VarStatus : std::int8_t { Basic, AtLower, AtUpper, Free };

/// Status of every structural and logical (row) variable; logicals follow the
/// structurals. Used to warm-start a related solve.
struct Basis {
    std::vector<VarStatus> status;
    bool empty() const { return status.empty(); }
};

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> row_activity;
    Basis basis;
    long iterations = 0;
};

struct LpOptions {
    double primal_tol = 1e-7;
    double dual_tol = 1e-7;
    double pivot_tol = 1e-9;
    int refactor_interval = 64;
    long max_iterations = 0; // 0 -> 50 * (rows + cols) + 1000
};

/// Revised bounded primal simplex. The constraint matrix is factored once per
/// solver instance; column bounds can be overridden per solve (branch-and-bound).
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp, LpOptions options = {});
    ~SimplexSolver();
    SimplexSolver(const SimplexSolver&) = delete;
    SimplexSolver& operator=(const SimplexSolver&) = delete;

    /// Solves with the given column bounds (empty spans -> the program's own).
    LpResult solve(std::span<const double> col_lower = {}, std::span<const double> col_upper = {},
                   const Basis* warm_start = nullptr);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper.
LpResult solve_lp(const LinearProgram& lp, LpOptions options = {});

/// Independent dense two-phase tableau simplex with Bland's rule. Slow, meant
/// for small problems and for cross-checking SimplexSolver.
LpResult solve_lp_dense(const LinearProgram& lp);

} // namespace asam::opt
