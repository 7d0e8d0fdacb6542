#pragma once

#include "asam/lp.hpp"

namespace asam::opt {

enum class MilpStatus { Optimal, Infeasible, Unbounded, NodeLimit, NumericalFailure };

std::string to_string(MilpStatus s);

struct MilpOptions {
    double integrality_tol = 1e-6;
    /// Nodes whose relaxation is within this of the incumbent are pruned.
    double absolute_gap = 1e-7;
    double relative_gap = 1e-10;
    long node_limit = 200000;
    LpOptions lp;
};

struct MilpResult {
    MilpStatus status = MilpStatus::NumericalFailure;
    double objective = 0.0;
    double best_bound = -kInf;
    std::vector<double> x;
    long nodes = 0;
    long lp_iterations = 0;
};

/// Depth-first branch-and-bound over the program's integer columns with warm
/// started LP relaxations. Deterministic: fixed branching rule, children
/// explored nearest-rounding first, incumbent replaced only on strict
/// improvement.
MilpResult solve_milp(const LinearProgram& lp, MilpOptions options = {});

} // namespace asam::opt
