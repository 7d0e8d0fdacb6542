#include "asam/milp.hpp"

#include <algorithm>
#include <cmath>

namespace asam::opt {

std::string to_string(MilpStatus s)
{
    switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::Unbounded: return "unbounded";
    case MilpStatus::NodeLimit: return "node_limit";
    case MilpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

struct Node {
    std::vector<double> lower;
    std::vector<double> upper;
    Basis basis;
    double parent_bound;
};

int pick_branch_variable(const LinearProgram& lp, const std::vector<double>& x, double tol)
{
    int best = -1;
    double best_score = -1.0;
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (!lp.integer[j])
            continue;
        const double f = x[j] - std::floor(x[j]);
        const double dist = std::min(f, 1.0 - f);
        if (dist <= tol)
            continue;
        if (dist > best_score + 1e-12) {
            best_score = dist;
            best = j;
        }
    }
    return best;
}

} // namespace

MilpResult solve_milp(const LinearProgram& lp, MilpOptions options)
{
    MilpResult res;
    SimplexSolver solver(lp, options.lp);

    bool have_incumbent = false;
    double incumbent = kInf;
    bool hit_limit = false;
    bool numerical = false;

    auto prune_bound = [&]() {
        return incumbent - std::max(options.absolute_gap, options.relative_gap * std::abs(incumbent));
    };

    std::vector<Node> stack;
    {
        Node root{lp.col_lower, lp.col_upper, {}, -kInf};
        // integer columns get integral bounds
        for (int j = 0; j < lp.num_vars(); ++j)
            if (lp.integer[j]) {
                root.lower[j] = std::ceil(root.lower[j] - options.integrality_tol);
                root.upper[j] = std::floor(root.upper[j] + options.integrality_tol);
            }
        stack.push_back(std::move(root));
    }

    bool root_done = false;
    while (!stack.empty()) {
        if (res.nodes >= options.node_limit) {
            hit_limit = true;
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        if (have_incumbent && node.parent_bound >= prune_bound())
            continue;
        ++res.nodes;

        LpResult rel = solver.solve(node.lower, node.upper, node.basis.empty() ? nullptr : &node.basis);
        res.lp_iterations += rel.iterations;
        if (rel.status == LpStatus::Infeasible)
            continue;
        if (rel.status == LpStatus::Unbounded) {
            if (!root_done) {
                res.status = MilpStatus::Unbounded;
                return res;
            }
            continue;
        }
        if (rel.status != LpStatus::Optimal) {
            // retry from scratch once; warm bases occasionally stall
            rel = solver.solve(node.lower, node.upper, nullptr);
            res.lp_iterations += rel.iterations;
            if (rel.status == LpStatus::Infeasible)
                continue;
            if (rel.status != LpStatus::Optimal) {
                numerical = true;
                continue;
            }
        }
        if (!root_done) {
            res.best_bound = rel.objective;
            root_done = true;
        }
        if (have_incumbent && rel.objective >= prune_bound())
            continue;

        const int branch = pick_branch_variable(lp, rel.x, options.integrality_tol);
        if (branch < 0) {
            if (!have_incumbent || rel.objective < incumbent) {
                have_incumbent = true;
                incumbent = rel.objective;
                res.x = rel.x;
                for (int j = 0; j < lp.num_vars(); ++j)
                    if (lp.integer[j])
                        res.x[j] = std::round(res.x[j]);
            }
            continue;
        }

        const double v = rel.x[branch];
        Node down{node.lower, node.upper, rel.basis, rel.objective};
        down.upper[branch] = std::floor(v);
        Node up{std::move(node.lower), std::move(node.upper), std::move(rel.basis), rel.objective};
        up.lower[branch] = std::ceil(v);
        const bool up_first = v - std::floor(v) > 0.5;
        // stack: push the branch explored second first
        if (up_first) {
            stack.push_back(std::move(down));
            stack.push_back(std::move(up));
        } else {
            stack.push_back(std::move(up));
            stack.push_back(std::move(down));
        }
    }

    if (have_incumbent) {
        res.objective = incumbent;
        res.status = hit_limit ? MilpStatus::NodeLimit : MilpStatus::Optimal;
        if (!hit_limit)
            res.best_bound = incumbent;
    } else if (hit_limit) {
        res.status = MilpStatus::NodeLimit;
    } else if (numerical) {
        res.status = MilpStatus::NumericalFailure;
    } else {
        res.status = MilpStatus::Infeasible;
    }
    return res;
}

} // namespace asam::opt
