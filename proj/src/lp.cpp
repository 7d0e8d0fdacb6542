#include "asam/lp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asam::opt {

int LinearProgram::add_variable(double lower, double upper, double cost_coef, bool is_integer)
{
    cost.push_back(cost_coef);
    col_lower.push_back(lower);
    col_upper.push_back(upper);
    integer.push_back(is_integer);
    return static_cast<int>(cost.size()) - 1;
}

int LinearProgram::add_row(std::vector<Term> terms, double lower, double upper, std::string tag)
{
    rows.push_back(Row{std::move(terms), lower, upper, std::move(tag)});
    return static_cast<int>(rows.size()) - 1;
}

std::string to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
    case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vec = Eigen::VectorXd;

struct Eta {
    int row;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
};

} // namespace

struct SimplexSolver::Impl {
    const LpOptions opt;
    int n = 0; // structurals
    int m = 0; // rows
    double offset = 0.0;

    // column-major A
    std::vector<int> col_start;
    std::vector<int> row_idx;
    std::vector<double> values;

    std::vector<double> base_lower, base_upper, cost;

    // per-solve state
    std::vector<double> lo, up, x;
    std::vector<VarStatus> status;
    std::vector<int> head; // basis position -> variable
    std::vector<int> good_head;          // basis of the last successful factorization
    std::vector<VarStatus> good_status;
    std::vector<char> rejected;          // columns skipped after a tiny pivot
    std::vector<int> pos;  // variable -> basis position or -1
    mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    std::vector<Eta> etas;

    Impl(const LinearProgram& lp, LpOptions o) : opt(o)
    {
        n = lp.num_vars();
        m = lp.num_rows();
        offset = lp.objective_offset;
        std::vector<std::vector<std::pair<int, double>>> cols(n);
        for (int i = 0; i < m; ++i)
            for (const auto& t : lp.rows[i].terms) {
                if (t.var < 0 || t.var >= n)
                    throw std::out_of_range("LP row references unknown variable");
                if (t.coef != 0.0)
                    cols[t.var].emplace_back(i, t.coef);
            }
        col_start.assign(n + 1, 0);
        for (int j = 0; j < n; ++j) {
            auto& c = cols[j];
            std::sort(c.begin(), c.end());
            // merge duplicate entries
            std::vector<std::pair<int, double>> merged;
            for (auto& e : c) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(e);
            }
            for (auto& e : merged) {
                row_idx.push_back(e.first);
                values.push_back(e.second);
            }
            col_start[j + 1] = static_cast<int>(row_idx.size());
        }
        base_lower.resize(n + m);
        base_upper.resize(n + m);
        cost.assign(n + m, 0.0);
        for (int j = 0; j < n; ++j) {
            base_lower[j] = lp.col_lower[j];
            base_upper[j] = lp.col_upper[j];
            cost[j] = lp.cost[j];
        }
        for (int i = 0; i < m; ++i) {
            base_lower[n + i] = lp.rows[i].lower;
            base_upper[n + i] = lp.rows[i].upper;
        }
    }

    // --- column helpers -------------------------------------------------
    template <class F>
    void for_column(int j, F&& f) const
    {
        if (j < n) {
            for (int k = col_start[j]; k < col_start[j + 1]; ++k)
                f(row_idx[k], values[k]);
        } else {
            f(j - n, -1.0);
        }
    }

    double dot_column(int j, const Vec& y) const
    {
        if (j >= n)
            return -y[j - n];
        double s = 0.0;
        for (int k = col_start[j]; k < col_start[j + 1]; ++k)
            s += values[k] * y[row_idx[k]];
        return s;
    }

    // --- factorization --------------------------------------------------
    bool refactor()
    {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(m) * 3);
        for (int p = 0; p < m; ++p)
            for_column(head[p], [&](int r, double v) { trip.emplace_back(r, p, v); });
        SpMat B(m, m);
        B.setFromTriplets(trip.begin(), trip.end());
        B.makeCompressed();
        lu.analyzePattern(B);
        lu.factorize(B);
        etas.clear();
        if (lu.info() != Eigen::Success)
            return false;
        good_head = head;
        good_status = status;
        return true;
    }

    // Back to the basis of the last successful factorization.
    bool rollback()
    {
        if (good_head.size() != static_cast<std::size_t>(m))
            return false;
        head = good_head;
        std::fill(pos.begin(), pos.end(), -1);
        for (int p = 0; p < m; ++p)
            pos[head[p]] = p;
        for (int j = 0; j < n + m; ++j)
            if (pos[j] < 0)
                place_nonbasic(j, good_status[j] == VarStatus::Basic ? VarStatus::AtLower : good_status[j]);
            else
                status[j] = VarStatus::Basic;
        if (!refactor())
            return false;
        compute_basic_values();
        return true;
    }

    Vec ftran(Vec a) const
    {
        Vec w = lu.solve(a);
        for (const auto& e : etas) {
            const double xr = w[e.row] / e.pivot;
            w[e.row] = xr;
            if (xr != 0.0)
                for (std::size_t k = 0; k < e.idx.size(); ++k)
                    w[e.idx[k]] -= e.val[k] * xr;
        }
        return w;
    }

    Vec btran(Vec c) const
    {
        for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
            double s = c[it->row];
            for (std::size_t k = 0; k < it->idx.size(); ++k)
                s -= it->val[k] * c[it->idx[k]];
            c[it->row] = s / it->pivot;
        }
        return lu.transpose().solve(c);
    }

    void push_eta(int r, const Vec& w)
    {
        Eta e;
        e.row = r;
        e.pivot = w[r];
        for (int i = 0; i < m; ++i)
            if (i != r && w[i] != 0.0) {
                e.idx.push_back(i);
                e.val.push_back(w[i]);
            }
        etas.push_back(std::move(e));
    }

    void compute_basic_values()
    {
        Vec rhs = Vec::Zero(m);
        for (int j = 0; j < n + m; ++j) {
            if (pos[j] >= 0 || x[j] == 0.0)
                continue;
            const double xj = x[j];
            for_column(j, [&](int r, double v) { rhs[r] -= v * xj; });
        }
        Vec xb = ftran(rhs);
        for (int p = 0; p < m; ++p)
            x[head[p]] = xb[p];
    }

    void place_nonbasic(int j, VarStatus hint)
    {
        const bool has_lo = std::isfinite(lo[j]);
        const bool has_up = std::isfinite(up[j]);
        VarStatus s = hint;
        if (s == VarStatus::Basic)
            s = VarStatus::AtLower;
        if (s == VarStatus::AtLower && !has_lo)
            s = has_up ? VarStatus::AtUpper : VarStatus::Free;
        if (s == VarStatus::AtUpper && !has_up)
            s = has_lo ? VarStatus::AtLower : VarStatus::Free;
        if (s == VarStatus::Free && (has_lo || has_up))
            s = has_lo ? VarStatus::AtLower : VarStatus::AtUpper;
        status[j] = s;
        x[j] = s == VarStatus::AtLower ? lo[j] : s == VarStatus::AtUpper ? up[j] : 0.0;
    }

    void slack_basis()
    {
        head.resize(m);
        std::fill(pos.begin(), pos.end(), -1);
        for (int j = 0; j < n; ++j)
            place_nonbasic(j, VarStatus::AtLower);
        for (int i = 0; i < m; ++i) {
            head[i] = n + i;
            pos[n + i] = i;
            status[n + i] = VarStatus::Basic;
        }
    }

    bool load_basis(const Basis& b)
    {
        if (static_cast<int>(b.status.size()) != n + m)
            return false;
        int basics = 0;
        for (auto s : b.status)
            basics += s == VarStatus::Basic;
        if (basics != m)
            return false;
        head.clear();
        std::fill(pos.begin(), pos.end(), -1);
        for (int j = 0; j < n + m; ++j) {
            if (b.status[j] == VarStatus::Basic) {
                pos[j] = static_cast<int>(head.size());
                head.push_back(j);
                status[j] = VarStatus::Basic;
            } else {
                place_nonbasic(j, b.status[j]);
            }
        }
        return true;
    }

    double infeasibility(int j) const
    {
        if (x[j] < lo[j] - opt.primal_tol)
            return lo[j] - x[j];
        if (x[j] > up[j] + opt.primal_tol)
            return x[j] - up[j];
        return 0.0;
    }

    LpResult run(std::span<const double> col_lower, std::span<const double> col_upper, const Basis* warm)
    {
        lo = base_lower;
        up = base_upper;
        if (!col_lower.empty())
            std::copy(col_lower.begin(), col_lower.end(), lo.begin());
        if (!col_upper.empty())
            std::copy(col_upper.begin(), col_upper.end(), up.begin());
        LpResult res;
        for (int j = 0; j < n + m; ++j)
            if (lo[j] > up[j] + opt.primal_tol) {
                res.status = LpStatus::Infeasible;
                return res;
            }

        x.assign(n + m, 0.0);
        status.assign(n + m, VarStatus::AtLower);
        pos.assign(n + m, -1);
        good_head.clear();
        rejected.assign(n + m, 0);
        int n_rejected = 0;
        int rollbacks = 0;
        double min_pivot = 1e-7;

        bool ok = warm && load_basis(*warm) && refactor();
        if (!ok) {
            slack_basis();
            if (!refactor()) {
                res.status = LpStatus::NumericalFailure;
                return res;
            }
        }
        compute_basic_values();

        const long max_iter = opt.max_iterations > 0 ? opt.max_iterations : 50L * (n + m) + 1000;
        long iter = 0;
        int degenerate_run = 0;
        int recoveries = 0;
        Vec cb(m);

        while (true) {
            if (iter >= max_iter) {
                res.status = LpStatus::IterationLimit;
                break;
            }
            if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
                if (!refactor()) {
                    // singular after accumulated updates: resume from the last good basis with stricter pivots
                    if (++rollbacks > 20 || !rollback()) {
                        res.status = LpStatus::NumericalFailure;
                        break;
                    }
                    min_pivot = std::min(1e-4, min_pivot * 10.0);
                    continue;
                }
                compute_basic_values();
            }

            // phase selection
            bool phase1 = false;
            for (int p = 0; p < m; ++p) {
                const int j = head[p];
                double c = 0.0;
                if (x[j] < lo[j] - opt.primal_tol)
                    c = -1.0;
                else if (x[j] > up[j] + opt.primal_tol)
                    c = 1.0;
                if (c != 0.0)
                    phase1 = true;
                cb[p] = c;
            }
            if (!phase1)
                for (int p = 0; p < m; ++p)
                    cb[p] = cost[head[p]];

            const Vec y = btran(cb);
            const bool bland = degenerate_run > 50;

            // pricing
            int enter = -1;
            double enter_d = 0.0;
            double best = 0.0;
            for (int j = 0; j < n + m; ++j) {
                if (pos[j] >= 0)
                    continue;
                if (lo[j] == up[j] || rejected[j])
                    continue;
                const double cj = phase1 ? 0.0 : cost[j];
                const double d = cj - dot_column(j, y);
                bool eligible = false;
                if (status[j] == VarStatus::AtLower)
                    eligible = d < -opt.dual_tol;
                else if (status[j] == VarStatus::AtUpper)
                    eligible = d > opt.dual_tol;
                else
                    eligible = std::abs(d) > opt.dual_tol;
                if (!eligible)
                    continue;
                if (bland) {
                    enter = j;
                    enter_d = d;
                    break;
                }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    enter = j;
                    enter_d = d;
                }
            }

            if (enter < 0 && n_rejected > 0) {
                // only columns with unusable pivots were left; retry them from a fresh factorization
                std::fill(rejected.begin(), rejected.end(), 0);
                n_rejected = 0;
                if (++rollbacks > 20 || !refactor()) {
                    res.status = LpStatus::NumericalFailure;
                    break;
                }
                compute_basic_values();
                min_pivot = std::max(opt.pivot_tol, min_pivot * 0.1);
                continue;
            }
            if (enter < 0) {
                if (phase1) {
                    // verify with a fresh factorization before declaring infeasible
                    if (!etas.empty() && recoveries < 3) {
                        ++recoveries;
                        refactor();
                        compute_basic_values();
                        continue;
                    }
                    res.status = LpStatus::Infeasible;
                    break;
                }
                if (!etas.empty() && recoveries < 3) {
                    ++recoveries;
                    refactor();
                    compute_basic_values();
                    continue;
                }
                res.status = LpStatus::Optimal;
                break;
            }

            const double dir = enter_d < 0.0 ? 1.0 : -1.0;
            Vec a = Vec::Zero(m);
            for_column(enter, [&](int r, double v) { a[r] = v; });
            const Vec alpha = ftran(a);

            // Harris ratio test, pass 1
            const double tol = opt.primal_tol;
            double theta_max = kInf;
            for (int p = 0; p < m; ++p) {
                const double delta = -dir * alpha[p];
                if (std::abs(delta) < opt.pivot_tol)
                    continue;
                const int j = head[p];
                const double xj = x[j];
                double lim = kInf;
                if (xj < lo[j] - tol) {
                    if (delta > 0)
                        lim = (lo[j] - xj + tol) / delta;
                } else if (xj > up[j] + tol) {
                    if (delta < 0)
                        lim = (up[j] - xj - tol) / delta;
                } else if (delta > 0) {
                    if (std::isfinite(up[j]))
                        lim = (up[j] + tol - xj) / delta;
                } else {
                    if (std::isfinite(lo[j]))
                        lim = (lo[j] - tol - xj) / delta;
                }
                theta_max = std::min(theta_max, lim);
            }
            const double range = up[enter] - lo[enter];
            const bool can_flip = std::isfinite(range);

            if (!std::isfinite(theta_max) && !can_flip) {
                if (phase1) {
                    if (recoveries < 3) {
                        ++recoveries;
                        refactor();
                        compute_basic_values();
                        continue;
                    }
                    res.status = LpStatus::NumericalFailure;
                } else {
                    res.status = LpStatus::Unbounded;
                }
                break;
            }

            ++iter;
            if (can_flip && range <= theta_max) {
                // bound flip of the entering variable
                const double step = dir * range;
                x[enter] += step;
                status[enter] = status[enter] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
                x[enter] = status[enter] == VarStatus::AtLower ? lo[enter] : up[enter];
                for (int p = 0; p < m; ++p)
                    x[head[p]] -= alpha[p] * step;
                degenerate_run = 0;
                continue;
            }

            // pass 2: largest pivot among candidates within theta_max
            int leave_pos = -1;
            double leave_theta = 0.0;
            double best_pivot = 0.0;
            bool leave_to_upper = false;
            for (int p = 0; p < m; ++p) {
                const double delta = -dir * alpha[p];
                if (std::abs(delta) < opt.pivot_tol)
                    continue;
                const int j = head[p];
                const double xj = x[j];
                double ratio = kInf;
                bool to_upper = false;
                if (xj < lo[j] - tol) {
                    if (delta > 0)
                        ratio = (lo[j] - xj) / delta;
                } else if (xj > up[j] + tol) {
                    if (delta < 0) {
                        ratio = (up[j] - xj) / delta;
                        to_upper = true;
                    }
                } else if (delta > 0) {
                    if (std::isfinite(up[j])) {
                        ratio = (up[j] - xj) / delta;
                        to_upper = true;
                    }
                } else if (std::isfinite(lo[j])) {
                    ratio = (lo[j] - xj) / delta;
                }
                if (ratio > theta_max)
                    continue;
                const bool better = bland ? (leave_pos < 0 || j < head[leave_pos])
                                          : std::abs(delta) > best_pivot;
                if (better) {
                    best_pivot = std::abs(delta);
                    leave_pos = p;
                    leave_theta = std::max(ratio, 0.0);
                    leave_to_upper = to_upper;
                }
            }
            if (leave_pos < 0) {
                res.status = LpStatus::NumericalFailure;
                break;
            }
            if (best_pivot < min_pivot) {
                // likely a zero pivot polluted by round-off
                if (!etas.empty()) {
                    if (!refactor()) {
                        if (++rollbacks > 20 || !rollback()) {
                            res.status = LpStatus::NumericalFailure;
                            break;
                        }
                    } else {
                        compute_basic_values();
                    }
                    continue;
                }
                rejected[enter] = 1;
                ++n_rejected;
                continue;
            }
            if (n_rejected > 0) {
                std::fill(rejected.begin(), rejected.end(), 0);
                n_rejected = 0;
            }

            const double theta = leave_theta;
            degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;
            for (int p = 0; p < m; ++p)
                x[head[p]] += -dir * alpha[p] * theta;
            x[enter] += dir * theta;

            const int leaving = head[leave_pos];
            status[leaving] = leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
            x[leaving] = leave_to_upper ? up[leaving] : lo[leaving];
            pos[leaving] = -1;
            head[leave_pos] = enter;
            pos[enter] = leave_pos;
            status[enter] = VarStatus::Basic;
            push_eta(leave_pos, alpha);
        }

        res.iterations = iter;
        res.x.assign(x.begin(), x.begin() + n);
        res.row_activity.assign(x.begin() + n, x.end());
        res.basis.status = status;
        if (res.status == LpStatus::Optimal) {
            double obj = offset;
            for (int j = 0; j < n; ++j) {
                // snap tiny bound violations left by tolerances
                res.x[j] = std::clamp(res.x[j], lo[j], up[j]);
                obj += cost[j] * res.x[j];
            }
            res.objective = obj;
            std::fill(res.row_activity.begin(), res.row_activity.end(), 0.0);
            for (int j = 0; j < n; ++j)
                for (int k = col_start[j]; k < col_start[j + 1]; ++k)
                    res.row_activity[row_idx[k]] += values[k] * res.x[j];
        }
        return res;
    }
};

SimplexSolver::SimplexSolver(const LinearProgram& lp, LpOptions options)
    : impl_(std::make_unique<Impl>(lp, options))
{
}

SimplexSolver::~SimplexSolver() = default;

LpResult SimplexSolver::solve(std::span<const double> col_lower, std::span<const double> col_upper,
                              const Basis* warm_start)
{
    return impl_->run(col_lower, col_upper, warm_start);
}

LpResult solve_lp(const LinearProgram& lp, LpOptions options)
{
    SimplexSolver s(lp, options);
    return s.solve();
}

} // namespace asam::opt
