// Textbook two-phase tableau simplex with Bland's rule. Shares no code with
// SimplexSolver so the two can check each other.
#include "asam/lp.hpp"

#include <cmath>
#include <vector>

namespace asam::opt {

namespace {

constexpr double kEps = 1e-9;

struct Mapping {
    // x_j = shift + sum(sign * z_k)
    double shift = 0.0;
    std::vector<std::pair<int, double>> parts;
};

class Tableau {
public:
    Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}
    double& at(int r, int c) { return t_[r * (cols_ + 1) + c]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void pivot(int pr, int pc)
    {
        const double pv = at(pr, pc);
        for (int c = 0; c <= cols_; ++c)
            at(pr, c) /= pv;
        for (int r = 0; r <= rows_; ++r) {
            if (r == pr)
                continue;
            const double f = at(r, pc);
            if (f == 0.0)
                continue;
            for (int c = 0; c <= cols_; ++c)
                at(r, c) -= f * at(pr, c);
        }
    }

private:
    int rows_, cols_;
    std::vector<double> t_;
};

// Row `rows()` holds reduced costs; column `cols()` holds the RHS.
// Returns false when unbounded.
bool run_simplex(Tableau& tab, std::vector<int>& basis, const std::vector<bool>& allowed)
{
    const int m = tab.rows();
    const int nc = tab.cols();
    for (long guard = 0; guard < 1000000; ++guard) {
        int enter = -1;
        for (int c = 0; c < nc; ++c)
            if (allowed[c] && tab.at(m, c) < -kEps) {
                enter = c;
                break;
            }
        if (enter < 0)
            return true;
        int leave = -1;
        double best = 0.0;
        for (int r = 0; r < m; ++r) {
            const double a = tab.at(r, enter);
            if (a <= kEps)
                continue;
            const double ratio = tab.at(r, nc) / a;
            if (leave < 0 || ratio < best - kEps || (std::abs(ratio - best) <= kEps && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0)
            return false;
        tab.pivot(leave, enter);
        basis[leave] = enter;
    }
    return true;
}

} // namespace

LpResult solve_lp_dense(const LinearProgram& lp)
{
    LpResult res;
    const int n = lp.num_vars();

    // standard-form variables
    int nz = 0;
    std::vector<Mapping> map(n);
    struct StdRow {
        std::vector<std::pair<int, double>> terms;
        double rhs;
        int slack = 0; // +1 / -1 / 0
    };
    std::vector<StdRow> srows;

    for (int j = 0; j < n; ++j) {
        const double l = lp.col_lower[j], u = lp.col_upper[j];
        if (l > u + kEps) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        if (std::isfinite(l)) {
            map[j].shift = l;
            const int z = nz++;
            map[j].parts.emplace_back(z, 1.0);
            if (std::isfinite(u))
                srows.push_back({{{z, 1.0}}, u - l, +1});
        } else if (std::isfinite(u)) {
            map[j].shift = u;
            map[j].parts.emplace_back(nz++, -1.0);
        } else {
            map[j].parts.emplace_back(nz++, 1.0);
            map[j].parts.emplace_back(nz++, -1.0);
        }
    }
    for (const auto& row : lp.rows) {
        std::vector<std::pair<int, double>> terms;
        double shift = 0.0;
        for (const auto& t : row.terms) {
            shift += t.coef * map[t.var].shift;
            for (auto [z, s] : map[t.var].parts)
                terms.emplace_back(z, t.coef * s);
        }
        if (std::isfinite(row.lower) && std::isfinite(row.upper) && row.upper - row.lower <= kEps) {
            srows.push_back({terms, row.lower - shift, 0});
            continue;
        }
        if (std::isfinite(row.lower))
            srows.push_back({terms, row.lower - shift, -1});
        if (std::isfinite(row.upper))
            srows.push_back({terms, row.upper - shift, +1});
    }

    const int m = static_cast<int>(srows.size());
    int nslack = 0;
    for (auto& r : srows)
        if (r.slack != 0)
            ++nslack;
    const int n_struct = nz + nslack;
    const int ncols = n_struct + m; // + artificials
    Tableau tab(m, ncols);
    std::vector<int> basis(m);
    int sidx = nz;
    for (int r = 0; r < m; ++r) {
        auto& sr = srows[r];
        for (auto [z, c] : sr.terms)
            tab.at(r, z) += c;
        if (sr.slack != 0)
            tab.at(r, sidx++) = sr.slack;
        tab.at(r, ncols) = sr.rhs;
        if (sr.rhs < 0) {
            for (int c = 0; c <= ncols; ++c)
                tab.at(r, c) = -tab.at(r, c);
        }
        tab.at(r, n_struct + r) = 1.0;
        basis[r] = n_struct + r;
    }

    // phase 1: minimize sum of artificials
    for (int c = 0; c <= ncols; ++c) {
        double s = 0.0;
        for (int r = 0; r < m; ++r)
            if (c < n_struct || c == ncols)
                s += tab.at(r, c);
        tab.at(m, c) = c < n_struct ? -s : (c == ncols ? -s : 0.0);
    }
    std::vector<bool> allowed(ncols, true);
    run_simplex(tab, basis, allowed);
    if (-tab.at(m, ncols) > 1e-7) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // drive artificials out of the basis
    for (int r = 0; r < m; ++r) {
        if (basis[r] < n_struct)
            continue;
        for (int c = 0; c < n_struct; ++c)
            if (std::abs(tab.at(r, c)) > 1e-9) {
                tab.pivot(r, c);
                basis[r] = c;
                break;
            }
    }
    for (int c = n_struct; c < ncols; ++c)
        allowed[c] = false;

    // phase 2 objective in terms of z
    std::vector<double> cz(n_struct, 0.0);
    for (int j = 0; j < n; ++j) {
        for (auto [z, s] : map[j].parts)
            cz[z] += lp.cost[j] * s;
    }
    for (int c = 0; c <= ncols; ++c)
        tab.at(m, c) = c < n_struct ? cz[c] : 0.0;
    for (int r = 0; r < m; ++r) {
        const int b = basis[r];
        if (b >= n_struct)
            continue;
        const double f = tab.at(m, b);
        if (f == 0.0)
            continue;
        for (int c = 0; c <= ncols; ++c)
            tab.at(m, c) -= f * tab.at(r, c);
    }
    if (!run_simplex(tab, basis, allowed)) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    std::vector<double> z(n_struct, 0.0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < n_struct)
            z[basis[r]] = tab.at(r, ncols);
    res.x.assign(n, 0.0);
    double obj = lp.objective_offset;
    for (int j = 0; j < n; ++j) {
        double v = map[j].shift;
        for (auto [zi, s] : map[j].parts)
            v += s * z[zi];
        res.x[j] = v;
        obj += lp.cost[j] * v;
    }
    res.objective = obj;
    res.row_activity.resize(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        double s = 0.0;
        for (const auto& t : lp.rows[i].terms)
            s += t.coef * res.x[t.var];
        res.row_activity[i] = s;
    }
    res.status = LpStatus::Optimal;
    return res;
}

} // namespace asam::opt
