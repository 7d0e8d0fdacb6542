#include "asam/uc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace asam::opt {

std::string to_string(UCStatus s)
{
    switch (s) {
    case UCStatus::Optimal: return "optimal";
    case UCStatus::Infeasible: return "infeasible";
    case UCStatus::NodeLimit: return "node_limit";
    case UCStatus::Failed: return "failed";
    }
    return "unknown";
}

namespace {

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool forced_off(const UCUnit& u, int t) { return u.p_max_pu[t] <= 0.0; }

// Ramp limit in MW; infinite limits collapse to a non-binding pnom.
double ramp_mw(const UCUnit& u, double pu) { return std::min(pu, 1.0) * u.pnom; }

bool has_ramp_rows(const UCUnit& u)
{
    return u.ramp_up < 1.0 || u.ramp_down < 1.0 || (u.committable && (u.ramp_start_up < 1.0 || u.ramp_shut_down < 1.0));
}

double floor_at(const UCUnit& u, int t) { return u.dispatch_floor.empty() ? -kInf : u.dispatch_floor[t]; }
double cap_at(const UCUnit& u, int t) { return u.dispatch_cap.empty() ? kInf : u.dispatch_cap[t]; }

// Initial commitment forced by min up/down carried over from before t = 0.
int forced_initial_isps(const UCUnit& u)
{
    if (!u.committable)
        return 0;
    const int need = u.initial_on ? u.min_up : u.min_down;
    return std::max(0, need - u.initial_time_in_state);
}

struct Indices {
    std::vector<std::vector<int>> g, u, su, sd; // -1 when absent
    std::vector<std::vector<int>> shortfall, surplus;
};

struct Built {
    LinearProgram lp;
    Indices idx;
};

Built build(const UCProblem& p, const std::set<std::string>& skip)
{
    Built b;
    auto& lp = b.lp;
    auto& ix = b.idx;
    const int T = p.horizon;
    const double h = p.isp_hours;
    const int nu = static_cast<int>(p.units.size());
    ix.g.assign(nu, std::vector<int>(T, -1));
    ix.u = ix.su = ix.sd = ix.g;

    auto use = [&](const char* tag) { return !skip.count(tag); };

    for (int i = 0; i < nu; ++i) {
        const UCUnit& un = p.units[i];
        for (int t = 0; t < T; ++t) {
            if (un.committable) {
                ix.g[i][t] = lp.add_variable(0.0, un.p_max_pu[t] * un.pnom, un.srmc * h);
                const double ub = forced_off(un, t) ? 0.0 : 1.0;
                ix.u[i][t] = lp.add_variable(0.0, ub, 0.0, true);
                ix.su[i][t] = lp.add_variable(0.0, 1.0, un.suc, true);
                ix.sd[i][t] = lp.add_variable(0.0, 1.0, un.sdc, true);
            } else {
                ix.g[i][t] = lp.add_variable(un.p_min_pu[t] * un.pnom, un.p_max_pu[t] * un.pnom, un.srmc * h);
            }
        }
    }
    if (p.slack) {
        ix.shortfall.assign(p.num_nodes, std::vector<int>(T, -1));
        ix.surplus = ix.shortfall;
        for (int n = 0; n < p.num_nodes; ++n)
            for (int t = 0; t < T; ++t) {
                ix.shortfall[n][t] = lp.add_variable(0.0, kInf, p.slack_penalty * h);
                ix.surplus[n][t] = lp.add_variable(0.0, kInf, p.surplus_penalty * h);
            }
    }

    for (int i = 0; i < nu; ++i) {
        const UCUnit& un = p.units[i];
        const auto& g = ix.g[i];
        for (int t = 0; t < T; ++t) {
            if (un.committable) {
                const auto& u = ix.u[i];
                if (use("band")) {
                    if (un.p_min_pu[t] > 0.0)
                        lp.add_row({{g[t], 1.0}, {u[t], -un.p_min_pu[t] * un.pnom}}, 0.0, kInf, "band");
                    lp.add_row({{g[t], 1.0}, {u[t], -un.p_max_pu[t] * un.pnom}}, -kInf, 0.0, "band");
                }
                // su - sd = u_t - u_{t-1}
                std::vector<LinearProgram::Term> tr{{ix.su[i][t], 1.0}, {ix.sd[i][t], -1.0}, {u[t], -1.0}};
                double rhs = 0.0;
                if (t > 0)
                    tr.push_back({u[t - 1], 1.0});
                else
                    rhs = un.initial_on ? -1.0 : 0.0;
                lp.add_row(std::move(tr), rhs, rhs, "commitment");
                lp.add_row({{ix.su[i][t], 1.0}, {ix.sd[i][t], 1.0}}, -kInf, 1.0, "commitment");

                if (use("min_up_down")) {
                    if (un.min_up > 1) {
                        std::vector<LinearProgram::Term> row{{u[t], -1.0}};
                        for (int k = std::max(0, t - un.min_up + 1); k <= t; ++k)
                            row.push_back({ix.su[i][k], 1.0});
                        lp.add_row(std::move(row), -kInf, 0.0, "min_up_down");
                    }
                    if (un.min_down > 1) {
                        std::vector<LinearProgram::Term> row{{u[t], 1.0}};
                        for (int k = std::max(0, t - un.min_down + 1); k <= t; ++k)
                            row.push_back({ix.sd[i][k], 1.0});
                        lp.add_row(std::move(row), -kInf, 1.0, "min_up_down");
                    }
                    if (t < forced_initial_isps(un)) {
                        const double v = un.initial_on ? 1.0 : 0.0;
                        lp.add_row({{u[t], 1.0}}, v, v, "min_up_down");
                    }
                }
            }
            if (use("redispatch_bounds")) {
                const double lo = floor_at(un, t), hi = cap_at(un, t);
                if (std::isfinite(lo) || std::isfinite(hi))
                    lp.add_row({{g[t], 1.0}}, std::isfinite(lo) ? lo : -kInf, std::isfinite(hi) ? hi : kInf,
                               "redispatch_bounds");
            }
            if (use("ramp") && has_ramp_rows(un)) {
                const double ru = ramp_mw(un, un.ramp_up), rd = ramp_mw(un, un.ramp_down);
                std::vector<LinearProgram::Term> up{{g[t], 1.0}}, down{{g[t], -1.0}};
                double up_rhs = 0.0, down_rhs = 0.0;
                if (t > 0) {
                    up.push_back({g[t - 1], -1.0});
                    down.push_back({g[t - 1], 1.0});
                } else {
                    up_rhs = un.initial_g;
                    down_rhs = -un.initial_g;
                }
                if (un.committable) {
                    const double rsu = ramp_mw(un, un.ramp_start_up), rsd = ramp_mw(un, un.ramp_shut_down);
                    // g_t - g_{t-1} <= ru (u_t - su_t) + rsu su_t
                    up.push_back({ix.u[i][t], -ru});
                    up.push_back({ix.su[i][t], ru - rsu});
                    // g_{t-1} - g_t <= rd u_t + rsd sd_t
                    down.push_back({ix.u[i][t], -rd});
                    down.push_back({ix.sd[i][t], -rsd});
                } else {
                    up_rhs += ru;
                    down_rhs += rd;
                }
                lp.add_row(std::move(up), -kInf, up_rhs, "ramp");
                lp.add_row(std::move(down), -kInf, down_rhs, "ramp");
            }
        }
        if (un.flat && use("flatness")) {
            int prev = -1;
            for (int t = 0; t < T; ++t) {
                if (un.p_max_pu[t] <= 0.0)
                    continue;
                if (prev >= 0) {
                    lp.add_row({{g[t], 1.0}, {g[prev], -1.0}}, 0.0, 0.0, "flatness");
                    if (un.committable)
                        lp.add_row({{ix.u[i][t], 1.0}, {ix.u[i][prev], -1.0}}, 0.0, 0.0, "flatness");
                }
                prev = t;
            }
        }
    }

    for (int n = 0; n < p.num_nodes; ++n)
        for (int t = 0; t < T; ++t) {
            std::vector<LinearProgram::Term> row;
            for (int i = 0; i < nu; ++i)
                if (p.units[i].node == n)
                    row.push_back({ix.g[i][t], 1.0});
            if (p.slack) {
                row.push_back({ix.shortfall[n][t], 1.0});
                row.push_back({ix.surplus[n][t], -1.0});
            }
            lp.add_row(std::move(row), p.load[n][t], p.load[n][t], "balance");
        }

    if (use("coupling"))
        for (const auto& c : p.couplings)
            for (int t = 0; t < T; ++t) {
                std::vector<LinearProgram::Term> row;
                for (auto [i, coef] : c.terms)
                    row.push_back({ix.g[i][t], coef});
                lp.add_row(std::move(row), c.lower, c.upper, "coupling");
            }
    return b;
}

UCSolution extract(const UCProblem& p, const Indices& ix, const std::vector<double>& x)
{
    UCSolution s;
    const int T = p.horizon;
    const int nu = static_cast<int>(p.units.size());
    auto clean = [](double v) { return std::abs(v) < 1e-9 ? 0.0 : v; };
    s.g.assign(nu, std::vector<double>(T, 0.0));
    s.u.assign(nu, std::vector<int>(T, 1));
    for (int i = 0; i < nu; ++i)
        for (int t = 0; t < T; ++t) {
            s.g[i][t] = clean(x[ix.g[i][t]]);
            if (ix.u[i][t] >= 0)
                s.u[i][t] = static_cast<int>(std::lround(x[ix.u[i][t]]));
        }
    s.shortfall.assign(p.num_nodes, std::vector<double>(T, 0.0));
    s.surplus = s.shortfall;
    if (p.slack)
        for (int n = 0; n < p.num_nodes; ++n)
            for (int t = 0; t < T; ++t) {
                s.shortfall[n][t] = clean(x[ix.shortfall[n][t]]);
                s.surplus[n][t] = clean(x[ix.surplus[n][t]]);
            }
    return s;
}

UCStatus status_of(MilpStatus m)
{
    switch (m) {
    case MilpStatus::Optimal: return UCStatus::Optimal;
    case MilpStatus::Infeasible: return UCStatus::Infeasible;
    case MilpStatus::NodeLimit: return UCStatus::NodeLimit;
    default: return UCStatus::Failed;
    }
}

} // namespace

void validate(const UCProblem& p)
{
    if (p.horizon < 1)
        throw UCError("horizon must be at least 1");
    if (p.num_nodes < 1 || static_cast<int>(p.load.size()) != p.num_nodes)
        throw UCError("load must have one series per node");
    for (const auto& l : p.load)
        if (static_cast<int>(l.size()) != p.horizon)
            throw UCError("load series length differs from horizon");
    for (const auto& u : p.units) {
        if (u.node < 0 || u.node >= p.num_nodes)
            throw UCError("unit " + u.name + ": node out of range");
        if (!(u.pnom >= 0.0))
            throw UCError("unit " + u.name + ": negative pnom");
        if (static_cast<int>(u.p_min_pu.size()) != p.horizon || static_cast<int>(u.p_max_pu.size()) != p.horizon)
            throw UCError("unit " + u.name + ": p.u. series length differs from horizon");
        for (int t = 0; t < p.horizon; ++t)
            if (u.p_min_pu[t] < 0.0 || u.p_min_pu[t] > u.p_max_pu[t] + 1e-12 || u.p_max_pu[t] > 1.0 + 1e-12)
                throw UCError("unit " + u.name + ": need 0 <= p_min_pu <= p_max_pu <= 1");
        if (u.ramp_up <= 0.0 || u.ramp_down <= 0.0 || u.ramp_start_up <= 0.0 || u.ramp_shut_down <= 0.0)
            throw UCError("unit " + u.name + ": ramp limits must be positive");
        if ((!u.dispatch_floor.empty() && static_cast<int>(u.dispatch_floor.size()) != p.horizon) ||
            (!u.dispatch_cap.empty() && static_cast<int>(u.dispatch_cap.size()) != p.horizon))
            throw UCError("unit " + u.name + ": dispatch bound length differs from horizon");
    }
    for (const auto& c : p.couplings)
        for (auto [i, coef] : c.terms)
            if (i < 0 || i >= static_cast<int>(p.units.size()))
                throw UCError("coupling references unknown unit");
}

UCSolution solve_uc(const UCProblem& p, MilpOptions options)
{
    validate(p);
    Built b = build(p, {});
    MilpResult r = solve_milp(b.lp, options);
    UCSolution s;
    if (r.status == MilpStatus::Optimal || (r.status == MilpStatus::NodeLimit && !r.x.empty())) {
        s = extract(p, b.idx, r.x);
        s.objective = r.objective;
    }
    s.status = status_of(r.status);
    s.nodes = r.nodes;
    if (s.status == UCStatus::Infeasible) {
        // first class whose removal restores feasibility
        for (const char* cls : {"ramp", "min_up_down", "flatness", "coupling", "redispatch_bounds", "band"}) {
            Built relaxed = build(p, {cls});
            if (solve_milp(relaxed.lp, options).status == MilpStatus::Optimal) {
                s.infeasible_class = cls;
                break;
            }
        }
        if (s.infeasible_class.empty())
            s.infeasible_class = "balance";
    }
    return s;
}

namespace {

struct Transitions {
    std::vector<int> su, sd;
};

Transitions transitions(const UCUnit& un, const std::vector<int>& u)
{
    Transitions tr;
    int prev = un.initial_on ? 1 : 0;
    for (int v : u) {
        tr.su.push_back(v > prev ? 1 : 0);
        tr.sd.push_back(v < prev ? 1 : 0);
        prev = v;
    }
    return tr;
}

// Min up/down feasibility of a commitment series, including the carried-over
// state from before t = 0.
bool min_up_down_ok(const UCUnit& un, const std::vector<int>& u)
{
    if (!un.committable)
        return true;
    const int T = static_cast<int>(u.size());
    const int forced = forced_initial_isps(un);
    for (int t = 0; t < std::min(T, forced); ++t)
        if (u[t] != (un.initial_on ? 1 : 0))
            return false;
    const Transitions tr = transitions(un, u);
    for (int t = 0; t < T; ++t) {
        if (un.min_up > 1) {
            int s = 0;
            for (int k = std::max(0, t - un.min_up + 1); k <= t; ++k)
                s += tr.su[k];
            if (s > u[t])
                return false;
        }
        if (un.min_down > 1) {
            int s = 0;
            for (int k = std::max(0, t - un.min_down + 1); k <= t; ++k)
                s += tr.sd[k];
            if (s > 1 - u[t])
                return false;
        }
    }
    return true;
}

} // namespace

UCSolution brute_force_uc(const UCProblem& p, int max_binaries)
{
    validate(p);
    const int T = p.horizon;
    const int nu = static_cast<int>(p.units.size());
    const double h = p.isp_hours;

    std::vector<std::pair<int, int>> free_bits;
    for (int i = 0; i < nu; ++i)
        if (p.units[i].committable)
            for (int t = 0; t < T; ++t)
                if (!forced_off(p.units[i], t))
                    free_bits.emplace_back(i, t);
    if (static_cast<int>(free_bits.size()) > max_binaries)
        throw UCError("brute force limited to " + std::to_string(max_binaries) + " commitment decisions");

    UCSolution best;
    best.status = UCStatus::Infeasible;
    bool found = false;
    const long patterns = 1L << free_bits.size();
    for (long mask = 0; mask < patterns; ++mask) {
        std::vector<std::vector<int>> u(nu, std::vector<int>(T, 0));
        for (int i = 0; i < nu; ++i)
            if (!p.units[i].committable)
                std::fill(u[i].begin(), u[i].end(), 1);
        for (std::size_t b = 0; b < free_bits.size(); ++b)
            if (mask & (1L << b))
                u[free_bits[b].first][free_bits[b].second] = 1;

        bool ok = true;
        double fixed_cost = 0.0;
        std::vector<Transitions> tr(nu);
        for (int i = 0; i < nu && ok; ++i) {
            const UCUnit& un = p.units[i];
            ok = min_up_down_ok(un, u[i]);
            if (un.flat) {
                int prev = -1;
                for (int t = 0; t < T; ++t) {
                    if (un.p_max_pu[t] <= 0.0)
                        continue;
                    if (prev >= 0 && u[i][t] != u[i][prev])
                        ok = false;
                    prev = t;
                }
            }
            if (un.committable) {
                tr[i] = transitions(un, u[i]);
                for (int t = 0; t < T; ++t)
                    fixed_cost += un.suc * tr[i].su[t] + un.sdc * tr[i].sd[t];
            } else {
                tr[i].su.assign(T, 0);
                tr[i].sd.assign(T, 0);
            }
        }
        if (!ok)
            continue;

        // continuous dispatch for this commitment
        LinearProgram lp;
        std::vector<std::vector<int>> g(nu, std::vector<int>(T));
        for (int i = 0; i < nu; ++i) {
            const UCUnit& un = p.units[i];
            for (int t = 0; t < T; ++t) {
                double lo = u[i][t] * un.p_min_pu[t] * un.pnom;
                double hi = u[i][t] * un.p_max_pu[t] * un.pnom;
                lo = std::max(lo, floor_at(un, t));
                hi = std::min(hi, cap_at(un, t));
                g[i][t] = lp.add_variable(lo, hi, un.srmc * h);
            }
        }
        std::vector<std::vector<int>> sh, su;
        if (p.slack) {
            sh.assign(p.num_nodes, std::vector<int>(T));
            su = sh;
            for (int n = 0; n < p.num_nodes; ++n)
                for (int t = 0; t < T; ++t) {
                    sh[n][t] = lp.add_variable(0.0, kInf, p.slack_penalty * h);
                    su[n][t] = lp.add_variable(0.0, kInf, p.surplus_penalty * h);
                }
        }
        for (int i = 0; i < nu; ++i) {
            const UCUnit& un = p.units[i];
            if (has_ramp_rows(un))
                for (int t = 0; t < T; ++t) {
                    const double up_lim = tr[i].su[t] ? ramp_mw(un, un.committable ? un.ramp_start_up : un.ramp_up)
                                                      : u[i][t] * ramp_mw(un, un.ramp_up);
                    const double down_lim = u[i][t] * ramp_mw(un, un.ramp_down) +
                                            (tr[i].sd[t] ? ramp_mw(un, un.ramp_shut_down) : 0.0);
                    if (t == 0) {
                        lp.add_row({{g[i][0], 1.0}}, -kInf, un.initial_g + up_lim);
                        lp.add_row({{g[i][0], 1.0}}, un.initial_g - down_lim, kInf);
                    } else {
                        lp.add_row({{g[i][t], 1.0}, {g[i][t - 1], -1.0}}, -kInf, up_lim);
                        lp.add_row({{g[i][t - 1], 1.0}, {g[i][t], -1.0}}, -kInf, down_lim);
                    }
                }
            if (un.flat) {
                int prev = -1;
                for (int t = 0; t < T; ++t) {
                    if (un.p_max_pu[t] <= 0.0)
                        continue;
                    if (prev >= 0)
                        lp.add_row({{g[i][t], 1.0}, {g[i][prev], -1.0}}, 0.0, 0.0);
                    prev = t;
                }
            }
        }
        for (int n = 0; n < p.num_nodes; ++n)
            for (int t = 0; t < T; ++t) {
                std::vector<LinearProgram::Term> row;
                for (int i = 0; i < nu; ++i)
                    if (p.units[i].node == n)
                        row.push_back({g[i][t], 1.0});
                if (p.slack) {
                    row.push_back({sh[n][t], 1.0});
                    row.push_back({su[n][t], -1.0});
                }
                lp.add_row(std::move(row), p.load[n][t], p.load[n][t]);
            }
        for (const auto& c : p.couplings)
            for (int t = 0; t < T; ++t) {
                std::vector<LinearProgram::Term> row;
                for (auto [i, coef] : c.terms)
                    row.push_back({g[i][t], coef});
                lp.add_row(std::move(row), c.lower, c.upper);
            }
        lp.objective_offset = fixed_cost;

        LpResult r = solve_lp_dense(lp);
        if (r.status != LpStatus::Optimal)
            continue;
        if (found && !(r.objective < best.objective - 1e-9))
            continue;
        found = true;
        best.status = UCStatus::Optimal;
        best.objective = r.objective;
        best.u = u;
        best.g.assign(nu, std::vector<double>(T));
        for (int i = 0; i < nu; ++i)
            for (int t = 0; t < T; ++t)
                best.g[i][t] = r.x[g[i][t]];
        best.shortfall.assign(p.num_nodes, std::vector<double>(T, 0.0));
        best.surplus = best.shortfall;
        if (p.slack)
            for (int n = 0; n < p.num_nodes; ++n)
                for (int t = 0; t < T; ++t) {
                    best.shortfall[n][t] = r.x[sh[n][t]];
                    best.surplus[n][t] = r.x[su[n][t]];
                }
    }
    return best;
}

std::vector<std::string> verify_uc(const UCProblem& p, const UCSolution& s, double tol)
{
    std::vector<std::string> out;
    const int T = p.horizon;
    const int nu = static_cast<int>(p.units.size());
    if (static_cast<int>(s.g.size()) != nu || static_cast<int>(s.u.size()) != nu) {
        out.push_back("solution size mismatch");
        return out;
    }
    for (int i = 0; i < nu; ++i) {
        const UCUnit& un = p.units[i];
        const auto& g = s.g[i];
        const auto& u = s.u[i];
        for (int t = 0; t < T; ++t) {
            if (u[t] != 0 && u[t] != 1)
                out.push_back(fmt("%s t=%d: commitment not binary", un.name.c_str(), t));
            if (!un.committable && u[t] != 1)
                out.push_back(fmt("%s t=%d: non-committable unit off", un.name.c_str(), t));
            const double lo = u[t] * un.p_min_pu[t] * un.pnom, hi = u[t] * un.p_max_pu[t] * un.pnom;
            if (g[t] < lo - tol || g[t] > hi + tol)
                out.push_back(fmt("%s t=%d: band violated (%.6f not in [%.6f, %.6f])", un.name.c_str(), t, g[t], lo, hi));
            if (g[t] < floor_at(un, t) - tol || g[t] > cap_at(un, t) + tol)
                out.push_back(fmt("%s t=%d: redispatch bound violated", un.name.c_str(), t));
        }
        if (!min_up_down_ok(un, u))
            out.push_back(fmt("%s: min up/down violated", un.name.c_str()));
        const Transitions tr = un.committable ? transitions(un, u) : Transitions{std::vector<int>(T, 0), std::vector<int>(T, 0)};
        for (int t = 0; t < T; ++t) {
            const double prev = t == 0 ? un.initial_g : g[t - 1];
            const double up_lim = tr.su[t] ? ramp_mw(un, un.committable ? un.ramp_start_up : un.ramp_up)
                                           : u[t] * ramp_mw(un, un.ramp_up);
            const double down_lim = u[t] * ramp_mw(un, un.ramp_down) + (tr.sd[t] ? ramp_mw(un, un.ramp_shut_down) : 0.0);
            if (!has_ramp_rows(un))
                continue;
            if (g[t] - prev > up_lim + tol)
                out.push_back(fmt("%s t=%d: ramp up violated", un.name.c_str(), t));
            if (prev - g[t] > down_lim + tol)
                out.push_back(fmt("%s t=%d: ramp down violated", un.name.c_str(), t));
        }
        if (un.flat) {
            int prev = -1;
            for (int t = 0; t < T; ++t) {
                if (un.p_max_pu[t] <= 0.0)
                    continue;
                if (prev >= 0 && (std::abs(g[t] - g[prev]) > tol || u[t] != u[prev]))
                    out.push_back(fmt("%s t=%d: block not flat", un.name.c_str(), t));
                prev = t;
            }
        }
    }
    for (int n = 0; n < p.num_nodes; ++n)
        for (int t = 0; t < T; ++t) {
            double sum = 0.0;
            for (int i = 0; i < nu; ++i)
                if (p.units[i].node == n)
                    sum += s.g[i][t];
            const double sh = s.shortfall.empty() ? 0.0 : s.shortfall[n][t];
            const double sp = s.surplus.empty() ? 0.0 : s.surplus[n][t];
            if (sh < -tol || sp < -tol || (!p.slack && (sh > tol || sp > tol)))
                out.push_back(fmt("node %d t=%d: invalid slack", n, t));
            if (std::abs(sum + sh - sp - p.load[n][t]) > tol)
                out.push_back(fmt("node %d t=%d: balance violated (%.6f vs load %.6f)", n, t, sum + sh - sp, p.load[n][t]));
        }
    for (std::size_t c = 0; c < p.couplings.size(); ++c)
        for (int t = 0; t < T; ++t) {
            double v = 0.0;
            for (auto [i, coef] : p.couplings[c].terms)
                v += coef * s.g[i][t];
            if (v < p.couplings[c].lower - tol || v > p.couplings[c].upper + tol)
                out.push_back(fmt("coupling %zu t=%d violated (%.6f)", c, t, v));
        }
    return out;
}

double evaluate_uc_cost(const UCProblem& p, const UCSolution& s)
{
    const double h = p.isp_hours;
    double cost = 0.0;
    for (std::size_t i = 0; i < p.units.size(); ++i) {
        const UCUnit& un = p.units[i];
        for (int t = 0; t < p.horizon; ++t)
            cost += un.srmc * s.g[i][t] * h;
        if (un.committable) {
            const Transitions tr = transitions(un, s.u[i]);
            for (int t = 0; t < p.horizon; ++t)
                cost += un.suc * tr.su[t] + un.sdc * tr.sd[t];
        }
    }
    for (std::size_t n = 0; n < s.shortfall.size(); ++n)
        for (int t = 0; t < p.horizon; ++t)
            cost += h * (p.slack_penalty * s.shortfall[n][t] + p.surplus_penalty * s.surplus[n][t]);
    return cost;
}

} // namespace asam::opt
