#include "asam/rdm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace asam::rdm {

void validate(const RedispatchDemand& d)
{
    if (d.quantity.kw <= 0)
        throw std::invalid_argument("redispatch demand quantity must be positive");
    if (d.down_area == d.up_area)
        throw std::invalid_argument("redispatch demand needs distinct down and up areas");
    if (d.end < d.start)
        throw std::invalid_argument("redispatch demand window ends before it starts");
}

double threshold_from_method(const std::string& method)
{
    std::string m;
    for (char c : method)
        m += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto pos = m.rfind("_th");
    if (pos == std::string::npos)
        throw std::invalid_argument("acquisition method '" + method + "' has no threshold suffix");
    const std::string v = m.substr(pos + 3);
    if (v == "inf")
        return opt::kInf;
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("acquisition method '" + method + "' has a malformed threshold");
    return std::stod(v);
}

std::string to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

namespace {

bool all_or_none(const Order& o) { return o.kind == OrderKind::AllOrNoneBlock || o.kind == OrderKind::FillOrKill; }

Direction direction_of(const Order& o) { return o.side == Side::Sell ? Direction::Up : Direction::Down; }

int node_index(const std::vector<Node>& nodes, const std::string& area, Direction d)
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].area == area && nodes[i].direction == d)
            return static_cast<int>(i);
    return -1;
}

double signed_cost(const Order& o) { return o.side == Side::Sell ? o.price->eur() : -o.price->eur(); }

} // namespace

Power ClearedOrder::quantity() const
{
    Power q;
    for (auto p : per_mtu)
        q = max(q, p);
    return q;
}

bool ClearingResult::under_procured() const { return total_under().kw > 0; }

Power ClearingResult::total_under() const
{
    Power s;
    for (const auto& n : nodes)
        for (auto p : n.under)
            s += p;
    return s;
}

Power ClearingResult::total_over() const
{
    Power s;
    for (const auto& n : nodes)
        for (auto p : n.over)
            s += p;
    return s;
}

ClearingProblem build_clearing_problem(std::span<const RedispatchDemand> demand, std::span<const Order> orders,
                                       double threshold, double shortfall_penalty, double surplus_penalty)
{
    ClearingProblem cp;
    cp.threshold = threshold;
    if (demand.empty())
        throw std::invalid_argument("redispatch clearing needs at least one demand");
    for (const auto& d : demand) {
        validate(d);
        if (node_index(cp.nodes, d.down_area, Direction::Down) < 0)
            cp.nodes.push_back({d.down_area, Direction::Down});
        if (node_index(cp.nodes, d.up_area, Direction::Up) < 0)
            cp.nodes.push_back({d.up_area, Direction::Up});
    }
    TimeStamp lo = demand.front().start, hi = demand.front().end;
    for (const auto& d : demand) {
        lo = std::min(lo, d.start);
        hi = std::max(hi, d.end);
    }
    for (const auto& o : orders) {
        if (o.area.empty())
            throw std::invalid_argument("redispatch order " + std::to_string(o.id) + " has no area");
        if (!o.price)
            throw std::invalid_argument("redispatch order " + std::to_string(o.id) + " has no price");
        if (node_index(cp.nodes, o.area, direction_of(o)) < 0) {
            cp.excluded.push_back(o);
            continue;
        }
        cp.orders.push_back(o);
        lo = std::min(lo, o.delivery_start);
        hi = std::max(hi, o.delivery_end());
    }
    cp.t0 = lo;
    const int T = static_cast<int>(hi.minus(lo)) + 1;

    auto& uc = cp.uc;
    uc.horizon = T;
    uc.num_nodes = static_cast<int>(cp.nodes.size());
    uc.slack = true;
    uc.slack_penalty = shortfall_penalty;
    uc.surplus_penalty = surplus_penalty;
    cp.demand.assign(cp.nodes.size(), std::vector<Power>(T));
    for (const auto& d : demand)
        for (int t = 0; t < T; ++t)
            if (d.covers(lo.plus(t))) {
                cp.demand[node_index(cp.nodes, d.down_area, Direction::Down)][t] += d.quantity;
                cp.demand[node_index(cp.nodes, d.up_area, Direction::Up)][t] += d.quantity;
            }
    uc.load.assign(cp.nodes.size(), std::vector<double>(T));
    for (std::size_t n = 0; n < cp.nodes.size(); ++n)
        for (int t = 0; t < T; ++t)
            uc.load[n][t] = cp.demand[n][t].mw();

    opt::UCCoupling eq;
    for (std::size_t i = 0; i < cp.orders.size(); ++i) {
        const Order& o = cp.orders[i];
        opt::UCUnit u;
        u.name = "order_" + std::to_string(o.id);
        u.node = node_index(cp.nodes, o.area, direction_of(o));
        u.pnom = o.quantity.mw();
        const bool aon = all_or_none(o);
        for (int t = 0; t < T; ++t) {
            const bool in = o.covers(lo.plus(t));
            u.p_max_pu.push_back(in ? 1.0 : 0.0);
            u.p_min_pu.push_back(in && aon ? 1.0 : 0.0);
        }
        u.srmc = signed_cost(o);
        u.committable = aon;
        u.flat = o.duration > 1;
        u.min_up = aon ? o.duration : 0;
        uc.units.push_back(std::move(u));
        eq.terms.emplace_back(static_cast<int>(i), direction_of(o) == Direction::Up ? 1.0 : -1.0);
    }
    if (std::isfinite(threshold) && !eq.terms.empty()) {
        eq.lower = -threshold;
        eq.upper = threshold;
        uc.couplings.push_back(std::move(eq));
    }
    return cp;
}

namespace {

ClearingResult assemble(const ClearingProblem& cp, const std::vector<std::vector<double>>& g)
{
    ClearingResult r;
    r.t0 = cp.t0;
    r.horizon = cp.uc.horizon;
    const int T = r.horizon;
    r.induced.assign(T, Power{});
    for (auto& n : cp.nodes) {
        NodeResult nr;
        nr.node = n;
        nr.cleared.assign(T, Power{});
        r.nodes.push_back(std::move(nr));
    }
    for (std::size_t i = 0; i < cp.orders.size(); ++i) {
        const Order& o = cp.orders[i];
        ClearedOrder co{o, std::vector<Power>(T)};
        const int n = cp.uc.units[i].node;
        for (int t = 0; t < T; ++t) {
            Power q = Power::from_mw(g[i][t]);
            q = max(Power{}, min(q, o.quantity));
            co.per_mtu[t] = q;
            r.nodes[n].cleared[t] += q;
            r.induced[t] += direction_of(o) == Direction::Up ? q : -q;
        }
        r.orders.push_back(std::move(co));
    }
    for (std::size_t n = 0; n < r.nodes.size(); ++n) {
        auto& nr = r.nodes[n];
        nr.demand = cp.demand[n];
        nr.under.assign(T, Power{});
        nr.over.assign(T, Power{});
        for (int t = 0; t < T; ++t) {
            const Power d = nr.demand[t] - nr.cleared[t];
            nr.under[t] = max(d, Power{});
            nr.over[t] = max(-d, Power{});
        }
    }
    return r;
}

} // namespace

ClearingResult clear_rdm(const ClearingProblem& cp, opt::MilpOptions options)
{
    const opt::UCSolution s = opt::solve_uc(cp.uc, options);
    if (s.status != opt::UCStatus::Optimal) {
        ClearingResult r;
        r.t0 = cp.t0;
        r.horizon = cp.uc.horizon;
        r.failure = "redispatch clearing " + opt::to_string(s.status) +
                    (s.infeasible_class.empty() ? "" : " (" + s.infeasible_class + ")");
        return r;
    }
    ClearingResult r = assemble(cp, s.g);
    r.solved = true;
    r.objective = s.objective;
    return r;
}

ClearingResult brute_force_rdm(const ClearingProblem& cp, int max_all_or_none)
{
    using opt::LinearProgram;
    const int T = cp.uc.horizon;
    const double h = cp.uc.isp_hours;
    const double pen_short = cp.uc.slack_penalty;
    const double pen_surplus = cp.uc.surplus_penalty;
    std::vector<int> aon;
    for (std::size_t i = 0; i < cp.orders.size(); ++i)
        if (all_or_none(cp.orders[i]))
            aon.push_back(static_cast<int>(i));
    if (static_cast<int>(aon.size()) > max_all_or_none)
        throw std::invalid_argument("too many all-or-none orders to enumerate");

    ClearingResult best;
    best.failure = "no feasible combination";
    std::vector<std::vector<double>> best_g;
    for (long mask = 0; mask < (1L << aon.size()); ++mask) {
        std::vector<char> accepted(cp.orders.size(), 0);
        for (std::size_t b = 0; b < aon.size(); ++b)
            accepted[aon[b]] = (mask >> b) & 1;

        LinearProgram lp;
        double fixed = 0.0;
        std::vector<std::vector<double>> constant(cp.orders.size(), std::vector<double>(T, 0.0));
        std::vector<std::vector<int>> var(cp.orders.size(), std::vector<int>(T, -1));
        std::vector<double> eq_const(T, 0.0);
        std::vector<std::vector<double>> node_const(cp.nodes.size(), std::vector<double>(T, 0.0));
        for (std::size_t i = 0; i < cp.orders.size(); ++i) {
            const Order& o = cp.orders[i];
            const double q = o.quantity.mw();
            const double c = signed_cost(o) * h;
            const int n = cp.uc.units[i].node;
            const double sgn = direction_of(o) == Direction::Up ? 1.0 : -1.0;
            int prev = -1;
            for (int t = 0; t < T; ++t) {
                if (!o.covers(cp.t0.plus(t)))
                    continue;
                if (all_or_none(o)) {
                    const double v = accepted[i] ? q : 0.0;
                    constant[i][t] = v;
                    fixed += c * v;
                    node_const[n][t] += v;
                    eq_const[t] += sgn * v;
                } else {
                    var[i][t] = lp.add_variable(0.0, q, c);
                    if (o.duration > 1 && prev >= 0)
                        lp.add_row({{var[i][t], 1.0}, {var[i][prev], -1.0}}, 0.0, 0.0);
                    prev = t;
                }
            }
        }
        for (std::size_t n = 0; n < cp.nodes.size(); ++n)
            for (int t = 0; t < T; ++t) {
                std::vector<LinearProgram::Term> row;
                for (std::size_t i = 0; i < cp.orders.size(); ++i)
                    if (cp.uc.units[i].node == static_cast<int>(n) && var[i][t] >= 0)
                        row.push_back({var[i][t], 1.0});
                row.push_back({lp.add_variable(0.0, opt::kInf, pen_short * h), 1.0});
                row.push_back({lp.add_variable(0.0, opt::kInf, pen_surplus * h), -1.0});
                const double rhs = cp.demand[n][t].mw() - node_const[n][t];
                lp.add_row(std::move(row), rhs, rhs);
            }
        if (std::isfinite(cp.threshold))
            for (int t = 0; t < T; ++t) {
                std::vector<LinearProgram::Term> row;
                for (std::size_t i = 0; i < cp.orders.size(); ++i)
                    if (var[i][t] >= 0)
                        row.push_back({var[i][t], direction_of(cp.orders[i]) == Direction::Up ? 1.0 : -1.0});
                const double lo = -cp.threshold - eq_const[t], hi = cp.threshold - eq_const[t];
                if (row.empty()) {
                    if (lo > 1e-9 || hi < -1e-9)
                        goto next_mask;
                    continue;
                }
                lp.add_row(std::move(row), lo, hi);
            }
        lp.objective_offset = fixed;
        {
            const opt::LpResult r = opt::solve_lp_dense(lp);
            if (r.status != opt::LpStatus::Optimal)
                goto next_mask;
            if (best.solved && !(r.objective < best.objective - 1e-9))
                goto next_mask;
            best.solved = true;
            best.objective = r.objective;
            best_g = constant;
            for (std::size_t i = 0; i < cp.orders.size(); ++i)
                for (int t = 0; t < T; ++t)
                    if (var[i][t] >= 0)
                        best_g[i][t] = r.x[var[i][t]];
        }
    next_mask:;
    }
    if (!best.solved)
        return best;
    ClearingResult r = assemble(cp, best_g);
    r.solved = true;
    r.objective = best.objective;
    return r;
}

std::vector<Transaction> settle_rdm(const ClearingResult& result, TimeStamp now, const std::string& grid_operator)
{
    std::vector<Transaction> out;
    for (const auto& co : result.orders) {
        const Order& o = co.order;
        int t = 0;
        while (t < result.horizon) {
            const Power q = co.per_mtu[t];
            if (q.kw == 0) {
                ++t;
                continue;
            }
            int end = t;
            while (end + 1 < result.horizon && co.per_mtu[end + 1] == q)
                ++end;
            Transaction tr;
            tr.market = Market::RDM;
            tr.time = now;
            tr.delivery = result.t0.plus(t);
            tr.duration = end - t + 1;
            tr.price = *o.price;
            tr.quantity = q;
            tr.area = o.area;
            if (o.side == Side::Sell) {
                tr.seller = o.agent;
                tr.seller_asset = o.asset;
                tr.sell_order = o.id;
                tr.buyer = grid_operator;
            } else {
                tr.buyer = o.agent;
                tr.buyer_asset = o.asset;
                tr.buy_order = o.id;
                tr.seller = grid_operator;
            }
            out.push_back(std::move(tr));
            t = end + 1;
        }
    }
    return out;
}

double grid_operator_cost(std::span<const Transaction> trades, const std::string& grid_operator)
{
    Money m;
    for (const auto& t : trades) {
        if (t.market != Market::RDM)
            continue;
        if (t.buyer == grid_operator)
            m += t.value();
        else if (t.seller == grid_operator)
            m += -t.value();
    }
    return m.eur();
}

} // namespace asam::rdm
