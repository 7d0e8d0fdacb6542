#include "asam/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace asam::report {

std::optional<double> median_of_weighted_means(std::vector<PricePoint> points)
{
    std::map<std::int64_t, std::pair<double, double>> acc; // mtu -> (sum p*q, sum q)
    for (const auto& p : points) {
        if (p.mw <= 0.0)
            continue;
        auto& a = acc[p.mtu];
        a.first += p.price * p.mw;
        a.second += p.mw;
    }
    std::vector<double> means;
    for (const auto& [mtu, a] : acc)
        means.push_back(a.first / a.second);
    if (means.empty())
        return std::nullopt;
    std::sort(means.begin(), means.end());
    const auto n = means.size();
    return n % 2 ? means[n / 2] : 0.5 * (means[n / 2 - 1] + means[n / 2]);
}

namespace {

constexpr std::array<Market, 4> kColumns{Market::BEM, Market::IDM, Market::RDM, Market::DAM};

void add_points(std::vector<PricePoint>& out, TimeStamp start, int duration, Price price, Power q)
{
    for (int k = 0; k < duration; ++k)
        out.push_back({start.index() + k, price.eur(), q.mw()});
}

double mwh(Power q, int duration) { return Energy::of(q, duration).mwh(); }

} // namespace

std::vector<std::optional<double>> relative_shares(std::span<const double> values)
{
    double total = 0.0;
    for (double v : values)
        total += v;
    std::vector<std::optional<double>> out(values.size());
    if (total > 0.0)
        for (std::size_t i = 0; i < values.size(); ++i)
            out[i] = values[i] / total;
    return out;
}

std::vector<MarketIndicators> interdependency_table(const Simulation& sim)
{
    const auto& log = sim.log();
    const std::string& go = sim.grid_operator().name();

    std::map<Market, std::array<std::vector<PricePoint>, 4>> pts; // sell off, buy off, sell clr, buy clr
    std::map<Market, MarketIndicators> rows;
    for (auto m : kColumns) {
        rows[m].market = m;
        rows[m].cleared = m != Market::BEM;
    }

    for (const auto& o : log.offers) {
        auto& r = rows[o.order.market];
        const bool sell = o.order.side == Side::Sell;
        (sell ? r.sell_offered_mwh : r.buy_offered_mwh) += mwh(o.order.quantity, o.order.duration);
        if (o.order.price)
            add_points(pts[o.order.market][sell ? 0 : 1], o.order.delivery_start, o.order.duration, *o.order.price,
                       o.order.quantity);
    }
    // exogenous load bids on the DAM without a price
    for (const auto& d : log.dam_results)
        for (const auto& h : d.hours)
            rows[Market::DAM].buy_offered_mwh += mwh(h.load, kMtusPerHour);

    for (const auto& t : log.trades) {
        auto& r = rows[t.market];
        const double e = t.energy().mwh();
        if (t.seller != go) {
            r.sell_cleared_mwh += e;
            add_points(pts[t.market][2], t.delivery, t.duration, t.price, t.quantity);
        }
        if (t.buyer != go) {
            r.buy_cleared_mwh += e;
            add_points(pts[t.market][3], t.delivery, t.duration, t.price, t.quantity);
        }
        r.return_eur += t.value().eur();
    }

    for (auto& [m, r] : rows) {
        auto& p = pts[m];
        r.sell_offered_price = median_of_weighted_means(p[0]);
        r.buy_offered_price = median_of_weighted_means(p[1]);
        r.sell_cleared_price = median_of_weighted_means(p[2]);
        r.buy_cleared_price = median_of_weighted_means(p[3]);
    }
    std::vector<double> qty, ret;
    for (auto m : kColumns) {
        qty.push_back(rows[m].sell_cleared_mwh);
        ret.push_back(rows[m].return_eur);
    }
    const auto q_share = relative_shares(qty);
    const auto r_share = relative_shares(ret);
    std::vector<MarketIndicators> out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        auto r = rows[kColumns[i]];
        if (r.cleared) {
            r.relative_quantity = q_share[i];
            r.relative_return = r_share[i];
        }
        out.push_back(r);
    }
    return out;
}

RedispatchKpis redispatch_kpis(const Simulation& sim)
{
    RedispatchKpis k;
    const auto& grid = sim.grid_operator();
    for (const auto& d : sim.log().demands) {
        const double e = mwh(d.quantity, d.duration());
        k.demand_up_mwh += e;
        k.demand_down_mwh += e;
        ++k.demands;
    }
    for (const auto& d : grid.unresolved()) {
        const double e = mwh(d.quantity, d.duration());
        k.under_up_mwh += e;
        k.under_down_mwh += e;
        ++k.unresolved;
    }
    std::vector<Transaction> rdm_trades;
    for (const auto& c : grid.commits()) {
        for (const auto& n : c.result.nodes) {
            const bool up = n.node.direction == rdm::Direction::Up;
            Power cleared, under, over;
            for (std::size_t i = 0; i < n.cleared.size(); ++i) {
                cleared += n.cleared[i];
                under += n.under[i];
                over += n.over[i];
            }
            (up ? k.cleared_up_mwh : k.cleared_down_mwh) += Energy::of(cleared).mwh();
            (up ? k.under_up_mwh : k.under_down_mwh) += Energy::of(under).mwh();
            (up ? k.over_up_mwh : k.over_down_mwh) += Energy::of(over).mwh();
        }
    }
    for (const auto& r : redispatch_per_mtu(sim))
        k.induced_mwh += Energy::of(abs(r.induced)).mwh();
    for (const auto& t : sim.log().trades)
        if (t.market == Market::RDM)
            rdm_trades.push_back(t);
    k.grid_operator_cost_eur = rdm::grid_operator_cost(rdm_trades, grid.name());
    return k;
}

std::vector<RedispatchMtu> redispatch_per_mtu(const Simulation& sim)
{
    std::map<TimeStamp, RedispatchMtu> rows;
    auto row = [&](TimeStamp t) -> RedispatchMtu& {
        auto& r = rows[t];
        r.t = t;
        return r;
    };
    for (const auto& d : sim.grid_operator().unresolved())
        for (auto t = d.start; t <= d.end; t = advance(t)) {
            auto& r = row(t);
            r.demand_up += d.quantity;
            r.demand_down += d.quantity;
            r.under_up += d.quantity;
            r.under_down += d.quantity;
        }
    for (const auto& c : sim.grid_operator().commits())
        for (const auto& n : c.result.nodes) {
            const bool up = n.node.direction == rdm::Direction::Up;
            for (std::size_t i = 0; i < n.cleared.size(); ++i) {
                const auto t = c.result.t0.plus(static_cast<std::int64_t>(i));
                if (!c.demand.covers(t) && n.cleared[i].is_zero())
                    continue;
                auto& r = row(t);
                (up ? r.demand_up : r.demand_down) += n.demand[i];
                (up ? r.cleared_up : r.cleared_down) += n.cleared[i];
                (up ? r.under_up : r.under_down) += n.under[i];
                (up ? r.over_up : r.over_down) += n.over[i];
            }
        }
    std::vector<RedispatchMtu> out;
    for (auto& [t, r] : rows) {
        r.induced = r.cleared_up - r.cleared_down;
        out.push_back(r);
    }
    return out;
}

double Markup::value() const
{
    return side == Side::Sell ? (price - srmc).eur() : (srmc - price).eur();
}

std::vector<Markup> markup_analysis(const Simulation& sim)
{
    std::vector<Markup> out;
    for (const auto& o : sim.log().offers) {
        if (!o.srmc || !o.order.price || o.order.is_market())
            continue;
        out.push_back({o.time, o.order.agent, o.order.asset, o.order.market, o.order.side, o.order.delivery_start,
                       o.order.duration, *o.order.price, *o.srmc, o.strategy});
    }
    return out;
}

std::vector<CostRow> system_costs(const Simulation& sim)
{
    const auto& log = sim.log();
    const std::string& go = sim.grid_operator().name();

    double load_mwh = 0.0;
    for (const auto& d : log.dam_results)
        for (const auto& h : d.hours)
            load_mwh += mwh(h.load, kMtusPerHour);

    Money dam, idm_turnover, rdm_go, imbalance;
    for (const auto& t : log.trades) {
        switch (t.market) {
        case Market::DAM: dam += t.value(); break;
        case Market::IDM: idm_turnover += t.value(); break;
        case Market::RDM: rdm_go += t.buyer == go ? t.value() : -t.value(); break;
        case Market::BEM: break;
        }
    }
    for (const auto& s : log.settlements)
        imbalance += -s.amount; // paid by parties

    // generation cost of the realized dispatch over the simulated ISPs
    double gen = 0.0;
    for (const auto& p : sim.parties())
        for (std::size_t a = 0; a < p.assets().size(); ++a) {
            const auto& asset = p.assets()[a];
            std::optional<bool> prev;
            for (const auto& t : log.steps) {
                gen += asset.srmc * p.dispatch(a, t).mwh_per_isp();
                const bool on = p.committed(a, t);
                if (prev && on != *prev)
                    gen += on ? asset.start_up_cost : asset.shut_down_cost;
                prev = on;
            }
        }

    // party revenue from all markets for deliveries in the simulated ISPs
    Money revenue;
    std::set<std::string> party_names;
    for (const auto& p : sim.parties())
        party_names.insert(p.name());
    for (const auto& t : log.trades) {
        for (int k = 0; k < t.duration; ++k) {
            const auto d = t.delivery.plus(k);
            if (log.steps.empty() || d < log.steps.front() || d > log.steps.back())
                continue;
            const Money v = Money::of(t.price, t.quantity);
            if (party_names.count(t.seller))
                revenue += v;
            if (party_names.count(t.buyer))
                revenue += -v;
        }
    }
    const double profit = revenue.eur() - imbalance.eur() - gen;

    auto norm = [&](double eur) { return load_mwh > 0.0 ? eur / load_mwh : 0.0; };
    std::vector<CostRow> rows{
        {"dam_load_payment", dam.eur(), 0.0},
        {"idm_net", 0.0, 0.0},
        {"idm_turnover", idm_turnover.eur(), 0.0},
        {"rdm_system_operations", rdm_go.eur(), 0.0},
        {"bem", 0.0, 0.0},
        {"imbalance_settlement", imbalance.eur(), 0.0},
        {"generation_cost", gen, 0.0},
        {"market_party_profit", profit, 0.0},
    };
    for (auto& r : rows)
        r.eur_per_mwh = norm(r.net_eur);
    return rows;
}

std::vector<std::pair<std::string, Money>> cash_by_participant(const Simulation& sim)
{
    std::map<std::string, Money> cash;
    for (const auto& t : sim.log().trades) {
        cash[t.seller] += t.value();
        cash[t.buyer] += -t.value();
    }
    return {cash.begin(), cash.end()};
}

Money accounting_residual(const Simulation& sim)
{
    Money sum;
    for (const auto& [who, m] : cash_by_participant(sim))
        sum += m;
    return sum;
}

} // namespace asam::report
