#include "asam/output.hpp"

#include "asam/csv.hpp"
#include "asam/report.hpp"

#include <fstream>
#include <stdexcept>

namespace asam::output {

namespace {

using Row = std::vector<std::string>;

class Writer {
public:
    Writer(const std::filesystem::path& dir, const std::string& name, std::vector<std::string>& written)
        : path_(dir / name), os_(path_, std::ios::binary)
    {
        if (!os_)
            throw std::runtime_error("cannot write " + path_.string());
        written.push_back(name);
    }
    void row(const Row& r) { csv::write_row(os_, r); }
    ~Writer() { os_.flush(); }

private:
    std::filesystem::path path_;
    std::ofstream os_;
};

std::string opt_price(const std::optional<Price>& p) { return p ? format_price(*p) : ""; }
std::string opt_num(const std::optional<double>& v, int dec = 2) { return v ? format_fixed(*v, dec) : ""; }
std::string num(double v, int dec = 3) { return format_fixed(v, dec); }
Row ts_cells(TimeStamp t) { return {std::to_string(t.day()), std::to_string(t.mtu())}; }

Row join(Row a, const Row& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Row order_cells(const Order& o)
{
    return join(join({std::to_string(o.id), o.agent, o.asset, to_string(o.market), to_string(o.side),
                      to_string(o.kind), opt_price(o.price), format_mw(o.quantity), format_mw(o.remaining)},
                     ts_cells(o.delivery_start)),
                {std::to_string(o.duration), o.area});
}

const Row kOrderHeader{"order_id", "agent", "asset", "market", "side", "kind", "price", "quantity_mw", "remaining_mw",
                       "delivery_day", "delivery_mtu", "duration", "area"};

void trades(const Simulation& sim, Writer w)
{
    w.row({"market", "day", "mtu", "delivery_day", "delivery_mtu", "duration", "buyer", "seller", "buyer_asset",
           "seller_asset", "buy_order", "sell_order", "price", "quantity_mw", "energy_mwh", "value_eur", "area"});
    for (const auto& t : sim.log().trades)
        w.row(join(join(join({to_string(t.market)}, ts_cells(t.time)), ts_cells(t.delivery)),
                   {std::to_string(t.duration), t.buyer, t.seller, t.buyer_asset, t.seller_asset,
                    std::to_string(t.buy_order), std::to_string(t.sell_order), format_price(t.price),
                    format_mw(t.quantity), num(t.energy().mwh(), 4), num(t.value().eur(), 4), t.area}));
}

void offers(const Simulation& sim, Writer w)
{
    w.row(join({"day", "mtu", "strategy", "srmc"}, kOrderHeader));
    for (const auto& o : sim.log().offers)
        w.row(join(join(ts_cells(o.time), {o.strategy, opt_price(o.srmc)}), order_cells(o.order)));
}

void snapshots(const Simulation& sim, Writer w)
{
    w.row(join({"day", "mtu"}, kOrderHeader));
    for (const auto& s : sim.log().snapshots)
        w.row(join(ts_cells(s.time), order_cells(s.order)));
}

void dispatch(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "agent", "asset", "dispatch_mw", "committed", "floor_mw", "cap_mw", "av_up_mw", "av_down_mw",
           "rr_up_mw", "rr_down_mw"});
    for (const auto& t : sim.log().steps)
        for (const auto& p : sim.parties())
            for (std::size_t a = 0; a < p.assets().size(); ++a) {
                const auto f = p.dispatch_floor(a, t), c = p.dispatch_cap(a, t);
                const auto cap = p.capacity(a, t);
                w.row(join(ts_cells(t), {p.name(), p.assets()[a].name, format_mw(p.dispatch(a, t)),
                                         p.committed(a, t) ? "1" : "0", f ? format_mw(*f) : "", c ? format_mw(*c) : "",
                                         format_mw(cap.av_up), format_mw(cap.av_down), format_mw(cap.rr_up),
                                         format_mw(cap.rr_down)}));
            }
}

void positions(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "agent", "dam_mw", "idm_mw", "rdm_mw", "bem_mw", "forecast_error_mw", "dispatch_mw",
           "imbalance_mw"});
    for (const auto& t : sim.log().steps)
        for (const auto& p : sim.parties())
            w.row(join(ts_cells(t), {p.name(), format_mw(p.position(Market::DAM, t)),
                                     format_mw(p.position(Market::IDM, t)), format_mw(p.position(Market::RDM, t)),
                                     format_mw(p.position(Market::BEM, t)), format_mw(p.forecast_error(t)),
                                     format_mw(p.total_dispatch(t)), format_mw(p.imbalance(t))}));
}

void prices(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "dam_price", "dam_load_mw", "control_state", "short_price", "long_price",
           "system_imbalance_mw", "induced_imbalance_mw"});
    for (const auto& r : sim.log().isps)
        w.row(join(ts_cells(r.isp), {opt_price(r.dam_price), format_mw(r.dam_load), std::to_string(r.control_state),
                                     format_price(r.prices.short_price), format_price(r.prices.long_price),
                                     format_mw(r.system_imbalance), format_mw(r.induced)}));
}

void dam_results(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "load_mw", "price", "cleared_mw", "unserved_mw", "scarcity"});
    for (const auto& d : sim.log().dam_results)
        for (const auto& h : d.hours)
            w.row(join(ts_cells(h.start), {format_mw(h.load), opt_price(h.price), format_mw(h.cleared),
                                           format_mw(h.unserved), h.scarcity ? "1" : "0"}));
}

void settlements(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "agent", "imbalance_mw", "price", "amount_eur"});
    for (const auto& s : sim.log().settlements)
        w.row(join(ts_cells(s.isp),
                   {s.agent, format_mw(s.imbalance), format_price(s.price), num(s.amount.eur(), 4)}));
}

void diagnostics(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "check", "detail"});
    for (const auto& d : sim.log().diagnostics)
        w.row(join(ts_cells(d.time), {d.check, d.detail}));
}

void kpis(const Simulation& sim, Writer w)
{
    const auto k = report::redispatch_kpis(sim);
    w.row({"indicator", "value"});
    const std::vector<std::pair<std::string, double>> rows{
        {"demand_up_mwh", k.demand_up_mwh},       {"demand_down_mwh", k.demand_down_mwh},
        {"cleared_up_mwh", k.cleared_up_mwh},     {"cleared_down_mwh", k.cleared_down_mwh},
        {"under_up_mwh", k.under_up_mwh},         {"under_down_mwh", k.under_down_mwh},
        {"over_up_mwh", k.over_up_mwh},           {"over_down_mwh", k.over_down_mwh},
        {"induced_imbalance_mwh", k.induced_mwh}, {"grid_operator_cost_eur", k.grid_operator_cost_eur},
        {"demands", k.demands},                   {"unresolved_demands", k.unresolved},
    };
    for (const auto& [name, v] : rows)
        w.row({name, num(v)});
}

void redispatch_mtu(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "demand_up_mw", "demand_down_mw", "cleared_up_mw", "cleared_down_mw", "under_up_mw",
           "under_down_mw", "over_up_mw", "over_down_mw", "induced_mw"});
    for (const auto& r : report::redispatch_per_mtu(sim))
        w.row(join(ts_cells(r.t), {format_mw(r.demand_up), format_mw(r.demand_down), format_mw(r.cleared_up),
                                   format_mw(r.cleared_down), format_mw(r.under_up), format_mw(r.under_down),
                                   format_mw(r.over_up), format_mw(r.over_down), format_mw(r.induced)}));
}

void markups(const Simulation& sim, Writer w)
{
    w.row({"day", "mtu", "agent", "asset", "market", "side", "delivery_day", "delivery_mtu", "duration", "strategy",
           "price", "srmc", "markup"});
    for (const auto& m : report::markup_analysis(sim))
        w.row(join(join(join(ts_cells(m.placed), {m.agent, m.asset, to_string(m.market), to_string(m.side)}),
                        ts_cells(m.delivery)),
                   {std::to_string(m.duration), m.strategy, format_price(m.price), format_price(m.srmc),
                    num(m.value(), 2)}));
}

void interdependency(const Simulation& sim, Writer w)
{
    const auto cols = report::interdependency_table(sim);
    Row header{"indicator"};
    for (const auto& c : cols)
        header.push_back(to_string(c.market));
    w.row(header);
    auto line = [&](const std::string& name, auto get) {
        Row r{name};
        for (const auto& c : cols)
            r.push_back(get(c));
        w.row(r);
    };
    using MI = report::MarketIndicators;
    line("price_sell_offered", [](const MI& c) { return opt_num(c.sell_offered_price); });
    line("price_buy_offered", [](const MI& c) { return opt_num(c.buy_offered_price); });
    line("price_sell_cleared", [](const MI& c) { return opt_num(c.sell_cleared_price); });
    line("price_buy_cleared", [](const MI& c) { return opt_num(c.buy_cleared_price); });
    line("quantity_sell_offered_mwh", [](const MI& c) { return num(c.sell_offered_mwh); });
    line("quantity_buy_offered_mwh", [](const MI& c) { return num(c.buy_offered_mwh); });
    line("quantity_sell_cleared_mwh", [](const MI& c) { return c.cleared ? num(c.sell_cleared_mwh) : ""; });
    line("quantity_buy_cleared_mwh", [](const MI& c) { return c.cleared ? num(c.buy_cleared_mwh) : ""; });
    line("relative_quantity_cleared_pct",
         [](const MI& c) { return opt_num(c.relative_quantity ? std::optional(*c.relative_quantity * 100) : std::nullopt); });
    line("return_eur", [](const MI& c) { return c.cleared ? num(c.return_eur, 2) : ""; });
    line("relative_return_pct",
         [](const MI& c) { return opt_num(c.relative_return ? std::optional(*c.relative_return * 100) : std::nullopt); });
}

void costs(const Simulation& sim, Writer w)
{
    w.row({"category", "net_eur", "eur_per_mwh_load"});
    for (const auto& r : report::system_costs(sim))
        w.row({r.category, num(r.net_eur, 2), num(r.eur_per_mwh, 4)});
}

} // namespace

std::vector<std::string> write_all(const Simulation& sim, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    trades(sim, Writer(dir, "trades.csv", written));
    offers(sim, Writer(dir, "offers.csv", written));
    dispatch(sim, Writer(dir, "dispatch.csv", written));
    positions(sim, Writer(dir, "positions.csv", written));
    prices(sim, Writer(dir, "prices.csv", written));
    dam_results(sim, Writer(dir, "dam_results.csv", written));
    snapshots(sim, Writer(dir, "orderbook_snapshots.csv", written));
    settlements(sim, Writer(dir, "imbalance_settlements.csv", written));
    diagnostics(sim, Writer(dir, "diagnostics.csv", written));
    kpis(sim, Writer(dir, "kpis_redispatch.csv", written));
    redispatch_mtu(sim, Writer(dir, "redispatch_mtu.csv", written));
    markups(sim, Writer(dir, "markups.csv", written));
    interdependency(sim, Writer(dir, "interdependency.csv", written));
    costs(sim, Writer(dir, "system_costs.csv", written));
    return written;
}

} // namespace asam::output
