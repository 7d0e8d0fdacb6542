#pragma once

#include "asam/simulation.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asam::report {

/// Median of quantity-weighted mean prices over delivery MTUs; empty when no
/// priced quantity exists. Each entry is (delivery MTU index, price, MW).
struct PricePoint {
    std::int64_t mtu = 0;
    double price = 0.0;
    double mw = 0.0;
};
std::optional<double> median_of_weighted_means(std::vector<PricePoint> points);

/// One market column of the interdependency table.
struct MarketIndicators {
    Market market = Market::DAM;
    std::optional<double> sell_offered_price, buy_offered_price, sell_cleared_price, buy_cleared_price;
    double sell_offered_mwh = 0.0, buy_offered_mwh = 0.0;
    double sell_cleared_mwh = 0.0, buy_cleared_mwh = 0.0;
    bool cleared = false; // false for markets that never clear (blank cells)
    double return_eur = 0.0;
    std::optional<double> relative_quantity; // share of sell cleared MWh, 0..1
    std::optional<double> relative_return;
};

/// Each value's share of the sum; all empty when the sum is not positive.
std::vector<std::optional<double>> relative_shares(std::span<const double> values);

/// Columns in the order BEM, IDM, RDM, DAM. Offered quantities count every
/// emitted order; the exogenous DAM load counts as the buy side of the DAM.
std::vector<MarketIndicators> interdependency_table(const Simulation& sim);

struct RedispatchKpis {
    double demand_up_mwh = 0.0, demand_down_mwh = 0.0;
    double cleared_up_mwh = 0.0, cleared_down_mwh = 0.0;
    double under_up_mwh = 0.0, under_down_mwh = 0.0;
    double over_up_mwh = 0.0, over_down_mwh = 0.0;
    double induced_mwh = 0.0; // sum over MTUs of |up - down| * 0.25 h
    double grid_operator_cost_eur = 0.0;
    int demands = 0;
    int unresolved = 0;

    double under_mwh() const { return under_up_mwh + under_down_mwh; }
    double over_mwh() const { return over_up_mwh + over_down_mwh; }
};

/// Demands that were never committed count fully as under-procurement.
RedispatchKpis redispatch_kpis(const Simulation& sim);

struct RedispatchMtu {
    TimeStamp t;
    Power demand_up, demand_down, cleared_up, cleared_down, under_up, under_down, over_up, over_down, induced;
};
std::vector<RedispatchMtu> redispatch_per_mtu(const Simulation& sim);

struct Markup {
    TimeStamp placed;
    std::string agent;
    std::string asset;
    Market market = Market::DAM;
    Side side = Side::Sell;
    TimeStamp delivery;
    int duration = 1;
    Price price;
    Price srmc;
    std::string strategy;

    /// sell: price - srmc, buy: srmc - price (EUR/MWh).
    double value() const;
};

/// Emitted orders with a price and an asset srmc. Market orders and
/// portfolio-level orders are excluded.
std::vector<Markup> markup_analysis(const Simulation& sim);

struct CostRow {
    std::string category;
    double net_eur = 0.0;
    double eur_per_mwh = 0.0; // normalized by the exogenous DAM load
};

/// DAM load payments, IDM net and turnover, RDM system-operations cost, BEM
/// (never cleared), imbalance settlement net, generation cost and market
/// party profit.
std::vector<CostRow> system_costs(const Simulation& sim);

/// Sum of all cash flows between market parties, the grid operator, the
/// exogenous load and the imbalance settlement; zero in a closed system.
/// Imbalance settlement is balanced by the settlement counterparty itself,
/// so only trade flows are summed.
Money accounting_residual(const Simulation& sim);

/// Net cash received per participant across all trades (load and grid
/// operator included).
std::vector<std::pair<std::string, Money>> cash_by_participant(const Simulation& sim);

} // namespace asam::report
