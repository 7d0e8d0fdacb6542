#pragma once

#include "asam/dam.hpp"
#include "asam/order.hpp"
#include "asam/rdm.hpp"
#include "asam/scenario.hpp"
#include "asam/uc.hpp"

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace asam {

/// Available capacities of one asset at one MTU.
struct Capacity {
    Power av_up;
    Power av_down;
    Power rr_up;
    Power rr_down;
};

/// Available-capacity formulas, evaluated in exact kW arithmetic. `p_max_pu`
/// and `p_min_pu` are the band at t; ramp limits in p.u. of pnom per ISP.
Capacity available_capacity(Power pnom, double p_max_pu, double p_min_pu, double ramp_up, double ramp_down,
                            Power sd_prev, Power sd, Power sd_next);

/// Risk mark-up: exp_risk_price * exp_risk_quantity / offer_quantity (EUR/MWh).
/// Throws std::invalid_argument when offer_quantity <= 0.
double risk_markup(double exp_risk_price, double exp_risk_quantity_mwh, double offer_quantity_mwh);

/// Energy (MWh) of the ramp needed on one side of a block of `q` MW with a
/// ramp of `ramp_mw` per ISP: sum over i >= 1 of max(q - i*ramp, 0) * 0.25 h.
double ramp_energy_mwh(double q_mw, double ramp_mw);

/// Gate times of one market, parsed from the market rules.
struct Gates {
    GateSpec opening;
    GateSpec closure;

    bool open_for(TimeStamp delivery, TimeStamp now) const;
    /// Fraction of the trading window still ahead, in (0, 1].
    double remaining_fraction(TimeStamp delivery, TimeStamp now) const;
};

/// RDM mark-up components switched on by the pricing strategy.
struct RdmMarkups {
    bool opportunity = false;
    bool ramping = false;
    bool start_stop = false;
};
RdmMarkups parse_rdm_markups(const std::string& pricing_strategy);

/// What an agent can see of the markets when placing orders.
struct MarketView {
    TimeStamp now;
    Gates idm, rdm, bem;
    std::function<std::optional<Price>(TimeStamp)> dam_price;
    const OrderBook* idm_book = nullptr;
    std::span<const rdm::RedispatchDemand> rdm_demands;
    std::mt19937_64* rng = nullptr;
};

/// An order together with the marginal cost of the asset behind it, for the
/// mark-up analysis. `srmc` is empty for portfolio-level orders.
struct PlacedOrder {
    Order order;
    std::optional<Price> srmc;
    std::string strategy;
};

class MarketParty {
public:
    MarketParty(std::string name, std::vector<Asset> assets, StrategyConfig strategy, Settings settings);

    const std::string& name() const { return name_; }
    const std::vector<Asset>& assets() const { return assets_; }
    const StrategyConfig& strategy() const { return strategy_; }

    // --- trade schedule ---

    /// Books a transaction into the trade schedule. RDM trades also bound the
    /// asset's dispatch: minSD = SD + q upward, maxSD = SD - q downward.
    void apply_transaction(const Transaction& t);
    /// Adds a forecast error of `pu` times the DAM position over the window.
    void add_forecast_error(const ForecastErrorRecord& fe);
    /// Seeds the dispatch from the first DAM result (assets committed where
    /// cleared > 0, steady state before the day).
    void seed_dispatch(const dam::DamResult& result);
    /// Extends the schedules horizon to `end` (last MTU of a cleared day).
    void extend_horizon(TimeStamp end);
    std::optional<TimeStamp> horizon_end() const;

    Power position(Market m, TimeStamp t) const;
    Power total_position(TimeStamp t) const;
    Power forecast_error(TimeStamp t) const;
    Power dispatch(std::size_t asset, TimeStamp t) const;
    bool committed(std::size_t asset, TimeStamp t) const;
    Power total_dispatch(TimeStamp t) const;
    /// SD + TP + FE: long positive, short negative.
    Power imbalance(TimeStamp t) const;
    std::optional<Power> dispatch_floor(std::size_t asset, TimeStamp t) const;
    std::optional<Power> dispatch_cap(std::size_t asset, TimeStamp t) const;

    // --- dispatch ---

    /// Portfolio unit commitment over (now, horizon end]. Dispatch up to now
    /// stays fixed. No-op when nothing changed since the last run.
    void optimize_dispatch(TimeStamp now);
    bool dirty() const { return dirty_; }
    /// Builds the optimization problem without solving (for inspection).
    opt::UCProblem dispatch_problem(TimeStamp now) const;

    /// Available capacities using the effective band (committed units
    /// only; offline units have no operational capacity).
    Capacity capacity(std::size_t asset, TimeStamp t) const;

    // --- order placement ---

    std::vector<PlacedOrder> dam_orders(int day, TimeStamp now, const dam::AvailabilityCaps& caps) const;
    std::vector<PlacedOrder> rdm_orders(const MarketView& view) const;
    std::vector<PlacedOrder> idm_orders(const MarketView& view) const;
    std::vector<PlacedOrder> bem_orders(const MarketView& view) const;
    std::vector<PlacedOrder> imbalance_orders(const MarketView& view) const;

    std::size_t asset_index(const std::string& asset) const;

private:
    struct Slot {
        std::array<Power, 4> tp{}; // by Market
        Power fe;
    };
    struct AssetSlot {
        Power sd;
        bool on = false;
        std::optional<Power> floor;
        std::optional<Power> cap;
    };

    std::int64_t idx(TimeStamp t) const { return t.index(); }
    void grow(std::int64_t last);
    opt::UCUnit make_unit(std::size_t a, TimeStamp now, int horizon) const;
    int time_in_state(std::size_t a, TimeStamp now) const;
    std::optional<Price> best_other(const OrderBook& book, Side side, TimeStamp delivery) const;

    std::string name_;
    std::vector<Asset> assets_;
    StrategyConfig strategy_;
    Settings settings_;
    std::vector<Slot> slots_;                  // by absolute ISP index
    std::vector<std::vector<AssetSlot>> sched_; // [asset][ISP index]
    std::optional<TimeStamp> horizon_end_;
    std::int64_t history_start_ = -1; // first ISP with a seeded dispatch
    bool dirty_ = true;
};

class DispatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace asam
