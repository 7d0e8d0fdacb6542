#pragma once

#include "asam/dam.hpp"
#include "asam/grid_operator.hpp"
#include "asam/imbalance.hpp"
#include "asam/market_party.hpp"
#include "asam/order.hpp"
#include "asam/rng.hpp"
#include "asam/scenario.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asam {

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One emitted order as offered (before matching), with the step it was sent in.
struct OfferRecord {
    TimeStamp time;
    Order order;
    std::optional<Price> srmc;
    std::string strategy;
};

struct SnapshotRow {
    TimeStamp time;
    Order order;
};

/// Market-operator outcome for one delivered ISP.
struct IspRecord {
    TimeStamp isp;
    std::optional<Price> dam_price;
    Power dam_load;
    int control_state = 0;
    imbalance::Prices prices;
    Power system_imbalance;
    Power induced;
};

struct RunLog {
    std::vector<Transaction> trades; // every market, in clearing order
    std::vector<OfferRecord> offers;
    std::vector<SnapshotRow> snapshots; // open orders at the end of each step
    std::vector<dam::DamResult> dam_results;
    std::vector<IspRecord> isps;
    std::vector<imbalance::Settlement> settlements;
    std::vector<grid::Diagnostic> diagnostics;
    std::vector<rdm::RedispatchDemand> demands; // as requested by the grid operator
    std::vector<TimeStamp> steps;
    int dam_clearings = 0;
    int idm_clearings = 0;
    int rdm_clearing_attempts = 0;
};

/// Agents in declaration order with the grid operator moved last.
std::vector<std::string> agent_order(const std::vector<AgentDecl>& agents);

class Simulation {
public:
    explicit Simulation(Scenario scenario);

    /// Executes one step at now(): market-operator gate events, market
    /// parties in order, then the grid operator.
    void step();
    void run();
    bool finished() const { return steps_done_ >= scenario_.task.number_steps; }
    TimeStamp now() const { return now_; }
    int steps_done() const { return steps_done_; }

    const Scenario& scenario() const { return scenario_; }
    const RunLog& log() const { return log_; }
    const std::vector<MarketParty>& parties() const { return parties_; }
    const grid::GridOperator& grid_operator() const { return grid_; }
    const OrderBook& book(Market m) const;
    std::optional<TimeStamp> horizon_end() const { return horizon_end_; }
    TimeStamp last_step() const { return scenario_.task.start.plus(scenario_.task.number_steps - 1); }

    std::optional<Price> dam_price(TimeStamp t) const;
    Power dam_load(TimeStamp t) const;
    Power hourly_load() const { return hourly_load_; }

private:
    struct OpenDemand {
        rdm::RedispatchDemand demand;
        bool open = true;
    };

    void market_operator_phase();
    void clear_dam_day(int day);
    void place_dam_orders(MarketParty& p, int day);
    void party_turn(MarketParty& p);
    void grid_operator_turn();
    void attempt_rdm_clearing();
    void distribute(const std::vector<Transaction>& trades);
    void submit_idm(MarketParty& p, std::vector<PlacedOrder> orders);
    void snapshot();
    MarketView view_for(const MarketParty& p);
    MarketParty& party(const std::string& name);
    void refresh(MarketParty& p);
    dam::AvailabilityCaps caps_for(int day) const;

    Scenario scenario_;
    TimeStamp now_;
    int steps_done_ = 0;
    RngStreams rng_;
    std::vector<MarketParty> parties_;
    std::vector<std::size_t> order_; // party execution order
    grid::GridOperator grid_;

    Gates dam_gates_, idm_gates_, rdm_gates_, bem_gates_;
    imbalance::Regime regime_;
    imbalance::PriceTable price_table_;
    double rdm_threshold_;
    bool rdm_uniform_ = false;
    Power hourly_load_;

    OrderBook dam_book_, idm_book_, rdm_book_, bem_book_;
    std::map<int, std::vector<Order>> dam_pending_; // day -> offers
    std::map<int, dam::DamResult> dam_cleared_;
    std::set<std::pair<std::string, int>> dam_placed_; // (agent, day)
    std::vector<rdm::RedispatchDemand> open_cache_;
    std::vector<OpenDemand> demands_;
    std::vector<bool> fe_applied_;
    std::optional<TimeStamp> horizon_end_;
    RunLog log_;
};

} // namespace asam
