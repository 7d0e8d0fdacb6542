#pragma once

#include "asam/order.hpp"
#include "asam/uc.hpp"

#include <span>
#include <string>
#include <vector>

namespace asam::rdm {

struct RedispatchDemand {
    std::uint64_t id = 0;
    Power quantity;
    std::string down_area;
    std::string up_area;
    TimeStamp start;
    TimeStamp end; // inclusive

    int duration() const { return static_cast<int>(end.minus(start)) + 1; }
    bool covers(TimeStamp t) const { return t >= start && t <= end; }
};

/// Validates the demand invariants; throws std::invalid_argument.
void validate(const RedispatchDemand& d);

/// Equilibrium threshold of the acquisition method; infinity for "thinf".
double threshold_from_method(const std::string& acquisition_method);

enum class Direction { Up, Down };
std::string to_string(Direction d);

struct Node {
    std::string area;
    Direction direction;
};

struct ClearingProblem {
    opt::UCProblem uc;
    TimeStamp t0;
    std::vector<Node> nodes;
    std::vector<Order> orders;        // one per UC unit, same index
    std::vector<Order> excluded;      // orders with no matching demand node
    std::vector<std::vector<Power>> demand; // [node][t]
    double threshold = opt::kInf;
};

struct ClearedOrder {
    Order order;
    std::vector<Power> per_mtu; // over the problem horizon
    Power quantity() const;     // max over MTUs
};

struct NodeResult {
    Node node;
    std::vector<Power> demand, cleared, under, over;
};

struct ClearingResult {
    bool solved = false;
    std::string failure;
    double objective = 0.0;
    TimeStamp t0;
    int horizon = 0;
    std::vector<ClearedOrder> orders; // every order of the problem, zero when rejected
    std::vector<NodeResult> nodes;
    std::vector<Power> induced; // per t: sum up cleared - sum down cleared

    bool under_procured() const;
    Power total_under() const;
    Power total_over() const;
};

/// Orders: sells are upward offers, buys are downward offers, each tagged with
/// an area. One node per (area, direction) present in the demand. All-or-none
/// kinds become committable units with p_min_pu = 1; multi-MTU orders are
/// held flat across their window.
ClearingProblem build_clearing_problem(std::span<const RedispatchDemand> demand, std::span<const Order> orders,
                                       double threshold, double shortfall_penalty = 10000.0,
                                       double surplus_penalty = 1000.0);

ClearingResult clear_rdm(const ClearingProblem& problem, opt::MilpOptions options = {});

/// Exhaustive accept/reject over all-or-none orders with an LP for the rest.
/// Returns the objective and per-order cleared MW (same layout as clear_rdm).
ClearingResult brute_force_rdm(const ClearingProblem& problem, int max_all_or_none = 12);

/// Pay-as-bid: upward orders are paid their price by the grid operator,
/// downward orders pay theirs to it. One transaction per cleared order and
/// contiguous run of equal quantity.
std::vector<Transaction> settle_rdm(const ClearingResult& result, TimeStamp now, const std::string& grid_operator);

/// Grid operator net cost in EUR: paid for upward minus received for downward.
double grid_operator_cost(std::span<const Transaction> rdm_trades, const std::string& grid_operator);

} // namespace asam::rdm
