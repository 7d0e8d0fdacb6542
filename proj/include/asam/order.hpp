#pragma once

#include "asam/time.hpp"
#include "asam/units.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asam {

enum class Market { DAM, IDM, RDM, BEM };
enum class Side { Buy, Sell };
enum class OrderKind { Limit, MarketOrder, AllOrNoneBlock, FillOrKill };

std::string to_string(Market m);
std::string to_string(Side s);
std::string to_string(OrderKind k);
Market parse_market(const std::string& s);

/// Ordinal creation stamp: simulation time plus a per-book monotone counter.
struct InitTime {
    TimeStamp time;
    std::uint64_t seq = 0;
    friend auto operator<=>(const InitTime&, const InitTime&) = default;
};

struct Order {
    std::uint64_t id = 0;
    std::string agent;
    std::string asset; // empty for exogenous or portfolio-level orders
    Market market = Market::IDM;
    Side side = Side::Sell;
    std::optional<Price> price; // absent for market orders and DAM load
    Power quantity;
    Power remaining;
    TimeStamp delivery_start;
    int duration = 1; // MTUs
    OrderKind kind = OrderKind::Limit;
    InitTime init_time;
    std::string area; // RDM only
    TimeStamp placed; // step in which the agent emitted it

    TimeStamp delivery_end() const { return delivery_start.plus(duration - 1); }
    bool covers(TimeStamp t) const { return t >= delivery_start && t <= delivery_end(); }
    bool is_market() const { return kind == OrderKind::MarketOrder; }
};

/// A settled trade. DAM and RDM trades may span several MTUs (`duration`).
struct Transaction {
    Market market = Market::IDM;
    TimeStamp time;
    TimeStamp delivery;
    int duration = 1;
    std::string buyer;
    std::string seller;
    std::string buyer_asset;
    std::string seller_asset;
    std::uint64_t buy_order = 0;
    std::uint64_t sell_order = 0;
    Price price;
    Power quantity;
    std::string area;

    Energy energy() const { return Energy::of(quantity, duration); }
    Money value() const { return Money{Money::of(price, quantity).units * duration}; }
    bool covers(TimeStamp t) const { return t >= delivery && t < delivery.plus(duration); }
};

class OrderRejected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverMatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class OrderBook {
public:
    explicit OrderBook(Market market, std::set<OrderKind> allowed = {});

    Market market() const { return market_; }

    /// Validates the kind against the market rules, stamps id and init_time
    /// and stores the order. Returns the assigned id.
    std::uint64_t insert(Order order, TimeStamp now);

    /// Stamps id and init_time without storing (orders that may never rest).
    void stamp(Order& order, TimeStamp now);
    /// Stores an order already stamped by this book.
    void rest(Order order);

    /// Orders overlapping `delivery`: sells by ascending price, buys by
    /// descending price, ties by init_time.
    std::vector<const Order*> sorted_view(Side side, TimeStamp delivery) const;

    /// Decrements remaining quantity; removes the order when it reaches zero.
    Order reduce(std::uint64_t id, Power matched);

    bool remove(std::uint64_t id);
    std::size_t remove_if_agent(const std::string& agent);
    std::size_t remove_expired(TimeStamp now);

    const Order* find(std::uint64_t id) const;
    std::vector<const Order*> orders() const; // by id
    std::size_t size() const { return orders_.size(); }
    bool empty() const { return orders_.empty(); }
    bool allows(OrderKind k) const { return allowed_.empty() || allowed_.count(k) > 0; }

private:
    Market market_;
    std::set<OrderKind> allowed_;
    std::map<std::uint64_t, Order> orders_;
    std::uint64_t next_id_ = 1;
    std::uint64_t next_seq_ = 1;
};

/// True if order `a` ranks ahead of `b` on the same side.
bool ranks_before(const Order& a, const Order& b);

} // namespace asam
