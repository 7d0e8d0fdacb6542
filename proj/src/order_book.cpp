#include "asam/order.hpp"

#include <algorithm>

namespace asam {

std::string to_string(Market m)
{
    switch (m) {
    case Market::DAM: return "DAM";
    case Market::IDM: return "IDM";
    case Market::RDM: return "RDM";
    case Market::BEM: return "BEM";
    }
    return "?";
}

std::string to_string(Side s) { return s == Side::Buy ? "buy" : "sell"; }

std::string to_string(OrderKind k)
{
    switch (k) {
    case OrderKind::Limit: return "limit";
    case OrderKind::MarketOrder: return "market";
    case OrderKind::AllOrNoneBlock: return "all_or_none_block";
    case OrderKind::FillOrKill: return "fill_or_kill";
    }
    return "?";
}

Market parse_market(const std::string& s)
{
    if (s == "DAM") return Market::DAM;
    if (s == "IDM") return Market::IDM;
    if (s == "RDM") return Market::RDM;
    if (s == "BEM") return Market::BEM;
    throw std::invalid_argument("unknown market '" + s + "'");
}

bool ranks_before(const Order& a, const Order& b)
{
    // market orders are the most aggressive on either side
    if (a.is_market() != b.is_market())
        return a.is_market();
    if (!a.is_market() && a.price != b.price) {
        const auto pa = a.price.value_or(Price{}), pb = b.price.value_or(Price{});
        return a.side == Side::Sell ? pa < pb : pa > pb;
    }
    return a.init_time < b.init_time;
}

OrderBook::OrderBook(Market market, std::set<OrderKind> allowed) : market_(market), allowed_(std::move(allowed)) {}

void OrderBook::stamp(Order& order, TimeStamp now)
{
    if (!allows(order.kind))
        throw OrderRejected(to_string(market_) + ": order kind " + to_string(order.kind) + " not permitted");
    if (order.quantity.kw < 0)
        throw OrderRejected(to_string(market_) + ": negative quantity");
    if (order.duration < 1)
        throw OrderRejected(to_string(market_) + ": duration must be at least one MTU");
    if (order.is_market() && order.duration != 1)
        throw OrderRejected(to_string(market_) + ": market orders cover exactly one MTU");
    if (!order.is_market() && !order.price)
        throw OrderRejected(to_string(market_) + ": limit order without price");
    order.market = market_;
    order.id = next_id_++;
    order.init_time = InitTime{now, next_seq_++};
    order.remaining = order.quantity;
}

std::uint64_t OrderBook::insert(Order order, TimeStamp now)
{
    stamp(order, now);
    const auto id = order.id;
    orders_.emplace(id, std::move(order));
    return id;
}

void OrderBook::rest(Order order)
{
    if (order.id == 0 || order.id >= next_id_)
        throw std::logic_error("rest: order was not stamped by this book");
    const auto id = order.id;
    orders_.emplace(id, std::move(order));
}

std::vector<const Order*> OrderBook::sorted_view(Side side, TimeStamp delivery) const
{
    std::vector<const Order*> out;
    for (const auto& [id, o] : orders_)
        if (o.side == side && o.covers(delivery))
            out.push_back(&o);
    std::sort(out.begin(), out.end(), [](const Order* a, const Order* b) { return ranks_before(*a, *b); });
    return out;
}

Order OrderBook::reduce(std::uint64_t id, Power matched)
{
    auto it = orders_.find(id);
    if (it == orders_.end())
        throw OverMatch("order " + std::to_string(id) + " not in book");
    if (matched.kw < 0 || matched > it->second.remaining)
        throw OverMatch("order " + std::to_string(id) + ": matched " + format_mw(matched) + " exceeds remaining " +
                        format_mw(it->second.remaining));
    it->second.remaining -= matched;
    Order copy = it->second;
    if (copy.remaining.kw == 0)
        orders_.erase(it);
    return copy;
}

bool OrderBook::remove(std::uint64_t id) { return orders_.erase(id) > 0; }

std::size_t OrderBook::remove_if_agent(const std::string& agent)
{
    return std::erase_if(orders_, [&](const auto& kv) { return kv.second.agent == agent; });
}

std::size_t OrderBook::remove_expired(TimeStamp now)
{
    return std::erase_if(orders_, [&](const auto& kv) { return kv.second.delivery_end() < now; });
}

const Order* OrderBook::find(std::uint64_t id) const
{
    auto it = orders_.find(id);
    return it == orders_.end() ? nullptr : &it->second;
}

std::vector<const Order*> OrderBook::orders() const
{
    std::vector<const Order*> out;
    out.reserve(orders_.size());
    for (const auto& [id, o] : orders_)
        out.push_back(&o);
    return out;
}

} // namespace asam
