#include "asam/idm.hpp"

#include <algorithm>

namespace asam::idm {

namespace {

bool crosses(const Order& incoming, const Order& resting)
{
    if (incoming.is_market())
        return true;
    return incoming.side == Side::Sell ? *incoming.price <= *resting.price : *incoming.price >= *resting.price;
}

} // namespace

MatchOutcome match(OrderBook& book, Order incoming, TimeStamp now, MatchOptions opts)
{
    MatchOutcome out;
    if (incoming.duration != 1)
        throw OrderRejected("IDM orders cover exactly one MTU");
    book.stamp(incoming, now);
    const Side opposite = incoming.side == Side::Sell ? Side::Buy : Side::Sell;
    bool self_blocked = false;

    while (incoming.remaining.kw > 0) {
        const auto view = book.sorted_view(opposite, incoming.delivery_start);
        if (view.empty())
            break;
        const Order& r = *view.front();
        if (!crosses(incoming, r))
            break;
        if (opts.self_match_prevention && r.agent == incoming.agent) {
            self_blocked = true;
            break;
        }
        const Power q = min(incoming.remaining, r.remaining);
        Transaction tr;
        tr.market = book.market();
        tr.time = now;
        tr.delivery = incoming.delivery_start;
        tr.price = *r.price;
        tr.quantity = q;
        const Order& sell = incoming.side == Side::Sell ? incoming : r;
        const Order& buy = incoming.side == Side::Sell ? r : incoming;
        tr.seller = sell.agent;
        tr.seller_asset = sell.asset;
        tr.sell_order = sell.id;
        tr.buyer = buy.agent;
        tr.buyer_asset = buy.asset;
        tr.buy_order = buy.id;
        out.trades.push_back(std::move(tr));
        incoming.remaining -= q;
        book.reduce(r.id, q);
    }

    if (incoming.remaining.kw > 0) {
        if (incoming.is_market() || self_blocked) {
            out.cancelled.push_back(incoming.id);
        } else {
            out.rested.push_back(incoming.id);
            book.rest(std::move(incoming));
        }
    }
    return out;
}

MatchOutcome match_batch(OrderBook& book, std::vector<Order> incoming, TimeStamp now, MatchOptions opts)
{
    std::stable_sort(incoming.begin(), incoming.end(), [](const Order& a, const Order& b) {
        if (a.side != b.side)
            return a.side == Side::Sell;
        if (a.is_market() != b.is_market())
            return a.is_market();
        if (a.is_market())
            return false;
        return a.side == Side::Sell ? *a.price < *b.price : *a.price > *b.price;
    });
    MatchOutcome all;
    for (auto& o : incoming) {
        MatchOutcome one = match(book, std::move(o), now, opts);
        all.trades.insert(all.trades.end(), one.trades.begin(), one.trades.end());
        all.rested.insert(all.rested.end(), one.rested.begin(), one.rested.end());
        all.cancelled.insert(all.cancelled.end(), one.cancelled.begin(), one.cancelled.end());
    }
    return all;
}

std::optional<double> weighted_mean_price(std::span<const Transaction> trades, TimeStamp delivery)
{
    double pq = 0.0, q = 0.0;
    for (const auto& t : trades)
        if (t.covers(delivery)) {
            pq += t.price.eur() * t.quantity.mw();
            q += t.quantity.mw();
        }
    if (q <= 0.0)
        return std::nullopt;
    return pq / q;
}

} // namespace asam::idm
