#include "asam/order.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace asam;
using asam::test::buy;
using asam::test::sell;

namespace {

std::vector<double> prices(const std::vector<const Order*>& v)
{
    std::vector<double> out;
    for (auto* o : v)
        out.push_back(o->price->eur());
    return out;
}

} // namespace

TEST_SUITE("orders")
{
    const TimeStamp now(1, 5);

    TEST_CASE("insert stores the order with a fresh id and sequence")
    {
        OrderBook b(Market::IDM, {OrderKind::Limit, OrderKind::MarketOrder});
        const auto id = b.insert(sell(66, 100), now);
        CHECK(b.size() == 1);
        const Order* o = b.find(id);
        REQUIRE(o);
        CHECK(o->remaining == Power::from_mw(100));
        CHECK(o->init_time.time == now);
        CHECK(b.insert(sell(66, 1), now) != id);
    }

    TEST_CASE("order kinds outside the market rules are rejected")
    {
        OrderBook b(Market::IDM, {OrderKind::Limit, OrderKind::MarketOrder});
        auto o = sell(66, 100);
        o.kind = OrderKind::AllOrNoneBlock;
        CHECK_THROWS_AS(b.insert(o, now), OrderRejected);
        CHECK(b.empty());
    }

    TEST_CASE("malformed orders are rejected")
    {
        OrderBook b(Market::IDM);
        auto longmarket = test::order(Side::Buy, std::nullopt, 10);
        longmarket.duration = 2;
        CHECK_THROWS_AS(b.insert(longmarket, now), OrderRejected);
        auto noprice = sell(60, 10);
        noprice.price.reset();
        CHECK_THROWS_AS(b.insert(noprice, now), OrderRejected);
        auto neg = sell(60, 10);
        neg.quantity = Power{-1};
        CHECK_THROWS_AS(b.insert(neg, now), OrderRejected);
    }

    TEST_CASE("sorted views: sells ascending, buys descending, ties by arrival")
    {
        OrderBook b(Market::IDM);
        for (double p : {60.0, 50.0, 55.0})
            b.insert(sell(p, 1), now);
        for (double p : {40.0, 45.0})
            b.insert(buy(p, 1), now);
        CHECK(prices(b.sorted_view(Side::Sell, TimeStamp(1, 10))) == std::vector<double>{50, 55, 60});
        CHECK(prices(b.sorted_view(Side::Buy, TimeStamp(1, 10))) == std::vector<double>{45, 40});
        CHECK(b.sorted_view(Side::Sell, TimeStamp(1, 11)).empty());

        OrderBook t(Market::IDM);
        const auto first = t.insert(sell(50, 1), now);
        const auto second = t.insert(sell(50, 1), now);
        const auto v = t.sorted_view(Side::Sell, TimeStamp(1, 10));
        CHECK(v[0]->id == first);
        CHECK(v[1]->id == second);
    }

    TEST_CASE("empty book gives empty views")
    {
        OrderBook b(Market::IDM);
        CHECK(b.sorted_view(Side::Buy, TimeStamp(1, 1)).empty());
    }

    TEST_CASE("views select orders overlapping the delivery MTU")
    {
        OrderBook b(Market::RDM);
        auto blk = sell(70, 10);
        blk.delivery_start = TimeStamp(1, 8);
        blk.duration = 13;
        blk.kind = OrderKind::AllOrNoneBlock;
        b.insert(blk, now);
        CHECK(b.sorted_view(Side::Sell, TimeStamp(1, 8)).size() == 1);
        CHECK(b.sorted_view(Side::Sell, TimeStamp(1, 20)).size() == 1);
        CHECK(b.sorted_view(Side::Sell, TimeStamp(1, 21)).empty());
    }

    TEST_CASE("reduce tracks remaining quantity and removes filled orders")
    {
        OrderBook b(Market::IDM);
        const auto id = b.insert(sell(60, 100), now);
        CHECK(b.reduce(id, Power::from_mw(40)).remaining == Power::from_mw(60));
        CHECK(b.find(id));
        CHECK_THROWS_AS(b.reduce(id, Power::from_mw(61)), OverMatch);
        CHECK(b.reduce(id, Power::from_mw(60)).remaining.is_zero());
        CHECK_FALSE(b.find(id));
    }

    TEST_CASE("expiry and per-agent cancellation")
    {
        OrderBook b(Market::IDM);
        b.insert(sell(60, 1, "A", TimeStamp(1, 3)), now);
        b.insert(sell(60, 1, "B", TimeStamp(1, 9)), now);
        b.insert(buy(50, 1, "A", TimeStamp(1, 9)), now);
        CHECK(b.remove_expired(TimeStamp(1, 4)) == 1);
        CHECK(b.remove_if_agent("A") == 1);
        CHECK(b.size() == 1);
    }

    TEST_CASE("market orders rank ahead of every limit order")
    {
        auto m = test::order(Side::Buy, std::nullopt, 5);
        auto l = buy(1000, 5);
        m.init_time = {now, 9};
        l.init_time = {now, 1};
        CHECK(ranks_before(m, l));
        CHECK_FALSE(ranks_before(l, m));
    }

    TEST_CASE("transaction value and energy over a block")
    {
        Transaction t;
        t.price = Price::from_eur(68);
        t.quantity = Power::from_mw(100);
        t.duration = 13;
        CHECK(t.energy().mwh() == 325.0);
        CHECK(t.value().eur() == 22100.0);
    }
}
