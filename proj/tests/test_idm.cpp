#include "asam/idm.hpp"

#include "idm_properties.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace asam;
using test::buy;
using test::sell;

TEST_SUITE("idm")
{
    const TimeStamp now(1, 2);

    TEST_CASE("incoming sell trades at the resting buy price")
    {
        OrderBook b(Market::IDM);
        const auto resting = b.insert(buy(70, 50, "B"), now);
        const auto out = idm::match(b, sell(65, 30, "S"), now);
        REQUIRE(out.trades.size() == 1);
        CHECK(out.trades[0].price == Price::from_eur(70));
        CHECK(out.trades[0].quantity == Power::from_mw(30));
        CHECK(out.trades[0].buyer == "B");
        CHECK(out.trades[0].seller == "S");
        CHECK(b.find(resting)->remaining == Power::from_mw(20));
        CHECK(out.rested.empty());
    }

    TEST_CASE("non-crossing buy rests")
    {
        OrderBook b(Market::IDM);
        b.insert(sell(80, 10, "S"), now);
        const auto out = idm::match(b, buy(75, 10, "B"), now);
        CHECK(out.trades.empty());
        CHECK(out.rested.size() == 1);
        CHECK(b.size() == 2);
    }

    TEST_CASE("market buy walks the book and never rests")
    {
        OrderBook b(Market::IDM);
        b.insert(sell(60, 20, "S1"), now);
        b.insert(sell(62, 20, "S2"), now);
        const auto out = idm::match(b, test::order(Side::Buy, std::nullopt, 30, TimeStamp(1, 10), OrderKind::Limit, "B"), now);
        REQUIRE(out.trades.size() == 2);
        CHECK(out.trades[0].price == Price::from_eur(60));
        CHECK(out.trades[0].quantity == Power::from_mw(20));
        CHECK(out.trades[1].price == Price::from_eur(62));
        CHECK(out.trades[1].quantity == Power::from_mw(10));
        CHECK(out.rested.empty());
        CHECK(out.cancelled.empty());

        const auto more = idm::match(b, test::order(Side::Buy, std::nullopt, 30, TimeStamp(1, 10), OrderKind::Limit, "B"), now);
        CHECK(more.trades.size() == 1);
        CHECK(more.cancelled.size() == 1);
        CHECK(b.empty());
    }

    TEST_CASE("self-match prevention cancels the incoming remainder")
    {
        OrderBook b(Market::IDM);
        b.insert(buy(70, 10, "A"), now);
        const auto out = idm::match(b, sell(60, 5, "A"), now);
        CHECK(out.trades.empty());
        CHECK(out.cancelled.size() == 1);
        CHECK(b.size() == 1);

        OrderBook c(Market::IDM);
        c.insert(buy(70, 10, "A"), now);
        const auto allowed = idm::match(c, sell(60, 5, "A"), now, idm::MatchOptions{false});
        CHECK(allowed.trades.size() == 1);
    }

    TEST_CASE("orders for another MTU do not match")
    {
        OrderBook b(Market::IDM);
        b.insert(buy(70, 10, "B", TimeStamp(1, 11)), now);
        const auto out = idm::match(b, sell(60, 10, "S", TimeStamp(1, 10)), now);
        CHECK(out.trades.empty());
        CHECK(b.size() == 2);
    }

    TEST_CASE("multi-MTU orders are rejected")
    {
        OrderBook b(Market::IDM);
        auto o = sell(60, 10);
        o.duration = 4;
        CHECK_THROWS_AS(idm::match(b, o, now), OrderRejected);
    }

    TEST_CASE("batch matching equals one-by-one matching in aggressiveness order")
    {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            std::mt19937_64 g(seed);
            OrderBook a(Market::IDM), s(Market::IDM);
            for (int i = 0; i < 6; ++i) {
                auto o = (g() % 2) ? sell(50 + static_cast<double>(g() % 10), 1 + static_cast<double>(g() % 20), "R")
                                   : buy(50 + static_cast<double>(g() % 10), 1 + static_cast<double>(g() % 20), "R");
                idm::match(a, o, now);
                idm::match(s, o, now);
            }
            std::vector<Order> batch;
            for (int i = 0; i < 5; ++i)
                batch.push_back((g() % 2) ? sell(50 + static_cast<double>(g() % 10), 1 + static_cast<double>(g() % 20), "X")
                                          : buy(50 + static_cast<double>(g() % 10), 1 + static_cast<double>(g() % 20), "X"));
            const auto together = idm::match_batch(a, batch, now);

            auto sorted = batch;
            std::stable_sort(sorted.begin(), sorted.end(), [](const Order& x, const Order& y) {
                if (x.side != y.side)
                    return x.side == Side::Sell;
                return x.side == Side::Sell ? *x.price < *y.price : *x.price > *y.price;
            });
            std::vector<Transaction> stream;
            for (const auto& o : sorted) {
                const auto r = idm::match(s, o, now);
                stream.insert(stream.end(), r.trades.begin(), r.trades.end());
            }
            REQUIRE(together.trades.size() == stream.size());
            for (std::size_t i = 0; i < stream.size(); ++i) {
                CHECK(together.trades[i].price == stream[i].price);
                CHECK(together.trades[i].quantity == stream[i].quantity);
                CHECK(together.trades[i].buy_order == stream[i].buy_order);
                CHECK(together.trades[i].sell_order == stream[i].sell_order);
            }
            CHECK(a.size() == s.size());
        }
    }

    TEST_CASE("randomized streams keep every matching property")
    {
        for (std::uint64_t seed = 1; seed <= 500; ++seed) {
            const auto rep = test::check_idm_stream(seed);
            INFO(rep.failure);
            REQUIRE(rep.failure.empty());
        }
    }

    TEST_CASE("quantity-weighted mean price")
    {
        auto tr = [](double p, double q) {
            Transaction t;
            t.delivery = TimeStamp(1, 10);
            t.price = Price::from_eur(p);
            t.quantity = Power::from_mw(q);
            return t;
        };
        std::vector<Transaction> v{tr(60, 10), tr(80, 30)};
        CHECK(*idm::weighted_mean_price(v, TimeStamp(1, 10)) == doctest::Approx(75.0));
        std::vector<Transaction> one{tr(75, 3)};
        CHECK(*idm::weighted_mean_price(one, TimeStamp(1, 10)) == doctest::Approx(75.0));
        CHECK_FALSE(idm::weighted_mean_price(std::vector<Transaction>{}, TimeStamp(1, 10)));
        CHECK_FALSE(idm::weighted_mean_price(v, TimeStamp(1, 11)));
    }
}
