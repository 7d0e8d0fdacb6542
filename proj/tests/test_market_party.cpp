#include "asam/market_party.hpp"

#include "random_instances.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace asam;

namespace {

const Scenario& reference()
{
    static const Scenario s = load_scenario(test::reference_dir());
    return s;
}

MarketParty party(const std::string& name)
{
    const auto& s = reference();
    std::vector<Asset> own;
    for (const auto& a : s.assets)
        if (a.owner == name)
            own.push_back(a);
    return MarketParty(name, own, s.strategy_for(name), s.settings);
}

// Day-1 dispatch seeded directly: every hour of `asset` cleared at `mw`.
void seed(MarketParty& p, const std::map<std::string, double>& mw)
{
    dam::DamResult r;
    r.day = 1;
    for (int h = 0; h < 24; ++h)
        for (const auto& [asset, q] : mw)
            r.orders.push_back({0, p.name(), asset, TimeStamp(1, h * 4 + 1), Price{}, Power::from_mw(q), Power::from_mw(q)});
    p.seed_dispatch(r);
    p.extend_horizon(TimeStamp(1, 96));
}

Transaction trade(Market m, const std::string& buyer, const std::string& seller, double mw, TimeStamp t, int duration = 1)
{
    Transaction tr;
    tr.market = m;
    tr.buyer = buyer;
    tr.seller = seller;
    tr.quantity = Power::from_mw(mw);
    tr.price = Price::from_eur(60);
    tr.delivery = t;
    tr.duration = duration;
    return tr;
}

// Direct evaluation of the four capacity equations in kW.
Capacity direct(std::int64_t pnom, std::int64_t pmax, std::int64_t pmin, std::int64_t ru, std::int64_t rd,
                std::int64_t prev, std::int64_t sd, std::int64_t next)
{
    const std::int64_t up = pmax - sd;
    const std::int64_t down = sd - pmin;
    (void)pnom;
    const std::int64_t rr_up = std::max<std::int64_t>(std::min({ru - (sd - prev), ru - (next - sd), up}), 0);
    const std::int64_t rr_down = std::max<std::int64_t>(std::min({rd - (prev - sd), rd - (sd - next), down}), 0);
    return {Power{up}, Power{down}, Power{rr_up}, Power{rr_down}};
}

} // namespace

TEST_SUITE("market_party")
{
    const TimeStamp t(1, 10);

    TEST_CASE("trade positions follow the sign convention")
    {
        auto p = party("Agent1");
        p.apply_transaction(trade(Market::DAM, "load", "Agent1", 100, t));
        CHECK(p.position(Market::DAM, t) == Power::from_mw(-100));
        p.apply_transaction(trade(Market::IDM, "Agent1", "Agent2", 30, t));
        CHECK(p.position(Market::IDM, t) == Power::from_mw(30));
        CHECK(p.total_position(t) == Power::from_mw(-70));
        p.apply_transaction(trade(Market::IDM, "Agent2", "Agent3", 30, t)); // not ours
        CHECK(p.total_position(t) == Power::from_mw(-70));
        CHECK_THROWS(p.apply_transaction(trade(Market::IDM, "Agent1", "Agent1", 1, t)));
    }

    TEST_CASE("forecast error on the DAM volume opens a short scheduled imbalance")
    {
        auto p = party("Agent1");
        seed(p, {{"old_gas_1", 300}, {"new_gas_1", 300}});
        p.apply_transaction(trade(Market::DAM, "load", "Agent1", 600, TimeStamp(1, 1), 96));
        CHECK(p.imbalance(TimeStamp(1, 30)).is_zero());
        p.add_forecast_error({TimeStamp(1, 2), TimeStamp(1, 30), TimeStamp(1, 40), -0.4, "Agent1"});
        CHECK(p.forecast_error(TimeStamp(1, 30)) == Power::from_mw(-240));
        CHECK(p.imbalance(TimeStamp(1, 30)) == Power::from_mw(-240));
        CHECK(p.imbalance(TimeStamp(1, 41)).is_zero());
    }

    TEST_CASE("redispatch trades bound the asset dispatch")
    {
        auto a2 = party("Agent2");
        seed(a2, {{"coal_2", 600}, {"old_gas_2", 75}});
        auto up = trade(Market::RDM, "GO", "Agent2", 100, TimeStamp(1, 8), 13);
        up.seller_asset = "old_gas_2";
        a2.apply_transaction(up);
        const auto oi = a2.asset_index("old_gas_2");
        for (int m = 8; m <= 20; ++m)
            CHECK(*a2.dispatch_floor(oi, TimeStamp(1, m)) == Power::from_mw(175));
        CHECK_FALSE(a2.dispatch_floor(oi, TimeStamp(1, 21)));
        CHECK(a2.position(Market::RDM, TimeStamp(1, 8)) == Power::from_mw(-100));

        auto a1 = party("Agent1");
        seed(a1, {{"old_gas_1", 280}, {"new_gas_1", 300}});
        auto down = trade(Market::RDM, "Agent1", "GO", 80, TimeStamp(1, 8), 13);
        down.buyer_asset = "old_gas_1";
        a1.apply_transaction(down);
        CHECK(*a1.dispatch_cap(a1.asset_index("old_gas_1"), TimeStamp(1, 12)) == Power::from_mw(200));
        CHECK_FALSE(a1.dispatch_floor(a1.asset_index("old_gas_1"), TimeStamp(1, 12)));

        auto big = trade(Market::RDM, "GO", "Agent2", 300, TimeStamp(1, 8), 13);
        big.seller_asset = "old_gas_2";
        auto a3 = party("Agent2");
        seed(a3, {{"coal_2", 600}, {"old_gas_2", 75}});
        CHECK_THROWS_AS(a3.apply_transaction(big), DispatchError);
    }

    TEST_CASE("available capacity examples")
    {
        const Power pnom = Power::from_mw(300);
        auto c = available_capacity(pnom, 1.0, 0.0, 0.25, 0.25, Power::from_mw(200), Power::from_mw(200), Power::from_mw(200));
        CHECK(c.av_up == Power::from_mw(100));
        CHECK(c.rr_up == Power::from_mw(75));
        c = available_capacity(pnom, 1.0, 0.0, 0.25, 0.25, pnom, pnom, pnom);
        CHECK(c.av_up.is_zero());
        CHECK(c.rr_up.is_zero());
        c = available_capacity(pnom, 1.0, 0.0, 0.25, 0.25, Power::from_mw(125), Power::from_mw(200), Power::from_mw(200));
        CHECK(c.rr_up.is_zero()); // clamped: the ramp is already used up
        CHECK(c.rr_down == Power::from_mw(75));
    }

    TEST_CASE("available capacity equals direct evaluation on random tuples")
    {
        test::Draw d(21);
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t pnom = 1000 * d.integer(50, 600);
            const std::int64_t pmin = pnom * d.integer(0, 60) / 100;
            const std::int64_t pmax = std::max(pmin, pnom * d.integer(60, 100) / 100);
            const std::int64_t ru = pnom * d.integer(5, 50) / 100, rd = pnom * d.integer(5, 50) / 100;
            auto sd = [&] { return pmin + static_cast<std::int64_t>(d.integer(0, 1000)) * (pmax - pmin) / 1000; };
            const std::int64_t prev = sd(), now = sd(), next = sd();
            const auto got = available_capacity(Power{pnom}, double(pmax) / double(pnom), double(pmin) / double(pnom),
                                                double(ru) / double(pnom), double(rd) / double(pnom), Power{prev},
                                                Power{now}, Power{next});
            const auto want = direct(pnom, pmax, pmin, ru, rd, prev, now, next);
            REQUIRE(got.av_up == want.av_up);
            REQUIRE(got.av_down == want.av_down);
            REQUIRE(got.rr_up == want.rr_up);
            REQUIRE(got.rr_down == want.rr_down);
            CHECK(got.av_up + got.av_down == Power{pmax - pmin});
            CHECK(got.rr_up <= got.av_up);
            CHECK(got.rr_down <= got.av_down);
            CHECK(got.rr_up.kw >= 0);
            CHECK(got.rr_down.kw >= 0);
        }
    }

    TEST_CASE("risk mark-up")
    {
        CHECK(risk_markup(50, 20, 100) == 10.0);
        CHECK(risk_markup(123, 0, 7) == 0.0);
        CHECK(risk_markup(15000, 1, 50 * 13 * 0.25) == doctest::Approx(92.3077).epsilon(1e-5));
        CHECK_THROWS_AS(risk_markup(1, 1, 0), std::invalid_argument);
        CHECK(ramp_energy_mwh(150, 75) == 75 * 0.25);
        CHECK(ramp_energy_mwh(50, 75) == 0.0);
    }

    TEST_CASE("shut-down offer of a unit at its minimum carries the spread stop cost")
    {
        auto p = party("Agent1");
        seed(p, {{"old_gas_1", 50}, {"new_gas_1", 0}});
        const auto& rules = reference().rules;
        MarketView v;
        v.now = TimeStamp(1, 2);
        v.rdm = {parse_gate_spec(rules.at("RDM").gate_opening_time), parse_gate_spec(rules.at("RDM").gate_closure_time)};
        v.dam_price = [](TimeStamp) { return std::optional<Price>(Price::from_eur(60)); };
        rdm::RedispatchDemand d{1, Power::from_mw(80), "North", "South", TimeStamp(1, 8), TimeStamp(1, 20)};
        v.rdm_demands = std::span<const rdm::RedispatchDemand>(&d, 1);
        const auto orders = p.rdm_orders(v);
        REQUIRE(orders.size() == 1);
        const auto& o = orders[0];
        CHECK(o.strategy == "shut_down");
        CHECK(o.order.side == Side::Buy);
        CHECK(o.order.kind == OrderKind::AllOrNoneBlock);
        CHECK(o.order.quantity == Power::from_mw(50));
        CHECK(o.order.duration == 13);
        CHECK(o.order.area == "North");
        const double markup = o.srmc->eur() - o.order.price->eur();
        CHECK(markup == doctest::Approx(15000.0 / 162.5).epsilon(1e-4));
    }

    TEST_CASE("zero position keeps every asset off")
    {
        auto p = party("Agent2");
        seed(p, {});
        p.optimize_dispatch(TimeStamp(1, 1));
        for (int m = 1; m <= 96; ++m)
            CHECK(p.total_dispatch(TimeStamp(1, m)).is_zero());
    }

    TEST_CASE("position beyond ramp reach leaves slack only in the first ISPs")
    {
        auto p = party("Agent2");
        seed(p, {{"coal_2", 600}, {"old_gas_2", 0}});
        p.apply_transaction(trade(Market::DAM, "load", "Agent2", 600, TimeStamp(1, 1), 96));
        p.apply_transaction(trade(Market::IDM, "Agent1", "Agent2", 150, TimeStamp(1, 2), 95));
        p.optimize_dispatch(TimeStamp(1, 1));
        // old_gas_2 starts at 75 MW, one ISP later it can reach 150
        CHECK(p.imbalance(TimeStamp(1, 2)).kw < 0);
        for (int m = 10; m <= 96; ++m)
            CHECK(p.imbalance(TimeStamp(1, m)).is_zero());
    }

    TEST_CASE("DAM offers: full capacity at srmc, mark-up zero")
    {
        const auto p = party("Agent2");
        const auto orders = p.dam_orders(1, TimeStamp(1, 1), {});
        CHECK(orders.size() == 48);
        for (const auto& o : orders) {
            CHECK(o.order.price == *o.srmc);
            CHECK(o.order.kind == OrderKind::FillOrKill);
            CHECK(o.order.duration == 4);
        }
    }
}
