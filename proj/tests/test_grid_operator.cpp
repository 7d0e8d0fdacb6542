#include "asam/grid_operator.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace asam;
using namespace asam::grid;

namespace {

CongestionRecord congestion(TimeStamp ident = TimeStamp(1, 2), TimeStamp start = TimeStamp(1, 8),
                            TimeStamp end = TimeStamp(1, 20), double mw = 80)
{
    return {ident, start, end, mw, "North", "South"};
}

MarketParty bare(const std::string& name)
{
    Asset a;
    a.name = name + "_unit";
    a.owner = name;
    a.pmax = 300;
    a.location = "North";
    return MarketParty(name, {a}, StrategyConfig{}, Settings{});
}

Transaction idm(const std::string& buyer, const std::string& seller, double mw, TimeStamp t)
{
    Transaction tr;
    tr.market = Market::IDM;
    tr.buyer = buyer;
    tr.seller = seller;
    tr.quantity = Power::from_mw(mw);
    tr.delivery = t;
    return tr;
}

RdmCommit commit(double up_mw, double down_mw, TimeStamp t0, int T)
{
    RdmCommit c;
    c.result.t0 = t0;
    c.result.horizon = T;
    c.result.induced.assign(T, Power::from_mw(up_mw - down_mw));
    return c;
}

} // namespace

TEST_SUITE("grid_operator")
{
    TEST_CASE("congestion becomes active at its identification MTU")
    {
        const std::vector<CongestionRecord> recs{congestion()};
        CHECK(identify_congestion(recs, TimeStamp(1, 1)).empty());
        const auto active = identify_congestion(recs, TimeStamp(1, 2));
        REQUIRE(active.size() == 1);
        CHECK(active[0].quantity == Power::from_mw(80));
        CHECK(active[0].duration() == 13);
        CHECK(active[0].down_area == "North");
        CHECK(identify_congestion(recs, TimeStamp(1, 21)).empty()); // window past
    }

    TEST_CASE("malformed congestion records are rejected")
    {
        auto bad = congestion();
        bad.up_area = bad.down_area;
        const std::vector<CongestionRecord> recs{bad};
        CHECK_THROWS(identify_congestion(recs, TimeStamp(1, 5)));
    }

    TEST_CASE("demands are requested once; overlapping congestions stay independent")
    {
        GridOperator go("GO", {congestion(), congestion(TimeStamp(1, 3), TimeStamp(1, 10), TimeStamp(1, 14), 30)});
        CHECK(go.new_demands(TimeStamp(1, 1)).empty());
        const auto first = go.new_demands(TimeStamp(1, 2));
        REQUIRE(first.size() == 1);
        const auto second = go.new_demands(TimeStamp(1, 3));
        REQUIRE(second.size() == 1);
        CHECK(second[0].id != first[0].id);
        CHECK(second[0].quantity == Power::from_mw(30));
        CHECK(go.new_demands(TimeStamp(1, 4)).empty());
    }

    TEST_CASE("balanced books pass the consistency check; a corrupt trade is flagged once")
    {
        std::vector<MarketParty> parties{bare("A"), bare("B")};
        const TimeStamp t(1, 10);
        const auto tr = idm("A", "B", 20, t);
        for (auto& p : parties)
            p.apply_transaction(tr);
        auto no_load = [](TimeStamp) { return Power{}; };
        CHECK(check_consistency(t, parties, no_load, {}, TimeStamp(1, 1), TimeStamp(1, 20)).empty());

        parties[0].apply_transaction(idm("A", "ghost", 5, t)); // counterparty never booked it
        const auto d = check_consistency(t, parties, no_load, {}, TimeStamp(1, 1), TimeStamp(1, 20));
        REQUIRE(d.size() == 1);
        CHECK(d[0].check == "idm_balance");
    }

    TEST_CASE("DAM positions must mirror the exogenous load")
    {
        std::vector<MarketParty> parties{bare("A")};
        Transaction tr = idm("load", "A", 100, TimeStamp(1, 1));
        tr.market = Market::DAM;
        tr.duration = 4;
        parties[0].apply_transaction(tr);
        auto load = [](TimeStamp t) { return t.mtu() <= 4 ? Power::from_mw(100) : Power{}; };
        CHECK(check_consistency(TimeStamp(1, 1), parties, load, {}, TimeStamp(1, 1), TimeStamp(1, 8)).empty());
        auto wrong = [](TimeStamp) { return Power::from_mw(100); };
        CHECK(check_consistency(TimeStamp(1, 1), parties, wrong, {}, TimeStamp(1, 1), TimeStamp(1, 8)).size() == 4);
    }

    TEST_CASE("system imbalance")
    {
        std::vector<MarketParty> none;
        const TimeStamp t(1, 10);
        std::vector<RdmCommit> balanced{commit(80, 80, TimeStamp(1, 8), 13)};
        CHECK(system_imbalance(none, balanced, t).is_zero());

        std::vector<RdmCommit> over{commit(100, 80, TimeStamp(1, 8), 13)};
        CHECK(system_imbalance(none, over, t) == Power::from_mw(20));
        CHECK(induced_imbalance(over, TimeStamp(1, 21)).is_zero());

        std::vector<MarketParty> parties{bare("A")};
        Transaction sold = idm("B", "A", 40, t); // sold without dispatch: short 40
        parties[0].apply_transaction(sold);
        CHECK(system_imbalance(parties, {}, t) == Power::from_mw(-40));
    }
}
