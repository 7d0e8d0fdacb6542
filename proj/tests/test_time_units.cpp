#include "asam/csv.hpp"
#include "asam/rng.hpp"
#include "asam/time.hpp"
#include "asam/units.hpp"

#include <doctest.h>

#include <sstream>

using namespace asam;

TEST_SUITE("time")
{
    TEST_CASE("advance within a day and across midnight")
    {
        CHECK(advance(TimeStamp(1, 95)) == TimeStamp(1, 96));
        CHECK(advance(TimeStamp(1, 96)) == TimeStamp(2, 1));
    }

    TEST_CASE("96 steps from (1,1) end at (1,96)")
    {
        TimeStamp t(1, 1);
        for (int i = 0; i < 95; ++i)
            t = advance(t);
        CHECK(t == TimeStamp(1, 96));
    }

    TEST_CASE("ordering is lexicographic and index round-trips")
    {
        CHECK(TimeStamp(1, 96) < TimeStamp(2, 1));
        CHECK(TimeStamp(2, 3) > TimeStamp(1, 50));
        for (std::int64_t i = 0; i < 400; i += 7)
            CHECK(TimeStamp::from_index(i).index() == i);
        CHECK(TimeStamp(3, 5).minus(TimeStamp(2, 96)) == 5);
    }

    TEST_CASE("invalid time stamps are rejected")
    {
        CHECK_THROWS(TimeStamp(0, 1));
        CHECK_THROWS(TimeStamp(1, 0));
        CHECK_THROWS(TimeStamp(1, 97));
    }

    TEST_CASE("gate specs")
    {
        CHECK(parse_gate_spec("MTU-1", TimeStamp(1, 40)) == TimeStamp(1, 39));
        CHECK(parse_gate_spec("D-1, MTU 45", TimeStamp(2, 30)) == TimeStamp(1, 45));
        CHECK(parse_gate_spec("MTU-3", TimeStamp(2, 1)) == TimeStamp(1, 94));
        CHECK(parse_gate_spec("deliveryMTU", TimeStamp(1, 7)) == TimeStamp(1, 7));
        CHECK(parse_gate_spec("MTU", TimeStamp(1, 7)) == TimeStamp(1, 7));
        // day 1 deliveries have their D-1 gate before the simulated period
        CHECK(gate_index(parse_gate_spec("D-1, MTU 45"), TimeStamp(1, 10)) < 0);
        CHECK_THROWS_AS(resolve_gate(parse_gate_spec("D-1, MTU 45"), TimeStamp(1, 10)), GateSpecError);
        CHECK_THROWS_AS(parse_gate_spec("tomorrow"), GateSpecError);
        CHECK_THROWS_AS(parse_gate_spec("D-1, MTU 97"), GateSpecError);
    }

    TEST_CASE("schedule horizon remaining ISPs")
    {
        ScheduleHorizon h{TimeStamp(1, 10), TimeStamp(1, 96)};
        CHECK(h.remaining() == 86);
        CHECK(ScheduleHorizon{TimeStamp(1, 10), std::nullopt}.remaining() == 0);
    }
}

TEST_SUITE("units")
{
    TEST_CASE("fixed-point conversions")
    {
        CHECK(Price::from_eur(60.0).cents == 6000);
        CHECK(Price::from_eur(-0.005).cents == -1); // half away from zero
        CHECK(Power::from_mw(1275.0).kw == 1275000);
        CHECK(Power::from_mw(75.0).mwh_per_isp() == doctest::Approx(18.75));
        // 75 MW at 60 EUR/MWh for one hour = 4500 EUR
        Money m;
        for (int k = 0; k < 4; ++k)
            m += Money::of(Price::from_eur(60), Power::from_mw(75));
        CHECK(m.eur() == 4500.0);
        CHECK(Energy::of(Power::from_mw(80), 13).mwh() == 260.0);
    }

    TEST_CASE("formatting is fixed and drops negative zero")
    {
        CHECK(format_price(Price{6000}) == "60.00");
        CHECK(format_mw(Power{-1}) == "-0.001");
        CHECK(format_fixed(-0.0000001, 3) == "0.000");
    }

    TEST_CASE("named RNG streams are independent")
    {
        RngStreams a(3), b(3);
        // drawing from another stream does not shift this one
        for (int i = 0; i < 10; ++i)
            b.uniform01("noise");
        for (int i = 0; i < 20; ++i)
            CHECK(a.uniform_int("agent:A", 1, 25) == b.uniform_int("agent:A", 1, 25));
        RngStreams c(4);
        bool differs = false;
        for (int i = 0; i < 20; ++i)
            differs = differs || a.uniform01("x") != c.uniform01("x");
        CHECK(differs);
    }

    TEST_CASE("uniform_int covers its closed range")
    {
        std::mt19937_64 g(1);
        std::array<int, 5> seen{};
        for (int i = 0; i < 2000; ++i) {
            const auto v = uniform_int(g, 1, 5);
            REQUIRE(v >= 1);
            REQUIRE(v <= 5);
            ++seen[static_cast<std::size_t>(v - 1)];
        }
        for (int s : seen)
            CHECK(s > 300);
        CHECK_THROWS(uniform_int(g, 2, 1));
    }

    TEST_CASE("csv parse, quoting and errors")
    {
        const auto t = csv::parse("a,b\n\"x, y\",2\n3,\"q\"\"uote\"\n", "mem");
        REQUIRE(t.rows.size() == 2);
        CHECK(t.cell(0, "a") == "x, y");
        CHECK(t.cell(1, "b") == "q\"uote");
        CHECK(t.number(0, "b") == 2.0);
        CHECK_THROWS_AS(t.number(0, "a"), csv::CsvError);
        std::ostringstream os;
        csv::write_row(os, {"x, y", "plain", "q\"uote"});
        CHECK(os.str() == "\"x, y\",plain,\"q\"\"uote\"\n");
    }
}
