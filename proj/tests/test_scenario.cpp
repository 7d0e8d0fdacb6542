#include "asam/csv.hpp"
#include "asam/scenario.hpp"

#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace asam;
namespace fs = std::filesystem;

namespace {

fs::path copy_reference(const std::string& name)
{
    const auto dir = test::temp_dir(name);
    for (const auto& e : fs::directory_iterator(test::reference_dir()))
        fs::copy_file(e.path(), dir / e.path().filename(), fs::copy_options::overwrite_existing);
    return dir;
}

void replace_in(const fs::path& file, const std::string& from, const std::string& to)
{
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    std::ofstream(file) << s;
}

const Asset& asset(const Scenario& s, const std::string& name)
{
    for (const auto& a : s.assets)
        if (a.name == name)
            return a;
    throw std::runtime_error("no asset " + name);
}

} // namespace

TEST_SUITE("scenario")
{
    TEST_CASE("reference scenario values")
    {
        const auto s = load_scenario(test::reference_dir());
        CHECK(s.market_parties() == std::vector<std::string>{"Agent1", "Agent2"});
        CHECK(s.assets.size() == 4);
        CHECK(s.task.seed == 3);
        CHECK(s.task.number_steps == 96);
        CHECK(s.task.start == TimeStamp(1, 1));
        CHECK(s.task.residual_load_pu() == doctest::Approx(0.85));
        CHECK(s.installed_capacity() == 1500.0);

        const auto& og1 = asset(s, "old_gas_1");
        CHECK(og1.owner == "Agent1");
        CHECK(og1.pmax == 300);
        CHECK(og1.pmin == 50);
        CHECK(og1.location == "North");
        CHECK(og1.srmc == 50);
        CHECK(og1.ramp_up == 0.25);
        CHECK(og1.min_up_time == 12);
        CHECK(og1.shut_down_cost == 15000);
        const auto& coal = asset(s, "coal_2");
        CHECK(coal.owner == "Agent2");
        CHECK(coal.pmin == 400);
        CHECK(coal.srmc == 35);
        CHECK(coal.min_down_time == 20);
        CHECK(coal.start_up_cost == 50000);
        CHECK(asset(s, "new_gas_1").srmc == 40);
        CHECK(asset(s, "old_gas_2").location == "South");

        REQUIRE(s.congestions.size() == 1);
        CHECK(s.congestions[0].identification == TimeStamp(1, 2));
        CHECK(s.congestions[0].start == TimeStamp(1, 8));
        CHECK(s.congestions[0].end == TimeStamp(1, 20));
        CHECK(s.congestions[0].quantity == 80);
        REQUIRE(s.forecast_errors.size() == 1);
        CHECK(s.forecast_errors[0].error_magnitude_pu == -0.4);
        CHECK(s.forecast_errors[0].agent == "Agent1");
        CHECK(s.forecast_errors[0].start == TimeStamp(1, 30));

        CHECK(s.rules.at("RDM").gate_closure_time == "MTU-3");
        CHECK(s.rules.at("RDM").acquisition_method == "cont_RDM_thinf");
        CHECK(s.rules.at("DAM").gate_closure_time == "D-1, MTU 45");
        CHECK(s.rules.at("IDM").order_types == "limit_and_market");
        CHECK(s.strategy_for("Agent1").get("RDM_quantity") == "all_plus_startstop");
        CHECK(s.strategy_for("Agent2").flag("ramp_limits"));
    }

    TEST_CASE("save and reload round-trips")
    {
        const auto s = load_scenario(test::reference_dir());
        const auto dir = test::temp_dir("roundtrip");
        save_scenario(s, dir);
        CHECK(load_scenario(dir) == s);
    }

    TEST_CASE("pmin above pmax is a schema error naming row and column")
    {
        const auto dir = copy_reference("pmin");
        replace_in(dir / "assets.csv", "old_gas_1,Agent1,CCGT old 1,300,50", "old_gas_1,Agent1,CCGT old 1,300,350");
        try {
            load_scenario(dir);
            FAIL("expected a schema error");
        } catch (const csv::CsvError& e) {
            CHECK(e.row() == 2);
            CHECK(e.column() == "pmin");
        }
    }

    TEST_CASE("RDM uniform pricing is accepted")
    {
        const auto dir = copy_reference("uniform");
        replace_in(dir / "market_rules.csv", "pay_as_bid", "uniform");
        CHECK(load_scenario(dir).rules.at("RDM").pricing_method == "uniform");
    }

    TEST_CASE("unknown and unimplemented vocabulary")
    {
        const auto dir = copy_reference("vocab");
        replace_in(dir / "market_rules.csv", "pay_as_bid", "sealed_envelope");
        CHECK_THROWS_WITH_AS(load_scenario(dir), doctest::Contains("not a known option"), ScenarioError);

        const auto dir2 = copy_reference("vocab2");
        replace_in(dir2 / "agent_strategies.csv", "RDM_pricing,all_markup", "RDM_pricing,double_score_mark_up");
        CHECK_THROWS_WITH_AS(load_scenario(dir2), doctest::Contains("recognized but not implemented"), ScenarioError);
    }

    TEST_CASE("missing directory or file")
    {
        CHECK_THROWS_AS(load_scenario(test::temp_dir("empty") / "nope"), ScenarioError);
        const auto dir = copy_reference("nofile");
        fs::remove(dir / "assets.csv");
        CHECK_THROWS_AS(load_scenario(dir), ScenarioError);
    }

    TEST_CASE("canonical names")
    {
        CHECK(canonical_name("All Mark-ups") == "all_mark_ups");
        CHECK(canonical_name("cont_RDM_thinf") == "cont_rdm_thinf");
    }
}
