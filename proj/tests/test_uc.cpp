#include "asam/uc.hpp"

#include "random_instances.hpp"

#include <doctest.h>

using namespace asam;
using namespace asam::opt;

namespace {

UCUnit unit(const std::string& name, double pnom, double srmc, int T)
{
    UCUnit u;
    u.name = name;
    u.pnom = pnom;
    u.srmc = srmc;
    u.p_min_pu.assign(T, 0.0);
    u.p_max_pu.assign(T, 1.0);
    return u;
}

UCProblem flat_load(double mw, int T)
{
    UCProblem p;
    p.horizon = T;
    p.load.assign(1, std::vector<double>(T, mw));
    return p;
}

} // namespace

TEST_SUITE("uc")
{
    TEST_CASE("single unit follows the load")
    {
        auto p = flat_load(80, 4);
        p.units.push_back(unit("g", 100, 35, 4));
        const auto s = solve_uc(p);
        REQUIRE(s.status == UCStatus::Optimal);
        for (double g : s.g[0])
            CHECK(g == doctest::Approx(80));
        CHECK(s.objective == doctest::Approx(80 * 35 * 1.0));
        CHECK(verify_uc(p, s).empty());
    }

    TEST_CASE("two units dispatch in merit order")
    {
        auto p = flat_load(700, 2);
        p.units.push_back(unit("coal", 600, 35, 2));
        p.units.push_back(unit("gas", 300, 40, 2));
        const auto s = solve_uc(p);
        REQUIRE(s.status == UCStatus::Optimal);
        CHECK(s.g[0][0] == doctest::Approx(600));
        CHECK(s.g[1][0] == doctest::Approx(100));
    }

    TEST_CASE("ramp limit of 75 MW per ISP with slack covering the gap")
    {
        UCProblem p;
        p.horizon = 3;
        p.load.assign(1, {150, 150, 150});
        auto u = unit("gas", 300, 40, 3);
        u.ramp_up = u.ramp_start_up = 0.25;
        u.initial_on = true;
        u.initial_g = 0.0;
        p.units.push_back(u);
        const auto s = solve_uc(p);
        REQUIRE(s.status == UCStatus::Optimal);
        CHECK(s.g[0][0] == doctest::Approx(75));
        CHECK(s.g[0][1] == doctest::Approx(150));
        CHECK(s.g[0][2] == doctest::Approx(150));
        CHECK(s.shortfall[0][0] == doctest::Approx(75));
        CHECK(s.shortfall[0][1] == doctest::Approx(0).epsilon(1e-9));
    }

    TEST_CASE("without slack an unreachable load is infeasible with a constraint class")
    {
        UCProblem p;
        p.horizon = 2;
        p.load.assign(1, {150, 150});
        p.slack = false;
        auto u = unit("gas", 300, 40, 2);
        u.ramp_up = u.ramp_start_up = 0.25;
        u.initial_on = true;
        p.units.push_back(u);
        const auto s = solve_uc(p);
        CHECK(s.status == UCStatus::Infeasible);
        CHECK(s.infeasible_class == "ramp");
    }

    TEST_CASE("minimum up time keeps a started unit on")
    {
        UCProblem p;
        p.horizon = 4;
        p.load.assign(1, {0, 0, 100, 0});
        auto u = unit("g", 100, 10, 4);
        u.p_min_pu.assign(4, 0.5);
        u.min_up = 3;
        p.units.push_back(u);
        p.surplus_penalty = 1.0;
        const auto s = solve_uc(p);
        REQUIRE(s.status == UCStatus::Optimal);
        CHECK(s.u[0] == std::vector<int>{0, 0, 1, 1});
        CHECK(verify_uc(p, s).empty());
    }

    TEST_CASE("malformed problems are rejected")
    {
        auto p = flat_load(10, 2);
        auto u = unit("g", 100, 10, 2);
        u.p_min_pu[0] = 0.8;
        u.p_max_pu[0] = 0.5;
        p.units.push_back(u);
        CHECK_THROWS_AS(validate(p), UCError);
        auto q = flat_load(10, 2);
        q.units.push_back(unit("g", 100, 10, 3));
        CHECK_THROWS_AS(solve_uc(q), UCError);
    }

    TEST_CASE("verify_uc flags a corrupted solution")
    {
        auto p = flat_load(80, 2);
        p.units.push_back(unit("g", 100, 35, 2));
        auto s = solve_uc(p);
        s.g[0][1] = 120;
        CHECK_FALSE(verify_uc(p, s).empty());
    }

    TEST_CASE("branch and bound equals commitment enumeration on random instances")
    {
        for (std::uint64_t seed = 1; seed <= 150; ++seed) {
            const auto p = test::random_uc(seed);
            const auto a = solve_uc(p);
            const auto b = brute_force_uc(p);
            INFO("seed " << seed);
            REQUIRE(a.status == b.status);
            if (a.status != UCStatus::Optimal)
                continue;
            CHECK(std::abs(a.objective - b.objective) <= 1e-6 * std::max(1.0, std::abs(b.objective)));
            CHECK(verify_uc(p, a).empty());
            CHECK(evaluate_uc_cost(p, a) == doctest::Approx(a.objective));
        }
    }

    TEST_CASE("scaling every cost scales the objective and keeps the dispatch")
    {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            auto p = test::random_uc(seed);
            auto q = p;
            for (auto& u : q.units) {
                u.srmc *= 2;
                u.suc *= 2;
                u.sdc *= 2;
            }
            q.slack_penalty *= 2;
            q.surplus_penalty *= 2;
            const auto a = solve_uc(p), b = solve_uc(q);
            REQUIRE(a.status == b.status);
            if (a.status == UCStatus::Optimal)
                CHECK(b.objective == doctest::Approx(2 * a.objective));
        }
    }
}
