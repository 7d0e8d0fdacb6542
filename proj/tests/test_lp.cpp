#include "asam/milp.hpp"

#include "random_instances.hpp"

#include <doctest.h>

#include <cmath>

using namespace asam;
using namespace asam::opt;

namespace {

LinearProgram random_lp(std::uint64_t seed)
{
    test::Draw d(seed);
    LinearProgram lp;
    const int n = d.integer(2, 7);
    const int m = d.integer(1, 6);
    for (int j = 0; j < n; ++j) {
        const double lo = d.chance(0.8) ? 0.0 : -d.integer(0, 5);
        const double hi = d.chance(0.2) ? kInf : d.integer(1, 20);
        lp.add_variable(lo, hi, d.integer(-10, 10));
    }
    for (int i = 0; i < m; ++i) {
        std::vector<LinearProgram::Term> row;
        for (int j = 0; j < n; ++j)
            if (d.chance(0.6))
                row.push_back({j, static_cast<double>(d.integer(-5, 5))});
        const int kind = d.integer(0, 2);
        const double rhs = d.integer(-10, 30);
        if (kind == 0)
            lp.add_row(row, -kInf, rhs);
        else if (kind == 1)
            lp.add_row(row, rhs - d.integer(0, 10), rhs);
        else
            lp.add_row(row, rhs, rhs);
    }
    return lp;
}

bool feasible(const LinearProgram& lp, const std::vector<double>& x, double tol = 1e-6)
{
    for (int j = 0; j < lp.num_vars(); ++j)
        if (x[j] < lp.col_lower[j] - tol || x[j] > lp.col_upper[j] + tol)
            return false;
    for (const auto& r : lp.rows) {
        double a = 0.0;
        for (auto t : r.terms)
            a += t.coef * x[t.var];
        if (a < r.lower - tol || a > r.upper + tol)
            return false;
    }
    return true;
}

} // namespace

TEST_SUITE("lp")
{
    TEST_CASE("small textbook program")
    {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3
        LinearProgram lp;
        const int x = lp.add_variable(0, 3, -3);
        const int y = lp.add_variable(0, kInf, -2);
        lp.add_row({{x, 1}, {y, 1}}, -kInf, 4);
        lp.add_row({{x, 1}, {y, 3}}, -kInf, 6);
        for (const auto& r : {solve_lp(lp), solve_lp_dense(lp)}) {
            REQUIRE(r.status == LpStatus::Optimal);
            CHECK(r.objective == doctest::Approx(-11.0));
            CHECK(r.x[0] == doctest::Approx(3.0));
            CHECK(r.x[1] == doctest::Approx(1.0));
        }
    }

    TEST_CASE("infeasible and unbounded programs are reported")
    {
        LinearProgram inf;
        const int a = inf.add_variable(0, 1, 1);
        inf.add_row({{a, 1}}, 2, kInf);
        CHECK(solve_lp(inf).status == LpStatus::Infeasible);
        CHECK(solve_lp_dense(inf).status == LpStatus::Infeasible);

        LinearProgram unb;
        const int b = unb.add_variable(0, kInf, -1);
        unb.add_row({{b, 1}}, 1, kInf);
        CHECK(solve_lp(unb).status == LpStatus::Unbounded);
        CHECK(solve_lp_dense(unb).status == LpStatus::Unbounded);
    }

    TEST_CASE("revised simplex agrees with the dense tableau on random programs")
    {
        int optimal = 0;
        for (std::uint64_t seed = 1; seed <= 400; ++seed) {
            const auto lp = random_lp(seed);
            const auto a = solve_lp(lp);
            const auto b = solve_lp_dense(lp);
            INFO("seed " << seed);
            REQUIRE(a.status == b.status);
            if (a.status != LpStatus::Optimal)
                continue;
            ++optimal;
            CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9).scale(1.0));
            CHECK(feasible(lp, a.x));
        }
        CHECK(optimal > 100);
    }

    TEST_CASE("warm-started resolves with tightened bounds match cold solves")
    {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto lp = random_lp(seed);
            SimplexSolver s(lp);
            const auto first = s.solve();
            if (first.status != LpStatus::Optimal)
                continue;
            auto lo = lp.col_lower, hi = lp.col_upper;
            hi[0] = std::min(hi[0], std::floor(first.x[0]));
            lo[0] = std::min(lo[0], hi[0]);
            const auto warm = s.solve(lo, hi, &first.basis);
            auto tightened = lp;
            tightened.col_lower = lo;
            tightened.col_upper = hi;
            const auto cold = solve_lp_dense(tightened);
            INFO("seed " << seed);
            REQUIRE(warm.status == cold.status);
            if (warm.status == LpStatus::Optimal)
                CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-9).scale(1.0));
        }
    }

    TEST_CASE("branch and bound equals enumeration on small binary programs")
    {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            test::Draw d(seed);
            LinearProgram lp;
            const int n = d.integer(2, 8);
            std::vector<double> w(n), v(n);
            std::vector<LinearProgram::Term> row;
            for (int j = 0; j < n; ++j) {
                w[j] = d.integer(1, 20);
                v[j] = d.integer(1, 30);
                lp.add_variable(0, 1, -v[j], true);
                row.push_back({j, w[j]});
            }
            const double cap = d.integer(5, 60);
            lp.add_row(row, -kInf, cap);

            double best = 0.0;
            for (int mask = 0; mask < (1 << n); ++mask) {
                double ww = 0, vv = 0;
                for (int j = 0; j < n; ++j)
                    if (mask & (1 << j)) {
                        ww += w[j];
                        vv += v[j];
                    }
                if (ww <= cap)
                    best = std::max(best, vv);
            }
            const auto r = solve_milp(lp);
            INFO("seed " << seed);
            REQUIRE(r.status == MilpStatus::Optimal);
            CHECK(-r.objective == doctest::Approx(best));
            for (double x : r.x)
                CHECK(std::abs(x - std::round(x)) < 1e-6);
        }
    }
}
