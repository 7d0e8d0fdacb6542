// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "asam/market_party.hpp"
#include "asam/output.hpp"
#include "asam/report.hpp"
#include "asam/simulation.hpp"

#include "idm_properties.hpp"
#include "random_instances.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

using namespace asam;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failed = 0;

void report(int id, bool ok, const std::string& detail)
{
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failed;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool within(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

fs::path reference_dir() { return fs::path(ASAM_SOURCE_DIR) / "scenarios" / "reference"; }

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct FullRun {
    std::unique_ptr<Simulation> sim;
    double first_step_s = 0;
    double total_s = 0;
};

FullRun full_run()
{
    FullRun r;
    auto s = load_scenario(reference_dir());
    const auto t0 = Clock::now();
    r.sim = std::make_unique<Simulation>(s);
    r.sim->step(); // the day-ahead auction is cleared in the first step
    r.first_step_s = seconds_since(t0);
    r.sim->run();
    r.total_s = seconds_since(t0);
    return r;
}

void criterion_dam(const FullRun& run)
{
    const auto& sim = *run.sim;
    bool prices = true;
    for (int h = 0; h < 24; ++h)
        prices = prices && sim.dam_price(TimeStamp(1, h * 4 + 1)) == Price::from_eur(60);
    Energy cleared;
    Money value;
    for (const auto& t : sim.log().trades)
        if (t.market == Market::DAM) {
            cleared += t.energy();
            value += t.value();
        }
    // 30,600 MWh = 122,400,000 kW*ISP; 1,836,000 EUR = 734,400,000,000 cent*kW*ISP
    const bool ok = prices && cleared.kw_isp == 122'400'000 && value.units == 734'400'000'000 &&
                    sim.log().dam_clearings == 1 && run.first_step_s < 5.0;
    std::ostringstream d;
    d << std::fixed << std::setprecision(1) << "price 60 in all hours=" << prices << ", cleared " << cleared.mwh() << " MWh, return " << value.eur()
      << " EUR, first step " << run.first_step_s << " s";
    report(1, ok, d.str());
}

void criterion_redispatch(const FullRun& run)
{
    const auto k = report::redispatch_kpis(*run.sim);
    bool induced = false;
    for (const auto& r : report::redispatch_per_mtu(*run.sim))
        induced = induced || !r.induced.is_zero();
    const bool ok = run.sim->finished() && k.demands > 0 && k.under_mwh() == 0.0 && k.over_mwh() > 0.0 && induced &&
                    run.total_s < 300.0;
    std::ostringstream d;
    d << "under " << k.under_mwh() << " MWh, over " << k.over_mwh() << " MWh, induced " << k.induced_mwh
      << " MWh, full run " << run.total_s << " s";
    report(2, ok, d.str());
}

void criterion_rdm_oracle()
{
    const double thresholds[] = {0.0, 5.0, 50.0, opt::kInf};
    int mismatches = 0, structural = 0, solved = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const double th = thresholds[seed % 4];
        const auto in = test::random_rdm(1000 + seed, th);
        const auto cp = rdm::build_clearing_problem(in.demand, in.orders, th);
        const auto r = rdm::clear_rdm(cp);
        const auto b = rdm::brute_force_rdm(cp);
        if (!r.solved || !b.solved || !within(r.objective, b.objective)) {
            ++mismatches;
            continue;
        }
        ++solved;
        for (const auto& co : r.orders) {
            std::optional<Power> level;
            for (int t = 0; t < r.horizon; ++t) {
                if (!co.order.covers(r.t0.plus(t)))
                    continue;
                const Power q = co.per_mtu[t];
                if (co.order.kind == OrderKind::AllOrNoneBlock && !q.is_zero() && q != co.order.quantity)
                    ++structural;
                if (level && q != *level)
                    ++structural;
                level = q;
            }
        }
    }
    std::ostringstream d;
    d << solved << "/200 equal to enumeration, " << structural << " integrality/flatness violations";
    report(3, mismatches == 0 && structural == 0, d.str());
}

void criterion_uc_oracle()
{
    int mismatches = 0, violations = 0, optimal = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto p = test::random_uc(5000 + seed);
        const auto a = opt::solve_uc(p);
        const auto b = opt::brute_force_uc(p);
        if (a.status != b.status) {
            ++mismatches;
            continue;
        }
        if (a.status != opt::UCStatus::Optimal)
            continue;
        ++optimal;
        if (!within(a.objective, b.objective))
            ++mismatches;
        if (!opt::verify_uc(p, a).empty())
            ++violations;
    }
    std::ostringstream d;
    d << optimal << " optimal, " << mismatches << " mismatches, " << violations << " verification failures";
    report(4, mismatches == 0 && violations == 0, d.str());
}

void criterion_idm()
{
    std::size_t trades = 0;
    std::string first_failure;
    int failures = 0;
    for (std::uint64_t seed = 1; seed <= 10'000; ++seed) {
        const auto rep = test::check_idm_stream(seed);
        trades += rep.trades;
        if (!rep.failure.empty()) {
            if (first_failure.empty())
                first_failure = "seed " + std::to_string(seed) + ": " + rep.failure;
            ++failures;
        }
    }
    std::ostringstream d;
    d << "10000 streams, " << trades << " trades, " << failures << " failing";
    if (!first_failure.empty())
        d << " (" << first_failure << ")";
    report(5, failures == 0, d.str());
}

Capacity direct(std::int64_t pmax, std::int64_t pmin, std::int64_t ru, std::int64_t rd, std::int64_t prev,
                std::int64_t sd, std::int64_t next)
{
    const std::int64_t up = pmax - sd, down = sd - pmin;
    const std::int64_t rr_up = std::max<std::int64_t>(std::min({ru - (sd - prev), ru - (next - sd), up}), 0);
    const std::int64_t rr_down = std::max<std::int64_t>(std::min({rd - (prev - sd), rd - (sd - next), down}), 0);
    return {Power{up}, Power{down}, Power{rr_up}, Power{rr_down}};
}

void criterion_capacity()
{
    test::Draw d(606);
    int mismatches = 0;
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
        const auto want = direct(pmax, pmin, ru, rd, prev, now, next);
        if (got.av_up != want.av_up || got.av_down != want.av_down || got.rr_up != want.rr_up ||
            got.rr_down != want.rr_down)
            ++mismatches;
    }
    // boundaries: at pmax, at pmin, and a ramp already used up
    const Power pnom = Power::from_mw(300);
    const auto top = available_capacity(pnom, 1.0, 0.2, 0.25, 0.25, pnom, pnom, pnom);
    const auto bottom =
        available_capacity(pnom, 1.0, 0.2, 0.25, 0.25, Power::from_mw(60), Power::from_mw(60), Power::from_mw(60));
    const auto ramped =
        available_capacity(pnom, 1.0, 0.0, 0.25, 0.25, Power::from_mw(125), Power::from_mw(200), Power::from_mw(200));
    const bool clamps = top.av_up.is_zero() && top.rr_up.is_zero() && bottom.av_down.is_zero() &&
                        bottom.rr_down.is_zero() && ramped.rr_up.is_zero() && ramped.rr_down == Power::from_mw(75);
    std::ostringstream s;
    s << "1000 tuples, " << mismatches << " mismatches, boundary clamping " << (clamps ? "ok" : "wrong");
    report(6, mismatches == 0 && clamps, s.str());
}

void criterion_markup(const FullRun& run)
{
    int n = 0, nonzero = 0;
    for (const auto& m : report::markup_analysis(*run.sim))
        if (m.market == Market::DAM || m.market == Market::BEM) {
            ++n;
            if (m.value() != 0.0)
                ++nonzero;
        }
    const bool eq1 = risk_markup(50, 20, 100) == 10.0 && risk_markup(123, 0, 7) == 0.0 &&
                     risk_markup(300, 0.5, 15) == 10.0;
    std::ostringstream d;
    d << n << " DAM/BEM orders, " << nonzero << " with non-zero mark-up; mark-up formula examples "
      << (eq1 ? "exact" : "wrong");
    report(7, n > 0 && nonzero == 0 && eq1, d.str());
}

void criterion_determinism(const FullRun& first)
{
    const auto base = fs::temp_directory_path() / "asam_acceptance";
    fs::remove_all(base);
    const auto a = base / "a", b = base / "b";
    const auto files = output::write_all(*first.sim, a);
    const auto second = full_run();
    output::write_all(*second.sim, b);
    int differing = 0;
    for (const auto& f : files)
        if (slurp(a / f) != slurp(b / f))
            ++differing;
    std::ostringstream d;
    d << files.size() << " CSV files compared, " << differing << " differ";
    report(8, !files.empty() && differing == 0, d.str());
}

} // namespace

int main()
{
    try {
        const auto run = full_run();
        criterion_dam(run);
        criterion_redispatch(run);
        criterion_rdm_oracle();
        criterion_uc_oracle();
        criterion_idm();
        criterion_capacity();
        criterion_markup(run);
        criterion_determinism(run);
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 100;
    }
    std::printf("criterion 9: not reproducible (documented)  intraday, balancing and imbalance magnitudes depend on "
                "an unpublished price distribution and random-strategy parameters; covered by property suites\n");
    return g_failed;
}
