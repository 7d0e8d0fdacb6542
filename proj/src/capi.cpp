#include "asam/asam.h"

#include "asam/csv.hpp"
#include "asam/log.hpp"
#include "asam/output.hpp"
#include "asam/report.hpp"
#include "asam/simulation.hpp"

#include <filesystem>
#include <memory>
#include <string>

struct asam_sim {
    asam::Scenario scenario;
    std::unique_ptr<asam::Simulation> sim; // created on the first step
};

namespace {

thread_local std::string g_error;

asam_status fail(asam_status s, const std::string& msg)
{
    g_error = msg;
    return s;
}

template <class F>
asam_status guarded(F&& f)
{
    try {
        g_error.clear();
        return f();
    } catch (const asam::ScenarioError& e) {
        return fail(ASAM_SCENARIO, e.what());
    } catch (const asam::csv::CsvError& e) {
        return fail(ASAM_SCENARIO, e.what());
    } catch (const asam::GateSpecError& e) {
        return fail(ASAM_SCENARIO, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(ASAM_IO, e.what());
    } catch (const asam::SimulationError& e) {
        return fail(ASAM_SOLVER, e.what());
    } catch (const std::exception& e) {
        return fail(ASAM_INTERNAL, e.what());
    } catch (...) {
        return fail(ASAM_INTERNAL, "unknown error");
    }
}

asam::Simulation& started(asam_sim* h)
{
    if (!h->sim)
        h->sim = std::make_unique<asam::Simulation>(h->scenario);
    return *h->sim;
}

} // namespace

extern "C" {

const char* asam_version(void) { return "0.1.0"; }

const char* asam_last_error(void) { return g_error.c_str(); }

asam_status asam_open(const char* scenario_dir, asam_sim** out)
{
    if (!scenario_dir || !out)
        return fail(ASAM_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        asam::log::init_from_env();
        if (!std::filesystem::is_directory(scenario_dir))
            return fail(ASAM_IO, std::string("scenario directory not found: ") + scenario_dir);
        auto h = std::make_unique<asam_sim>();
        h->scenario = asam::load_scenario(scenario_dir);
        asam::validate_scenario(h->scenario);
        *out = h.release();
        return ASAM_OK;
    });
}

void asam_close(asam_sim* sim) { delete sim; }

asam_status asam_set_seed(asam_sim* sim, uint64_t seed)
{
    if (!sim)
        return fail(ASAM_INVALID_ARGUMENT, "null handle");
    if (sim->sim)
        return fail(ASAM_STATE, "seed must be set before the first step");
    sim->scenario.task.seed = seed;
    return ASAM_OK;
}

asam_status asam_set_steps(asam_sim* sim, int steps)
{
    if (!sim)
        return fail(ASAM_INVALID_ARGUMENT, "null handle");
    if (steps < 1)
        return fail(ASAM_INVALID_ARGUMENT, "steps must be positive");
    if (sim->sim)
        return fail(ASAM_STATE, "steps must be set before the first step");
    sim->scenario.task.number_steps = steps;
    return ASAM_OK;
}

asam_status asam_step(asam_sim* sim)
{
    if (!sim)
        return fail(ASAM_INVALID_ARGUMENT, "null handle");
    return guarded([&] {
        auto& s = started(sim);
        if (s.finished())
            return fail(ASAM_STATE, "run already finished");
        s.step();
        return ASAM_OK;
    });
}

asam_status asam_run(asam_sim* sim)
{
    if (!sim)
        return fail(ASAM_INVALID_ARGUMENT, "null handle");
    return guarded([&] {
        started(sim).run();
        return ASAM_OK;
    });
}

asam_status asam_current_time(const asam_sim* sim, asam_time* out)
{
    if (!sim || !out)
        return fail(ASAM_INVALID_ARGUMENT, "null argument");
    const auto t = sim->sim ? sim->sim->now() : sim->scenario.task.start;
    out->day = t.day();
    out->mtu = t.mtu();
    return ASAM_OK;
}

asam_status asam_summary_get(const asam_sim* sim, asam_summary* out)
{
    if (!sim || !out)
        return fail(ASAM_INVALID_ARGUMENT, "null argument");
    *out = asam_summary{};
    if (!sim->sim)
        return ASAM_OK;
    return guarded([&] {
        const auto& s = *sim->sim;
        const auto& log = s.log();
        out->steps_done = s.steps_done();
        out->dam_clearings = log.dam_clearings;
        out->idm_clearings = log.idm_clearings;
        out->rdm_commits = static_cast<int>(s.grid_operator().commits().size());
        for (const auto& c : asam::report::interdependency_table(s)) {
            if (c.market == asam::Market::DAM) {
                out->dam_cleared_mwh = c.sell_cleared_mwh;
                out->dam_return_eur = c.return_eur;
            } else if (c.market == asam::Market::IDM) {
                out->idm_cleared_mwh = c.sell_cleared_mwh;
            }
        }
        const auto k = asam::report::redispatch_kpis(s);
        out->rdm_up_mwh = k.cleared_up_mwh;
        out->rdm_down_mwh = k.cleared_down_mwh;
        out->rdm_demand_mwh = k.demand_up_mwh;
        out->rdm_under_mwh = k.under_mwh();
        out->rdm_over_mwh = k.over_mwh();
        out->induced_imbalance_mwh = k.induced_mwh;
        out->grid_operator_cost_eur = k.grid_operator_cost_eur;
        out->diagnostics = static_cast<int>(log.diagnostics.size());
        return ASAM_OK;
    });
}

asam_status asam_write_outputs(const asam_sim* sim, const char* out_dir)
{
    if (!sim || !out_dir)
        return fail(ASAM_INVALID_ARGUMENT, "null argument");
    if (!sim->sim)
        return fail(ASAM_STATE, "nothing simulated yet");
    return guarded([&] {
        asam::output::write_all(*sim->sim, out_dir);
        return ASAM_OK;
    });
}

} // extern "C"
