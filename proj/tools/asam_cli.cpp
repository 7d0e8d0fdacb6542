// Command-line runner: loads a scenario, simulates and writes result CSVs.
#include "asam/asam.h"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace {

int die(const char* what)
{
    std::fprintf(stderr, "asam: %s: %s\n", what, asam_last_error());
    return 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Agent-based electricity market simulator"};
    std::string scenario, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> steps;
    app.add_option("--scenario", scenario, "scenario directory")->required();
    app.add_option("--out", out, "output directory")->required();
    app.add_option("--seed", seed, "override the scenario seed");
    app.add_option("--steps", steps, "override the number of steps")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", std::string(asam_version()));
    CLI11_PARSE(app, argc, argv);

    asam_sim* sim = nullptr;
    if (asam_open(scenario.c_str(), &sim) != ASAM_OK)
        return die("loading scenario");
    int rc = 0;
    if ((seed && asam_set_seed(sim, *seed) != ASAM_OK) || (steps && asam_set_steps(sim, *steps) != ASAM_OK))
        rc = die("options");
    else if (asam_run(sim) != ASAM_OK)
        rc = die("simulation");
    else if (asam_write_outputs(sim, out.c_str()) != ASAM_OK)
        rc = die("writing outputs");

    if (rc == 0) {
        asam_summary s;
        asam_summary_get(sim, &s);
        std::printf("steps            %d\n", s.steps_done);
        std::printf("DAM  cleared     %10.1f MWh   return %12.2f EUR   auctions %d\n", s.dam_cleared_mwh,
                    s.dam_return_eur, s.dam_clearings);
        std::printf("IDM  cleared     %10.1f MWh   batches %d\n", s.idm_cleared_mwh, s.idm_clearings);
        std::printf("RDM  up          %10.1f MWh   down %8.1f MWh   commits %d\n", s.rdm_up_mwh, s.rdm_down_mwh,
                    s.rdm_commits);
        std::printf("RDM  demand      %10.1f MWh per direction\n", s.rdm_demand_mwh);
        std::printf("RDM  under/over  %10.1f / %.1f MWh\n", s.rdm_under_mwh, s.rdm_over_mwh);
        std::printf("induced imbal.   %10.1f MWh\n", s.induced_imbalance_mwh);
        std::printf("grid op. cost    %10.2f EUR\n", s.grid_operator_cost_eur);
        std::printf("diagnostics      %d\n", s.diagnostics);
        std::printf("outputs          %s\n", out.c_str());
    }
    asam_close(sim);
    return rc;
}
