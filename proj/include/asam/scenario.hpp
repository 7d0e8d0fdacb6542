#pragma once

#include "asam/imbalance.hpp"
#include "asam/time.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace asam {

struct SimulationTask {
    TimeStamp start;
    int number_steps = 1;
    std::uint64_t seed = 0;
    std::string forecast_errors = "exogenous";
    std::string congestions = "exogenous";
    std::string residual_load_scenario;
    std::string day_ahead_load_scenario;

    /// Residual load in p.u. of installed capacity parsed from the scenario text.
    double residual_load_pu() const;

    bool operator==(const SimulationTask&) const = default;
};

struct ForecastErrorRecord {
    TimeStamp identification;
    TimeStamp start;
    TimeStamp end;
    double error_magnitude_pu = 0.0;
    std::string agent;
    bool operator==(const ForecastErrorRecord&) const = default;
};

struct CongestionRecord {
    TimeStamp identification;
    TimeStamp start;
    TimeStamp end;
    double quantity = 0.0; // MW
    std::string down_area;
    std::string up_area;
    bool operator==(const CongestionRecord&) const = default;
};

struct Asset {
    std::string name;
    std::string owner;
    std::string type;
    double pmax = 0.0; // Pnom, MW
    double pmin = 0.0; // MW
    std::string location;
    double srmc = 0.0;
    double ramp_up = 1.0; // p.u. of pmax per ISP
    double ramp_down = 1.0;
    double ramp_start_up = 1.0;
    double ramp_shut_down = 1.0;
    int min_down_time = 0; // ISPs
    int min_up_time = 0;
    double start_up_cost = 0.0;
    double shut_down_cost = 0.0;
    bool operator==(const Asset&) const = default;
};

struct MarketRule {
    std::string gate_opening_time;
    std::string gate_closure_time;
    std::string acquisition_method;
    std::string pricing_method;
    std::string order_types;
    std::string provider_accreditation;
    bool operator==(const MarketRule&) const = default;
};

/// Keyed by market column label: DAM, IDM, RDM, BEM, IBM.
using MarketRules = std::map<std::string, MarketRule>;

struct StrategyConfig {
    std::string agent = "All";
    std::map<std::string, std::string> values; // parameter -> strategy name, canonical spelling
    bool operator==(const StrategyConfig&) const = default;

    const std::string& get(const std::string& parameter) const;
    bool flag(const std::string& parameter) const;
};

/// Knobs the source leaves open; defaults documented in the README.
struct Settings {
    double rdm_shortfall_penalty = 10000.0; // EUR/MWh
    double rdm_surplus_penalty = 1000.0;    // EUR/MWh
    double imbalance_penalty = 500.0;       // agent dispatch optimization, EUR/MWh
    double idm_max_concession = 50.0;       // impatience curve, EUR/MWh
    double idm_small_random_max = 25.0;     // MW
    double idm_tick = 0.1;                  // EUR/MWh
    double imbalance_default_price = 50.0;  // fixed single price regime
    double imbalance_bin_width = 10.0;      // EUR/MWh
    bool self_match_prevention = true;
    bool operator==(const Settings&) const = default;
};

struct AgentDecl {
    std::string name;
    enum class Role { MarketParty, GridOperator } role = Role::MarketParty;
    bool operator==(const AgentDecl&) const = default;
};

struct Scenario {
    SimulationTask task;
    std::vector<ForecastErrorRecord> forecast_errors;
    std::vector<CongestionRecord> congestions;
    std::vector<Asset> assets;
    MarketRules rules;
    std::vector<StrategyConfig> strategies;
    Settings settings;
    std::vector<AgentDecl> agents; // declaration order
    imbalance::ControlStateDistribution control_states;
    std::vector<imbalance::PriceEntry> imbalance_prices;
    /// Optional cap on DAM offers per asset: (asset, day, hour) -> MW available.
    std::map<std::string, std::map<std::pair<int, int>, double>> availability;

    bool operator==(const Scenario& o) const;

    /// Strategy set for an agent: its own column, else the "All" column.
    const StrategyConfig& strategy_for(const std::string& agent) const;
    std::vector<std::string> market_parties() const;
    std::string grid_operator() const;
    double installed_capacity() const;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical form used for vocabulary comparison: lower case, spaces and
/// hyphens as underscores, repeated underscores collapsed.
std::string canonical_name(const std::string& s);

Scenario load_scenario(const std::filesystem::path& dir);
void save_scenario(const Scenario& s, const std::filesystem::path& dir);

/// Vocabulary and schema checks; throws ScenarioError. Warnings are logged.
void validate_scenario(const Scenario& s);

} // namespace asam
