#include "asam/scenario.hpp"

#include "asam/csv.hpp"
#include "asam/log.hpp"
#include "asam/rdm.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>

namespace asam {

namespace fs = std::filesystem;

std::string canonical_name(const std::string& s)
{
    std::string out;
    for (char c : csv::trim(s)) {
        char d = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (d == ' ' || d == '-' || d == '\t')
            d = '_';
        if (d == '_' && !out.empty() && out.back() == '_')
            continue;
        out.push_back(d);
    }
    return out;
}

double SimulationTask::residual_load_pu() const
{
    static const std::regex num(R"(([0-9]*\.?[0-9]+))");
    std::smatch m;
    if (!std::regex_search(residual_load_scenario, m, num))
        throw ScenarioError("residual_load_scenario has no p.u. value: '" + residual_load_scenario + "'");
    return std::stod(m[1]);
}

const std::string& StrategyConfig::get(const std::string& parameter) const
{
    auto it = values.find(parameter);
    if (it == values.end())
        throw ScenarioError("strategy parameter '" + parameter + "' missing for agent " + agent);
    return it->second;
}

bool StrategyConfig::flag(const std::string& parameter) const
{
    auto it = values.find(parameter);
    if (it == values.end())
        return true;
    const auto v = canonical_name(it->second);
    return v == "true" || v == "1" || v == "yes";
}

bool Scenario::operator==(const Scenario& o) const
{
    auto price_eq = [](const imbalance::PriceEntry& a, const imbalance::PriceEntry& b) {
        return a.dam_bin_low == b.dam_bin_low && a.control_state == b.control_state && a.short_price == b.short_price &&
               a.long_price == b.long_price && a.weight == b.weight;
    };
    return task == o.task && forecast_errors == o.forecast_errors && congestions == o.congestions &&
           assets == o.assets && rules == o.rules && strategies == o.strategies && settings == o.settings &&
           agents == o.agents && control_states.states == o.control_states.states &&
           control_states.weights == o.control_states.weights &&
           std::equal(imbalance_prices.begin(), imbalance_prices.end(), o.imbalance_prices.begin(),
                      o.imbalance_prices.end(), price_eq) &&
           availability == o.availability;
}

const StrategyConfig& Scenario::strategy_for(const std::string& agent) const
{
    for (const auto& s : strategies)
        if (s.agent == agent)
            return s;
    for (const auto& s : strategies)
        if (canonical_name(s.agent) == "all")
            return s;
    throw ScenarioError("no strategy configured for agent " + agent);
}

std::vector<std::string> Scenario::market_parties() const
{
    std::vector<std::string> out;
    for (const auto& a : agents)
        if (a.role == AgentDecl::Role::MarketParty)
            out.push_back(a.name);
    return out;
}

std::string Scenario::grid_operator() const
{
    for (const auto& a : agents)
        if (a.role == AgentDecl::Role::GridOperator)
            return a.name;
    return "GridOperator";
}

double Scenario::installed_capacity() const
{
    double s = 0.0;
    for (const auto& a : assets)
        s += a.pmax;
    return s;
}

namespace {

std::string num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

const std::string kTask = "simulation_task.csv";
const std::string kFeCong = "fe_congestions.csv";
const std::string kAssets = "assets.csv";
const std::string kRules = "market_rules.csv";
const std::string kStrategies = "agent_strategies.csv";
const std::string kSettings = "settings.csv";
const std::string kAgents = "agents.csv";
const std::string kControl = "control_states.csv";
const std::string kPrices = "imbalance_price_table.csv";
const std::string kAvailability = "availability.csv";

const std::vector<std::string> kMarkets = {"DAM", "IDM", "RDM", "BEM", "IBM"};
const std::vector<std::string> kRuleParams = {"gate_opening_time", "gate_closure_time", "acquisition_method",
                                              "pricing_method", "order_types", "provider_accreditation"};

std::map<std::string, std::string> key_values(const csv::Table& t)
{
    t.require_column("parameter");
    t.require_column("value");
    std::map<std::string, std::string> kv;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        kv[t.cell(r, "parameter")] = t.optional_cell(r, "value").value_or("");
    return kv;
}

TimeStamp stamp(const csv::Table& t, std::size_t r, const std::string& day_col, const std::string& mtu_col)
{
    const auto d = t.integer(r, day_col), m = t.integer(r, mtu_col);
    try {
        return TimeStamp(static_cast<int>(d), static_cast<int>(m));
    } catch (const std::invalid_argument& e) {
        throw csv::CsvError(t.source, r + 2, mtu_col, e.what());
    }
}

SimulationTask load_task(const fs::path& dir)
{
    const auto t = csv::read_file(dir / kTask);
    auto kv = key_values(t);
    auto need = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end() || it->second.empty())
            throw csv::CsvError(t.source, 0, "value", "parameter '" + k + "' missing");
        return it->second;
    };
    SimulationTask task;
    try {
        task.start = TimeStamp(std::stoi(need("start_day")), std::stoi(need("start_MTU")));
        task.number_steps = std::stoi(need("number_steps"));
        task.seed = std::stoull(need("seed"));
    } catch (const std::invalid_argument& e) {
        throw csv::CsvError(t.source, 0, "value", std::string("malformed simulation setting: ") + e.what());
    }
    task.forecast_errors = kv["forecast_errors"];
    task.congestions = kv["congestions"];
    task.residual_load_scenario = need("residual_load_scenario");
    task.day_ahead_load_scenario = kv["Day-ahead_load_scenario"];
    return task;
}

void load_fe_congestions(const fs::path& dir, Scenario& s)
{
    const auto t = csv::read_file(dir / kFeCong);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto type = canonical_name(t.cell(r, "type"));
        const TimeStamp ident = stamp(t, r, "identification_day", "identification_MTU");
        const TimeStamp start = stamp(t, r, "start_day", "start_time");
        const TimeStamp end = stamp(t, r, "end_day", "end_time");
        if (end < start)
            throw csv::CsvError(t.source, r + 2, "end_time", "window ends before it starts");
        if (type == "forecast_errors" || type == "forecast_error") {
            s.forecast_errors.push_back({ident, start, end, t.number(r, "error_magnitude_pu"), t.cell(r, "error_of_agents")});
        } else if (type == "congestions" || type == "congestion") {
            const double q = t.number(r, "redispatch_quantity");
            if (!(q > 0.0))
                throw csv::CsvError(t.source, r + 2, "redispatch_quantity", "must be positive");
            CongestionRecord c{ident, start, end, q, t.cell(r, "down_area"), t.cell(r, "up_area")};
            if (c.down_area == c.up_area)
                throw csv::CsvError(t.source, r + 2, "up_area", "down and up area must differ");
            s.congestions.push_back(std::move(c));
        } else {
            throw csv::CsvError(t.source, r + 2, "type", "unknown record type '" + t.cell(r, "type") + "'");
        }
    }
}

void load_assets(const fs::path& dir, Scenario& s)
{
    const auto t = csv::read_file(dir / kAssets);
    std::set<std::string> names;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Asset a;
        a.name = t.cell(r, "asset_name");
        a.owner = t.cell(r, "asset_owner");
        a.type = t.optional_cell(r, "Type").value_or("");
        a.pmax = t.number(r, "pmax");
        a.pmin = t.number(r, "pmin");
        a.location = t.cell(r, "location");
        a.srmc = t.number(r, "srmc");
        a.ramp_up = t.number(r, "ramp_limit_up");
        a.ramp_down = t.number(r, "ramp_limit_down");
        a.ramp_start_up = t.number(r, "ramp_limit_start_up");
        a.ramp_shut_down = t.number(r, "ramp_limit_shut_down");
        a.min_down_time = static_cast<int>(t.integer(r, "min_down_time"));
        a.min_up_time = static_cast<int>(t.integer(r, "min_up_time"));
        a.start_up_cost = t.number(r, "start_up_cost");
        a.shut_down_cost = t.number(r, "shut_down_cost");
        if (!names.insert(a.name).second)
            throw csv::CsvError(t.source, r + 2, "asset_name", "duplicate asset '" + a.name + "'");
        if (a.pmax <= 0.0)
            throw csv::CsvError(t.source, r + 2, "pmax", "must be positive");
        if (a.pmin < 0.0 || a.pmin > a.pmax)
            throw csv::CsvError(t.source, r + 2, "pmin", "pmin must lie in [0, pmax]");
        for (auto [v, col] : {std::pair{a.ramp_up, "ramp_limit_up"}, {a.ramp_down, "ramp_limit_down"},
                              {a.ramp_start_up, "ramp_limit_start_up"}, {a.ramp_shut_down, "ramp_limit_shut_down"}})
            if (!(v > 0.0))
                throw csv::CsvError(t.source, r + 2, col, "ramp limit must be positive");
        if (a.min_up_time < 0 || a.min_down_time < 0)
            throw csv::CsvError(t.source, r + 2, "min_up_time", "must be non-negative");
        if (a.start_up_cost < 0.0 || a.shut_down_cost < 0.0)
            throw csv::CsvError(t.source, r + 2, "start_up_cost", "must be non-negative");
        s.assets.push_back(std::move(a));
    }
    if (s.assets.empty())
        throw csv::CsvError(t.source, 1, "", "no assets");
}

void load_rules(const fs::path& dir, Scenario& s)
{
    const auto t = csv::read_file(dir / kRules);
    t.require_column("parameter");
    for (const auto& m : kMarkets)
        t.require_column(m);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto p = t.cell(r, "parameter");
        for (const auto& m : kMarkets) {
            auto& rule = s.rules[m];
            const auto v = t.optional_cell(r, m).value_or("");
            if (p == "gate_opening_time") rule.gate_opening_time = v;
            else if (p == "gate_closure_time") rule.gate_closure_time = v;
            else if (p == "acquisition_method") rule.acquisition_method = v;
            else if (p == "pricing_method") rule.pricing_method = v;
            else if (p == "order_types") rule.order_types = v;
            else if (p == "provider_accreditation") rule.provider_accreditation = v;
            else throw csv::CsvError(t.source, r + 2, "parameter", "unknown market rule '" + p + "'");
        }
    }
}

void load_strategies(const fs::path& dir, Scenario& s)
{
    const auto t = csv::read_file(dir / kStrategies);
    t.require_column("parameter");
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        StrategyConfig cfg;
        bool has_agent = false;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto& p = t.rows[r][0];
            const auto& v = t.rows[r][c];
            if (p == "agent") {
                cfg.agent = v;
                has_agent = true;
            } else if (!v.empty()) {
                cfg.values[p] = v;
            }
        }
        if (!has_agent || cfg.agent.empty())
            throw csv::CsvError(t.source, 1, t.header[c], "strategy column lacks an 'agent' row");
        s.strategies.push_back(std::move(cfg));
    }
    if (s.strategies.empty())
        throw csv::CsvError(t.source, 1, "", "no strategy columns");
}

void load_settings(const fs::path& dir, Scenario& s)
{
    if (!fs::exists(dir / kSettings))
        return;
    const auto t = csv::read_file(dir / kSettings);
    auto kv = key_values(t);
    auto& st = s.settings;
    for (const auto& [k, v] : kv) {
        auto d = [&] {
            try {
                return std::stod(v);
            } catch (const std::exception&) {
                throw csv::CsvError(t.source, 0, "value", "setting '" + k + "' is not a number");
            }
        };
        if (k == "rdm_shortfall_penalty") st.rdm_shortfall_penalty = d();
        else if (k == "rdm_surplus_penalty") st.rdm_surplus_penalty = d();
        else if (k == "imbalance_penalty") st.imbalance_penalty = d();
        else if (k == "idm_max_concession") st.idm_max_concession = d();
        else if (k == "idm_small_random_max") st.idm_small_random_max = d();
        else if (k == "idm_tick") st.idm_tick = d();
        else if (k == "imbalance_default_price") st.imbalance_default_price = d();
        else if (k == "imbalance_bin_width") st.imbalance_bin_width = d();
        else if (k == "self_match_prevention") st.self_match_prevention = canonical_name(v) == "true" || v == "1";
        else throw csv::CsvError(t.source, 0, "parameter", "unknown setting '" + k + "'");
    }
}

void load_agents(const fs::path& dir, Scenario& s)
{
    if (fs::exists(dir / kAgents)) {
        const auto t = csv::read_file(dir / kAgents);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto role = canonical_name(t.cell(r, "role"));
            AgentDecl a{t.cell(r, "agent"), AgentDecl::Role::MarketParty};
            if (role == "grid_operator")
                a.role = AgentDecl::Role::GridOperator;
            else if (role != "market_party")
                throw csv::CsvError(t.source, r + 2, "role", "unknown role '" + t.cell(r, "role") + "'");
            s.agents.push_back(std::move(a));
        }
        return;
    }
    // market parties in order of first appearance as asset owner
    for (const auto& a : s.assets)
        if (std::none_of(s.agents.begin(), s.agents.end(), [&](const AgentDecl& d) { return d.name == a.owner; }))
            s.agents.push_back({a.owner, AgentDecl::Role::MarketParty});
    s.agents.push_back({"GridOperator", AgentDecl::Role::GridOperator});
}

void load_imbalance_inputs(const fs::path& dir, Scenario& s)
{
    if (fs::exists(dir / kControl)) {
        const auto t = csv::read_file(dir / kControl);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            s.control_states.states.push_back(static_cast<int>(t.integer(r, "state")));
            s.control_states.weights.push_back(t.number(r, "weight"));
        }
    } else {
        s.control_states = imbalance::ControlStateDistribution::dutch_default();
    }
    if (fs::exists(dir / kPrices)) {
        const auto t = csv::read_file(dir / kPrices);
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            s.imbalance_prices.push_back({t.number(r, "dam_bin_low"), static_cast<int>(t.integer(r, "control_state")),
                                          Price::from_eur(t.number(r, "short_price")),
                                          Price::from_eur(t.number(r, "long_price")), t.number(r, "weight")});
    }
    if (fs::exists(dir / kAvailability)) {
        const auto t = csv::read_file(dir / kAvailability);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const int hour = static_cast<int>(t.integer(r, "hour"));
            if (hour < 0 || hour > 23)
                throw csv::CsvError(t.source, r + 2, "hour", "hour must be in 0..23");
            s.availability[t.cell(r, "asset")][{static_cast<int>(t.integer(r, "day")), hour}] =
                t.number(r, "available_mw");
        }
    }
}

// Vocabulary: implemented names and names recognized but not implemented.
struct Vocab {
    std::set<std::string> implemented;
    std::set<std::string> recognized;
};

void check_vocab(const Vocab& v, const std::string& value, const std::string& what)
{
    const auto c = canonical_name(value);
    if (v.implemented.count(c))
        return;
    if (v.recognized.count(c))
        throw ScenarioError(what + " '" + value + "' is recognized but not implemented");
    throw ScenarioError(what + " '" + value + "' is not a known option");
}

const std::map<std::string, std::map<std::string, Vocab>>& rule_vocab()
{
    static const std::map<std::string, std::map<std::string, Vocab>> v = {
        {"DAM",
         {{"acquisition_method", {{"single_hourly_auction"}, {"exo_default"}}},
          {"pricing_method", {{"uniform"}, {}}},
          {"order_types", {{"fill_or_kill"}, {}}}}},
        {"IDM",
         {{"acquisition_method", {{"continuous", "continous_idm", "continuous_idm"}, {}}},
          {"pricing_method", {{"best_price"}, {}}},
          {"order_types", {{"limit_and_market"}, {"limit_market_idcons"}}}}},
        {"RDM",
         {{"acquisition_method",
           {{"cont_rdm_thinf", "cont_rdm_th0", "cont_rdm_th5", "cont_rdm_th50", "cont_red_thinf", "cont_red_th0",
             "cont_red_th5", "cont_red_th50"},
            {}}},
          {"pricing_method", {{"pay_as_bid", "uniform"}, {}}},
          {"order_types", {{"all_or_none_block", "all_or_none_isp", "limit_isp", "limit_block"}, {"idcons_orders"}}}}},
        {"BEM",
         {{"acquisition_method", {{"control_states_only"}, {}}},
          {"pricing_method", {{"", "none"}, {}}},
          {"order_types", {{"frr", "mfrr", "afrr", "mfrr_afrr"}, {}}}}},
        {"IBM",
         {{"acquisition_method", {{"realtime"}, {}}},
          {"pricing_method", {{"dutch_ib_pricing", "fixed_single_price"}, {}}},
          {"order_types", {{"na", ""}, {}}}}},
    };
    return v;
}

const std::map<std::string, Vocab>& strategy_vocab()
{
    static const std::map<std::string, Vocab> v = {
        {"DAM_quantity", {{"all"}, {}}},
        {"DAM_pricing", {{"srmc"}, {}}},
        {"DAM_timing", {{"at_gate_closure"}, {}}},
        {"IDM_quantity",
         {{"small_random", "random"}, {"all_operational", "all_operational_+_conditional_start_stop"}}},
        {"IDM_pricing",
         {{"marginal_orderbook_strategy", "marginal_order_book_strategy"},
          {"srmc_+/_1", "marginal_order_book_strategy_+_startstop_+partial_call"}}},
        {"IDM_timing", {{"instant", "instantaneous"}, {}}},
        {"RDM_quantity",
         {{"all_plus_startstop", "all_operational_+_start_stop"}, {"small_random", "all_operational", "not_offered_+_start_stop"}}},
        {"RDM_pricing",
         {{"all_markup", "all_markups", "all_mark_ups", "srmc", "opportunity_mark_up", "ramping_mark_up",
           "start_stop_mark_up"},
          {"double_score_mark_up", "partial_call_mark_up", "partial_call_mark_up"}}},
        {"RDM_timing", {{"instant", "instantaneous"}, {}}},
        {"IBM_quantity", {{"impatience_curve"}, {"all", "small_random"}}},
        {"IBM_pricing", {{"impatience_curve"}, {"market_orders_strategy", "marginal_order_book_strategy"}}},
        {"IBM_timing", {{"impatience_curve"}, {"instantaneous"}}},
        {"BEM_quantity", {{"available_ramp"}, {}}},
        {"BEM_pricing", {{"srmc"}, {}}},
        {"BEM_timing", {{"at_gate_closure"}, {}}},
        {"ramp_limits", {{"true", "false"}, {}}},
        {"start_stop_costs", {{"true", "false"}, {}}},
        {"min_up_down_time", {{"true", "false"}, {}}},
    };
    return v;
}

} // namespace

void validate_scenario(const Scenario& s)
{
    if (s.task.number_steps < 1)
        throw ScenarioError("number_steps must be at least 1");
    const double pu = s.task.residual_load_pu();
    if (pu < 0.0)
        throw ScenarioError("residual load must be non-negative");
    if (canonical_name(s.task.forecast_errors) != "exogenous" || canonical_name(s.task.congestions) != "exogenous")
        throw ScenarioError("forecast errors and congestions are exogenous only (recognized but not implemented otherwise)");

    const auto parties = s.market_parties();
    if (parties.empty())
        throw ScenarioError("no market parties");
    int grid_ops = 0;
    std::set<std::string> names;
    for (const auto& a : s.agents) {
        if (!names.insert(a.name).second)
            throw ScenarioError("agent '" + a.name + "' declared twice");
        grid_ops += a.role == AgentDecl::Role::GridOperator;
    }
    if (grid_ops != 1)
        throw ScenarioError("exactly one grid operator is required");
    for (const auto& a : s.assets)
        if (std::find(parties.begin(), parties.end(), a.owner) == parties.end())
            throw ScenarioError("asset " + a.name + " owned by undeclared market party " + a.owner);
    for (const auto& fe : s.forecast_errors)
        if (std::find(parties.begin(), parties.end(), fe.agent) == parties.end())
            throw ScenarioError("forecast error refers to unknown agent " + fe.agent);

    for (const auto& m : kMarkets) {
        auto it = s.rules.find(m);
        if (it == s.rules.end())
            throw ScenarioError("market rules for " + m + " missing");
        const MarketRule& r = it->second;
        const auto& voc = rule_vocab().at(m);
        check_vocab(voc.at("acquisition_method"), r.acquisition_method, m + " acquisition_method");
        check_vocab(voc.at("pricing_method"), r.pricing_method, m + " pricing_method");
        if (m == "IDM" || m == "RDM") {
            // several order types may be listed, separated by ';'
            std::string rest = r.order_types;
            std::size_t pos;
            do {
                pos = rest.find(';');
                check_vocab(voc.at("order_types"), rest.substr(0, pos), m + " order_types");
                rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
            } while (pos != std::string::npos);
        } else {
            check_vocab(voc.at("order_types"), r.order_types, m + " order_types");
        }
        if (canonical_name(r.provider_accreditation) != "all")
            throw ScenarioError(m + " provider_accreditation '" + r.provider_accreditation + "' is not implemented");
        GateSpec open, close;
        try {
            open = parse_gate_spec(r.gate_opening_time);
            close = parse_gate_spec(r.gate_closure_time);
        } catch (const GateSpecError& e) {
            throw ScenarioError(m + " gate time: " + e.what());
        }
        if (m != "IBM") {
            for (int mtu : {1, 48, 96}) {
                const TimeStamp d(3, mtu);
                if (gate_index(open, d) >= gate_index(close, d))
                    throw ScenarioError(m + " gate opening is not strictly before gate closure");
            }
        }
    }
    if (canonical_name(s.rules.at("RDM").pricing_method) == "uniform")
        log::warn("RDM pricing 'uniform' is outside the reference options; settling at the marginal price per direction");
    if (parse_gate_spec(s.rules.at("DAM").gate_closure_time).kind != GateSpec::Kind::DayBefore)
        throw ScenarioError("DAM gate closure must be on the day before delivery");

    for (const auto& st : s.strategies) {
        for (const auto& [p, v] : st.values) {
            auto it = strategy_vocab().find(p);
            if (it == strategy_vocab().end())
                throw ScenarioError("unknown strategy parameter '" + p + "'");
            check_vocab(it->second, v, "strategy " + p + " for " + st.agent);
        }
    }
    for (const auto& p : parties)
        (void)s.strategy_for(p);

    s.control_states.validate();
    const auto ibm = canonical_name(s.rules.at("IBM").pricing_method);
    if (ibm == "dutch_ib_pricing" && s.imbalance_prices.empty())
        throw ScenarioError("Dutch_IB_pricing needs " + kPrices);
    if (s.settings.rdm_shortfall_penalty <= 0 || s.settings.rdm_surplus_penalty <= 0 ||
        s.settings.imbalance_penalty <= 0 || s.settings.imbalance_bin_width <= 0 || s.settings.idm_tick <= 0)
        throw ScenarioError("penalties, tick and bin width must be positive");
    (void)rdm::threshold_from_method(s.rules.at("RDM").acquisition_method);
}

Scenario load_scenario(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw ScenarioError("scenario directory '" + dir.string() + "' not found");
    for (const auto& f : {kTask, kFeCong, kAssets, kRules, kStrategies})
        if (!fs::exists(dir / f))
            throw ScenarioError("scenario file '" + (dir / f).string() + "' missing");
    Scenario s;
    s.task = load_task(dir);
    load_fe_congestions(dir, s);
    load_assets(dir, s);
    load_rules(dir, s);
    load_strategies(dir, s);
    load_settings(dir, s);
    load_agents(dir, s);
    load_imbalance_inputs(dir, s);
    validate_scenario(s);
    return s;
}

void save_scenario(const Scenario& s, const fs::path& dir)
{
    fs::create_directories(dir);
    auto open = [&](const std::string& name) {
        std::ofstream os(dir / name, std::ios::binary);
        if (!os)
            throw ScenarioError("cannot write " + (dir / name).string());
        return os;
    };
    {
        auto os = open(kTask);
        csv::write_row(os, {"parameter", "value"});
        csv::write_row(os, {"start_day", std::to_string(s.task.start.day())});
        csv::write_row(os, {"start_MTU", std::to_string(s.task.start.mtu())});
        csv::write_row(os, {"number_steps", std::to_string(s.task.number_steps)});
        csv::write_row(os, {"seed", std::to_string(s.task.seed)});
        csv::write_row(os, {"forecast_errors", s.task.forecast_errors});
        csv::write_row(os, {"congestions", s.task.congestions});
        csv::write_row(os, {"residual_load_scenario", s.task.residual_load_scenario});
        csv::write_row(os, {"Day-ahead_load_scenario", s.task.day_ahead_load_scenario});
    }
    {
        auto os = open(kFeCong);
        csv::write_row(os, {"type", "identification_day", "identification_MTU", "start_day", "start_time", "end_day",
                            "end_time", "error_magnitude_pu", "error_of_agents", "redispatch_quantity", "down_area",
                            "up_area"});
        auto ts = [](TimeStamp t) { return std::vector<std::string>{std::to_string(t.day()), std::to_string(t.mtu())}; };
        for (const auto& f : s.forecast_errors) {
            std::vector<std::string> row{"forecast_errors"};
            for (auto t : {f.identification, f.start, f.end})
                for (auto& x : ts(t))
                    row.push_back(x);
            row.insert(row.end(), {num(f.error_magnitude_pu), f.agent, "", "", ""});
            csv::write_row(os, row);
        }
        for (const auto& c : s.congestions) {
            std::vector<std::string> row{"congestions"};
            for (auto t : {c.identification, c.start, c.end})
                for (auto& x : ts(t))
                    row.push_back(x);
            row.insert(row.end(), {"", "", num(c.quantity), c.down_area, c.up_area});
            csv::write_row(os, row);
        }
    }
    {
        auto os = open(kAssets);
        csv::write_row(os, {"asset_name", "asset_owner", "Type", "pmax", "pmin", "location", "srmc", "ramp_limit_up",
                            "ramp_limit_down", "ramp_limit_start_up", "ramp_limit_shut_down", "min_down_time",
                            "min_up_time", "start_up_cost", "shut_down_cost"});
        for (const auto& a : s.assets)
            csv::write_row(os, {a.name, a.owner, a.type, num(a.pmax), num(a.pmin), a.location, num(a.srmc),
                                num(a.ramp_up), num(a.ramp_down), num(a.ramp_start_up), num(a.ramp_shut_down),
                                std::to_string(a.min_down_time), std::to_string(a.min_up_time), num(a.start_up_cost),
                                num(a.shut_down_cost)});
    }
    {
        auto os = open(kRules);
        std::vector<std::string> header{"parameter"};
        header.insert(header.end(), kMarkets.begin(), kMarkets.end());
        csv::write_row(os, header);
        for (const auto& p : kRuleParams) {
            std::vector<std::string> row{p};
            for (const auto& m : kMarkets) {
                const auto it = s.rules.find(m);
                const MarketRule r = it == s.rules.end() ? MarketRule{} : it->second;
                if (p == "gate_opening_time") row.push_back(r.gate_opening_time);
                else if (p == "gate_closure_time") row.push_back(r.gate_closure_time);
                else if (p == "acquisition_method") row.push_back(r.acquisition_method);
                else if (p == "pricing_method") row.push_back(r.pricing_method);
                else if (p == "order_types") row.push_back(r.order_types);
                else row.push_back(r.provider_accreditation);
            }
            csv::write_row(os, row);
        }
    }
    {
        auto os = open(kStrategies);
        std::vector<std::string> header{"parameter"};
        std::set<std::string> params;
        std::vector<std::string> order;
        for (const auto& st : s.strategies) {
            header.push_back("value");
            for (const auto& [p, v] : st.values)
                if (params.insert(p).second)
                    order.push_back(p);
        }
        csv::write_row(os, header);
        std::vector<std::string> agent_row{"agent"};
        for (const auto& st : s.strategies)
            agent_row.push_back(st.agent);
        csv::write_row(os, agent_row);
        for (const auto& p : order) {
            std::vector<std::string> row{p};
            for (const auto& st : s.strategies) {
                auto it = st.values.find(p);
                row.push_back(it == st.values.end() ? "" : it->second);
            }
            csv::write_row(os, row);
        }
    }
    {
        auto os = open(kSettings);
        const auto& st = s.settings;
        csv::write_row(os, {"parameter", "value"});
        csv::write_row(os, {"rdm_shortfall_penalty", num(st.rdm_shortfall_penalty)});
        csv::write_row(os, {"rdm_surplus_penalty", num(st.rdm_surplus_penalty)});
        csv::write_row(os, {"imbalance_penalty", num(st.imbalance_penalty)});
        csv::write_row(os, {"idm_max_concession", num(st.idm_max_concession)});
        csv::write_row(os, {"idm_small_random_max", num(st.idm_small_random_max)});
        csv::write_row(os, {"idm_tick", num(st.idm_tick)});
        csv::write_row(os, {"imbalance_default_price", num(st.imbalance_default_price)});
        csv::write_row(os, {"imbalance_bin_width", num(st.imbalance_bin_width)});
        csv::write_row(os, {"self_match_prevention", st.self_match_prevention ? "true" : "false"});
    }
    {
        auto os = open(kAgents);
        csv::write_row(os, {"agent", "role"});
        for (const auto& a : s.agents)
            csv::write_row(os, {a.name, a.role == AgentDecl::Role::GridOperator ? "grid_operator" : "market_party"});
    }
    {
        auto os = open(kControl);
        csv::write_row(os, {"state", "weight"});
        for (std::size_t i = 0; i < s.control_states.states.size(); ++i)
            csv::write_row(os, {std::to_string(s.control_states.states[i]), num(s.control_states.weights[i])});
    }
    if (!s.imbalance_prices.empty()) {
        auto os = open(kPrices);
        csv::write_row(os, {"dam_bin_low", "control_state", "short_price", "long_price", "weight"});
        for (const auto& e : s.imbalance_prices)
            csv::write_row(os, {num(e.dam_bin_low), std::to_string(e.control_state), format_price(e.short_price),
                                format_price(e.long_price), num(e.weight)});
    }
    if (!s.availability.empty()) {
        auto os = open(kAvailability);
        csv::write_row(os, {"asset", "day", "hour", "available_mw"});
        for (const auto& [asset, m] : s.availability)
            for (const auto& [k, v] : m)
                csv::write_row(os, {asset, std::to_string(k.first), std::to_string(k.second), num(v)});
    }
}

} // namespace asam
