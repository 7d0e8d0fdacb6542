#include "asam/simulation.hpp"

#include "asam/idm.hpp"
#include "asam/log.hpp"

#include <algorithm>

namespace asam {

namespace {

std::set<OrderKind> order_kinds(const std::string& spec)
{
    std::set<OrderKind> kinds;
    std::string rest = spec;
    for (;;) {
        const auto pos = rest.find(';');
        const auto k = canonical_name(rest.substr(0, pos));
        if (k == "fill_or_kill")
            kinds.insert(OrderKind::FillOrKill);
        else if (k == "limit_and_market")
            kinds.insert({OrderKind::Limit, OrderKind::MarketOrder});
        else if (k == "all_or_none_block" || k == "all_or_none_isp")
            kinds.insert(OrderKind::AllOrNoneBlock);
        else if (k == "limit_isp" || k == "limit_block")
            kinds.insert(OrderKind::Limit);
        else
            kinds.insert(OrderKind::Limit); // balancing products are plain priced offers
        if (pos == std::string::npos)
            break;
        rest = rest.substr(pos + 1);
    }
    return kinds;
}

Gates gates_of(const MarketRule& r)
{
    return {parse_gate_spec(r.gate_opening_time), parse_gate_spec(r.gate_closure_time)};
}

} // namespace

std::vector<std::string> agent_order(const std::vector<AgentDecl>& agents)
{
    std::vector<std::string> out;
    for (const auto& a : agents)
        if (a.role == AgentDecl::Role::MarketParty)
            out.push_back(a.name);
    for (const auto& a : agents)
        if (a.role == AgentDecl::Role::GridOperator)
            out.push_back(a.name);
    return out;
}

Simulation::Simulation(Scenario scenario)
    : scenario_((validate_scenario(scenario), std::move(scenario))), now_(scenario_.task.start),
      rng_(scenario_.task.seed), grid_(scenario_.grid_operator(), scenario_.congestions),
      regime_(imbalance::parse_regime(scenario_.rules.at("IBM").pricing_method)),
      price_table_(scenario_.settings.imbalance_bin_width),
      rdm_threshold_(rdm::threshold_from_method(scenario_.rules.at("RDM").acquisition_method)),
      dam_book_(Market::DAM, order_kinds(scenario_.rules.at("DAM").order_types)),
      idm_book_(Market::IDM, order_kinds(scenario_.rules.at("IDM").order_types)),
      rdm_book_(Market::RDM, order_kinds(scenario_.rules.at("RDM").order_types)),
      bem_book_(Market::BEM, order_kinds(scenario_.rules.at("BEM").order_types))
{
    for (const auto& name : scenario_.market_parties()) {
        std::vector<Asset> own;
        for (const auto& a : scenario_.assets)
            if (a.owner == name)
                own.push_back(a);
        order_.push_back(parties_.size());
        parties_.emplace_back(name, std::move(own), scenario_.strategy_for(name), scenario_.settings);
    }
    dam_gates_ = gates_of(scenario_.rules.at("DAM"));
    idm_gates_ = gates_of(scenario_.rules.at("IDM"));
    rdm_gates_ = gates_of(scenario_.rules.at("RDM"));
    bem_gates_ = gates_of(scenario_.rules.at("BEM"));
    rdm_uniform_ = canonical_name(scenario_.rules.at("RDM").pricing_method) == "uniform";
    for (const auto& e : scenario_.imbalance_prices)
        price_table_.add(e);
    hourly_load_ = Power::from_mw(scenario_.task.residual_load_pu() * scenario_.installed_capacity());
    fe_applied_.assign(scenario_.forecast_errors.size(), false);

    // The first delivery day's gate lies before the start: offers go in now
    // and the book clears in the first step.
    const int day = now_.day();
    if (gate_index(dam_gates_.closure, TimeStamp(day, 1)) <= now_.index())
        for (auto& p : parties_)
            place_dam_orders(p, day);
}

const OrderBook& Simulation::book(Market m) const
{
    switch (m) {
    case Market::DAM: return dam_book_;
    case Market::IDM: return idm_book_;
    case Market::RDM: return rdm_book_;
    case Market::BEM: return bem_book_;
    }
    return idm_book_;
}

std::optional<Price> Simulation::dam_price(TimeStamp t) const
{
    auto it = dam_cleared_.find(t.day());
    if (it == dam_cleared_.end())
        return std::nullopt;
    return it->second.hours.at((t.mtu() - 1) / kMtusPerHour).price;
}

Power Simulation::dam_load(TimeStamp t) const
{
    return dam_cleared_.count(t.day()) ? hourly_load_ : Power{};
}

MarketParty& Simulation::party(const std::string& name)
{
    for (auto& p : parties_)
        if (p.name() == name)
            return p;
    throw SimulationError("unknown market party " + name);
}

dam::AvailabilityCaps Simulation::caps_for(int day) const
{
    dam::AvailabilityCaps caps;
    for (const auto& [asset, m] : scenario_.availability) {
        auto it = std::find_if(scenario_.assets.begin(), scenario_.assets.end(),
                               [&](const Asset& a) { return a.name == asset; });
        if (it == scenario_.assets.end())
            continue;
        std::vector<Power> v(24, Power::from_mw(it->pmax));
        bool any = false;
        for (int h = 0; h < 24; ++h) {
            auto e = m.find({day, h});
            if (e != m.end()) {
                v[h] = Power::from_mw(std::clamp(e->second, 0.0, it->pmax));
                any = true;
            }
        }
        if (any)
            caps[asset] = std::move(v);
    }
    return caps;
}

void Simulation::run()
{
    while (!finished())
        step();
}

void Simulation::step()
{
    if (finished())
        throw SimulationError("run already finished after " + std::to_string(steps_done_) + " steps");
    try {
        market_operator_phase();
        for (auto i : order_)
            party_turn(parties_[i]);
        grid_operator_turn();
        snapshot();
    } catch (const SimulationError&) {
        throw;
    } catch (const std::exception& e) {
        throw SimulationError("step " + now_.str() + ": " + e.what());
    }
    log_.steps.push_back(now_);
    ++steps_done_;
    now_ = advance(now_);
}

void Simulation::market_operator_phase()
{
    std::vector<int> due;
    for (const auto& [day, offers] : dam_pending_)
        if (gate_index(dam_gates_.closure, TimeStamp(day, 1)) <= now_.index())
            due.push_back(day);
    for (int day : due)
        clear_dam_day(day);

    for (std::size_t i = 0; i < scenario_.forecast_errors.size(); ++i) {
        const auto& fe = scenario_.forecast_errors[i];
        if (fe_applied_[i] || fe.identification > now_ || !horizon_end_ || fe.end > *horizon_end_)
            continue;
        party(fe.agent).add_forecast_error(fe);
        fe_applied_[i] = true;
    }

    idm_book_.remove_expired(now_.plus(1));
    bem_book_.remove_expired(now_);
    std::vector<std::uint64_t> stale;
    for (const Order* o : rdm_book_.orders())
        if (now_.index() > gate_index(rdm_gates_.closure, o->delivery_start))
            stale.push_back(o->id);
    for (auto id : stale)
        rdm_book_.remove(id);

    IspRecord rec;
    rec.isp = now_;
    rec.dam_price = dam_price(now_);
    rec.dam_load = dam_load(now_);
    rec.control_state = imbalance::sample_control_state(scenario_.control_states, rng_.stream("control_state"));
    const Price fallback = Price::from_eur(scenario_.settings.imbalance_default_price);
    if (regime_ == imbalance::Regime::ConditionalTable && !rec.dam_price) {
        log::debug("no DAM price for " + now_.str() + "; imbalance settled at the default price");
        rec.prices = {fallback, fallback};
    } else {
        rec.prices = imbalance::price_imbalance(regime_, price_table_, fallback, rec.dam_price, rec.control_state,
                                                rng_.stream("imbalance_price"));
    }
    std::map<std::string, Power> imbalances;
    for (const auto& p : parties_)
        imbalances[p.name()] = p.imbalance(now_);
    for (auto& s : imbalance::settle_imbalances(now_, imbalances, rec.prices))
        log_.settlements.push_back(std::move(s));
    log_.isps.push_back(rec);
}

void Simulation::place_dam_orders(MarketParty& p, int day)
{
    if (!dam_placed_.insert({p.name(), day}).second)
        return;
    for (auto& po : p.dam_orders(day, now_, caps_for(day))) {
        const auto id = dam_book_.insert(po.order, now_);
        const Order& stored = *dam_book_.find(id);
        dam_pending_[day].push_back(stored);
        log_.offers.push_back({now_, stored, po.srmc, po.strategy});
    }
}

void Simulation::clear_dam_day(int day)
{
    auto offers = std::move(dam_pending_[day]);
    dam_pending_.erase(day);
    for (const auto& o : offers)
        dam_book_.remove(o.id);
    const std::vector<Power> load(24, hourly_load_);
    auto result = dam::clear_dam(offers, day, load, caps_for(day));
    for (const auto& h : result.hours)
        if (h.scarcity)
            log::warn("DAM scarcity on day " + std::to_string(day) + " hour starting " + h.start.str() + ": " +
                      format_mw(h.unserved) + " MW unserved");
    const auto trades = dam::settle_dam(result, now_);
    dam_cleared_[day] = result;
    horizon_end_ = TimeStamp(day, kMtusPerDay);
    for (auto& p : parties_)
        p.extend_horizon(*horizon_end_);
    distribute(trades);
    for (auto& p : parties_)
        p.seed_dispatch(result);
    log_.dam_results.push_back(std::move(result));
    ++log_.dam_clearings;
}

void Simulation::distribute(const std::vector<Transaction>& trades)
{
    for (const auto& t : trades) {
        log_.trades.push_back(t);
        for (auto& p : parties_) {
            if (p.name() != t.buyer && p.name() != t.seller)
                continue;
            try {
                p.apply_transaction(t);
            } catch (const DispatchError& e) {
                throw SimulationError(to_string(t.market) + " at " + now_.str() + ": " + e.what());
            }
        }
    }
}

void Simulation::refresh(MarketParty& p)
{
    try {
        p.optimize_dispatch(now_);
    } catch (const DispatchError& e) {
        throw SimulationError(std::string("dispatch: ") + e.what());
    }
}

MarketView Simulation::view_for(const MarketParty& p)
{
    open_cache_.clear();
    for (const auto& d : demands_)
        if (d.open)
            open_cache_.push_back(d.demand);
    MarketView v;
    v.now = now_;
    v.idm = idm_gates_;
    v.rdm = rdm_gates_;
    v.bem = bem_gates_;
    v.dam_price = [this](TimeStamp t) { return dam_price(t); };
    v.idm_book = &idm_book_;
    v.rdm_demands = open_cache_;
    v.rng = &rng_.stream("agent:" + p.name());
    return v;
}

void Simulation::submit_idm(MarketParty& p, std::vector<PlacedOrder> orders)
{
    if (orders.empty())
        return;
    std::vector<Order> plain;
    plain.reserve(orders.size());
    for (auto& po : orders) {
        log_.offers.push_back({now_, po.order, po.srmc, po.strategy});
        plain.push_back(std::move(po.order));
    }
    auto out = idm::match_batch(idm_book_, std::move(plain), now_, {scenario_.settings.self_match_prevention});
    ++log_.idm_clearings;
    (void)p;
    distribute(out.trades);
}

void Simulation::party_turn(MarketParty& p)
{
    refresh(p);

    // DAM: offers for every delivery day in the run whose gate is open
    for (int day = now_.day(); day <= last_step().day(); ++day) {
        const TimeStamp first(day, 1);
        const auto open = gate_index(dam_gates_.opening, first), close = gate_index(dam_gates_.closure, first);
        if (open <= now_.index() && now_.index() < close)
            place_dam_orders(p, day);
    }

    // RDM: cancel and replace
    rdm_book_.remove_if_agent(p.name());
    refresh(p);
    {
        const auto view = view_for(p);
        for (auto& po : p.rdm_orders(view)) {
            try {
                const auto id = rdm_book_.insert(po.order, now_);
                log_.offers.push_back({now_, *rdm_book_.find(id), po.srmc, po.strategy});
            } catch (const OrderRejected& e) {
                log::warn(p.name() + ": RDM order rejected: " + e.what());
            }
        }
    }
    attempt_rdm_clearing();

    // IDM: cancel and replace
    idm_book_.remove_if_agent(p.name());
    refresh(p);
    submit_idm(p, p.idm_orders(view_for(p)));

    // BEM at gate closure
    refresh(p);
    {
        auto bem = p.bem_orders(view_for(p));
        std::vector<Order> plain;
        for (const auto& po : bem)
            plain.push_back(po.order);
        const auto ids = imbalance::accept_bem_orders(bem_book_, std::move(plain), now_, bem_gates_.closure);
        for (std::size_t i = 0; i < ids.size(); ++i)
            log_.offers.push_back({now_, *bem_book_.find(ids[i]), bem[i].srmc, bem[i].strategy});
    }

    // imbalance management on the IDM
    refresh(p);
    submit_idm(p, p.imbalance_orders(view_for(p)));
    refresh(p);
}

void Simulation::attempt_rdm_clearing()
{
    for (auto& od : demands_) {
        if (!od.open)
            continue;
        const auto& d = od.demand;
        const auto gate = gate_index(rdm_gates_.closure, d.start);
        if (now_.index() > gate) {
            od.open = false;
            grid_.record_unresolved(d);
            log::warn("redispatch demand " + std::to_string(d.id) + " passed its gate unresolved");
            continue;
        }
        const bool best_effort = now_.index() == gate;
        std::vector<Order> orders;
        for (const Order* o : rdm_book_.orders()) {
            const bool fits = (o->side == Side::Sell && o->area == d.up_area) ||
                              (o->side == Side::Buy && o->area == d.down_area);
            if (fits && o->delivery_start == d.start && o->duration == d.duration())
                orders.push_back(*o);
        }
        if (orders.empty() && !best_effort)
            continue;
        ++log_.rdm_clearing_attempts;
        const auto problem = rdm::build_clearing_problem(std::span(&d, 1), orders, rdm_threshold_,
                                                         scenario_.settings.rdm_shortfall_penalty,
                                                         scenario_.settings.rdm_surplus_penalty);
        auto res = rdm::clear_rdm(problem);
        if (!res.solved)
            throw SimulationError("RDM clearing failed at " + now_.str() + ": " + res.failure);
        if (res.under_procured() && !best_effort)
            continue;
        auto trades = rdm::settle_rdm(res, now_, grid_.name());
        if (rdm_uniform_) {
            std::optional<Price> up, down;
            for (const auto& t : trades) {
                if (t.buyer == grid_.name())
                    up = up ? std::max(*up, t.price) : t.price;
                else
                    down = down ? std::min(*down, t.price) : t.price;
            }
            for (auto& t : trades)
                t.price = t.buyer == grid_.name() ? *up : *down;
        }
        distribute(trades);
        for (const auto& co : res.orders)
            if (co.quantity().kw > 0)
                rdm_book_.remove(co.order.id);
        if (res.under_procured())
            log::warn("redispatch demand " + std::to_string(d.id) + " cleared best-effort with " +
                      format_mw(res.total_under()) + " MW-ISP under-procured");
        grid_.record_commit({now_, d, std::move(res), best_effort});
        od.open = false;
    }
    std::erase_if(demands_, [](const OpenDemand& d) { return !d.open; });
}

void Simulation::grid_operator_turn()
{
    for (auto& d : grid_.new_demands(now_)) {
        log_.demands.push_back(d);
        if (now_.index() > gate_index(rdm_gates_.closure, d.start)) {
            log::warn("redispatch demand " + std::to_string(d.id) + " identified after its gate closure");
            grid_.record_unresolved(d);
            continue;
        }
        demands_.push_back({d, true});
    }
    attempt_rdm_clearing();

    const TimeStamp to = horizon_end_ && *horizon_end_ > now_ ? *horizon_end_ : now_;
    for (auto& diag : grid::check_consistency(now_, parties_, [this](TimeStamp t) { return dam_load(t); },
                                              grid_.commits(), now_, to)) {
        log::warn("consistency: " + diag.detail);
        log_.diagnostics.push_back(std::move(diag));
    }
    auto& rec = log_.isps.back();
    rec.induced = grid::induced_imbalance(grid_.commits(), now_);
    rec.system_imbalance = grid::system_imbalance(parties_, grid_.commits(), now_);
}

void Simulation::snapshot()
{
    for (const auto& [day, offers] : dam_pending_)
        for (const auto& o : offers)
            log_.snapshots.push_back({now_, o});
    for (const OrderBook* b : {&idm_book_, &rdm_book_, &bem_book_})
        for (const Order* o : b->orders())
            log_.snapshots.push_back({now_, *o});
    for (const auto& od : demands_) {
        Order up, down;
        up.agent = down.agent = grid_.name();
        up.market = down.market = Market::RDM;
        up.side = Side::Buy;
        up.area = od.demand.up_area;
        down.side = Side::Sell;
        down.area = od.demand.down_area;
        for (Order* o : {&up, &down}) {
            o->quantity = o->remaining = od.demand.quantity;
            o->delivery_start = od.demand.start;
            o->duration = od.demand.duration();
            o->kind = OrderKind::AllOrNoneBlock;
            o->placed = now_;
            log_.snapshots.push_back({now_, *o});
        }
    }
}

} // namespace asam
