#include "asam/market_party.hpp"

#include "asam/log.hpp"
#include "asam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asam {

namespace {

constexpr std::int64_t kNoLimitKw = std::numeric_limits<std::int64_t>::max() / 4;

Power scaled(double pu, Power pnom)
{
    if (!std::isfinite(pu))
        return Power{kNoLimitKw};
    return Power{std::llround(pu * static_cast<double>(pnom.kw))};
}

Price price_of(double eur) { return Price::from_eur(eur); }

} // namespace

Capacity available_capacity(Power pnom, double p_max_pu, double p_min_pu, double ramp_up, double ramp_down,
                            Power sd_prev, Power sd, Power sd_next)
{
    Capacity c;
    c.av_up = scaled(p_max_pu, pnom) - sd;
    c.av_down = sd - scaled(p_min_pu, pnom);
    const Power ru = scaled(ramp_up, pnom);
    const Power rd = scaled(ramp_down, pnom);
    c.rr_up = max(min(min(ru - (sd - sd_prev), ru - (sd_next - sd)), c.av_up), Power{});
    c.rr_down = max(min(min(rd - (sd_prev - sd), rd - (sd - sd_next)), c.av_down), Power{});
    return c;
}

double risk_markup(double exp_risk_price, double exp_risk_quantity_mwh, double offer_quantity_mwh)
{
    if (!(offer_quantity_mwh > 0.0))
        throw std::invalid_argument("mark-up needs a positive offer quantity");
    return exp_risk_price * exp_risk_quantity_mwh / offer_quantity_mwh;
}

double ramp_energy_mwh(double q_mw, double ramp_mw)
{
    if (!(ramp_mw > 0.0) || !std::isfinite(ramp_mw))
        return 0.0;
    double e = 0.0;
    for (int i = 1; q_mw - i * ramp_mw > 0.0; ++i)
        e += (q_mw - i * ramp_mw) * kIspHours;
    return e;
}

bool Gates::open_for(TimeStamp delivery, TimeStamp now) const
{
    const auto n = now.index();
    return gate_index(opening, delivery) <= n && n <= gate_index(closure, delivery);
}

double Gates::remaining_fraction(TimeStamp delivery, TimeStamp now) const
{
    const auto open = gate_index(opening, delivery);
    const auto close = gate_index(closure, delivery);
    if (close <= open)
        return 1.0;
    const double r = static_cast<double>(close - now.index()) / static_cast<double>(close - open);
    return std::clamp(r, 0.0, 1.0);
}

RdmMarkups parse_rdm_markups(const std::string& pricing_strategy)
{
    const auto s = canonical_name(pricing_strategy);
    if (s == "all_markup" || s == "all_markups" || s == "all_mark_ups")
        return {true, true, true};
    if (s == "srmc")
        return {};
    if (s == "opportunity_mark_up")
        return {true, false, false};
    if (s == "ramping_mark_up")
        return {false, true, false};
    if (s == "start_stop_mark_up")
        return {false, false, true};
    throw ScenarioError("RDM pricing strategy '" + pricing_strategy + "' is not implemented");
}

MarketParty::MarketParty(std::string name, std::vector<Asset> assets, StrategyConfig strategy, Settings settings)
    : name_(std::move(name)), assets_(std::move(assets)), strategy_(std::move(strategy)), settings_(settings),
      sched_(assets_.size())
{
}

std::size_t MarketParty::asset_index(const std::string& asset) const
{
    for (std::size_t i = 0; i < assets_.size(); ++i)
        if (assets_[i].name == asset)
            return i;
    throw std::invalid_argument(name_ + " does not own asset '" + asset + "'");
}

void MarketParty::grow(std::int64_t last)
{
    if (last < 0)
        return;
    const auto n = static_cast<std::size_t>(last + 1);
    if (slots_.size() < n) {
        slots_.resize(n);
        for (auto& s : sched_)
            s.resize(n);
    }
}

void MarketParty::extend_horizon(TimeStamp end)
{
    if (!horizon_end_ || *horizon_end_ < end)
        horizon_end_ = end;
    grow(end.index());
    dirty_ = true;
}

std::optional<TimeStamp> MarketParty::horizon_end() const { return horizon_end_; }

Power MarketParty::position(Market m, TimeStamp t) const
{
    const auto i = idx(t);
    return i < static_cast<std::int64_t>(slots_.size()) ? slots_[i].tp[static_cast<int>(m)] : Power{};
}

Power MarketParty::total_position(TimeStamp t) const
{
    const auto i = idx(t);
    if (i >= static_cast<std::int64_t>(slots_.size()))
        return {};
    Power s;
    for (auto p : slots_[i].tp)
        s += p;
    return s;
}

Power MarketParty::forecast_error(TimeStamp t) const
{
    const auto i = idx(t);
    return i < static_cast<std::int64_t>(slots_.size()) ? slots_[i].fe : Power{};
}

Power MarketParty::dispatch(std::size_t asset, TimeStamp t) const
{
    const auto i = idx(t);
    const auto& s = sched_.at(asset);
    return i < static_cast<std::int64_t>(s.size()) ? s[i].sd : Power{};
}

bool MarketParty::committed(std::size_t asset, TimeStamp t) const
{
    const auto i = idx(t);
    const auto& s = sched_.at(asset);
    return i < static_cast<std::int64_t>(s.size()) && s[i].on;
}

std::optional<Power> MarketParty::dispatch_floor(std::size_t asset, TimeStamp t) const
{
    const auto i = idx(t);
    const auto& s = sched_.at(asset);
    return i < static_cast<std::int64_t>(s.size()) ? s[i].floor : std::nullopt;
}

std::optional<Power> MarketParty::dispatch_cap(std::size_t asset, TimeStamp t) const
{
    const auto i = idx(t);
    const auto& s = sched_.at(asset);
    return i < static_cast<std::int64_t>(s.size()) ? s[i].cap : std::nullopt;
}

Power MarketParty::total_dispatch(TimeStamp t) const
{
    Power s;
    for (std::size_t a = 0; a < assets_.size(); ++a)
        s += dispatch(a, t);
    return s;
}

Power MarketParty::imbalance(TimeStamp t) const { return total_dispatch(t) + total_position(t) + forecast_error(t); }

void MarketParty::apply_transaction(const Transaction& tr)
{
    const bool buyer = tr.buyer == name_;
    const bool seller = tr.seller == name_;
    if (!buyer && !seller)
        return;
    if (buyer && seller)
        throw std::invalid_argument(name_ + " cannot trade with itself");
    const Power signed_q = buyer ? tr.quantity : -tr.quantity;
    grow(tr.delivery.plus(tr.duration - 1).index());
    for (int k = 0; k < tr.duration; ++k)
        slots_[idx(tr.delivery.plus(k))].tp[static_cast<int>(tr.market)] += signed_q;

    if (tr.market == Market::RDM) {
        const auto a = asset_index(buyer ? tr.buyer_asset : tr.seller_asset);
        const Asset& as = assets_[a];
        for (int k = 0; k < tr.duration; ++k) {
            const TimeStamp t = tr.delivery.plus(k);
            AssetSlot& s = sched_[a][idx(t)];
            if (seller) {
                s.floor = (s.floor ? *s.floor : s.sd) + tr.quantity;
                const Power top = s.cap ? min(*s.cap, Power::from_mw(as.pmax)) : Power::from_mw(as.pmax);
                if (*s.floor > top)
                    throw DispatchError(name_ + ": upward redispatch on " + as.name + " at " + t.str() +
                                        " needs " + format_mw(*s.floor) + " MW above the " + format_mw(top) +
                                        " MW limit");
            } else {
                s.cap = (s.cap ? *s.cap : s.sd) - tr.quantity;
                if (s.cap->kw < 0 || (s.floor && *s.floor > *s.cap))
                    throw DispatchError(name_ + ": downward redispatch on " + as.name + " at " + t.str() +
                                        " leaves a negative dispatch cap");
            }
        }
    }
    dirty_ = true;
}

void MarketParty::add_forecast_error(const ForecastErrorRecord& fe)
{
    grow(fe.end.index());
    for (TimeStamp t = fe.start; t <= fe.end; t = advance(t)) {
        const Power dam = abs(position(Market::DAM, t));
        slots_[idx(t)].fe += Power{std::llround(fe.error_magnitude_pu * static_cast<double>(dam.kw))};
    }
    dirty_ = true;
}

void MarketParty::seed_dispatch(const dam::DamResult& result)
{
    if (history_start_ >= 0)
        return;
    const TimeStamp first(result.day, 1);
    grow(TimeStamp(result.day, kMtusPerDay).index());
    for (const auto& co : result.orders) {
        if (co.agent != name_)
            continue;
        const auto a = asset_index(co.asset);
        for (int k = 0; k < kMtusPerHour; ++k) {
            auto& s = sched_[a][idx(co.hour_start.plus(k))];
            s.sd = co.cleared;
            s.on = co.cleared.kw > 0;
        }
    }
    history_start_ = first.index();
    dirty_ = true;
}

int MarketParty::time_in_state(std::size_t a, TimeStamp now) const
{
    constexpr int kSteady = 1000000;
    if (history_start_ < 0)
        return kSteady;
    const bool on = committed(a, now);
    int k = 0;
    for (auto i = idx(now); i >= 0; --i, ++k) {
        if (i < history_start_)
            return kSteady;
        if (sched_[a][i].on != on)
            return k;
    }
    return kSteady;
}

opt::UCUnit MarketParty::make_unit(std::size_t a, TimeStamp now, int horizon) const
{
    const Asset& as = assets_[a];
    const bool ramps = strategy_.flag("ramp_limits");
    const bool costs = strategy_.flag("start_stop_costs");
    const bool times = strategy_.flag("min_up_down_time");
    opt::UCUnit u;
    u.name = as.name;
    u.pnom = as.pmax;
    u.p_min_pu.assign(horizon, as.pmin / as.pmax);
    u.p_max_pu.assign(horizon, 1.0);
    u.srmc = as.srmc;
    u.suc = costs ? as.start_up_cost : 0.0;
    u.sdc = costs ? as.shut_down_cost : 0.0;
    if (ramps) {
        u.ramp_up = as.ramp_up;
        u.ramp_down = as.ramp_down;
        u.ramp_start_up = as.ramp_start_up;
        u.ramp_shut_down = as.ramp_shut_down;
    }
    u.min_up = times ? as.min_up_time : 0;
    u.min_down = times ? as.min_down_time : 0;
    u.initial_on = committed(a, now);
    u.initial_g = dispatch(a, now).mw();
    u.initial_time_in_state = time_in_state(a, now);

    bool any_floor = false, any_cap = false;
    std::vector<double> floor(horizon, -opt::kInf), cap(horizon, opt::kInf);
    for (int k = 0; k < horizon; ++k) {
        const TimeStamp t = now.plus(k + 1);
        if (auto f = dispatch_floor(a, t)) {
            floor[k] = f->mw();
            any_floor = true;
        }
        if (auto c = dispatch_cap(a, t)) {
            cap[k] = c->mw();
            any_cap = true;
        }
    }
    if (any_floor)
        u.dispatch_floor = std::move(floor);
    if (any_cap)
        u.dispatch_cap = std::move(cap);
    return u;
}

opt::UCProblem MarketParty::dispatch_problem(TimeStamp now) const
{
    opt::UCProblem p;
    if (!horizon_end_ || *horizon_end_ <= now)
        return p;
    const int T = static_cast<int>(horizon_end_->minus(now));
    p.horizon = T;
    p.num_nodes = 1;
    p.load.assign(1, std::vector<double>(T, 0.0));
    for (int k = 0; k < T; ++k) {
        const TimeStamp t = now.plus(k + 1);
        p.load[0][k] = -(total_position(t) + forecast_error(t)).mw();
    }
    for (std::size_t a = 0; a < assets_.size(); ++a)
        p.units.push_back(make_unit(a, now, T));
    p.slack_penalty = settings_.imbalance_penalty;
    p.surplus_penalty = settings_.imbalance_penalty;
    return p;
}

void MarketParty::optimize_dispatch(TimeStamp now)
{
    if (!dirty_)
        return;
    const auto p = dispatch_problem(now);
    if (p.horizon == 0) {
        dirty_ = false;
        return;
    }
    const auto sol = opt::solve_uc(p);
    switch (sol.status) {
    case opt::UCStatus::Optimal:
        break;
    case opt::UCStatus::NodeLimit:
        log::warn(name_ + ": dispatch optimization at " + now.str() + " hit the node limit; using the best schedule found");
        break;
    case opt::UCStatus::Infeasible:
        throw DispatchError(name_ + ": dispatch optimization infeasible at " + now.str() + " (" +
                            sol.infeasible_class + ")");
    case opt::UCStatus::Failed:
        throw DispatchError(name_ + ": dispatch optimization failed at " + now.str());
    }
    for (std::size_t a = 0; a < assets_.size(); ++a)
        for (int k = 0; k < p.horizon; ++k) {
            auto& s = sched_[a][idx(now.plus(k + 1))];
            s.on = sol.u[a][k] != 0;
            s.sd = s.on ? Power::from_mw(sol.g[a][k]) : Power{};
        }
    dirty_ = false;
}

Capacity MarketParty::capacity(std::size_t a, TimeStamp t) const
{
    const Asset& as = assets_[a];
    const Power pnom = Power::from_mw(as.pmax);
    const bool on = committed(a, t);
    double pmax_pu = 0.0, pmin_pu = 0.0;
    if (on) {
        Power top = pnom, bottom = Power::from_mw(as.pmin);
        if (auto c = dispatch_cap(a, t))
            top = min(top, *c);
        if (auto f = dispatch_floor(a, t))
            bottom = max(bottom, *f);
        pmax_pu = static_cast<double>(top.kw) / static_cast<double>(pnom.kw);
        pmin_pu = static_cast<double>(bottom.kw) / static_cast<double>(pnom.kw);
    }
    const bool ramps = strategy_.flag("ramp_limits");
    const TimeStamp prev = t.index() > 0 ? t.plus(-1) : t;
    const TimeStamp next = horizon_end_ && t < *horizon_end_ ? t.plus(1) : t;
    return available_capacity(pnom, pmax_pu, pmin_pu, ramps ? as.ramp_up : opt::kInf,
                              ramps ? as.ramp_down : opt::kInf, dispatch(a, prev), dispatch(a, t), dispatch(a, next));
}

std::vector<PlacedOrder> MarketParty::dam_orders(int day, TimeStamp now, const dam::AvailabilityCaps& caps) const
{
    std::vector<PlacedOrder> out;
    for (const auto& as : assets_) {
        const auto cap_it = caps.find(as.name);
        for (int h = 0; h < 24; ++h) {
            Power q = Power::from_mw(as.pmax);
            if (cap_it != caps.end() && h < static_cast<int>(cap_it->second.size()))
                q = min(q, cap_it->second[h]);
            if (q.kw <= 0)
                continue;
            Order o;
            o.agent = name_;
            o.asset = as.name;
            o.market = Market::DAM;
            o.side = Side::Sell;
            o.price = price_of(as.srmc);
            o.quantity = o.remaining = q;
            o.delivery_start = TimeStamp(day, h * kMtusPerHour + 1);
            o.duration = kMtusPerHour;
            o.kind = OrderKind::FillOrKill;
            o.placed = now;
            out.push_back({std::move(o), price_of(as.srmc), "srmc"});
        }
    }
    return out;
}

std::vector<PlacedOrder> MarketParty::rdm_orders(const MarketView& view) const
{
    std::vector<PlacedOrder> out;
    if (!horizon_end_)
        return out;
    const auto markups = parse_rdm_markups(strategy_.get("RDM_pricing"));
    const bool ramps = strategy_.flag("ramp_limits");
    const bool times = strategy_.flag("min_up_down_time");
    const TimeStamp now = view.now;

    for (const auto& d : view.rdm_demands) {
        if (!view.rdm.open_for(d.start, now) || d.end > *horizon_end_ || d.start <= now)
            continue;
        const int dur = d.duration();
        const int lead = static_cast<int>(d.start.minus(now)) - 1;
        if (lead < 1)
            continue;
        const std::optional<Price> dam = view.dam_price ? view.dam_price(d.start) : std::nullopt;
        const double risk_price = dam ? dam->eur() : 0.0;

        for (std::size_t a = 0; a < assets_.size(); ++a) {
            const Asset& as = assets_[a];
            const bool up = as.location == d.up_area;
            const bool down = as.location == d.down_area;
            if (!up && !down)
                continue;
            bool all_on = true, all_off = true;
            Power min_up = Power{kNoLimitKw}, min_down = Power{kNoLimitKw}, min_sd = Power{kNoLimitKw};
            Power max_sd;
            bool bounded = false;
            for (TimeStamp t = d.start; t <= d.end; t = advance(t)) {
                const bool on = committed(a, t);
                all_on = all_on && on;
                all_off = all_off && !on;
                const auto c = capacity(a, t);
                min_up = min(min_up, c.av_up);
                min_down = min(min_down, c.av_down);
                min_sd = min(min_sd, dispatch(a, t));
                max_sd = max(max_sd, dispatch(a, t));
                bounded = bounded || dispatch_floor(a, t) || dispatch_cap(a, t);
            }
            const double pnom = as.pmax;
            const double ru = ramps ? as.ramp_up * pnom : opt::kInf;
            const double rd = ramps ? as.ramp_down * pnom : opt::kInf;
            const double rsu = ramps ? as.ramp_start_up * pnom : opt::kInf;
            const double rsd = ramps ? as.ramp_shut_down * pnom : opt::kInf;
            const int held = time_in_state(a, now) + lead;

            auto emit = [&](Side side, double q_mw, double ramp_mw, double start_stop_cost, const char* what) {
                const Power q = Power::from_mw(std::floor(q_mw));
                if (q.kw <= 0)
                    return;
                const double energy = q.mw() * dur * kIspHours;
                double m = 0.0;
                if (markups.opportunity && side == Side::Sell && dam)
                    m += std::max(0.0, dam->eur() - as.srmc);
                if (markups.ramping)
                    m += risk_markup(risk_price, 2.0 * ramp_energy_mwh(q.mw(), ramp_mw), energy);
                if (markups.start_stop && start_stop_cost > 0.0)
                    m += risk_markup(start_stop_cost, 1.0, energy);
                Order o;
                o.agent = name_;
                o.asset = as.name;
                o.market = Market::RDM;
                o.side = side;
                o.price = price_of(side == Side::Sell ? as.srmc + m : as.srmc - m);
                o.quantity = o.remaining = q;
                o.delivery_start = d.start;
                o.duration = dur;
                o.kind = OrderKind::AllOrNoneBlock;
                o.area = as.location;
                o.placed = now;
                out.push_back({std::move(o), price_of(as.srmc), what});
            };

            if (up && all_on) {
                const double reach = ru * lead;
                emit(Side::Sell, std::min(min_up.mw(), reach), ru, 0.0, "up");
            } else if (up && all_off && !bounded && (!times || held >= as.min_down_time)) {
                const double reach = rsu + ru * (lead - 1);
                const double q = std::min(pnom, reach);
                if (q >= as.pmin)
                    emit(Side::Sell, q, ru, strategy_.flag("start_stop_costs") ? as.start_up_cost : 0.0, "start_up");
            }
            if (down && all_on) {
                if (min_down.kw > 0) {
                    emit(Side::Buy, std::min(min_down.mw(), rd * lead), rd, 0.0, "down");
                } else if (!bounded && min_sd == max_sd && (!times || held >= as.min_up_time)) {
                    // running at its minimum: only a full stop frees capacity
                    const double reach = rsd + rd * (lead - 1);
                    if (min_sd.mw() <= reach)
                        emit(Side::Buy, min_sd.mw(), rd, strategy_.flag("start_stop_costs") ? as.shut_down_cost : 0.0,
                             "shut_down");
                }
            }
        }
    }
    return out;
}

std::optional<Price> MarketParty::best_other(const OrderBook& book, Side side, TimeStamp delivery) const
{
    for (const Order* o : book.sorted_view(side, delivery))
        if (o->agent != name_ && o->price)
            return o->price;
    return std::nullopt;
}

std::vector<PlacedOrder> MarketParty::idm_orders(const MarketView& view) const
{
    std::vector<PlacedOrder> out;
    if (!horizon_end_ || !view.rng)
        return out;
    const Price tick{std::llround(settings_.idm_tick * 100.0)};
    const Power cap_q = Power::from_mw(settings_.idm_small_random_max);
    for (TimeStamp t = advance(view.now); t <= *horizon_end_; t = advance(t)) {
        if (!view.idm.open_for(t, view.now))
            continue;
        std::optional<Price> bb, bs;
        if (view.idm_book) {
            bb = best_other(*view.idm_book, Side::Buy, t);
            bs = best_other(*view.idm_book, Side::Sell, t);
        }
        for (std::size_t a = 0; a < assets_.size(); ++a) {
            const Asset& as = assets_[a];
            const Price srmc = price_of(as.srmc);
            const auto c = capacity(a, t);
            for (Side side : {Side::Sell, Side::Buy}) {
                const Power room = min(cap_q, side == Side::Sell ? c.rr_up : c.rr_down);
                const auto max_mw = room.kw / 1000;
                if (max_mw < 1)
                    continue;
                const auto q_mw = uniform_int(*view.rng, 1, max_mw);
                Price p = srmc;
                if (side == Side::Sell) {
                    if (bb && *bb >= srmc)
                        p = *bb;
                    else if (bs && *bs - tick >= srmc)
                        p = *bs - tick;
                } else {
                    if (bs && *bs <= srmc)
                        p = *bs;
                    else if (bb && *bb + tick <= srmc)
                        p = *bb + tick;
                }
                Order o;
                o.agent = name_;
                o.asset = as.name;
                o.market = Market::IDM;
                o.side = side;
                o.price = p;
                o.quantity = o.remaining = Power::from_mw(static_cast<double>(q_mw));
                o.delivery_start = t;
                o.duration = 1;
                o.kind = OrderKind::Limit;
                o.placed = view.now;
                out.push_back({std::move(o), srmc, "small_random"});
            }
        }
    }
    return out;
}

std::vector<PlacedOrder> MarketParty::bem_orders(const MarketView& view) const
{
    std::vector<PlacedOrder> out;
    if (!horizon_end_)
        return out;
    for (TimeStamp t = advance(view.now); t <= *horizon_end_; t = advance(t)) {
        if (gate_index(view.bem.closure, t) != view.now.index())
            continue;
        for (std::size_t a = 0; a < assets_.size(); ++a) {
            if (!committed(a, t))
                continue;
            const Asset& as = assets_[a];
            const auto c = capacity(a, t);
            for (auto [side, q] : {std::pair{Side::Sell, c.rr_up}, {Side::Buy, c.rr_down}}) {
                if (q.kw <= 0)
                    continue;
                Order o;
                o.agent = name_;
                o.asset = as.name;
                o.market = Market::BEM;
                o.side = side;
                o.price = price_of(as.srmc);
                o.quantity = o.remaining = q;
                o.delivery_start = t;
                o.duration = 1;
                o.kind = OrderKind::Limit;
                o.placed = view.now;
                out.push_back({std::move(o), price_of(as.srmc), "available_ramp"});
            }
        }
    }
    return out;
}

std::vector<PlacedOrder> MarketParty::imbalance_orders(const MarketView& view) const
{
    std::vector<PlacedOrder> out;
    if (!horizon_end_)
        return out;
    for (TimeStamp t = advance(view.now); t <= *horizon_end_; t = advance(t)) {
        if (!view.idm.open_for(t, view.now))
            continue;
        const Power imb = imbalance(t);
        if (imb.kw == 0)
            continue;
        Order o;
        o.agent = name_;
        o.market = Market::IDM;
        o.side = imb.kw < 0 ? Side::Buy : Side::Sell;
        o.quantity = o.remaining = abs(imb);
        o.delivery_start = t;
        o.duration = 1;
        o.placed = view.now;
        if (gate_index(view.idm.closure, t) == view.now.index()) {
            o.kind = OrderKind::MarketOrder;
        } else {
            const auto dam = view.dam_price ? view.dam_price(t) : std::nullopt;
            const double anchor = dam ? dam->eur() : settings_.imbalance_default_price;
            const double concession = (1.0 - view.idm.remaining_fraction(t, view.now)) * settings_.idm_max_concession;
            o.kind = OrderKind::Limit;
            o.price = price_of(o.side == Side::Buy ? anchor + concession : anchor - concession);
        }
        out.push_back({std::move(o), std::nullopt, "impatience_curve"});
    }
    return out;
}

} // namespace asam
