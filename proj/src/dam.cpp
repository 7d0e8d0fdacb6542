#include "asam/dam.hpp"

#include "asam/log.hpp"

#include <algorithm>
#include <stdexcept>

namespace asam::dam {

DamResult clear_dam(std::span<const Order> offers, int day, std::span<const Power> hourly_load, const AvailabilityCaps& caps)
{
    if (hourly_load.size() != 24)
        throw std::invalid_argument("DAM load needs 24 hourly values");
    DamResult res;
    res.day = day;
    for (int h = 0; h < 24; ++h) {
        const TimeStamp start(day, h * kMtusPerHour + 1);
        const Power load = hourly_load[h];
        if (load.kw < 0)
            throw std::invalid_argument("negative residual load in hour " + std::to_string(h));

        std::vector<const Order*> hour_offers;
        for (const auto& o : offers) {
            if (o.side != Side::Sell || !o.price)
                throw std::invalid_argument("DAM accepts priced sell offers only");
            if (o.delivery_start == start)
                hour_offers.push_back(&o);
        }
        std::stable_sort(hour_offers.begin(), hour_offers.end(),
                         [](const Order* a, const Order* b) { return ranks_before(*a, *b); });

        HourResult hr{start, load, std::nullopt, Power{}, Power{}, false};
        Power left = load;
        for (const Order* o : hour_offers) {
            Power offered = o->quantity;
            if (auto it = caps.find(o->asset); it != caps.end() && static_cast<int>(it->second.size()) > h)
                offered = max(Power{}, min(offered, it->second[h]));
            const Power take = min(offered, left);
            left -= take;
            if (take.kw > 0) {
                hr.cleared += take;
                hr.price = *o->price;
            }
            res.orders.push_back({o->id, o->agent, o->asset, start, *o->price, offered, take});
        }
        if (left.kw > 0 && load.kw > 0) {
            hr.unserved = left;
            hr.scarcity = true;
            log::warn("DAM scarcity on day " + std::to_string(day) + " hour " + std::to_string(h) + ": unserved " +
                      format_mw(left) + " MW");
        }
        res.hours.push_back(hr);
    }
    return res;
}

std::vector<Transaction> settle_dam(const DamResult& result, TimeStamp now, const std::string& load_name)
{
    std::vector<Transaction> out;
    for (const auto& c : result.orders) {
        if (c.cleared.kw == 0)
            continue;
        const int h = (c.hour_start.mtu() - 1) / kMtusPerHour;
        Transaction t;
        t.market = Market::DAM;
        t.time = now;
        t.delivery = c.hour_start;
        t.duration = kMtusPerHour;
        t.buyer = load_name;
        t.seller = c.agent;
        t.seller_asset = c.asset;
        t.sell_order = c.order_id;
        t.price = *result.hours[h].price;
        t.quantity = c.cleared;
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace asam::dam
