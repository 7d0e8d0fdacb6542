#pragma once

#include "asam/order.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asam::dam {

/// Cap on offered MW per asset and hour (generator unavailability).
using AvailabilityCaps = std::map<std::string, std::vector<Power>>;

struct HourResult {
    TimeStamp start; // first MTU of the hour
    Power load;
    std::optional<Price> price; // empty when nothing clears
    Power cleared;
    Power unserved;
    bool scarcity = false;
};

struct ClearedOrder {
    std::uint64_t order_id = 0;
    std::string agent;
    std::string asset;
    TimeStamp hour_start;
    Price offer_price;
    Power offered;
    Power cleared;
};

struct DamResult {
    int day = 0;
    std::vector<HourResult> hours;       // 24 entries
    std::vector<ClearedOrder> orders;    // one per offer, hour order then merit order
};

/// Single-sided hourly merit-order auction against the residual load. Offers
/// are one-hour sell orders (delivery_start on an hour boundary, duration 4).
/// The marginal offer may clear partially; ties in price go by init_time.
DamResult clear_dam(std::span<const Order> offers, int day, std::span<const Power> hourly_load,
                    const AvailabilityCaps& caps = {});

/// One transaction per cleared offer per hour at that hour's uniform price.
/// The buyer is the exogenous load aggregate `load_name`.
std::vector<Transaction> settle_dam(const DamResult& result, TimeStamp now, const std::string& load_name = "load");

} // namespace asam::dam
