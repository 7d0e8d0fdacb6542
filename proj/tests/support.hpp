#pragma once

#include "asam/order.hpp"
#include "asam/scenario.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace asam::test {

inline std::filesystem::path reference_dir()
{
    return std::filesystem::path(ASAM_SOURCE_DIR) / "scenarios" / "reference";
}

inline std::filesystem::path temp_dir(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / ("asam_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline Order order(Side side, std::optional<double> price, double mw, TimeStamp delivery = TimeStamp(1, 10),
                   OrderKind kind = OrderKind::Limit, std::string agent = "A", Market market = Market::IDM)
{
    Order o;
    o.agent = std::move(agent);
    o.market = market;
    o.side = side;
    if (price)
        o.price = Price::from_eur(*price);
    o.quantity = o.remaining = Power::from_mw(mw);
    o.delivery_start = delivery;
    o.kind = price ? kind : OrderKind::MarketOrder;
    return o;
}

inline Order sell(double price, double mw, std::string agent = "A", TimeStamp t = TimeStamp(1, 10))
{
    return order(Side::Sell, price, mw, t, OrderKind::Limit, std::move(agent));
}

inline Order buy(double price, double mw, std::string agent = "A", TimeStamp t = TimeStamp(1, 10))
{
    return order(Side::Buy, price, mw, t, OrderKind::Limit, std::move(agent));
}

} // namespace asam::test
