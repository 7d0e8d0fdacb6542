#pragma once

#include "asam/order.hpp"

#include <optional>
#include <span>
#include <vector>

namespace asam::idm {

struct MatchOptions {
    /// An incoming order that would cross a resting order of the same agent
    /// is cancelled for its remaining quantity.
    bool self_match_prevention = true;
};

struct MatchOutcome {
    std::vector<Transaction> trades;
    std::vector<std::uint64_t> rested;    // ids of incoming orders left in the book
    std::vector<std::uint64_t> cancelled; // ids of incoming orders dropped (IOC or self-match)
};

/// Continuous matching of one incoming order against the book. The incoming
/// order is stamped by the book first, so every resting order is older and
/// sets the trade price.
MatchOutcome match(OrderBook& book, Order incoming, TimeStamp now, MatchOptions opts = {});

/// Matches an agent's order set, most aggressive first: sells by ascending
/// price, then buys by descending price (market orders lead each side).
MatchOutcome match_batch(OrderBook& book, std::vector<Order> incoming, TimeStamp now, MatchOptions opts = {});

/// Quantity-weighted mean price of trades delivering in `delivery`; empty when
/// there are none.
std::optional<double> weighted_mean_price(std::span<const Transaction> trades, TimeStamp delivery);

} // namespace asam::idm
