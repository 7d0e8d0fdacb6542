#pragma once

#include "asam/order.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace asam::imbalance {

class ImbalanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exogenous distribution of balancing control states.
struct ControlStateDistribution {
    std::vector<int> states;
    std::vector<double> weights;

    /// Throws ImbalanceError when empty, negative or not summing to 1.
    void validate() const;
    /// Four-state convention (-1, 0, 1, 2).
    static ControlStateDistribution dutch_default();
};

int sample_control_state(const ControlStateDistribution& dist, std::mt19937_64& rng);

enum class Regime { FixedSingle, ConditionalTable };
Regime parse_regime(const std::string& pricing_method);

struct PriceEntry {
    double dam_bin_low = 0.0;
    int control_state = 0;
    Price short_price;
    Price long_price;
    double weight = 1.0;
};

/// Empirical (short, long) price distribution keyed by DAM price bin and
/// control state.
class PriceTable {
public:
    explicit PriceTable(double bin_width = 10.0) : bin_width_(bin_width) {}

    void add(PriceEntry e);
    double bin_of(double dam_price) const;
    /// Entries for a key; throws ImbalanceError when the key is unseen.
    const std::vector<PriceEntry>& lookup(double dam_price, int control_state) const;
    const std::vector<PriceEntry>& entries() const { return all_; }
    double bin_width() const { return bin_width_; }

private:
    double bin_width_;
    std::vector<PriceEntry> all_;
    std::map<std::pair<long, int>, std::vector<PriceEntry>> keyed_;
};

struct Prices {
    Price short_price;
    Price long_price;
};

/// Fixed single price returns (default, default); the conditional table draws
/// one entry of the (bin, state) distribution from `rng`.
Prices price_imbalance(Regime regime, const PriceTable& table, Price default_price, std::optional<Price> dam_price,
                       int control_state, std::mt19937_64& rng);

struct Settlement {
    TimeStamp isp;
    std::string agent;
    Power imbalance; // long positive, short negative
    Price price;
    Money amount;    // received by the agent (negative = paid)
};

/// Short positions pay the short price, long positions receive the long price.
std::vector<Settlement> settle_imbalances(TimeStamp isp, const std::map<std::string, Power>& imbalances,
                                          const Prices& prices);

/// Stores balancing energy offers; the market is never cleared. Orders whose
/// gate (closure index for their delivery) has passed are rejected.
std::vector<std::uint64_t> accept_bem_orders(OrderBook& book, std::vector<Order> orders, TimeStamp now,
                                             const GateSpec& closure);

} // namespace asam::imbalance
