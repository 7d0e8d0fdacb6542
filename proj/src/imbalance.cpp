#include "asam/imbalance.hpp"

#include "asam/rng.hpp"

#include <cmath>
#include <numeric>

namespace asam::imbalance {

void ControlStateDistribution::validate() const
{
    if (states.empty() || states.size() != weights.size())
        throw ImbalanceError("control-state distribution is empty or malformed");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw ImbalanceError("control-state weight must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ImbalanceError("control-state weights sum to " + format_fixed(sum, 6) + ", expected 1");
}

ControlStateDistribution ControlStateDistribution::dutch_default()
{
    return {{-1, 0, 1, 2}, {0.25, 0.45, 0.25, 0.05}};
}

int sample_control_state(const ControlStateDistribution& dist, std::mt19937_64& rng)
{
    dist.validate();
    return dist.states[weighted_index(rng, dist.weights)];
}

Regime parse_regime(const std::string& m)
{
    if (m == "Dutch_IB_pricing" || m == "conditional_table")
        return Regime::ConditionalTable;
    if (m == "fixed_single_price" || m == "fixed_single" || m == "fixed single price")
        return Regime::FixedSingle;
    throw ImbalanceError("unknown imbalance pricing method '" + m + "'");
}

double PriceTable::bin_of(double dam_price) const { return std::floor(dam_price / bin_width_) * bin_width_; }

void PriceTable::add(PriceEntry e)
{
    if (!(e.weight > 0.0))
        throw ImbalanceError("imbalance price entry weight must be positive");
    const long key = std::lround(bin_of(e.dam_bin_low) / bin_width_);
    keyed_[{key, e.control_state}].push_back(e);
    all_.push_back(e);
}

const std::vector<PriceEntry>& PriceTable::lookup(double dam_price, int control_state) const
{
    const long key = std::lround(bin_of(dam_price) / bin_width_);
    auto it = keyed_.find({key, control_state});
    if (it == keyed_.end())
        throw ImbalanceError("no imbalance prices for DAM bin " + format_fixed(bin_of(dam_price), 2) +
                             " and control state " + std::to_string(control_state));
    return it->second;
}

Prices price_imbalance(Regime regime, const PriceTable& table, Price default_price, std::optional<Price> dam_price,
                       int control_state, std::mt19937_64& rng)
{
    if (regime == Regime::FixedSingle)
        return {default_price, default_price};
    if (!dam_price)
        throw ImbalanceError("conditional imbalance pricing needs a DAM price");
    const auto& entries = table.lookup(dam_price->eur(), control_state);
    std::vector<double> w;
    w.reserve(entries.size());
    for (const auto& e : entries)
        w.push_back(e.weight);
    const auto& e = entries[weighted_index(rng, w)];
    return {e.short_price, e.long_price};
}

std::vector<Settlement> settle_imbalances(TimeStamp isp, const std::map<std::string, Power>& imbalances,
                                          const Prices& prices)
{
    std::vector<Settlement> out;
    for (const auto& [agent, imb] : imbalances) {
        const Price p = imb.kw < 0 ? prices.short_price : prices.long_price;
        out.push_back({isp, agent, imb, p, Money::of(p, imb)});
    }
    return out;
}

std::vector<std::uint64_t> accept_bem_orders(OrderBook& book, std::vector<Order> orders, TimeStamp now,
                                             const GateSpec& closure)
{
    std::vector<std::uint64_t> ids;
    for (auto& o : orders) {
        if (now.index() > gate_index(closure, o.delivery_start))
            throw OrderRejected("BEM order for " + o.delivery_start.str() + " after gate closure");
        ids.push_back(book.insert(std::move(o), now));
    }
    return ids;
}

} // namespace asam::imbalance
