#include "asam/grid_operator.hpp"

#include <stdexcept>

namespace asam::grid {

std::vector<rdm::RedispatchDemand> identify_congestion(std::span<const CongestionRecord> records, TimeStamp now)
{
    std::vector<rdm::RedispatchDemand> out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.identification > now || r.end < now)
            continue;
        rdm::RedispatchDemand d;
        d.id = i + 1;
        d.quantity = Power::from_mw(r.quantity);
        d.down_area = r.down_area;
        d.up_area = r.up_area;
        d.start = r.start;
        d.end = r.end;
        try {
            rdm::validate(d);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("congestion record " + std::to_string(i + 1) + ": " + e.what());
        }
        out.push_back(std::move(d));
    }
    return out;
}

Power induced_imbalance(std::span<const RdmCommit> commits, TimeStamp t)
{
    Power s;
    for (const auto& c : commits) {
        const auto k = t.minus(c.result.t0);
        if (k >= 0 && k < static_cast<std::int64_t>(c.result.induced.size()))
            s += c.result.induced[k];
    }
    return s;
}

Power system_imbalance(std::span<const MarketParty> parties, std::span<const RdmCommit> commits, TimeStamp isp)
{
    Power s = induced_imbalance(commits, isp);
    for (const auto& p : parties)
        s += p.imbalance(isp);
    return s;
}

std::vector<Diagnostic> check_consistency(TimeStamp now, std::span<const MarketParty> parties,
                                          const std::function<Power(TimeStamp)>& dam_load,
                                          std::span<const RdmCommit> commits, TimeStamp from, TimeStamp to)
{
    std::vector<Diagnostic> out;
    for (TimeStamp t = from; t <= to; t = advance(t)) {
        Power idm, dam, rdm_pos;
        for (const auto& p : parties) {
            idm += p.position(Market::IDM, t);
            dam += p.position(Market::DAM, t);
            rdm_pos += p.position(Market::RDM, t);
        }
        if (idm.kw != 0)
            out.push_back({now, "idm_balance", t.str() + ": IDM positions sum to " + format_mw(idm) + " MW"});
        const Power load = dam_load ? dam_load(t) : Power{};
        if ((dam + load).kw != 0)
            out.push_back({now, "dam_load", t.str() + ": DAM positions " + format_mw(dam) + " MW vs load " +
                                                format_mw(load) + " MW"});
        // agents sell upward (negative) and buy downward (positive) redispatch
        Power expected;
        for (const auto& c : commits) {
            const auto k = t.minus(c.result.t0);
            if (k < 0 || k >= c.result.horizon)
                continue;
            for (const auto& co : c.result.orders)
                expected += co.order.side == Side::Sell ? -co.per_mtu[k] : co.per_mtu[k];
        }
        if (expected != rdm_pos)
            out.push_back({now, "rdm_transactions", t.str() + ": RDM positions " + format_mw(rdm_pos) +
                                                        " MW vs cleared " + format_mw(expected) + " MW"});
    }
    return out;
}

GridOperator::GridOperator(std::string name, std::vector<CongestionRecord> congestions)
    : name_(std::move(name)), congestions_(std::move(congestions)), requested_(congestions_.size(), false)
{
}

std::vector<rdm::RedispatchDemand> GridOperator::new_demands(TimeStamp now)
{
    std::vector<rdm::RedispatchDemand> out;
    for (auto& d : identify_congestion(congestions_, now)) {
        if (requested_[d.id - 1])
            continue;
        requested_[d.id - 1] = true;
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace asam::grid
