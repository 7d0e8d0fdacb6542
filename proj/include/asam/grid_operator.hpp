#pragma once

#include "asam/market_party.hpp"
#include "asam/rdm.hpp"
#include "asam/scenario.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asam::grid {

/// A committed redispatch clearing for one demand.
struct RdmCommit {
    TimeStamp time;
    rdm::RedispatchDemand demand;
    rdm::ClearingResult result;
    bool best_effort = false; // forced at gate closure
};

struct Diagnostic {
    TimeStamp time;
    std::string check;
    std::string detail;
};

/// Congestions identified at or before `now` whose window has not ended.
/// Record ids are 1-based positions in `records`.
std::vector<rdm::RedispatchDemand> identify_congestion(std::span<const CongestionRecord> records, TimeStamp now);

/// Per-MTU bookkeeping checks: IDM positions net to zero across agents, DAM
/// positions equal minus the exogenous load, and RDM positions match the
/// committed clearings. One diagnostic per violated (check, MTU).
std::vector<Diagnostic> check_consistency(TimeStamp now, std::span<const MarketParty> parties,
                                          const std::function<Power(TimeStamp)>& dam_load,
                                          std::span<const RdmCommit> commits, TimeStamp from, TimeStamp to);

/// Induced imbalance at t (sum of upward minus downward redispatch).
Power induced_imbalance(std::span<const RdmCommit> commits, TimeStamp t);

/// Realized agent imbalances plus the redispatch-induced imbalance at `isp`.
Power system_imbalance(std::span<const MarketParty> parties, std::span<const RdmCommit> commits, TimeStamp isp);

class GridOperator {
public:
    GridOperator(std::string name, std::vector<CongestionRecord> congestions);

    const std::string& name() const { return name_; }

    /// Demands identified this step that were not requested before.
    std::vector<rdm::RedispatchDemand> new_demands(TimeStamp now);

    void record_commit(RdmCommit c) { commits_.push_back(std::move(c)); }
    void record_unresolved(rdm::RedispatchDemand d) { unresolved_.push_back(std::move(d)); }

    const std::vector<RdmCommit>& commits() const { return commits_; }
    const std::vector<rdm::RedispatchDemand>& unresolved() const { return unresolved_; }
    const std::vector<CongestionRecord>& congestions() const { return congestions_; }

private:
    std::string name_;
    std::vector<CongestionRecord> congestions_;
    std::vector<bool> requested_;
    std::vector<RdmCommit> commits_;
    std::vector<rdm::RedispatchDemand> unresolved_;
};

} // namespace asam::grid
