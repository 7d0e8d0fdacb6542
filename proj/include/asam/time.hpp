#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asam {

/// Simulation clock position: day >= 1 and MTU in 1..96 (one MTU = one ISP).
class TimeStamp {
public:
    constexpr TimeStamp() = default;
    TimeStamp(int day, int mtu);

    int day() const { return day_; }
    int mtu() const { return mtu_; }

    /// Absolute ISP index, 0 for (1,1).
    std::int64_t index() const { return static_cast<std::int64_t>(day_ - 1) * 96 + (mtu_ - 1); }
    static TimeStamp from_index(std::int64_t idx);

    TimeStamp plus(std::int64_t isps) const { return from_index(index() + isps); }
    std::int64_t minus(TimeStamp other) const { return index() - other.index(); }

    friend auto operator<=>(const TimeStamp&, const TimeStamp&) = default;

    std::string str() const;

private:
    int day_ = 1;
    int mtu_ = 1;
};

/// Lexicographic successor: (d,96) -> (d+1,1).
TimeStamp advance(TimeStamp t);

/// Schedules horizon: from the current step to the last delivery MTU of the
/// latest cleared day-ahead auction.
struct ScheduleHorizon {
    TimeStamp current;
    std::optional<TimeStamp> end;

    /// Number of ISPs strictly after `current` up to and including `end`.
    std::int64_t remaining() const { return end ? std::max<std::int64_t>(0, end->minus(current)) : 0; }
};

/// Relative gate time as used in market rules.
struct GateSpec {
    enum class Kind { DayBefore, MtuBefore, DeliveryMtu, EveryMtu };
    Kind kind = Kind::DeliveryMtu;
    int value = 0; // MTU of day D-1 for DayBefore, offset k for MtuBefore

    std::string str() const;
};

class GateSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "D-1, MTU 45", "MTU-3", "deliveryMTU" and "MTU".
GateSpec parse_gate_spec(std::string_view text);

/// Absolute ISP index of a gate for the given delivery MTU. May be negative
/// when the gate lies before day 1 (e.g. "D-1" for day 1 deliveries).
std::int64_t gate_index(const GateSpec& spec, TimeStamp delivery);

/// Absolute time of a gate; throws GateSpecError when it falls before day 1.
TimeStamp resolve_gate(const GateSpec& spec, TimeStamp delivery);

/// parse + resolve in one call.
TimeStamp parse_gate_spec(std::string_view text, TimeStamp delivery);

} // namespace asam
