#include "asam/time.hpp"
#include "asam/units.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace asam {

TimeStamp::TimeStamp(int day, int mtu) : day_(day), mtu_(mtu)
{
    if (day < 1 || mtu < 1 || mtu > kMtusPerDay)
        throw std::invalid_argument("invalid time stamp (" + std::to_string(day) + "," +
                                    std::to_string(mtu) + ")");
}

TimeStamp TimeStamp::from_index(std::int64_t idx)
{
    if (idx < 0)
        throw std::invalid_argument("time stamp before day 1");
    return TimeStamp(static_cast<int>(idx / kMtusPerDay) + 1, static_cast<int>(idx % kMtusPerDay) + 1);
}

std::string TimeStamp::str() const
{
    return "(" + std::to_string(day_) + "," + std::to_string(mtu_) + ")";
}

TimeStamp advance(TimeStamp t)
{
    if (t.mtu() == kMtusPerDay)
        return TimeStamp(t.day() + 1, 1);
    return TimeStamp(t.day(), t.mtu() + 1);
}

std::string GateSpec::str() const
{
    switch (kind) {
    case Kind::DayBefore: return "D-1, MTU " + std::to_string(value);
    case Kind::MtuBefore: return "MTU-" + std::to_string(value);
    case Kind::DeliveryMtu: return "deliveryMTU";
    case Kind::EveryMtu: return "MTU";
    }
    return {};
}

namespace {

std::string compact(std::string_view text)
{
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_')
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

int parse_int(std::string_view s, std::string_view original)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw GateSpecError("cannot parse gate time '" + std::string(original) + "'");
    return v;
}

} // namespace

GateSpec parse_gate_spec(std::string_view text)
{
    const std::string c = compact(text);
    if (c == "deliverymtu")
        return {GateSpec::Kind::DeliveryMtu, 0};
    if (c == "mtu")
        return {GateSpec::Kind::EveryMtu, 0};
    if (c.rfind("d-1,mtu", 0) == 0) {
        int mtu = parse_int(std::string_view(c).substr(7), text);
        if (mtu < 1 || mtu > kMtusPerDay)
            throw GateSpecError("gate MTU out of range in '" + std::string(text) + "'");
        return {GateSpec::Kind::DayBefore, mtu};
    }
    if (c.rfind("mtu-", 0) == 0) {
        int k = parse_int(std::string_view(c).substr(4), text);
        if (k < 0)
            throw GateSpecError("negative gate offset in '" + std::string(text) + "'");
        return {GateSpec::Kind::MtuBefore, k};
    }
    throw GateSpecError("unrecognized gate time '" + std::string(text) + "'");
}

std::int64_t gate_index(const GateSpec& spec, TimeStamp delivery)
{
    switch (spec.kind) {
    case GateSpec::Kind::DayBefore:
        return static_cast<std::int64_t>(delivery.day() - 2) * kMtusPerDay + (spec.value - 1);
    case GateSpec::Kind::MtuBefore:
        return delivery.index() - spec.value;
    case GateSpec::Kind::DeliveryMtu:
    case GateSpec::Kind::EveryMtu:
        return delivery.index();
    }
    return delivery.index();
}

TimeStamp resolve_gate(const GateSpec& spec, TimeStamp delivery)
{
    const auto idx = gate_index(spec, delivery);
    if (idx < 0)
        throw GateSpecError("gate '" + spec.str() + "' for delivery " + delivery.str() +
                            " lies before day 1");
    return TimeStamp::from_index(idx);
}

TimeStamp parse_gate_spec(std::string_view text, TimeStamp delivery)
{
    return resolve_gate(parse_gate_spec(text), delivery);
}

std::string format_fixed(double v, int decimals)
{
    if (v == 0.0)
        v = 0.0; // drop negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s[0] == '-') {
        bool all_zero = true;
        for (char c : s.substr(1))
            if (c != '0' && c != '.')
                all_zero = false;
        if (all_zero)
            s.erase(0, 1);
    }
    return s;
}

std::string format_price(Price p)
{
    return format_fixed(p.eur(), 2);
}

std::string format_mw(Power p)
{
    return format_fixed(p.mw(), 3);
}

} // namespace asam
