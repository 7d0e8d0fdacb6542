#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace asam {

/// Length of one imbalance settlement period in hours.
inline constexpr double kIspHours = 0.25;
inline constexpr int kMtusPerDay = 96;
inline constexpr int kMtusPerHour = 4;

namespace detail {
inline std::int64_t round_half_away(double v)
{
    return static_cast<std::int64_t>(std::llround(v));
}
} // namespace detail

/// Price in EUR/MWh held as an exact count of euro cents.
struct Price {
    std::int64_t cents = 0;

    static Price from_eur(double eur) { return Price{detail::round_half_away(eur * 100.0)}; }
    double eur() const { return static_cast<double>(cents) / 100.0; }

    friend auto operator<=>(const Price&, const Price&) = default;
    friend Price operator+(Price a, Price b) { return Price{a.cents + b.cents}; }
    friend Price operator-(Price a, Price b) { return Price{a.cents - b.cents}; }
};

/// Power in MW held as an exact count of kW. Energy over one ISP is implied.
struct Power {
    std::int64_t kw = 0;

    static Power from_mw(double mw) { return Power{detail::round_half_away(mw * 1000.0)}; }
    double mw() const { return static_cast<double>(kw) / 1000.0; }
    /// Energy delivered over one ISP at this power.
    double mwh_per_isp() const { return static_cast<double>(kw) / 4000.0; }
    bool is_zero() const { return kw == 0; }

    friend auto operator<=>(const Power&, const Power&) = default;
    friend Power operator+(Power a, Power b) { return Power{a.kw + b.kw}; }
    friend Power operator-(Power a, Power b) { return Power{a.kw - b.kw}; }
    friend Power operator-(Power a) { return Power{-a.kw}; }
    Power& operator+=(Power o) { kw += o.kw; return *this; }
    Power& operator-=(Power o) { kw -= o.kw; return *this; }
};

inline Power min(Power a, Power b) { return a < b ? a : b; }
inline Power max(Power a, Power b) { return a < b ? b : a; }
inline Power abs(Power a) { return Power{a.kw < 0 ? -a.kw : a.kw}; }

/// Money as an exact integer in units of 1 cent x 1 kW x 1 ISP (= 2.5e-6 EUR).
struct Money {
    std::int64_t units = 0;

    /// Value of trading `p` at `price` for one ISP.
    static Money of(Price price, Power p) { return Money{price.cents * p.kw}; }
    double eur() const { return static_cast<double>(units) / 400000.0; }

    friend auto operator<=>(const Money&, const Money&) = default;
    friend Money operator+(Money a, Money b) { return Money{a.units + b.units}; }
    friend Money operator-(Money a, Money b) { return Money{a.units - b.units}; }
    friend Money operator-(Money a) { return Money{-a.units}; }
    Money& operator+=(Money o) { units += o.units; return *this; }
};

/// Energy as an exact integer count of kW x ISP (= 0.25 kWh).
struct Energy {
    std::int64_t kw_isp = 0;

    static Energy of(Power p, std::int64_t isps = 1) { return Energy{p.kw * isps}; }
    double mwh() const { return static_cast<double>(kw_isp) / 4000.0; }

    friend auto operator<=>(const Energy&, const Energy&) = default;
    friend Energy operator+(Energy a, Energy b) { return Energy{a.kw_isp + b.kw_isp}; }
    Energy& operator+=(Energy o) { kw_isp += o.kw_isp; return *this; }
};

std::string format_price(Price p);
std::string format_mw(Power p);
std::string format_fixed(double v, int decimals);

} // namespace asam
