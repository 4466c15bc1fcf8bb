/*
   Copyright 2026 The Airdrop Gas Toolkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cost_model.hpp"
#include "gas_schedule.hpp"
#include "strategy.hpp"

namespace airdrop {

namespace detail {

/// Parses a non-negative decimal with up to 9 fractional digits into
/// nano-units, exactly.
inline std::int64_t parse_nano(const std::string& text) {
    auto dot = text.find('.');
    std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    if (whole.empty() || frac.size() > 9) {
        throw std::invalid_argument("malformed decimal: " + text);
    }
    for (char c : whole + frac) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("malformed decimal: " + text);
        }
    }
    frac.resize(9, '0');
    return std::stoll(whole) * 1'000'000'000LL + std::stoll(frac);
}

inline std::string format_nano(std::int64_t nano) {
    std::string out = std::to_string(nano / 1'000'000'000LL);
    std::int64_t frac = nano % 1'000'000'000LL;
    if (frac != 0) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%09lld", static_cast<long long>(frac));
        std::string digits = buf;
        while (digits.back() == '0') digits.pop_back();
        out += '.' + digits;
    }
    return out;
}

inline void check_date(const std::string& date) {
    bool ok = date.size() == 10 && date[4] == '-' && date[7] == '-';
    for (std::size_t i = 0; ok && i < date.size(); ++i) {
        if (i == 4 || i == 7) continue;
        ok = std::isdigit(static_cast<unsigned char>(date[i])) != 0;
    }
    if (ok) {
        int month = std::stoi(date.substr(5, 2));
        int day = std::stoi(date.substr(8, 2));
        ok = month >= 1 && month <= 12 && day >= 1 && day <= 31;
    }
    if (!ok) throw std::invalid_argument("malformed date (want YYYY-MM-DD): " + date);
}

}  // namespace detail

/// One day of price data. Prices are stored in nano-units (1e-9) so series
/// round-trip exactly through the text format.
struct PricePoint {
    std::string date;            // YYYY-MM-DD; ISO order makes string compare chronological
    std::int64_t gas_price_e9{0};  // gwei, scaled by 1e9
    std::int64_t eth_usd_e9{0};    // USD per ETH, scaled by 1e9

    bool operator==(const PricePoint&) const = default;

    static PricePoint make(std::string date, const std::string& gas_price_gwei,
                           const std::string& eth_usd) {
        detail::check_date(date);
        PricePoint p{std::move(date), detail::parse_nano(gas_price_gwei),
                     detail::parse_nano(eth_usd)};
        if (p.gas_price_e9 <= 0 || p.eth_usd_e9 <= 0) {
            throw std::invalid_argument("prices must be strictly positive");
        }
        return p;
    }
};

struct PriceSeries {
    std::vector<PricePoint> points;

    bool operator==(const PriceSeries&) const = default;
};

/// USD per unit of gas: gwei * 1e-9 * USD/ETH.
inline double usd_per_gas(const PricePoint& p) {
    if (p.gas_price_e9 <= 0 || p.eth_usd_e9 <= 0) {
        throw std::domain_error("prices must be strictly positive");
    }
    return static_cast<double>(p.gas_price_e9) * static_cast<double>(p.eth_usd_e9) * 1e-27;
}

/// Distributor-side USD cost per recipient for a calibrated strategy.
inline double per_recipient_usd(const StrategyDescriptor& d, std::int64_t n, const PricePoint& p,
                                const GasSchedule& s = {}) {
    gas_t total = d.recipient_side ? detail::round_centi(n * recipient_cost(d, n, s))
                                   : distributor_cost(d, n, s).distributor_gas;
    return static_cast<double>(total) / static_cast<double>(n) * usd_per_gas(p);
}

/// Centered moving average with edge trimming; both price fields are
/// averaged independently (rounded to the storage resolution).
inline PriceSeries moving_average(const PriceSeries& series, int window = 60,
                                  bool centered = true) {
    if (window < 1) throw std::domain_error("window must be >= 1");
    auto len = static_cast<std::int64_t>(series.points.size());
    if (len < window) throw std::domain_error("series too short for the averaging window");
    PriceSeries out;
    std::int64_t gas_sum = 0;
    std::int64_t usd_sum = 0;
    for (int i = 0; i < window; ++i) {
        gas_sum += series.points[static_cast<std::size_t>(i)].gas_price_e9;
        usd_sum += series.points[static_cast<std::size_t>(i)].eth_usd_e9;
    }
    auto mean = [&](std::int64_t sum) { return (sum + window / 2) / window; };
    for (std::int64_t start = 0;; ++start) {
        std::size_t anchor =
            static_cast<std::size_t>(start + (centered ? window / 2 : window - 1));
        out.points.push_back(
            {series.points[anchor].date, mean(gas_sum), mean(usd_sum)});
        if (start + window >= len) break;
        gas_sum += series.points[static_cast<std::size_t>(start + window)].gas_price_e9 -
                   series.points[static_cast<std::size_t>(start)].gas_price_e9;
        usd_sum += series.points[static_cast<std::size_t>(start + window)].eth_usd_e9 -
                   series.points[static_cast<std::size_t>(start)].eth_usd_e9;
    }
    return out;
}

/// Parses `YYYY-MM-DD,gas_price_gwei,eth_usd` lines after one header line.
inline PriceSeries load_prices(std::istream& in) {
    PriceSeries series;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 || line.empty()) continue;  // header
        auto c1 = line.find(',');
        auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw std::invalid_argument("price file line " + std::to_string(lineno) +
                                        ": expected date,gas_price_gwei,eth_usd");
        }
        PricePoint p;
        try {
            p = PricePoint::make(line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1),
                                 line.substr(c2 + 1));
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("price file line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
        if (!series.points.empty() && series.points.back().date >= p.date) {
            throw std::invalid_argument("price file line " + std::to_string(lineno) +
                                        ": dates must be strictly increasing");
        }
        series.points.push_back(std::move(p));
    }
    return series;
}

inline std::string export_prices(const PriceSeries& series) {
    std::ostringstream out;
    out << "date,gas_price_gwei,eth_usd\n";
    for (const PricePoint& p : series.points) {
        out << p.date << ',' << detail::format_nano(p.gas_price_e9) << ','
            << detail::format_nano(p.eth_usd_e9) << '\n';
    }
    return out.str();
}

}  // namespace airdrop
