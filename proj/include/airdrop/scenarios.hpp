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

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "calibration.hpp"
#include "cost_model.hpp"
#include "strategy.hpp"

namespace airdrop {

struct Scenario {
    enum class Role { measured, upper_bound, lower_bound };

    std::string label;
    StrategyDescriptor descriptor;
    Role role{Role::measured};
};

/// The 35 simulated strategy variants, in the published bar order.
inline std::vector<Scenario> enumerate_paper_scenarios() {
    std::vector<Scenario> out;
    auto add = [&](StrategyDescriptor d, Scenario::Role role = Scenario::Role::measured) {
        d.validate();
        out.push_back({to_label(d), d, role});
    };
    auto make = [](Family family, int bs, bool uniform) {
        StrategyDescriptor d;
        d.family = family;
        d.batch_size = bs;
        d.uniform = uniform;
        return d;
    };

    add(make(Family::NaivePush, 1, false), Scenario::Role::upper_bound);

    StrategyDescriptor recipient;
    recipient.family = Family::InternalBatchPull;
    recipient.recipient_side = true;
    add(recipient);

    for (bool uniform : {true, false}) {
        for (int bs = 100; bs <= 400; bs += 100) add(make(Family::ExternalBatchPush, bs, uniform));
    }
    for (bool uniform : {true, false}) {
        for (int bs = 100; bs <= 400; bs += 100) add(make(Family::InternalBatchPush, bs, uniform));
    }
    for (int bs = 100; bs <= 400; bs += 100) add(make(Family::InternalBatchPull, bs, true));
    add(make(Family::InternalBatchPull, 1, true));
    for (int bs = 100; bs <= 400; bs += 100) add(make(Family::InternalBatchPull, bs, false));

    for (int bs = 100; bs <= 800; bs += 100) {
        add(make(Family::Baseline, bs, true), Scenario::Role::lower_bound);
    }
    return out;
}

struct SweepRow {
    std::string label;
    std::int64_t n{0};
    gas_t distributor_gas{0};
    gas_t recipient_gas_total{0};
    gas_t total_gas{0};
    std::optional<gas_t> discounted_gas;  // undefined for pull-style rows
    std::int64_t blocks_at_half_fill{0};
    std::vector<int> feasible_at;

    bool operator==(const SweepRow&) const = default;
};

/// One row per (scenario, n). `fill_percent` > 0 keeps only rows feasible at
/// that grade; `discounted` drops pull strategies and discounts the rest.
inline std::vector<SweepRow> run_sweep(const std::vector<Scenario>& scenarios,
                                       const std::vector<std::int64_t>& n_values, bool discounted,
                                       int fill_percent, const CalibrationTable& calibration,
                                       const GasSchedule& s = {}) {
    std::vector<SweepRow> rows;
    for (const Scenario& scenario : scenarios) {
        StrategyDescriptor d = calibration.apply(scenario.descriptor);
        if (discounted && d.family == Family::InternalBatchPull) continue;
        for (std::int64_t n : n_values) {
            SweepRow row;
            row.label = scenario.label;
            row.n = n;
            if (d.recipient_side) {
                row.recipient_gas_total = detail::round_centi(n * recipient_cost(d, n, s));
            } else {
                row.distributor_gas = distributor_cost(d, n, s).distributor_gas;
            }
            row.total_gas = row.distributor_gas + row.recipient_gas_total;
            if (d.family != Family::InternalBatchPull && d.family != Family::PooledMerkle) {
                row.discounted_gas = row.total_gas - n * (s.g_sstore_new - s.g_sstore_update);
            }
            row.blocks_at_half_fill = blocks_needed(row.total_gas, 50, s);
            row.feasible_at = feasibility(d, n, s).feasible_at;
            if (fill_percent > 0) {
                bool ok = false;
                for (int pct : row.feasible_at) ok = ok || pct == fill_percent;
                if (!ok) continue;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

enum class ExportFormat { PlotPairs, Table };

/// Gas in the published plotting unit (1e5 gas), trailing zeros trimmed.
inline std::string format_plot_gas(gas_t gas) {
    std::ostringstream out;
    out << gas / 100000;
    gas_t frac = gas % 100000;
    if (frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%05lld", static_cast<long long>(frac));
        std::string digits = buf;
        while (digits.back() == '0') digits.pop_back();
        out << '.' << digits;
    }
    return out.str();
}

inline std::string format_feasible_set(const std::vector<int>& grades) {
    std::string out;
    for (std::size_t i = 0; i < grades.size(); ++i) {
        if (i) out.push_back(';');
        out += std::to_string(grades[i]);
    }
    return out;
}

inline std::string export_rows(const std::vector<SweepRow>& rows, ExportFormat format,
                               bool use_discounted = false) {
    std::ostringstream out;
    if (format == ExportFormat::PlotPairs) {
        for (const SweepRow& row : rows) {
            gas_t gas = use_discounted && row.discounted_gas ? *row.discounted_gas : row.total_gas;
            out << row.n << ' ' << format_plot_gas(gas) << '\n';
        }
        return out.str();
    }
    out << "label,n,distributor_gas,recipient_gas_total,total_gas,discounted_gas,"
           "blocks_at_half_fill,feasible_at\n";
    for (const SweepRow& row : rows) {
        out << row.label << ',' << row.n << ',' << row.distributor_gas << ','
            << row.recipient_gas_total << ',' << row.total_gas << ',';
        if (row.discounted_gas) out << *row.discounted_gas;
        out << ',' << row.blocks_at_half_fill << ',' << format_feasible_set(row.feasible_at)
            << '\n';
    }
    return out.str();
}

inline std::vector<SweepRow> parse_table(const std::string& text) {
    std::istringstream in(text);
    std::vector<SweepRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 8) {
            throw std::invalid_argument("sweep table line " + std::to_string(lineno) +
                                        ": expected 8 fields");
        }
        SweepRow row;
        row.label = fields[0];
        row.n = std::stoll(fields[1]);
        row.distributor_gas = std::stoll(fields[2]);
        row.recipient_gas_total = std::stoll(fields[3]);
        row.total_gas = std::stoll(fields[4]);
        if (!fields[5].empty()) row.discounted_gas = std::stoll(fields[5]);
        row.blocks_at_half_fill = std::stoll(fields[6]);
        std::string grade;
        for (char c : fields[7] + ";") {
            if (c == ';') {
                if (!grade.empty()) row.feasible_at.push_back(std::stoi(grade));
                grade.clear();
            } else {
                grade.push_back(c);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Desk-scale reproduction of the 450k-recipient airdrop estimate. The
/// published block count disagrees with what the per-recipient gas implies;
/// both figures are reported.
struct OmisegoEstimate {
    gas_t total_gas{0};
    double usd{0.0};
    std::int64_t blocks{0};
    std::int64_t duration_s{0};
    std::int64_t reported_blocks{1440};
    std::int64_t reported_duration_s{1440 * 15};
    bool block_count_discrepancy{false};
};

inline OmisegoEstimate omisego_estimate(const CalibrationTable& calibration, double usd_per_gas,
                                        const GasSchedule& s = {}) {
    if (!(usd_per_gas > 0.0)) throw std::domain_error("usd-per-gas rate must be positive");
    StrategyDescriptor d = parse_label("EXTERNAL_BATCH|PUSH|100");
    d = calibration.apply(d);
    OmisegoEstimate est;
    est.total_gas = 450 * distributor_cost(d, 1000, s).distributor_gas;
    est.usd = static_cast<double>(est.total_gas) * usd_per_gas;
    est.blocks = blocks_needed(est.total_gas, 50, s);
    est.duration_s = est.blocks * s.block_time_s;
    est.reported_duration_s = est.reported_blocks * s.block_time_s;
    est.block_count_discrepancy = est.blocks != est.reported_blocks;
    return est;
}

}  // namespace airdrop
