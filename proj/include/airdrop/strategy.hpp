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

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gas_schedule.hpp"

namespace airdrop {

enum class Family {
    NaivePush,
    ExternalBatchPush,
    InternalBatchPush,
    InternalBatchPull,
    PooledMerkle,
    Baseline,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::NaivePush: return "NAIVE|PUSH";
        case Family::ExternalBatchPush: return "EXTERNAL_BATCH|PUSH";
        case Family::InternalBatchPush: return "INTERNAL_BATCH|PUSH";
        case Family::InternalBatchPull: return "INTERNAL_BATCH|PULL";
        case Family::PooledMerkle: return "POOLED|MERKLE";
        case Family::Baseline: return "BASE_LINE|INTERNAL_BATCH|PUSH";
    }
    return "?";
}

struct DescriptorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One airdrop technique variant. `overhead_per_recipient` and
/// `recipient_overhead` hold the calibrated execution residual in centigas.
struct StrategyDescriptor {
    Family family{Family::NaivePush};
    int batch_size{1};
    bool uniform{false};        // one amount per batch instead of per recipient
    bool zero_reset{false};     // pull only: zero allowances before approving
    bool recipient_side{false}; // pull only: cost the claiming recipients
    int amount_bytes{2};
    centigas_t overhead_per_recipient{0};
    centigas_t recipient_overhead{0};

    void validate() const {
        if (batch_size < 1) throw DescriptorError("batch size must be >= 1");
        if (amount_bytes < 1 || amount_bytes > 32) {
            throw DescriptorError("amount width must be in [1,32] bytes");
        }
        if (overhead_per_recipient < 0 || recipient_overhead < 0) {
            throw DescriptorError("calibrated overhead must be non-negative");
        }
        if (zero_reset && family != Family::InternalBatchPull) {
            throw DescriptorError("zero-reset applies to the pull strategy only");
        }
        if (recipient_side && family != Family::InternalBatchPull) {
            throw DescriptorError("recipient-side costing applies to the pull strategy only");
        }
        if (family == Family::NaivePush && batch_size != 1) {
            throw DescriptorError("naive push sends one transaction per recipient");
        }
    }

    /// Pull descriptor with the front-running mitigation enabled, the
    /// recommended configuration outside of benchmark reproduction.
    static StrategyDescriptor pull(int bs, bool one_amount) {
        StrategyDescriptor d;
        d.family = Family::InternalBatchPull;
        d.batch_size = bs;
        d.uniform = one_amount;
        d.zero_reset = true;
        return d;
    }
};

/// Canonical `|`-separated strategy label.
inline std::string to_label(const StrategyDescriptor& d) {
    if (d.family == Family::NaivePush) return "NAIVE|PUSH";
    if (d.family == Family::PooledMerkle) return "POOLED|MERKLE";
    if (d.recipient_side) return "PULL|RECIPIENT_COST";
    std::ostringstream out;
    switch (d.family) {
        case Family::ExternalBatchPush: out << "EXTERNAL_BATCH|PUSH"; break;
        case Family::InternalBatchPush: out << "INTERNAL_BATCH|PUSH"; break;
        case Family::InternalBatchPull: out << "INTERNAL_BATCH|PULL"; break;
        case Family::Baseline: out << "BASE_LINE|INTERNAL_BATCH|PUSH"; break;
        default: break;
    }
    if (d.uniform) out << "|UNIFORM";
    out << '|' << d.batch_size;
    return out.str();
}

/// Parses a Table-1-style label. Labels carry no zero-reset token; parsed
/// pull descriptors default to no reset pass, matching the measured totals.
inline StrategyDescriptor parse_label(const std::string& label) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : label) {
        if (c == '|') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    StrategyDescriptor d;
    std::size_t i = 0;
    auto fail = [&]() -> void { throw DescriptorError("unrecognized strategy label: " + label); };
    auto next = [&]() -> const std::string& {
        if (i >= parts.size()) fail();
        return parts[i++];
    };

    const std::string& head = next();
    if (head == "NAIVE") {
        if (next() != "PUSH" || i != parts.size()) fail();
        d.family = Family::NaivePush;
        return d;
    }
    if (head == "POOLED") {
        if (next() != "MERKLE" || i != parts.size()) fail();
        d.family = Family::PooledMerkle;
        return d;
    }
    if (head == "PULL") {
        if (next() != "RECIPIENT_COST" || i != parts.size()) fail();
        d.family = Family::InternalBatchPull;
        d.recipient_side = true;
        return d;
    }

    bool baseline = false;
    std::string batching = head;
    if (head == "BASE_LINE") {
        baseline = true;
        batching = next();
    }
    bool internal = batching == "INTERNAL_BATCH";
    if (!internal && batching != "EXTERNAL_BATCH") fail();

    const std::string& direction = next();
    if (direction == "PUSH") {
        d.family = baseline ? Family::Baseline
                 : internal ? Family::InternalBatchPush
                            : Family::ExternalBatchPush;
    } else if (direction == "PULL" && internal && !baseline) {
        d.family = Family::InternalBatchPull;
    } else {
        fail();
    }

    std::string tail = next();
    if (tail == "UNIFORM") {
        d.uniform = true;
        tail = next();
    } else if (baseline) {
        fail();  // the baseline is defined for uniform amounts only
    }
    if (i != parts.size()) fail();
    try {
        std::size_t pos = 0;
        d.batch_size = std::stoi(tail, &pos);
        if (pos != tail.size()) fail();
    } catch (const std::logic_error&) {
        fail();
    }
    d.validate();
    return d;
}

}  // namespace airdrop
