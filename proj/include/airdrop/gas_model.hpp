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

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "gas_schedule.hpp"

namespace airdrop {

/// Gas for one 32-byte calldata word with `b_set` nonzero bytes.
inline gas_t input_word_cost(int b_set, const GasSchedule& s = {}) {
    if (b_set < 0 || b_set > 32) {
        throw std::domain_error("nonzero byte count must be in [0,32]");
    }
    return s.g_calldata_nonzero * b_set + s.g_calldata_zero * (32 - b_set);
}

/// Byte-exact calldata pricing for an arbitrary payload.
inline gas_t calldata_cost(std::span<const std::uint8_t> payload, const GasSchedule& s = {}) {
    auto nonzero = static_cast<gas_t>(
        std::count_if(payload.begin(), payload.end(), [](std::uint8_t b) { return b != 0; }));
    auto zero = static_cast<gas_t>(payload.size()) - nonzero;
    return s.g_calldata_nonzero * nonzero + s.g_calldata_zero * zero;
}

/// Calldata pricing from byte counts (total, nonzero).
inline gas_t calldata_cost(gas_t total_bytes, gas_t nonzero_bytes, const GasSchedule& s = {}) {
    if (nonzero_bytes < 0 || nonzero_bytes > total_bytes) {
        throw std::domain_error("nonzero byte count exceeds payload size");
    }
    return s.g_calldata_nonzero * nonzero_bytes + s.g_calldata_zero * (total_bytes - nonzero_bytes);
}

inline gas_t log_cost(int n_topics, gas_t data_bytes, const GasSchedule& s = {}) {
    if (n_topics < 0 || data_bytes < 0) {
        throw std::domain_error("log arguments must be non-negative");
    }
    return s.g_log_base + s.g_log_topic * n_topics + s.g_log_data * data_bytes;
}

inline gas_t keccak_cost(gas_t data_bytes, const GasSchedule& s = {}) {
    if (data_bytes < 0) {
        throw std::domain_error("hash input size must be non-negative");
    }
    return s.g_keccak_base + s.g_keccak_word * ((data_bytes + 31) / 32);
}

struct SstoreCost {
    gas_t gas{0};
    gas_t refund{0};
};

/// Storage-write pricing: fresh nonzero write pays g_sstore_new, everything
/// else pays g_sstore_update; clearing a nonzero slot earns the clear refund.
inline SstoreCost sstore_cost(bool prior_zero, bool new_zero, const GasSchedule& s = {}) {
    if (prior_zero && !new_zero) return {s.g_sstore_new, 0};
    if (!prior_zero && new_zero) return {s.g_sstore_update, s.r_sstore_clear};
    return {s.g_sstore_update, 0};
}

/// EVM refund rule: refunds within one transaction are capped at half of the
/// pre-refund gas of that transaction.
inline gas_t capped_refund(gas_t pre_refund_gas, gas_t refund_earned) {
    if (pre_refund_gas < 0 || refund_earned < 0) {
        throw std::domain_error("gas amounts must be non-negative");
    }
    return std::min(refund_earned, pre_refund_gas / 2);
}

}  // namespace airdrop
