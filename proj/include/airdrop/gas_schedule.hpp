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

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace airdrop {

using gas_t = std::int64_t;

/// Gas in hundredths of a unit; calibrated residuals are stored at this
/// resolution so reported totals round-trip.
using centigas_t = std::int64_t;

/// EVM-style fee schedule. Defaults match the pre-Istanbul mainnet rules
/// with the 2018 mean block gas limit.
struct GasSchedule {
    gas_t g_tx{21000};
    gas_t g_call_external{700};
    gas_t g_call_internal{10};
    gas_t g_sstore_new{20000};
    gas_t g_sstore_update{5000};
    gas_t r_sstore_clear{15000};
    gas_t g_calldata_zero{4};
    gas_t g_calldata_nonzero{68};
    gas_t g_log_base{375};
    gas_t g_log_topic{375};
    gas_t g_log_data{8};
    gas_t g_keccak_base{30};
    gas_t g_keccak_word{6};
    gas_t block_gas_limit{7'997'671};
    gas_t block_time_s{15};

    void validate() const {
        const gas_t* fields[] = {
            &g_tx,          &g_call_external, &g_call_internal, &g_sstore_new,
            &g_sstore_update, &r_sstore_clear, &g_calldata_zero, &g_calldata_nonzero,
            &g_log_base,    &g_log_topic,     &g_log_data,      &g_keccak_base,
            &g_keccak_word, &block_gas_limit, &block_time_s};
        for (const gas_t* f : fields) {
            if (*f <= 0) {
                throw std::invalid_argument("gas schedule fields must be strictly positive");
            }
        }
        if (g_calldata_nonzero <= g_calldata_zero) {
            throw std::invalid_argument("nonzero calldata byte must cost more than a zero byte");
        }
        if (g_sstore_new <= g_sstore_update) {
            throw std::invalid_argument("fresh storage write must cost more than an update");
        }
        if (r_sstore_clear >= g_sstore_new) {
            throw std::invalid_argument("clear refund must be below the fresh-write cost");
        }
    }
};

/// Applies `key=value` overrides (one per line, '#' comments allowed) on top
/// of a base schedule. Unknown keys are rejected.
inline GasSchedule load_schedule_overrides(std::istream& in, GasSchedule base = {}) {
    std::map<std::string, gas_t*> fields{
        {"g_tx", &base.g_tx},
        {"g_call_external", &base.g_call_external},
        {"g_call_internal", &base.g_call_internal},
        {"g_sstore_new", &base.g_sstore_new},
        {"g_sstore_update", &base.g_sstore_update},
        {"r_sstore_clear", &base.r_sstore_clear},
        {"g_calldata_zero", &base.g_calldata_zero},
        {"g_calldata_nonzero", &base.g_calldata_nonzero},
        {"g_log_base", &base.g_log_base},
        {"g_log_topic", &base.g_log_topic},
        {"g_log_data", &base.g_log_data},
        {"g_keccak_base", &base.g_keccak_base},
        {"g_keccak_word", &base.g_keccak_word},
        {"block_gas_limit", &base.block_gas_limit},
        {"block_time_s", &base.block_time_s},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("schedule override line " + std::to_string(lineno) +
                                        ": expected key=value");
        }
        std::string key = line.substr(0, eq);
        auto it = fields.find(key);
        if (it == fields.end()) {
            throw std::invalid_argument("schedule override line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
        *it->second = std::stoll(line.substr(eq + 1));
    }
    base.validate();
    return base;
}

}  // namespace airdrop
