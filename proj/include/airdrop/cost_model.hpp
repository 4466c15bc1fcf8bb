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

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gas_model.hpp"
#include "gas_schedule.hpp"
#include "strategy.hpp"

namespace airdrop {

// ---------------------------------------------------------------------------
// Savings formulas for moving n transfers into one batched transaction.

inline gas_t savings_external(std::int64_t n, const GasSchedule& s = {}) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    return n * s.g_tx - (n * s.g_call_external + s.g_tx);
}

inline gas_t savings_internal(std::int64_t n, const GasSchedule& s = {}) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    return n * s.g_tx - (n * s.g_call_internal + s.g_tx);
}

/// Splits n recipients into ceil(n/bs) batches; only the last may be short.
inline std::vector<int> batch_plan(std::int64_t n, int batch_size) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    if (batch_size < 1) throw std::domain_error("batch size must be >= 1");
    std::vector<int> plan;
    std::int64_t remaining = n;
    while (remaining > 0) {
        int bs = static_cast<int>(std::min<std::int64_t>(batch_size, remaining));
        plan.push_back(bs);
        remaining -= bs;
    }
    return plan;
}

/// Lower-bound cost: transaction overhead, calldata and storage writes only.
/// Addresses are 20 input bytes each; the single amount word is counted once.
inline gas_t baseline_cost(std::int64_t n, int batch_size, const GasSchedule& s = {}) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    if (batch_size < 1) throw std::domain_error("batch size must be >= 1");
    std::int64_t n_tx = (n + batch_size - 1) / batch_size;
    return n_tx * s.g_tx + n * s.g_sstore_new + n * input_word_cost(20, s) + input_word_cost(2, s);
}

// ---------------------------------------------------------------------------
// ABI byte layout of the batch-call encodings.

struct PayloadSize {
    gas_t total_bytes{0};
    gas_t nonzero_bytes{0};
};

namespace detail {

/// Bytes needed for the big-endian encoding of v (at least 1 for v >= 1).
inline int int_bytes(std::int64_t v) {
    int b = 0;
    do {
        ++b;
        v >>= 8;
    } while (v > 0);
    return b;
}

inline std::int64_t round_centi(centigas_t centi) { return (centi + 50) / 100; }

}  // namespace detail

/// Calldata size of one distributor transaction: 4-byte selector plus
/// 32-byte-word head/array encoding. Naive push uses the flat transfer call.
inline PayloadSize abi_payload_bytes(Family family, int batch, bool uniform, int amount_bytes = 2) {
    if (batch < 1) throw std::domain_error("batch size must be >= 1");
    if (family == Family::NaivePush) {
        return {4 + 64, 4 + 20 + amount_bytes};
    }
    if (family == Family::PooledMerkle) {
        // storing one full-entropy Merkle root word
        return {4 + 32, 4 + 32};
    }
    if (uniform) {
        // f(address[] recipients, uintN amount): offset word, amount word,
        // array length, one word per address
        gas_t total = 4 + 32LL * (3 + batch);
        gas_t nonzero = 4 + detail::int_bytes(0x40) + amount_bytes + detail::int_bytes(batch) +
                        20LL * batch;
        return {total, nonzero};
    }
    // f(address[] recipients, uintN[] amounts): two offset words, then two
    // length-prefixed arrays
    gas_t total = 4 + 32LL * (4 + 2LL * batch);
    gas_t nonzero = 4 + detail::int_bytes(0x40) + detail::int_bytes(96 + 32LL * batch) +
                    2LL * detail::int_bytes(batch) + 20LL * batch +
                    static_cast<gas_t>(amount_bytes) * batch;
    return {total, nonzero};
}

// ---------------------------------------------------------------------------
// Itemized strategy costs.

struct CostItem {
    std::string label;
    gas_t gas{0};
};

struct BatchCost {
    int batch_size{0};
    gas_t gas{0};
};

struct CostBreakdown {
    StrategyDescriptor descriptor;
    std::int64_t n{0};
    gas_t distributor_gas{0};
    centigas_t recipient_gas_each{0};  // centigas per claiming recipient
    gas_t recipient_gas_total{0};
    std::vector<CostItem> items;
    std::vector<BatchCost> batches;
    gas_t max_tx_gas{0};  // largest single transaction, for feasibility
    bool new_holders{true};
    bool discounted{false};

    gas_t total_gas() const { return distributor_gas + recipient_gas_total; }
};

struct FeasibilityReport {
    gas_t max_batch_gas{0};
    std::vector<int> feasible_at;  // fill grades in percent, ascending
    bool infeasible{true};
};

struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct ItemAccumulator {
    gas_t intrinsic{0}, calldata{0}, storage{0}, calls{0}, logs{0}, overhead{0}, refunds{0};

    std::vector<CostItem> items() const {
        return {{"intrinsic", intrinsic}, {"calldata", calldata}, {"storage", storage},
                {"calls", calls},         {"logs", logs},         {"overhead", overhead},
                {"refunds", -refunds}};
    }
    gas_t total() const {
        return intrinsic + calldata + storage + calls + logs + overhead - refunds;
    }
};

inline centigas_t pull_claim_base_centi(int amount_bytes, const GasSchedule& s) {
    // transferFrom(distributor, recipient, amount) sent by the recipient
    gas_t calldata = calldata_cost(100, 44 + amount_bytes, s);
    SstoreCost allowance = sstore_cost(false, true, s);  // allowance cleared
    gas_t balances = s.g_sstore_new + s.g_sstore_update; // fresh recipient slot, sender update
    gas_t log = log_cost(3, 32, s);
    gas_t pre = s.g_tx + calldata + allowance.gas + balances + log;
    gas_t net = pre - capped_refund(pre, allowance.refund);
    return net * 100;
}

}  // namespace detail

/// Gas one pull recipient (or pooled-payment claimer) pays; push families
/// cost their recipients nothing. Result in centigas.
centigas_t recipient_cost(const StrategyDescriptor& d, std::int64_t n, const GasSchedule& s = {});

/// Gas of one pooled-payment claim transaction for an n-recipient
/// distribution: the pull claim plus proof calldata, proof hashing and the
/// withdrawal record. Result in centigas.
inline centigas_t claim_gas_estimate(std::int64_t n, const GasSchedule& s = {},
                                     int amount_bytes = 2, centigas_t pull_overhead = 0) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    int depth = n > 1 ? std::bit_width(static_cast<std::uint64_t>(n - 1)) : 0;
    gas_t proof = depth * (input_word_cost(32, s) + keccak_cost(64, s));
    gas_t leaf = keccak_cost(1 + 20 + 32, s);
    return detail::pull_claim_base_centi(amount_bytes, s) +
           (proof + leaf + s.g_sstore_new) * 100 + pull_overhead;
}

inline centigas_t recipient_cost(const StrategyDescriptor& d, std::int64_t n,
                                 const GasSchedule& s) {
    d.validate();
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    switch (d.family) {
        case Family::InternalBatchPull:
            return detail::pull_claim_base_centi(d.amount_bytes, s) + d.recipient_overhead;
        case Family::PooledMerkle:
            return claim_gas_estimate(n, s, d.amount_bytes, d.recipient_overhead);
        default:
            return 0;
    }
}

/// Distributor-side gas, itemized per batch transaction.
inline CostBreakdown distributor_cost(const StrategyDescriptor& d, std::int64_t n,
                                      const GasSchedule& s = {}, bool new_holders = true) {
    d.validate();
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    if (d.recipient_side) {
        throw DescriptorError("recipient-side descriptor has no distributor cost");
    }

    CostBreakdown out;
    out.descriptor = d;
    out.n = n;
    out.new_holders = new_holders;
    detail::ItemAccumulator acc;

    auto finish = [&]() -> CostBreakdown& {
        out.items = acc.items();
        out.distributor_gas = acc.total();
        out.recipient_gas_each = recipient_cost(d, n, s);
        out.recipient_gas_total = detail::round_centi(n * out.recipient_gas_each);
        return out;
    };

    const gas_t recipient_store = new_holders ? s.g_sstore_new : s.g_sstore_update;

    if (d.family == Family::PooledMerkle) {
        // one transaction commits the Merkle root, independent of n
        PayloadSize p = abi_payload_bytes(d.family, 1, d.uniform, d.amount_bytes);
        acc.intrinsic = s.g_tx;
        acc.calldata = calldata_cost(p.total_bytes, p.nonzero_bytes, s);
        acc.storage = s.g_sstore_new;
        acc.overhead = detail::round_centi(d.overhead_per_recipient);
        gas_t total = acc.total();
        out.batches.push_back({static_cast<int>(n), total});
        out.max_tx_gas = total;
        return finish();
    }

    if (d.family == Family::Baseline) {
        auto plan = batch_plan(n, d.batch_size);
        const gas_t word20 = input_word_cost(20, s);
        centigas_t cum_overhead = 0;
        std::int64_t covered = 0;
        for (std::size_t i = 0; i < plan.size(); ++i) {
            covered += plan[i];
            gas_t oh = detail::round_centi(covered * d.overhead_per_recipient) - cum_overhead;
            cum_overhead += oh;
            gas_t tx = s.g_tx + plan[i] * (recipient_store + word20) + oh;
            if (i == 0) tx += input_word_cost(d.amount_bytes, s);  // single amount word
            acc.intrinsic += s.g_tx;
            acc.storage += plan[i] * recipient_store;
            acc.calldata += plan[i] * word20;
            if (i == 0) acc.calldata += input_word_cost(d.amount_bytes, s);
            acc.overhead += oh;
            out.batches.push_back({plan[i], tx});
            out.max_tx_gas = std::max(out.max_tx_gas, tx);
        }
        return finish();
    }

    const bool pull = d.family == Family::InternalBatchPull;
    const bool push = !pull;
    gas_t per_call = 0;
    switch (d.family) {
        case Family::ExternalBatchPush: per_call = s.g_call_external; break;
        case Family::InternalBatchPush:
        case Family::InternalBatchPull: per_call = s.g_call_internal; break;
        default: break;  // naive: the transaction itself is the transfer
    }
    const gas_t per_log = push ? log_cost(3, 32, s) : 0;
    const gas_t per_store = pull ? sstore_cost(true, false, s).gas  // fresh allowance slot
                                 : recipient_store;                 // recipient balance

    auto plan = batch_plan(n, d.batch_size);
    centigas_t cum_overhead = 0;
    std::int64_t covered = 0;
    for (int bs : plan) {
        PayloadSize p = abi_payload_bytes(d.family, bs, d.uniform, d.amount_bytes);
        gas_t cd = calldata_cost(p.total_bytes, p.nonzero_bytes, s);
        gas_t storage = static_cast<gas_t>(bs) * per_store;
        if (push) storage += sstore_cost(false, false, s).gas;  // distributor debited once
        gas_t calls = static_cast<gas_t>(bs) * per_call;
        gas_t logs = static_cast<gas_t>(bs) * per_log;
        gas_t tx = s.g_tx + cd + storage + calls + logs;

        covered += bs;
        gas_t oh = detail::round_centi(covered * d.overhead_per_recipient) - cum_overhead;
        cum_overhead += oh;

        acc.intrinsic += s.g_tx;
        acc.calldata += cd;
        acc.storage += storage;
        acc.calls += calls;
        acc.logs += logs;
        acc.overhead += oh;

        gas_t batch_gas = tx + oh;
        out.max_tx_gas = std::max(out.max_tx_gas, tx + oh);

        if (d.zero_reset) {
            // preceding pass that zeroes the (still zero) allowance slots
            PayloadSize pz = abi_payload_bytes(d.family, bs, d.uniform, d.amount_bytes);
            gas_t amount_nz = d.uniform ? d.amount_bytes : static_cast<gas_t>(d.amount_bytes) * bs;
            gas_t cdz = calldata_cost(pz.total_bytes, pz.nonzero_bytes - amount_nz, s);
            SstoreCost zero_write = sstore_cost(true, true, s);
            gas_t pre = s.g_tx + cdz + static_cast<gas_t>(bs) * (zero_write.gas + per_call);
            gas_t refund = capped_refund(pre, static_cast<gas_t>(bs) * zero_write.refund);
            acc.intrinsic += s.g_tx;
            acc.calldata += cdz;
            acc.storage += static_cast<gas_t>(bs) * zero_write.gas;
            acc.calls += static_cast<gas_t>(bs) * per_call;
            acc.refunds += refund;
            out.max_tx_gas = std::max(out.max_tx_gas, pre - refund);
            batch_gas += pre - refund;
        }
        out.batches.push_back({bs, batch_gas});
    }
    return finish();
}

/// Re-prices a fresh-holder breakdown as if every recipient already held the
/// token (storage updates instead of fresh slots).
inline CostBreakdown apply_discount(const CostBreakdown& c, const GasSchedule& s = {}) {
    if (c.discounted) throw std::domain_error("breakdown is already discounted");
    if (!c.new_holders) throw std::domain_error("breakdown was not computed for new holders");
    switch (c.descriptor.family) {
        case Family::InternalBatchPull:
        case Family::PooledMerkle:
            throw std::domain_error(
                "discounting is undefined for pull-style strategies (fresh allowance and "
                "claim slots are written either way)");
        default: break;
    }
    const gas_t delta = s.g_sstore_new - s.g_sstore_update;
    CostBreakdown out = c;
    out.discounted = true;
    out.new_holders = false;
    out.distributor_gas -= c.n * delta;
    out.max_tx_gas = 0;
    for (auto& b : out.batches) {
        b.gas -= static_cast<gas_t>(b.batch_size) * delta;
        out.max_tx_gas = std::max(out.max_tx_gas, b.gas);
    }
    for (auto& item : out.items) {
        if (item.label == "storage") item.gas -= c.n * delta;
    }
    return out;
}

/// Classifies the largest single transaction against the block fill grades.
inline FeasibilityReport feasibility(const StrategyDescriptor& d, std::int64_t n,
                                     const GasSchedule& s = {}) {
    gas_t max_tx;
    if (d.recipient_side) {
        max_tx = detail::round_centi(recipient_cost(d, n, s));
    } else {
        max_tx = distributor_cost(d, n, s).max_tx_gas;
    }
    FeasibilityReport r;
    r.max_batch_gas = max_tx;
    for (int pct : {10, 25, 50, 75, 100}) {
        if (100 * max_tx <= pct * s.block_gas_limit) r.feasible_at.push_back(pct);
    }
    r.infeasible = r.feasible_at.empty();
    return r;
}

/// Blocks needed to fit total_gas when each block contributes
/// fill_percent% of the block gas limit.
inline std::int64_t blocks_needed(gas_t total_gas, int fill_percent, const GasSchedule& s = {}) {
    if (fill_percent <= 0 || fill_percent > 100) {
        throw std::domain_error("fill grade must be in (0,1]");
    }
    if (total_gas < 0) throw std::domain_error("gas must be non-negative");
    using i128 = __int128;
    i128 capacity = static_cast<i128>(fill_percent) * s.block_gas_limit;
    i128 scaled = static_cast<i128>(total_gas) * 100;
    return static_cast<std::int64_t>((scaled + capacity - 1) / capacity);
}

inline std::int64_t blocks_needed(gas_t total_gas, double fill_grade, const GasSchedule& s = {}) {
    if (!(fill_grade > 0.0) || fill_grade > 1.0) {
        throw std::domain_error("fill grade must be in (0,1]");
    }
    double p = fill_grade * 100.0;
    auto pct = static_cast<int>(std::llround(p));
    if (pct >= 1 && std::abs(p - pct) < 1e-9) {
        return blocks_needed(total_gas, pct, s);
    }
    long double capacity = static_cast<long double>(fill_grade) * s.block_gas_limit;
    return static_cast<std::int64_t>(std::ceil(static_cast<long double>(total_gas) / capacity));
}

/// Fits the per-recipient execution residual so the modeled total meets a
/// measured one: eps = (target - structural) / n, in centigas.
inline centigas_t calibrate(const StrategyDescriptor& d, gas_t target_total, std::int64_t n,
                            const GasSchedule& s = {}) {
    if (n < 1) throw std::domain_error("recipient count must be >= 1");
    StrategyDescriptor base = d;
    base.overhead_per_recipient = 0;
    base.recipient_overhead = 0;
    gas_t structural;
    std::vector<CostItem> items;
    if (d.recipient_side) {
        centigas_t each = recipient_cost(base, n, s);
        structural = detail::round_centi(n * each);
        items = {{"claim (per recipient, centigas)", each}};
    } else {
        CostBreakdown b = distributor_cost(base, n, s);
        structural = b.distributor_gas;
        items = b.items;
    }
    if (target_total < structural) {
        std::ostringstream msg;
        msg << "calibration target " << target_total << " below structural cost " << structural
            << " for " << to_label(d) << "; itemization:";
        for (const auto& item : items) msg << ' ' << item.label << '=' << item.gas;
        throw CalibrationError(msg.str());
    }
    gas_t delta = target_total - structural;
    return (delta * 100 + n / 2) / n;
}

}  // namespace airdrop
