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
#include <array>
#include <cstdint>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "keccak.hpp"

namespace airdrop {

using Address = std::array<std::uint8_t, 20>;

/// Unsigned 256-bit token quantity, big-endian.
struct TokenAmount {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const TokenAmount&) const = default;

    bool is_zero() const {
        return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
    }

    static TokenAmount from_u64(std::uint64_t v) {
        TokenAmount a;
        for (int i = 31; i >= 24; --i) {
            a.bytes[i] = static_cast<std::uint8_t>(v & 0xff);
            v >>= 8;
        }
        return a;
    }

    static TokenAmount from_decimal(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("empty token amount");
        TokenAmount a;
        for (char c : text) {
            if (c < '0' || c > '9') throw std::invalid_argument("malformed token amount: " + text);
            unsigned carry = static_cast<unsigned>(c - '0');
            for (int i = 31; i >= 0; --i) {
                unsigned v = a.bytes[i] * 10u + carry;
                a.bytes[i] = static_cast<std::uint8_t>(v & 0xff);
                carry = v >> 8;
            }
            if (carry != 0) throw std::out_of_range("token amount exceeds 256 bits: " + text);
        }
        return a;
    }

    std::string to_decimal() const {
        std::array<std::uint8_t, 32> work = bytes;
        std::string out;
        bool nonzero = true;
        while (nonzero) {
            unsigned rem = 0;
            nonzero = false;
            for (auto& b : work) {
                unsigned v = (rem << 8) | b;
                b = static_cast<std::uint8_t>(v / 10);
                rem = v % 10;
                if (b != 0) nonzero = true;
            }
            out.push_back(static_cast<char>('0' + rem));
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

inline TokenAmount checked_add(const TokenAmount& a, const TokenAmount& b) {
    TokenAmount out;
    unsigned carry = 0;
    for (int i = 31; i >= 0; --i) {
        unsigned v = a.bytes[i] + b.bytes[i] + carry;
        out.bytes[i] = static_cast<std::uint8_t>(v & 0xff);
        carry = v >> 8;
    }
    if (carry != 0) throw std::overflow_error("token amount overflow");
    return out;
}

inline TokenAmount checked_sub(const TokenAmount& a, const TokenAmount& b) {
    if (a < b) throw std::underflow_error("token amount underflow");
    TokenAmount out;
    int borrow = 0;
    for (int i = 31; i >= 0; --i) {
        int v = static_cast<int>(a.bytes[i]) - b.bytes[i] - borrow;
        borrow = v < 0 ? 1 : 0;
        out.bytes[i] = static_cast<std::uint8_t>(v + (borrow << 8));
    }
    return out;
}

struct Recipient {
    Address address{};
    TokenAmount amount{};

    bool operator==(const Recipient&) const = default;
};

inline std::string format_address(const Address& a) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "0x";
    for (std::uint8_t b : a) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xf]);
    }
    return out;
}

inline Address parse_address(const std::string& text) {
    if (text.size() != 42 || text[0] != '0' || text[1] != 'x') {
        throw std::invalid_argument("address must be 0x followed by 40 lowercase hex chars");
    }
    Address a;
    for (int i = 0; i < 20; ++i) {
        int v = 0;
        for (int k = 0; k < 2; ++k) {
            char c = text[2 + 2 * i + k];
            int nibble;
            if (c >= '0' && c <= '9') nibble = c - '0';
            else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
            else throw std::invalid_argument("address must be 0x followed by 40 lowercase hex chars");
            v = (v << 4) | nibble;
        }
        a[i] = static_cast<std::uint8_t>(v);
    }
    return a;
}

/// Recipient list file: one `0xADDRESS,AMOUNT` pair per line.
inline std::vector<Recipient> parse_recipient_list(std::istream& in) {
    std::vector<Recipient> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("recipient list line " + std::to_string(lineno) +
                                        ": expected address,amount");
        }
        try {
            out.push_back({parse_address(line.substr(0, comma)),
                           TokenAmount::from_decimal(line.substr(comma + 1))});
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("recipient list line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree construction. Leaves and inner nodes carry distinct prefixes and
// siblings are hashed in sorted order; an unpaired node is promoted unchanged.

struct MerkleProof {
    std::size_t leaf_index{0};
    std::vector<Digest> siblings;
};

struct MerkleDistribution {
    std::vector<Recipient> recipients;
    Digest root{};
    int depth{0};
    std::vector<std::vector<Digest>> levels;  // levels[0] = leaf digests
};

inline Digest leaf_hash(const Recipient& r) {
    std::array<std::uint8_t, 53> buf{};
    buf[0] = 0x00;
    std::copy(r.address.begin(), r.address.end(), buf.begin() + 1);
    std::copy(r.amount.bytes.begin(), r.amount.bytes.end(), buf.begin() + 21);
    return keccak256(buf);
}

inline Digest node_hash(const Digest& a, const Digest& b) {
    std::array<std::uint8_t, 65> buf{};
    buf[0] = 0x01;
    const Digest& lo = a <= b ? a : b;
    const Digest& hi = a <= b ? b : a;
    std::copy(lo.begin(), lo.end(), buf.begin() + 1);
    std::copy(hi.begin(), hi.end(), buf.begin() + 33);
    return keccak256(buf);
}

inline MerkleDistribution build(std::vector<Recipient> recipients) {
    if (recipients.empty()) throw std::invalid_argument("recipient list must not be empty");
    std::set<Address> seen;
    for (const auto& r : recipients) {
        if (!seen.insert(r.address).second) {
            throw std::invalid_argument("duplicate recipient address " +
                                        format_address(r.address));
        }
    }

    MerkleDistribution dist;
    dist.recipients = std::move(recipients);
    dist.levels.emplace_back();
    dist.levels[0].reserve(dist.recipients.size());
    for (const auto& r : dist.recipients) dist.levels[0].push_back(leaf_hash(r));

    while (dist.levels.back().size() > 1) {
        const auto& prev = dist.levels.back();
        std::vector<Digest> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
            next.push_back(node_hash(prev[i], prev[i + 1]));
        }
        if (prev.size() % 2 == 1) next.push_back(prev.back());  // promote
        dist.levels.push_back(std::move(next));
    }
    dist.depth = static_cast<int>(dist.levels.size()) - 1;
    dist.root = dist.levels.back()[0];
    return dist;
}

inline MerkleProof prove(const MerkleDistribution& dist, std::size_t index) {
    if (index >= dist.recipients.size()) throw std::out_of_range("recipient index out of range");
    MerkleProof proof;
    proof.leaf_index = index;
    std::size_t pos = index;
    for (int level = 0; level < dist.depth; ++level) {
        const auto& nodes = dist.levels[static_cast<std::size_t>(level)];
        std::size_t sibling = pos ^ 1;
        if (sibling < nodes.size()) proof.siblings.push_back(nodes[sibling]);
        // else: promoted node, nothing to fold at this level
        pos /= 2;
    }
    return proof;
}

/// Rejects (never throws) on any mismatch, including a wrong sibling count.
inline bool verify(const Digest& root, const Recipient& recipient, const MerkleProof& proof) {
    Digest acc = leaf_hash(recipient);
    for (const Digest& sibling : proof.siblings) acc = node_hash(acc, sibling);
    return acc == root;
}

// ---------------------------------------------------------------------------
// Claim registry. Single-writer: callers serialize claim/reclaim.

enum class ClaimResult {
    Accepted,
    AlreadyClaimed,
    InvalidProof,
    PastDeadline,
};

inline const char* claim_result_name(ClaimResult r) {
    switch (r) {
        case ClaimResult::Accepted: return "Accepted";
        case ClaimResult::AlreadyClaimed: return "AlreadyClaimed";
        case ClaimResult::InvalidProof: return "InvalidProof";
        case ClaimResult::PastDeadline: return "PastDeadline";
    }
    return "?";
}

struct BeforeDeadline : std::logic_error {
    BeforeDeadline() : std::logic_error("reclaim before the withdrawal deadline") {}
};

struct ClaimRegistry {
    Digest root{};
    std::set<Address> claimed;
    TokenAmount total_allocated{};
    TokenAmount total_claimed{};
    std::int64_t deadline{0};  // logical (block-height) time
    TokenAmount distributor_balance{};
    bool closed{false};
};

inline ClaimRegistry make_registry(const MerkleDistribution& dist, std::int64_t deadline) {
    ClaimRegistry reg;
    reg.root = dist.root;
    reg.deadline = deadline;
    for (const auto& r : dist.recipients) {
        reg.total_allocated = checked_add(reg.total_allocated, r.amount);
    }
    reg.distributor_balance = reg.total_allocated;
    return reg;
}

/// The registry is left untouched on every rejection.
inline ClaimResult claim(ClaimRegistry& reg, const Recipient& recipient, const MerkleProof& proof,
                         std::int64_t now) {
    if (reg.closed || now > reg.deadline) return ClaimResult::PastDeadline;
    if (reg.claimed.contains(recipient.address)) return ClaimResult::AlreadyClaimed;
    if (!verify(reg.root, recipient, proof)) return ClaimResult::InvalidProof;
    reg.claimed.insert(recipient.address);
    reg.total_claimed = checked_add(reg.total_claimed, recipient.amount);
    reg.distributor_balance = checked_sub(reg.distributor_balance, recipient.amount);
    return ClaimResult::Accepted;
}

/// Returns the unclaimed remainder to the distributor and closes the pool.
inline TokenAmount reclaim(ClaimRegistry& reg, std::int64_t now) {
    if (now <= reg.deadline) throw BeforeDeadline();
    TokenAmount returned = checked_sub(reg.total_allocated, reg.total_claimed);
    reg.distributor_balance = checked_sub(reg.distributor_balance, returned);
    reg.closed = true;
    return returned;
}

}  // namespace airdrop
