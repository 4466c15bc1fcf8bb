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

#include <string>

#include <json.hpp>

#include "merkle.hpp"

namespace airdrop {

inline std::string format_digest(const Digest& d) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "0x";
    for (std::uint8_t b : d) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xf]);
    }
    return out;
}

inline Digest parse_digest(const std::string& text) {
    if (text.size() != 66 || text[0] != '0' || text[1] != 'x') {
        throw std::invalid_argument("digest must be 0x followed by 64 lowercase hex chars");
    }
    Digest d;
    for (int i = 0; i < 32; ++i) {
        int v = 0;
        for (int k = 0; k < 2; ++k) {
            char c = text[2 + 2 * i + k];
            int nibble;
            if (c >= '0' && c <= '9') nibble = c - '0';
            else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
            else throw std::invalid_argument("digest must be 0x followed by 64 lowercase hex chars");
            v = (v << 4) | nibble;
        }
        d[i] = static_cast<std::uint8_t>(v);
    }
    return d;
}

/// Full distribution export: root, depth, and one proof per recipient.
inline nlohmann::json export_distribution(const MerkleDistribution& dist) {
    nlohmann::json doc;
    doc["root"] = format_digest(dist.root);
    doc["depth"] = dist.depth;
    auto& proofs = doc["proofs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < dist.recipients.size(); ++i) {
        MerkleProof proof = prove(dist, i);
        nlohmann::json entry;
        entry["address"] = format_address(dist.recipients[i].address);
        entry["amount"] = dist.recipients[i].amount.to_decimal();
        auto& siblings = entry["siblings"] = nlohmann::json::array();
        for (const Digest& s : proof.siblings) siblings.push_back(format_digest(s));
        proofs.push_back(std::move(entry));
    }
    return doc;
}

/// Standalone claim proof: the data one recipient submits.
inline nlohmann::json export_proof(const Recipient& r, const MerkleProof& proof) {
    nlohmann::json doc;
    doc["address"] = format_address(r.address);
    doc["amount"] = r.amount.to_decimal();
    doc["leaf_index"] = proof.leaf_index;
    auto& siblings = doc["siblings"] = nlohmann::json::array();
    for (const Digest& s : proof.siblings) siblings.push_back(format_digest(s));
    return doc;
}

inline std::pair<Recipient, MerkleProof> load_proof(const nlohmann::json& doc) {
    Recipient r{parse_address(doc.at("address").get<std::string>()),
                TokenAmount::from_decimal(doc.at("amount").get<std::string>())};
    MerkleProof proof;
    proof.leaf_index = doc.value("leaf_index", std::size_t{0});
    for (const auto& s : doc.at("siblings")) {
        proof.siblings.push_back(parse_digest(s.get<std::string>()));
    }
    return {r, proof};
}

inline nlohmann::json export_registry(const ClaimRegistry& reg) {
    nlohmann::json doc;
    doc["root"] = format_digest(reg.root);
    doc["deadline"] = reg.deadline;
    doc["total_allocated"] = reg.total_allocated.to_decimal();
    doc["total_claimed"] = reg.total_claimed.to_decimal();
    doc["distributor_balance"] = reg.distributor_balance.to_decimal();
    doc["closed"] = reg.closed;
    auto& claimed = doc["claimed"] = nlohmann::json::array();
    for (const Address& a : reg.claimed) claimed.push_back(format_address(a));
    return doc;
}

inline ClaimRegistry load_registry(const nlohmann::json& doc) {
    ClaimRegistry reg;
    reg.root = parse_digest(doc.at("root").get<std::string>());
    reg.deadline = doc.at("deadline").get<std::int64_t>();
    reg.total_allocated = TokenAmount::from_decimal(doc.at("total_allocated").get<std::string>());
    reg.total_claimed = TokenAmount::from_decimal(doc.at("total_claimed").get<std::string>());
    reg.distributor_balance =
        TokenAmount::from_decimal(doc.at("distributor_balance").get<std::string>());
    reg.closed = doc.value("closed", false);
    for (const auto& a : doc.at("claimed")) {
        reg.claimed.insert(parse_address(a.get<std::string>()));
    }
    return reg;
}

}  // namespace airdrop
