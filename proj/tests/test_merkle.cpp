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

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "airdrop/merkle.hpp"
#include "airdrop/merkle_io.hpp"

using namespace airdrop;

namespace {

Address addr_from_u64(std::uint64_t v) {
    Address a{};
    for (int i = 19; i >= 12; --i) {
        a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return a;
}

std::vector<Recipient> make_recipients(std::size_t n, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::vector<Recipient> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // index-derived addresses stay unique; amounts are random
        out.push_back({addr_from_u64(0x1000 + i), TokenAmount::from_u64(1 + rng() % 1'000'000)});
    }
    return out;
}

}  // namespace

TEST_CASE("keccak-256 known vectors") {
    CHECK(format_digest(keccak256({})) ==
          "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    const std::uint8_t abc[] = {'a', 'b', 'c'};
    CHECK(format_digest(keccak256(abc)) ==
          "0x4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    std::vector<std::uint8_t> rate_block(136, 'x');  // exactly one sponge block
    CHECK(keccak256(rate_block) != keccak256(std::vector<std::uint8_t>(135, 'x')));
}

TEST_CASE("token amounts") {
    CHECK(TokenAmount::from_u64(0).to_decimal() == "0");
    CHECK(TokenAmount::from_decimal("12345678901234567890123456789").to_decimal() ==
          "12345678901234567890123456789");
    CHECK(TokenAmount::from_decimal("255").bytes[31] == 0xff);
    CHECK(TokenAmount::from_u64(1000) == TokenAmount::from_decimal("1000"));
    CHECK_THROWS_AS(TokenAmount::from_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(TokenAmount::from_decimal("12x"), std::invalid_argument);
    CHECK_THROWS_AS(TokenAmount::from_decimal(std::string(90, '9')), std::out_of_range);

    CHECK(checked_add(TokenAmount::from_u64(7), TokenAmount::from_u64(5)) ==
          TokenAmount::from_u64(12));
    CHECK(checked_sub(TokenAmount::from_u64(7), TokenAmount::from_u64(5)) ==
          TokenAmount::from_u64(2));
    CHECK_THROWS_AS(checked_sub(TokenAmount::from_u64(1), TokenAmount::from_u64(2)),
                    std::underflow_error);
    TokenAmount max;
    max.bytes.fill(0xff);
    CHECK_THROWS_AS(checked_add(max, TokenAmount::from_u64(1)), std::overflow_error);
}

TEST_CASE("address formatting") {
    Address a = addr_from_u64(0xdeadbeef);
    CHECK(parse_address(format_address(a)) == a);
    CHECK(format_address(a) == "0x00000000000000000000000000000000deadbeef");
    CHECK_THROWS_AS(parse_address("0x123"), std::invalid_argument);
    CHECK_THROWS_AS(parse_address("0x00000000000000000000000000000000DEADBEEF" ),
                    std::invalid_argument);
}

TEST_CASE("recipient list parsing") {
    std::istringstream in(
        "0x00000000000000000000000000000000000010a1,500\n"
        "\n"
        "0x00000000000000000000000000000000000010a2,1\r\n");
    auto list = parse_recipient_list(in);
    REQUIRE(list.size() == 2);
    CHECK(list[0].amount == TokenAmount::from_u64(500));
    CHECK(list[1].address[19] == 0xa2);

    std::istringstream bad("0x00000000000000000000000000000000000010a1,500\nnonsense\n");
    CHECK_THROWS_WITH(parse_recipient_list(bad),
                      Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("tree shape") {
    SECTION("single recipient: the leaf is the root") {
        auto r = make_recipients(1);
        MerkleDistribution d = build(r);
        CHECK(d.depth == 0);
        CHECK(d.root == leaf_hash(r[0]));
        MerkleProof p = prove(d, 0);
        CHECK(p.siblings.empty());
        CHECK(verify(d.root, r[0], p));
    }
    SECTION("two recipients") {
        auto r = make_recipients(2);
        MerkleDistribution d = build(r);
        CHECK(d.depth == 1);
        CHECK(d.root == node_hash(leaf_hash(r[0]), leaf_hash(r[1])));
    }
    SECTION("depth is the base-2 ceiling") {
        CHECK(build(make_recipients(3)).depth == 2);
        CHECK(build(make_recipients(4)).depth == 2);
        CHECK(build(make_recipients(5)).depth == 3);
        CHECK(build(make_recipients(1000)).depth == 10);
    }
    SECTION("rejects empty and duplicate input") {
        CHECK_THROWS_AS(build({}), std::invalid_argument);
        auto r = make_recipients(3);
        r[2].address = r[0].address;
        CHECK_THROWS_AS(build(r), std::invalid_argument);
    }
    SECTION("node hashing is order independent") {
        Digest a = leaf_hash(make_recipients(2)[0]);
        Digest b = leaf_hash(make_recipients(2)[1]);
        CHECK(node_hash(a, b) == node_hash(b, a));
    }
    SECTION("root commits to every amount") {
        auto r = make_recipients(8);
        Digest root = build(r).root;
        r[5].amount = checked_add(r[5].amount, TokenAmount::from_u64(1));
        CHECK(build(r).root != root);
    }
}

TEST_CASE("proof completeness over varied sizes") {
    std::mt19937_64 rng(42);
    for (std::size_t n : {1u, 2u, 3u, 7u, 33u, 100u, 255u, 300u}) {
        auto r = make_recipients(n, rng());
        MerkleDistribution d = build(r);
        for (std::size_t i = 0; i < n; ++i) {
            MerkleProof p = prove(d, i);
            INFO("n=" << n << " i=" << i);
            CHECK(verify(d.root, r[i], p));
        }
        CHECK_THROWS_AS(prove(d, n), std::out_of_range);
    }
}

TEST_CASE("proof soundness under mutation") {
    auto r = make_recipients(100, 7);
    MerkleDistribution d = build(r);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t i = rng() % r.size();
        MerkleProof p = prove(d, i);
        Recipient claimant = r[i];
        switch (rng() % 4) {
            case 0:  // wrong amount
                claimant.amount = checked_add(claimant.amount, TokenAmount::from_u64(1));
                break;
            case 1:  // wrong address
                claimant.address = addr_from_u64(0xbad000 + static_cast<std::uint64_t>(trial));
                break;
            case 2: {  // corrupted sibling
                if (p.siblings.empty()) continue;
                std::size_t k = rng() % p.siblings.size();
                p.siblings[k][rng() % 32] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                break;
            }
            default:  // truncated proof
                if (p.siblings.empty()) continue;
                p.siblings.pop_back();
                break;
        }
        INFO("trial " << trial);
        CHECK_FALSE(verify(d.root, claimant, p));
    }
    SECTION("a proof only opens its own leaf") {
        MerkleProof p = prove(d, 3);
        CHECK_FALSE(verify(d.root, r[4], p));
    }
}

TEST_CASE("construction is deterministic") {
    auto r = make_recipients(50, 9);
    CHECK(build(r).root == build(r).root);
    auto reordered = r;
    // swapping leaves across pairs changes the commitment; within a pair the
    // sorted node hash makes order irrelevant
    std::swap(reordered[0], reordered[2]);
    CHECK(build(reordered).root != build(r).root);
    auto pair_swapped = r;
    std::swap(pair_swapped[0], pair_swapped[1]);
    CHECK(build(pair_swapped).root == build(r).root);
}

TEST_CASE("claim lifecycle") {
    auto r = make_recipients(10, 3);
    MerkleDistribution d = build(r);
    ClaimRegistry reg = make_registry(d, 100);

    SECTION("accepts each valid claim once") {
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(claim(reg, r[i], prove(d, i), 10) == ClaimResult::Accepted);
        }
        CHECK(claim(reg, r[2], prove(d, 2), 11) == ClaimResult::AlreadyClaimed);
        CHECK(reg.claimed.size() == 5);

        TokenAmount expect{};
        for (std::size_t i = 0; i < 5; ++i) expect = checked_add(expect, r[i].amount);
        CHECK(reg.total_claimed == expect);
        CHECK(checked_add(reg.total_claimed, reg.distributor_balance) == reg.total_allocated);
    }
    SECTION("rejects bad proofs without mutating state") {
        Recipient fake = r[0];
        fake.amount = checked_add(fake.amount, TokenAmount::from_u64(1));
        ClaimRegistry before = reg;
        CHECK(claim(reg, fake, prove(d, 0), 10) == ClaimResult::InvalidProof);
        CHECK(reg.claimed == before.claimed);
        CHECK(reg.total_claimed == before.total_claimed);
    }
    SECTION("deadline") {
        CHECK(claim(reg, r[0], prove(d, 0), 100) == ClaimResult::Accepted);  // at the deadline
        CHECK(claim(reg, r[1], prove(d, 1), 101) == ClaimResult::PastDeadline);
    }
    SECTION("reclaim returns the remainder and closes the pool") {
        CHECK(claim(reg, r[0], prove(d, 0), 10) == ClaimResult::Accepted);
        CHECK_THROWS_AS(reclaim(reg, 100), BeforeDeadline);
        TokenAmount returned = reclaim(reg, 101);
        CHECK(returned == checked_sub(reg.total_allocated, r[0].amount));
        CHECK(reg.distributor_balance == TokenAmount{});
        CHECK(reg.closed);
        // claims after the reclaim are refused even with a valid proof
        CHECK(claim(reg, r[1], prove(d, 1), 50) == ClaimResult::PastDeadline);
    }
    SECTION("conservation holds across a random claim sequence") {
        std::mt19937_64 rng(11);
        for (int step = 0; step < 30; ++step) {
            std::size_t i = rng() % r.size();
            claim(reg, r[i], prove(d, i), static_cast<std::int64_t>(step));
            CHECK(checked_add(reg.total_claimed, reg.distributor_balance) == reg.total_allocated);
        }
    }
}

TEST_CASE("distribution and proof serialization round-trips") {
    auto r = make_recipients(9, 5);
    MerkleDistribution d = build(r);

    nlohmann::json dist_doc = export_distribution(d);
    CHECK(dist_doc.at("root") == format_digest(d.root));
    CHECK(dist_doc.at("depth") == d.depth);
    REQUIRE(dist_doc.at("proofs").size() == r.size());

    for (std::size_t i = 0; i < r.size(); ++i) {
        MerkleProof p = prove(d, i);
        std::string text = export_proof(r[i], p).dump();
        auto [recipient, proof] = load_proof(nlohmann::json::parse(text));
        CHECK(recipient == r[i]);
        CHECK(proof.leaf_index == p.leaf_index);
        CHECK(proof.siblings == p.siblings);
        CHECK(verify(d.root, recipient, proof));
    }
}

TEST_CASE("registry serialization round-trips") {
    auto r = make_recipients(10, 13);
    MerkleDistribution d = build(r);
    ClaimRegistry reg = make_registry(d, 500);
    for (std::size_t i = 0; i < 5; ++i) {
        REQUIRE(claim(reg, r[i], prove(d, i), 10) == ClaimResult::Accepted);
    }

    ClaimRegistry loaded = load_registry(nlohmann::json::parse(export_registry(reg).dump()));
    CHECK(loaded.root == reg.root);
    CHECK(loaded.claimed == reg.claimed);
    CHECK(loaded.total_allocated == reg.total_allocated);
    CHECK(loaded.total_claimed == reg.total_claimed);
    CHECK(loaded.deadline == reg.deadline);
    CHECK(loaded.distributor_balance == reg.distributor_balance);
    CHECK(loaded.closed == reg.closed);

    // the reloaded registry keeps enforcing single claims
    CHECK(claim(loaded, r[0], prove(d, 0), 20) == ClaimResult::AlreadyClaimed);
    CHECK(claim(loaded, r[7], prove(d, 7), 20) == ClaimResult::Accepted);
}

TEST_CASE("digest text form") {
    Digest d{};
    d[0] = 0xab;
    d[31] = 0x01;
    CHECK(parse_digest(format_digest(d)) == d);
    CHECK_THROWS_AS(parse_digest("zz"), std::invalid_argument);
}
