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

#include <sstream>
#include <vector>

#include "airdrop/gas_model.hpp"
#include "airdrop/gas_schedule.hpp"

using namespace airdrop;

TEST_CASE("input word cost") {
    CHECK(input_word_cost(20) == 1408);
    CHECK(input_word_cost(2) == 256);
    CHECK(input_word_cost(0) == 128);
    CHECK(input_word_cost(32) == 2176);
    CHECK_THROWS_AS(input_word_cost(-1), std::domain_error);
    CHECK_THROWS_AS(input_word_cost(33), std::domain_error);

    SECTION("affine with slope 64 per nonzero byte") {
        for (int k = 1; k <= 32; ++k) {
            CHECK(input_word_cost(k) - input_word_cost(k - 1) == 64);
        }
    }
}

TEST_CASE("calldata cost") {
    CHECK(calldata_cost(std::span<const std::uint8_t>{}) == 0);
    CHECK(calldata_cost(32, 20) == 1408);
    CHECK(calldata_cost(68, 26) == 1936);  // transfer(address,uint256) with a 2-byte amount

    SECTION("agrees with word pricing for every fill level") {
        for (int k = 0; k <= 32; ++k) {
            std::vector<std::uint8_t> word(32, 0);
            for (int i = 0; i < k; ++i) word[static_cast<std::size_t>(i)] = 0xab;
            CHECK(calldata_cost(word) == input_word_cost(k));
        }
    }
    CHECK_THROWS_AS(calldata_cost(10, 11), std::domain_error);
}

TEST_CASE("log cost") {
    CHECK(log_cost(3, 32) == 1756);  // Transfer event shape
    CHECK(log_cost(0, 0) == 375);
    CHECK(log_cost(1, 64) == 1262);
}

TEST_CASE("keccak cost") {
    CHECK(keccak_cost(64) == 42);
    CHECK(keccak_cost(0) == 30);
    CHECK(keccak_cost(33) == 42);  // rounds up to two words
}

TEST_CASE("sstore cost") {
    CHECK(sstore_cost(true, false).gas == 20000);
    CHECK(sstore_cost(true, false).refund == 0);
    CHECK(sstore_cost(false, false).gas == 5000);
    CHECK(sstore_cost(false, true).gas == 5000);
    CHECK(sstore_cost(false, true).refund == 15000);
    CHECK(sstore_cost(true, true).gas == 5000);
    CHECK(sstore_cost(true, true).refund == 0);
}

TEST_CASE("refund cap") {
    CHECK(capped_refund(56100, 15000) == 15000);
    CHECK(capped_refund(20000, 15000) == 10000);
    CHECK(capped_refund(0, 15000) == 0);
}

TEST_CASE("cost functions are monotone in their size arguments") {
    for (gas_t b = 1; b <= 200; ++b) {
        CHECK(calldata_cost(b, 0) >= calldata_cost(b - 1, 0));
        CHECK(keccak_cost(b) >= keccak_cost(b - 1));
        CHECK(log_cost(2, b) >= log_cost(2, b - 1));
    }
}

TEST_CASE("schedule overrides") {
    std::istringstream in("g_tx=30000\n# comment\nblock_gas_limit=8000000\n");
    GasSchedule s = load_schedule_overrides(in);
    CHECK(s.g_tx == 30000);
    CHECK(s.block_gas_limit == 8000000);
    CHECK(s.g_sstore_new == 20000);

    std::istringstream bad_key("nonsense=5\n");
    CHECK_THROWS_AS(load_schedule_overrides(bad_key), std::invalid_argument);

    std::istringstream bad_value("g_calldata_nonzero=2\n");  // below the zero-byte price
    CHECK_THROWS_AS(load_schedule_overrides(bad_value), std::invalid_argument);
}
