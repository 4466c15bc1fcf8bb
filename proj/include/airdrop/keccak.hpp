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

#include <array>
#include <cstdint>
#include <cstring>
#include <span>

namespace airdrop {

using Digest = std::array<std::uint8_t, 32>;

namespace detail {

inline constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

inline constexpr int kRotations[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                       27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

inline constexpr int kPiLane[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                    15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl64(std::uint64_t v, int shift) {
    return (v << shift) | (v >> (64 - shift));
}

inline void keccak_f1600(std::uint64_t state[25]) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t c[5];
        for (int x = 0; x < 5; ++x) {
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        }
        for (int x = 0; x < 5; ++x) {
            std::uint64_t d = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5) state[x + y] ^= d;
        }
        // rho and pi
        std::uint64_t last = state[1];
        for (int i = 0; i < 24; ++i) {
            int lane = kPiLane[i];
            std::uint64_t tmp = state[lane];
            state[lane] = rotl64(last, kRotations[i]);
            last = tmp;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            std::uint64_t row[5];
            std::memcpy(row, &state[y], sizeof(row));
            for (int x = 0; x < 5; ++x) {
                state[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
            }
        }
        // iota
        state[0] ^= kRoundConstants[round];
    }
}

}  // namespace detail

/// Keccak-256 (original 0x01 padding, as used on-chain; not NIST SHA3-256).
inline Digest keccak256(std::span<const std::uint8_t> data) {
    constexpr std::size_t kRate = 136;
    std::uint64_t state[25] = {};
    std::uint8_t block[kRate];

    std::size_t offset = 0;
    auto absorb = [&](const std::uint8_t* chunk) {
        for (std::size_t i = 0; i < kRate / 8; ++i) {
            std::uint64_t lane;
            std::memcpy(&lane, chunk + 8 * i, 8);  // little-endian hosts only
            state[i] ^= lane;
        }
        detail::keccak_f1600(state);
    };

    while (data.size() - offset >= kRate) {
        absorb(data.data() + offset);
        offset += kRate;
    }
    std::size_t tail = data.size() - offset;
    std::memset(block, 0, kRate);
    if (tail > 0) std::memcpy(block, data.data() + offset, tail);
    block[tail] ^= 0x01;
    block[kRate - 1] ^= 0x80;
    absorb(block);

    Digest out;
    std::memcpy(out.data(), state, out.size());
    return out;
}

}  // namespace airdrop
