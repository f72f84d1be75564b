/*
   Copyright 2026 The Provchain Authors

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

// Independent CRC-32 and payload builder for checking the QR codec. Bitwise, no tables,
// no zlib.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace provchain::test {

inline std::uint32_t crc32_bitwise(std::string_view data) {
    std::uint32_t crc{0xffffffffu};
    for (unsigned char c : data) {
        crc ^= c;
        for (int k{0}; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
    }
    return ~crc;
}

inline std::string hex8_oracle(std::uint32_t v) {
    static constexpr char kDigits[]{"0123456789abcdef"};
    std::string out(8, '0');
    for (int i{7}; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    return out;
}

//! acp:v1:<chain>:<contract>:<id>:<crc>, assembled by hand.
inline std::string payload_oracle(std::uint64_t chain_id, std::string_view contract_hex, std::string_view id) {
    std::string body{"acp:v1:" + std::to_string(chain_id) + ":" + std::string{contract_hex} + ":" + std::string{id}};
    return body + ":" + hex8_oracle(crc32_bitwise(body));
}

inline constexpr std::string_view kIdAlphabet{"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789._-"};

template <class Rng>
std::string random_product_id(Rng& rng) {
    std::uniform_int_distribution<std::size_t> len{1, 64};
    std::uniform_int_distribution<std::size_t> pick{0, kIdAlphabet.size() - 1};
    std::string id(len(rng), ' ');
    for (auto& c : id) c = kIdAlphabet[pick(rng)];
    return id;
}

}  // namespace provchain::test
