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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace provchain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

//! Gas units.
using Gas = std::uint64_t;

//! Currency amounts are integer wei; 128 bits so that gas × price can never overflow.
__extension__ typedef unsigned __int128 Wei;

//! Logical seconds since genesis. Never wall-clock.
using Timestamp = std::uint64_t;

inline constexpr Wei kWeiPerEth{1'000'000'000'000'000'000ull};
inline constexpr Wei kWeiPerGwei{1'000'000'000ull};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Fixed-size byte string rendered as lowercase `0x` hex.
template <std::size_t N, typename Tag>
struct FixedBytes {
    static constexpr std::size_t kSize{N};

    std::array<std::uint8_t, N> bytes{};

    [[nodiscard]] std::string hex() const;
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] ByteView view() const noexcept { return {bytes.data(), bytes.size()}; }

    //! Strict parse: `0x` followed by exactly 2N lowercase hex digits.
    static FixedBytes from_hex(std::string_view text);
    static std::optional<FixedBytes> try_from_hex(std::string_view text) noexcept;

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

struct HashTag {};
struct AddressTag {};
struct PublicKeyTag {};
struct SecretKeyTag {};
struct SignatureTag {};

using Hash = FixedBytes<32, HashTag>;
using Address = FixedBytes<20, AddressTag>;
using PublicKey = FixedBytes<32, PublicKeyTag>;
using SecretKey = FixedBytes<64, SecretKeyTag>;
using Signature = FixedBytes<64, SignatureTag>;

// hex helpers

[[nodiscard]] std::string to_hex(ByteView data);
//! Accepts `0x` + even number of lowercase hex digits.
[[nodiscard]] std::optional<Bytes> from_hex(std::string_view text) noexcept;

// wei / integer helpers

[[nodiscard]] std::string to_string(Wei value);
[[nodiscard]] std::optional<Wei> parse_wei(std::string_view digits) noexcept;

//! Exact ETH rendering with all 18 decimals, trailing zeros trimmed ("0.00064428").
[[nodiscard]] std::string format_eth(Wei value);
//! ETH rounded half-up to `decimals` places, always printed with that many digits.
[[nodiscard]] std::string format_eth_rounded(Wei value, unsigned decimals);
//! Parses a non-negative decimal amount of `unit` (e.g. "1.1" gwei). Rejects excess precision.
[[nodiscard]] std::optional<Wei> parse_decimal_amount(std::string_view text, Wei unit) noexcept;

template <std::size_t N, typename Tag>
std::string FixedBytes<N, Tag>::hex() const {
    return to_hex(view());
}

template <std::size_t N, typename Tag>
bool FixedBytes<N, Tag>::is_zero() const noexcept {
    for (auto b : bytes) {
        if (b != 0) return false;
    }
    return true;
}

template <std::size_t N, typename Tag>
std::optional<FixedBytes<N, Tag>> FixedBytes<N, Tag>::try_from_hex(std::string_view text) noexcept {
    auto raw{provchain::from_hex(text)};
    if (!raw || raw->size() != N) return std::nullopt;
    FixedBytes out;
    std::copy(raw->begin(), raw->end(), out.bytes.begin());
    return out;
}

template <std::size_t N, typename Tag>
FixedBytes<N, Tag> FixedBytes<N, Tag>::from_hex(std::string_view text) {
    auto out{try_from_hex(text)};
    if (!out) {
        throw ParseError{"expected 0x-prefixed lowercase hex of " + std::to_string(N) + " bytes"};
    }
    return *out;
}

}  // namespace provchain
