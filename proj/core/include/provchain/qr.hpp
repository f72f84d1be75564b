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

// Text payload carried by a product's QR code.
//
//   acp:v1:<chain_id>:<contract>:<product_id>:<crc32>
//
// chain_id is base-10 without leading zeros, contract is 0x + 40 lowercase hex
// digits, product_id follows the registry charset ([A-Za-z0-9._-], 1-64 chars, so
// it never contains ':'), and crc32 is 8 lowercase hex digits of the IEEE CRC-32
// over the UTF-8 bytes before the final ':'.

#include <cstdint>
#include <string>
#include <string_view>

#include <provchain/types.hpp>

namespace provchain::qr {

inline constexpr std::uint32_t kPayloadVersion{1};

struct QrPayload {
    std::uint32_t version{kPayloadVersion};
    std::uint64_t chain_id{0};
    Address contract;
    std::string product_id;
    std::uint32_t checksum{0};

    friend bool operator==(const QrPayload&, const QrPayload&) = default;
};

class QrError : public std::runtime_error {
  public:
    enum class Code { kBadProductId, kBadPrefix, kBadStructure, kChecksumMismatch };

    QrError(Code code, const std::string& message) : std::runtime_error{message}, code_{code} {}
    [[nodiscard]] Code code() const noexcept { return code_; }

  private:
    Code code_;
};

[[nodiscard]] std::string_view code_name(QrError::Code code) noexcept;

//! CRC-32, IEEE 802.3 polynomial, reflected, init and xor-out 0xffffffff.
[[nodiscard]] std::uint32_t checksum(ByteView data) noexcept;
[[nodiscard]] std::uint32_t checksum(std::string_view data) noexcept;

//! Throws QrError(kBadProductId).
[[nodiscard]] std::string encode_payload(std::uint64_t chain_id, const Address& contract, std::string_view product_id);

//! Parses and verifies. Throws QrError(kBadPrefix | kBadStructure | kChecksumMismatch).
[[nodiscard]] QrPayload decode_payload(std::string_view payload);

//! A payload only speaks for the registry it was printed for.
[[nodiscard]] inline bool binds_to(const QrPayload& p, std::uint64_t chain_id, const Address& contract) noexcept {
    return p.chain_id == chain_id && p.contract == contract;
}

}  // namespace provchain::qr
