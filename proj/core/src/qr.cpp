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

#include <provchain/qr.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <vector>

#include <zlib.h>

#include <provchain/state.hpp>

namespace provchain::qr {

namespace {

    constexpr std::string_view kPrefix{"acp:v1:"};

    std::string hex8(std::uint32_t v) {
        std::array<char, 9> buf{};
        std::snprintf(buf.data(), buf.size(), "%08x", v);
        return std::string{buf.data(), 8};
    }

    std::vector<std::string_view> split(std::string_view s, char sep) {
        std::vector<std::string_view> out;
        std::size_t start{0};
        for (std::size_t i{0}; i <= s.size(); ++i) {
            if (i == s.size() || s[i] == sep) {
                out.push_back(s.substr(start, i - start));
                start = i + 1;
            }
        }
        return out;
    }

    [[noreturn]] void structure(const std::string& what) { throw QrError{QrError::Code::kBadStructure, what}; }

    std::uint64_t parse_chain_id(std::string_view s) {
        if (s.empty() || s.size() > 20 || (s.size() > 1 && s[0] == '0')) structure("malformed chain id");
        auto wide{parse_wei(s)};
        if (!wide || *wide > Wei{UINT64_MAX}) structure("malformed chain id");
        return static_cast<std::uint64_t>(*wide);
    }

    std::uint32_t parse_crc(std::string_view s) {
        if (s.size() != 8) structure("checksum must be 8 hex digits");
        std::uint32_t v{0};
        for (char c : s) {
            v <<= 4;
            if (c >= '0' && c <= '9') {
                v |= static_cast<std::uint32_t>(c - '0');
            } else if (c >= 'a' && c <= 'f') {
                v |= static_cast<std::uint32_t>(c - 'a' + 10);
            } else {
                structure("checksum must be lowercase hex");
            }
        }
        return v;
    }

}  // namespace

std::string_view code_name(QrError::Code code) noexcept {
    switch (code) {
        case QrError::Code::kBadProductId: return "BadProductId";
        case QrError::Code::kBadPrefix: return "BadPrefix";
        case QrError::Code::kBadStructure: return "BadStructure";
        case QrError::Code::kChecksumMismatch: return "ChecksumMismatch";
    }
    return "?";
}

std::uint32_t checksum(ByteView data) noexcept {
    uLong crc{crc32(0L, Z_NULL, 0)};
    // zlib takes uInt lengths
    while (!data.empty()) {
        const auto n{static_cast<uInt>(std::min<std::size_t>(data.size(), 1u << 30))};
        crc = crc32(crc, data.data(), n);
        data = data.subspan(n);
    }
    return static_cast<std::uint32_t>(crc);
}

std::uint32_t checksum(std::string_view data) noexcept {
    return checksum(ByteView{reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
}

std::string encode_payload(std::uint64_t chain_id, const Address& contract, std::string_view product_id) {
    if (!is_valid_product_id(product_id)) {
        throw QrError{QrError::Code::kBadProductId, "invalid product id '" + std::string{product_id} + "'"};
    }
    std::string body{kPrefix};
    body += std::to_string(chain_id);
    body += ':';
    body += contract.hex();
    body += ':';
    body += product_id;
    return body + ':' + hex8(checksum(body));
}

QrPayload decode_payload(std::string_view payload) {
    if (payload.substr(0, kPrefix.size()) != kPrefix) {
        throw QrError{QrError::Code::kBadPrefix, "payload does not start with acp:v1:"};
    }
    const auto fields{split(payload, ':')};
    if (fields.size() != 6) structure("expected 6 ':'-separated fields, found " + std::to_string(fields.size()));

    QrPayload out;
    out.version = kPayloadVersion;
    out.chain_id = parse_chain_id(fields[2]);
    auto contract{Address::try_from_hex(fields[3])};
    if (!contract) structure("contract must be 0x followed by 40 lowercase hex digits");
    out.contract = *contract;
    if (!is_valid_product_id(fields[4])) structure("malformed product id");
    out.product_id = std::string{fields[4]};
    out.checksum = parse_crc(fields[5]);

    const auto body{payload.substr(0, payload.rfind(':'))};
    if (checksum(body) != out.checksum) {
        throw QrError{QrError::Code::kChecksumMismatch, "checksum mismatch: payload carries " + hex8(out.checksum) +
                                                            ", content hashes to " + hex8(checksum(body))};
    }
    return out;
}

}  // namespace provchain::qr
