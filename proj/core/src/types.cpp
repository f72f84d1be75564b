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

#include <provchain/types.hpp>

#include <algorithm>
#include <charconv>

namespace provchain {

namespace {

    constexpr char kHexDigits[]{"0123456789abcdef"};

    int hex_value(char c) noexcept {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    }

    constexpr Wei kWeiMax{~Wei{0}};

}  // namespace

std::string to_hex(ByteView data) {
    std::string out;
    out.reserve(2 + data.size() * 2);
    out += "0x";
    for (auto b : data) {
        out += kHexDigits[b >> 4];
        out += kHexDigits[b & 0x0f];
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view text) noexcept {
    if (text.size() < 2 || text[0] != '0' || text[1] != 'x') return std::nullopt;
    text.remove_prefix(2);
    if (text.size() % 2 != 0) return std::nullopt;
    Bytes out(text.size() / 2);
    for (std::size_t i{0}; i < out.size(); ++i) {
        const int hi{hex_value(text[2 * i])};
        const int lo{hex_value(text[2 * i + 1])};
        if (hi < 0 || lo < 0) return std::nullopt;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_string(Wei value) {
    // 128-bit division is slow; peel off 19-digit chunks and let to_chars do the rest
    constexpr std::uint64_t kChunk{10'000'000'000'000'000'000ull};
    char buf[48];
    if (value <= UINT64_MAX) {
        const auto res{std::to_chars(buf, buf + sizeof buf, static_cast<std::uint64_t>(value))};
        return std::string{buf, res.ptr};
    }
    const auto low{static_cast<std::uint64_t>(value % kChunk)};
    std::string out{to_string(value / kChunk)};
    const auto res{std::to_chars(buf, buf + sizeof buf, low)};
    out.append(19 - static_cast<std::size_t>(res.ptr - buf), '0');
    out.append(buf, res.ptr);
    return out;
}

std::optional<Wei> parse_wei(std::string_view digits) noexcept {
    if (digits.empty()) return std::nullopt;
    // no leading zeros, so that every value has exactly one textual form
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    Wei value{0};
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        const auto d{static_cast<unsigned>(c - '0')};
        if (value > (kWeiMax - d) / 10) return std::nullopt;
        value = value * 10 + d;
    }
    return value;
}

std::string format_eth(Wei value) {
    std::string out{to_string(value / kWeiPerEth)};
    Wei frac{value % kWeiPerEth};
    if (frac == 0) return out;
    std::string digits{to_string(frac)};
    digits.insert(0, 18 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    return out + "." + digits;
}

std::string format_eth_rounded(Wei value, unsigned decimals) {
    decimals = std::min(decimals, 18u);
    Wei scale{1};
    for (unsigned i{0}; i < 18 - decimals; ++i) scale *= 10;
    Wei scaled{value / scale};
    if (value % scale >= (scale + 1) / 2 && scale > 1) ++scaled;
    Wei unit{1};
    for (unsigned i{0}; i < decimals; ++i) unit *= 10;
    std::string out{to_string(scaled / unit)};
    if (decimals == 0) return out;
    std::string digits{to_string(scaled % unit)};
    digits.insert(0, decimals - digits.size(), '0');
    return out + "." + digits;
}

std::optional<Wei> parse_decimal_amount(std::string_view text, Wei unit) noexcept {
    const auto dot{text.find('.')};
    std::string_view whole{text.substr(0, dot)};
    std::string_view frac{dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1)};
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (dot != std::string_view::npos && frac.empty()) return std::nullopt;

    Wei value{0};
    for (char c : whole) {
        if (c < '0' || c > '9') return std::nullopt;
        const auto d{static_cast<unsigned>(c - '0')};
        if (value > (kWeiMax - d) / 10) return std::nullopt;
        value = value * 10 + d;
    }
    if (unit != 0 && value > kWeiMax / unit) return std::nullopt;
    value *= unit;

    Wei place{unit};
    for (char c : frac) {
        if (c < '0' || c > '9') return std::nullopt;
        const auto d{static_cast<unsigned>(c - '0')};
        if (place % 10 != 0) {
            if (d != 0) return std::nullopt;  // finer than one wei
            continue;
        }
        place /= 10;
        if (value > kWeiMax - place * d) return std::nullopt;
        value += place * d;
    }
    return value;
}

}  // namespace provchain
