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

// Canonical structured-text encoding shared by hashing, signing and persistence.
//
// Rules:
//   * objects emit their members in lexicographic (byte-wise) key order
//   * no insignificant whitespace
//   * integers are non-negative base-10 without leading zeros (up to 128 bits)
//   * byte strings are lowercase `0x` hex, carried as text
//   * lists keep element order
//
// The encoding is a strict subset of JSON, so any JSON tool can read it. Equal
// values always produce identical bytes.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <provchain/types.hpp>

namespace provchain::canon {

class Value;

using Array = std::vector<Value>;
using Object = std::map<std::string, Value, std::less<>>;

class Value {
  public:
    using Storage = std::variant<std::nullptr_t, bool, Wei, std::string, Array, Object>;

    Value() : data_{nullptr} {}
    Value(std::nullptr_t) : data_{nullptr} {}
    Value(bool b) : data_{b} {}
    Value(Wei n) : data_{n} {}
    Value(std::uint64_t n) : data_{Wei{n}} {}
    Value(std::uint32_t n) : data_{Wei{n}} {}
    Value(int n) = delete;
    Value(std::string s) : data_{std::move(s)} {}
    Value(std::string_view s) : data_{std::string{s}} {}
    Value(const char* s) : data_{std::string{s}} {}
    Value(Array a) : data_{std::move(a)} {}
    Value(Object o) : data_{std::move(o)} {}
    template <std::size_t N, typename Tag>
    Value(const FixedBytes<N, Tag>& b) : data_{b.hex()} {}

    [[nodiscard]] bool is_null() const noexcept { return std::holds_alternative<std::nullptr_t>(data_); }
    [[nodiscard]] bool is_object() const noexcept { return std::holds_alternative<Object>(data_); }

    // Typed accessors; throw ParseError on a type mismatch.
    [[nodiscard]] bool as_bool() const;
    [[nodiscard]] Wei as_wei() const;
    [[nodiscard]] std::uint64_t as_u64() const;
    [[nodiscard]] const std::string& as_string() const;
    [[nodiscard]] const Array& as_array() const;
    [[nodiscard]] const Object& as_object() const;

    template <typename Fixed>
    [[nodiscard]] Fixed as_fixed() const {
        return Fixed::from_hex(as_string());
    }

    //! Member lookup; throws ParseError if absent or not an object.
    [[nodiscard]] const Value& at(std::string_view key) const;

    [[nodiscard]] const Storage& storage() const noexcept { return data_; }

    friend bool operator==(const Value&, const Value&) = default;

  private:
    Storage data_;
};

//! Serializes to canonical text.
[[nodiscard]] std::string serialize(const Value& value);
[[nodiscard]] Bytes serialize_bytes(const Value& value);

//! Parses a single document. Accepts any JSON restricted to the value model above
//! (non-negative integers only). Does not check canonical form; compare
//! serialize(parse(x)) with x for that.
[[nodiscard]] Value parse(std::string_view text);

//! Checks that an object has exactly the given member names.
void expect_keys(const Value& object, std::initializer_list<std::string_view> keys, std::string_view what);

}  // namespace provchain::canon
