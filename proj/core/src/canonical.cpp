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

#include <provchain/canonical.hpp>

#include <algorithm>

#include <nlohmann/json.hpp>

namespace provchain::canon {

namespace {

    void write_string(std::string& out, std::string_view s) {
        static constexpr char kHex[]{"0123456789abcdef"};
        out += '"';
        for (std::size_t i{0}; i < s.size(); ++i) {
            // copy runs that need no escaping in one go
            std::size_t run{i};
            while (run < s.size() && static_cast<unsigned char>(s[run]) >= 0x20 && s[run] != '"' && s[run] != '\\') ++run;
            if (run != i) {
                out.append(s.data() + i, run - i);
                i = run;
                if (i == s.size()) break;
            }
            const char ch{s[i]};
            const auto c{static_cast<unsigned char>(ch)};
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                case '\b': out += "\\b"; break;
                case '\f': out += "\\f"; break;
                default:
                    if (c < 0x20) {
                        out += "\\u00";
                        out += kHex[c >> 4];
                        out += kHex[c & 0x0f];
                    } else {
                        out += ch;
                    }
            }
        }
        out += '"';
    }

    void write(std::string& out, const Value& value) {
        std::visit(
            [&out](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::nullptr_t>) {
                    out += "null";
                } else if constexpr (std::is_same_v<T, bool>) {
                    out += v ? "true" : "false";
                } else if constexpr (std::is_same_v<T, Wei>) {
                    out += to_string(v);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    write_string(out, v);
                } else if constexpr (std::is_same_v<T, Array>) {
                    out += '[';
                    for (std::size_t i{0}; i < v.size(); ++i) {
                        if (i) out += ',';
                        write(out, v[i]);
                    }
                    out += ']';
                } else {
                    out += '{';
                    bool first{true};
                    for (const auto& [key, member] : v) {
                        if (!first) out += ',';
                        first = false;
                        write_string(out, key);
                        out += ':';
                        write(out, member);
                    }
                    out += '}';
                }
            },
            value.storage());
    }

    // SAX handler building a canon::Value. Numbers arrive either as integers or,
    // past 64 bits, as floats together with their source text.
    class Builder {
      public:
        using json = nlohmann::json;

        bool null() { return put(Value{nullptr}); }
        bool boolean(bool b) { return put(Value{b}); }
        bool number_integer(json::number_integer_t n) {
            if (n < 0) return fail("negative integers are not representable");
            return put(Value{static_cast<std::uint64_t>(n)});
        }
        bool number_unsigned(json::number_unsigned_t n) { return put(Value{static_cast<std::uint64_t>(n)}); }
        bool number_float(json::number_float_t, const std::string& text) {
            auto wide{parse_wei(text)};
            if (!wide) return fail("non-integer or out-of-range number '" + text + "'");
            return put(Value{*wide});
        }
        bool string(std::string& s) { return put(Value{std::move(s)}); }
        bool binary(json::binary_t&) { return fail("binary values are not supported"); }

        bool start_object(std::size_t) {
            if (stack_.size() >= kMaxDepth) return fail("nesting deeper than " + std::to_string(kMaxDepth));
            stack_.push_back(Frame{Object{}, {}});
            return true;
        }
        bool key(std::string& k) {
            auto& obj{std::get<Object>(stack_.back().container)};
            if (obj.contains(k)) return fail("duplicate key '" + k + "'");
            stack_.back().pending_key = std::move(k);
            return true;
        }
        bool end_object() { return close(); }
        bool start_array(std::size_t) {
            if (stack_.size() >= kMaxDepth) return fail("nesting deeper than " + std::to_string(kMaxDepth));
            stack_.push_back(Frame{Array{}, {}});
            return true;
        }
        bool end_array() { return close(); }

        bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
            error_ = "at byte " + std::to_string(position) + ": " + ex.what();
            return false;
        }

        Value take() { return std::move(result_); }
        [[nodiscard]] const std::string& error() const { return error_; }

      private:
        // every document this project writes is at most a few levels deep
        static constexpr std::size_t kMaxDepth{32};

        struct Frame {
            std::variant<Array, Object> container;
            std::string pending_key;
        };

        bool put(Value v) {
            if (stack_.empty()) {
                result_ = std::move(v);
                return true;
            }
            auto& top{stack_.back()};
            if (auto* arr{std::get_if<Array>(&top.container)}) {
                arr->push_back(std::move(v));
            } else {
                std::get<Object>(top.container).emplace(std::move(top.pending_key), std::move(v));
            }
            return true;
        }

        bool close() {
            Frame frame{std::move(stack_.back())};
            stack_.pop_back();
            return std::visit([this](auto&& c) { return put(Value{std::move(c)}); }, std::move(frame.container));
        }

        bool fail(std::string message) {
            error_ = std::move(message);
            return false;
        }

        std::vector<Frame> stack_;
        Value result_;
        std::string error_;
    };

    std::string_view type_name(const Value& v) {
        static constexpr std::string_view kNames[]{"null", "bool", "integer", "string", "array", "object"};
        return kNames[v.storage().index()];
    }

    [[noreturn]] void type_error(const Value& v, std::string_view wanted) {
        throw ParseError{"expected " + std::string{wanted} + ", found " + std::string{type_name(v)}};
    }

}  // namespace

bool Value::as_bool() const {
    if (auto* b{std::get_if<bool>(&data_)}) return *b;
    type_error(*this, "bool");
}

Wei Value::as_wei() const {
    if (auto* n{std::get_if<Wei>(&data_)}) return *n;
    type_error(*this, "integer");
}

std::uint64_t Value::as_u64() const {
    const Wei n{as_wei()};
    if (n > Wei{UINT64_MAX}) throw ParseError{"integer exceeds 64 bits"};
    return static_cast<std::uint64_t>(n);
}

const std::string& Value::as_string() const {
    if (auto* s{std::get_if<std::string>(&data_)}) return *s;
    type_error(*this, "string");
}

const Array& Value::as_array() const {
    if (auto* a{std::get_if<Array>(&data_)}) return *a;
    type_error(*this, "array");
}

const Object& Value::as_object() const {
    if (auto* o{std::get_if<Object>(&data_)}) return *o;
    type_error(*this, "object");
}

const Value& Value::at(std::string_view key) const {
    const auto& obj{as_object()};
    auto it{obj.find(key)};
    if (it == obj.end()) throw ParseError{"missing field '" + std::string{key} + "'"};
    return it->second;
}

std::string serialize(const Value& value) {
    std::string out;
    out.reserve(256);
    write(out, value);
    return out;
}

Bytes serialize_bytes(const Value& value) {
    const std::string text{serialize(value)};
    return Bytes(text.begin(), text.end());
}

Value parse(std::string_view text) {
    Builder builder;
    const bool ok{nlohmann::json::sax_parse(text.begin(), text.end(), &builder,
                                            nlohmann::json::input_format_t::json, /*strict=*/true)};
    if (!ok) throw ParseError{builder.error().empty() ? "malformed document" : builder.error()};
    return builder.take();
}

void expect_keys(const Value& object, std::initializer_list<std::string_view> keys, std::string_view what) {
    const auto& obj{object.as_object()};
    for (auto k : keys) {
        if (!obj.contains(k)) throw ParseError{std::string{what} + ": missing field '" + std::string{k} + "'"};
    }
    if (obj.size() != keys.size()) {
        for (const auto& [k, _] : obj) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                throw ParseError{std::string{what} + ": unexpected field '" + k + "'"};
            }
        }
    }
}

}  // namespace provchain::canon
