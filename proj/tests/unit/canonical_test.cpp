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

#include <random>

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <provchain/canonical.hpp>

namespace provchain::canon {

namespace {

    Value random_value(std::mt19937_64& rng, int depth) {
        const auto pick{rng() % (depth > 2 ? 4 : 6)};
        switch (pick) {
            case 0: return Value{};
            case 1: return Value{rng() % 2 == 0};
            case 2: return Value{static_cast<std::uint64_t>(rng() >> (rng() % 64))};
            case 3: {
                static const std::string kAlphabet{"abcXYZ019 _-\"\\\n\t\x01\x1f/"};
                std::string s;
                for (auto n{rng() % 12}; n > 0; --n) s += kAlphabet[rng() % kAlphabet.size()];
                return Value{s};
            }
            case 4: {
                Array a;
                for (auto n{rng() % 4}; n > 0; --n) a.push_back(random_value(rng, depth + 1));
                return Value{std::move(a)};
            }
            default: {
                Object o;
                for (auto n{rng() % 4}; n > 0; --n) o["k" + std::to_string(rng() % 20)] = random_value(rng, depth + 1);
                return Value{std::move(o)};
            }
        }
    }

    nlohmann::json to_json(const Value& v) {
        return std::visit(
            [](const auto& x) -> nlohmann::json {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::nullptr_t>) {
                    return nullptr;
                } else if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string>) {
                    return x;
                } else if constexpr (std::is_same_v<T, Wei>) {
                    return static_cast<std::uint64_t>(x);
                } else if constexpr (std::is_same_v<T, Array>) {
                    nlohmann::json out = nlohmann::json::array();
                    for (const auto& e : x) out.push_back(to_json(e));
                    return out;
                } else {
                    nlohmann::json out = nlohmann::json::object();
                    for (const auto& [k, e] : x) out[k] = to_json(e);
                    return out;
                }
            },
            v.storage());
    }

}  // namespace

TEST_CASE("canonical text is compact and key-sorted") {
    const Value v{Object{{"b", std::uint64_t{2}}, {"a", Array{Value{true}, Value{}, Value{"x"}}}}};
    CHECK(serialize(v) == R"({"a":[true,null,"x"],"b":2})");
    CHECK(serialize(Value{"q\"\\\n\x01"}) == R"("q\"\\\n\u0001")");
    CHECK(serialize(Value{Wei{~Wei{0}}}) == "340282366920938463463374607431768211455");
}

TEST_CASE("serialization agrees with an independent JSON encoder") {
    // nlohmann's dump() with its default std::map object type sorts keys and adds no whitespace
    std::mt19937_64 rng{7};
    for (int i{0}; i < 2000; ++i) {
        const Value v{random_value(rng, 0)};
        REQUIRE(serialize(v) == to_json(v).dump());
    }
}

TEST_CASE("parse then serialize is the identity on canonical text") {
    std::mt19937_64 rng{11};
    for (int i{0}; i < 2000; ++i) {
        const Value v{random_value(rng, 0)};
        const std::string text{serialize(v)};
        const Value back{parse(text)};
        REQUIRE(back == v);
        REQUIRE(serialize(back) == text);
    }
}

TEST_CASE("integers wider than 64 bits survive parsing") {
    const Value v{parse(R"({"n":340282366920938463463374607431768211455})")};
    CHECK(v.at("n").as_wei() == ~Wei{0});
    CHECK_THROWS_AS(v.at("n").as_u64(), ParseError);
    CHECK_THROWS_AS(parse("340282366920938463463374607431768211456"), ParseError);
}

TEST_CASE("parser rejects what the model cannot hold") {
    CHECK_THROWS_AS(parse("-1"), ParseError);
    CHECK_THROWS_AS(parse("1.5"), ParseError);
    CHECK_THROWS_AS(parse("1e3"), ParseError);
    CHECK_THROWS_AS(parse(R"({"a":1,"a":2})"), ParseError);
    CHECK_THROWS_AS(parse("{"), ParseError);
    CHECK_THROWS_AS(parse("[1] 2"), ParseError);
    CHECK_THROWS_AS(parse(std::string(100, '[') + std::string(100, ']')), ParseError);
}

TEST_CASE("non-canonical input is detectable by re-serializing") {
    for (std::string text : {R"({"b":1,"a":2})", R"({"a": 1})", R"({"a":01})", "[1, 2]", R"("\u0041")"}) {
        Value v;
        try {
            v = parse(text);
        } catch (const ParseError&) {
            continue;  // malformed is fine too
        }
        CHECK(serialize(v) != text);
    }
}

TEST_CASE("typed accessors and key checks") {
    const Value v{parse(R"({"a":1,"b":"x","c":[true]})")};
    CHECK(v.at("a").as_u64() == 1);
    CHECK(v.at("b").as_string() == "x");
    CHECK(v.at("c").as_array().at(0).as_bool());
    CHECK_THROWS_AS(v.at("a").as_string(), ParseError);
    CHECK_THROWS_AS(v.at("zz"), ParseError);
    CHECK_NOTHROW(expect_keys(v, {"a", "b", "c"}, "doc"));
    CHECK_THROWS_AS(expect_keys(v, {"a", "b"}, "doc"), ParseError);
    CHECK_THROWS_AS(expect_keys(v, {"a", "b", "c", "d"}, "doc"), ParseError);
}

}  // namespace provchain::canon
