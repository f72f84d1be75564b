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

#include <provchain/tx.hpp>

namespace provchain {

namespace {
    template <class... Ts>
    struct Overloaded : Ts... {
        using Ts::operator()...;
    };
    template <class... Ts>
    Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

TxCategory category_of(const TxKind& kind) noexcept {
    return static_cast<TxCategory>(kind.index());
}

std::string_view category_name(TxCategory c) noexcept {
    switch (c) {
        case TxCategory::kDeploy: return "Deploy";
        case TxCategory::kRegister: return "Register";
        case TxCategory::kTransfer: return "Transfer";
        case TxCategory::kSell: return "Sell";
        case TxCategory::kFaucetClaim: return "FaucetClaim";
    }
    return "?";
}

canon::Value to_value(const TxKind& kind) {
    return std::visit(
        Overloaded{
            [](const op::Deploy& d) {
                return canon::Value{canon::Object{{"code_size", d.code_size}, {"type", "Deploy"}}};
            },
            [](const op::Register& r) {
                return canon::Value{canon::Object{{"metadata", r.metadata},
                                                  {"name", r.name},
                                                  {"product_id", r.product_id},
                                                  {"type", "Register"}}};
            },
            [](const op::Transfer& t) {
                return canon::Value{
                    canon::Object{{"new_owner", t.new_owner}, {"product_id", t.product_id}, {"type", "Transfer"}}};
            },
            [](const op::Sell& s) {
                return canon::Value{
                    canon::Object{{"consumer", s.consumer}, {"product_id", s.product_id}, {"type", "Sell"}}};
            },
            [](const op::FaucetClaim&) { return canon::Value{canon::Object{{"type", "FaucetClaim"}}}; },
        },
        kind);
}

TxKind kind_from_value(const canon::Value& v) {
    const std::string& type{v.at("type").as_string()};
    if (type == "Deploy") {
        canon::expect_keys(v, {"code_size", "type"}, "Deploy");
        return op::Deploy{v.at("code_size").as_u64()};
    }
    if (type == "Register") {
        canon::expect_keys(v, {"metadata", "name", "product_id", "type"}, "Register");
        return op::Register{v.at("product_id").as_string(), v.at("name").as_string(), v.at("metadata").as_string()};
    }
    if (type == "Transfer") {
        canon::expect_keys(v, {"new_owner", "product_id", "type"}, "Transfer");
        return op::Transfer{v.at("product_id").as_string(), v.at("new_owner").as_fixed<Address>()};
    }
    if (type == "Sell") {
        canon::expect_keys(v, {"consumer", "product_id", "type"}, "Sell");
        return op::Sell{v.at("product_id").as_string(), v.at("consumer").as_fixed<Address>()};
    }
    if (type == "FaucetClaim") {
        canon::expect_keys(v, {"type"}, "FaucetClaim");
        return op::FaucetClaim{};
    }
    throw ParseError{"unknown transaction type '" + type + "'"};
}

canon::Value to_value(const TxEnvelope& tx) {
    return canon::Object{
        {"gas_price", tx.gas_price}, {"kind", to_value(tx.kind)},       {"nonce", tx.nonce},
        {"public_key", tx.public_key}, {"sender", tx.sender}, {"signature", tx.signature},
    };
}

TxEnvelope tx_from_value(const canon::Value& v) {
    canon::expect_keys(v, {"gas_price", "kind", "nonce", "public_key", "sender", "signature"}, "transaction");
    TxEnvelope tx;
    tx.gas_price = v.at("gas_price").as_u64();
    tx.kind = kind_from_value(v.at("kind"));
    tx.nonce = v.at("nonce").as_u64();
    tx.public_key = v.at("public_key").as_fixed<PublicKey>();
    tx.sender = v.at("sender").as_fixed<Address>();
    tx.signature = v.at("signature").as_fixed<Signature>();
    return tx;
}

Bytes calldata_of(const TxKind& kind) {
    return canon::serialize_bytes(to_value(kind));
}

Bytes signing_bytes(std::uint64_t chain_id, const Address& sender, std::uint64_t nonce, const TxKind& kind,
                    std::uint64_t gas_price) {
    return canon::serialize_bytes(canon::Object{
        {"chain_id", chain_id},
        {"gas_price", gas_price},
        {"kind", to_value(kind)},
        {"nonce", nonce},
        {"sender", sender},
    });
}

TxEnvelope make_signed_tx(const KeyPair& key, std::uint64_t chain_id, std::uint64_t nonce, TxKind kind,
                          std::uint64_t gas_price) {
    TxEnvelope tx;
    tx.sender = key.address();
    tx.public_key = key.public_key;
    tx.nonce = nonce;
    tx.kind = std::move(kind);
    tx.gas_price = gas_price;
    tx.signature = sign(key.secret_key, signing_bytes(chain_id, tx.sender, nonce, tx.kind, gas_price));
    return tx;
}

bool verify_tx_signature(const TxEnvelope& tx, std::uint64_t chain_id) {
    if (address_of(tx.public_key) != tx.sender) return false;
    return verify(tx.public_key, signing_bytes(chain_id, tx.sender, tx.nonce, tx.kind, tx.gas_price), tx.signature);
}

Hash tx_hash(const TxEnvelope& tx) {
    return hash_of(to_value(tx));
}

}  // namespace provchain
