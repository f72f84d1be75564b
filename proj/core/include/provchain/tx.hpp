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

#include <string>
#include <variant>

#include <provchain/canonical.hpp>
#include <provchain/crypto.hpp>
#include <provchain/types.hpp>

namespace provchain {

namespace op {

    struct Deploy {
        std::uint64_t code_size{0};
        friend bool operator==(const Deploy&, const Deploy&) = default;
    };

    struct Register {
        std::string product_id;
        std::string name;
        std::string metadata;
        friend bool operator==(const Register&, const Register&) = default;
    };

    struct Transfer {
        std::string product_id;
        Address new_owner;
        friend bool operator==(const Transfer&, const Transfer&) = default;
    };

    struct Sell {
        std::string product_id;
        Address consumer;
        friend bool operator==(const Sell&, const Sell&) = default;
    };

    struct FaucetClaim {
        friend bool operator==(const FaucetClaim&, const FaucetClaim&) = default;
    };

}  // namespace op

//! Exactly one registry operation per transaction.
using TxKind = std::variant<op::Deploy, op::Register, op::Transfer, op::Sell, op::FaucetClaim>;

//! Reporting category; order is the gas-report row order.
enum class TxCategory : std::uint8_t { kDeploy, kRegister, kTransfer, kSell, kFaucetClaim };

inline constexpr std::size_t kTxCategoryCount{5};

[[nodiscard]] TxCategory category_of(const TxKind& kind) noexcept;
[[nodiscard]] std::string_view category_name(TxCategory c) noexcept;

//! A signed registry operation.
//!
//! The signature covers the canonical bytes of {chain_id, gas_price, kind, nonce, sender};
//! the chain id is not carried in the envelope, so a transaction signed for one chain
//! never verifies on another. The public key travels with the envelope because an
//! Ed25519 signature does not allow key recovery; it must hash to `sender`.
struct TxEnvelope {
    Address sender;
    PublicKey public_key;
    std::uint64_t nonce{0};
    TxKind kind;
    std::uint64_t gas_price{0};  // wei per gas unit
    Signature signature;

    friend bool operator==(const TxEnvelope&, const TxEnvelope&) = default;
};

[[nodiscard]] canon::Value to_value(const TxKind& kind);
[[nodiscard]] TxKind kind_from_value(const canon::Value& value);

[[nodiscard]] canon::Value to_value(const TxEnvelope& tx);
[[nodiscard]] TxEnvelope tx_from_value(const canon::Value& value);

//! Canonical bytes of the kind alone; this is the transaction's calldata for gas purposes.
[[nodiscard]] Bytes calldata_of(const TxKind& kind);

[[nodiscard]] Bytes signing_bytes(std::uint64_t chain_id, const Address& sender, std::uint64_t nonce,
                                  const TxKind& kind, std::uint64_t gas_price);

[[nodiscard]] TxEnvelope make_signed_tx(const KeyPair& key, std::uint64_t chain_id, std::uint64_t nonce,
                                        TxKind kind, std::uint64_t gas_price);

//! True iff public_key hashes to sender and the signature verifies for `chain_id`.
[[nodiscard]] bool verify_tx_signature(const TxEnvelope& tx, std::uint64_t chain_id);

[[nodiscard]] Hash tx_hash(const TxEnvelope& tx);

}  // namespace provchain
