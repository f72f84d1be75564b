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

// The product registry contract as a deterministic state machine.
//
// Lifecycle of a product:
//
//   Register (manufacturer)      -> Available, history [M]
//   Transfer (owner -> trusted)  -> Available, history [.., X]
//   Sell     (owner -> consumer) -> Unavailable, history [.., C]   (absorbing)
//
// apply_tx evaluates one signed transaction in this order:
//
//   1. signature            BadSignature       not chargeable: state untouched,
//   2. sender known         UnknownAccount     gas_used = fee = 0
//   3. nonce == expected    BadNonce
//   4. variant rule         (per-kind codes)   checked now, applied at step 7
//   5. fee <= balance       InsufficientFunds  not chargeable
//   6. fee moves sender -> sealer, sender nonce + 1
//   7. variant effect, only when step 4 accepted
//
// A rejected variant still pays intrinsic gas (base + calldata). Faucet claims are free.

#include <optional>
#include <string>
#include <vector>

#include <provchain/gas.hpp>
#include <provchain/genesis.hpp>
#include <provchain/state.hpp>
#include <provchain/tx.hpp>

namespace provchain {

enum class TxError : std::uint8_t {
    kBadSignature,
    kUnknownAccount,
    kBadNonce,
    kInsufficientFunds,
    // Deploy
    kAlreadyDeployed,
    kNotTrustedNode,
    kCodeTooLarge,
    // product operations
    kNotDeployed,
    kNotManufacturer,
    kBadProductId,
    kBadMetadata,
    kDuplicateProductId,
    kUnknownProduct,
    kProductUnavailable,
    kNotOwner,
    kNotConsumer,
    // FaucetClaim
    kFaucetCooldown,
};

[[nodiscard]] std::string_view error_name(TxError e) noexcept;
[[nodiscard]] std::optional<TxError> parse_error_name(std::string_view name) noexcept;

//! Errors that leave the state untouched; blocks must never contain such transactions.
[[nodiscard]] constexpr bool is_unchargeable(TxError e) noexcept {
    return e == TxError::kBadSignature || e == TxError::kUnknownAccount || e == TxError::kBadNonce ||
           e == TxError::kInsufficientFunds;
}

//! EVM contract size limit.
inline constexpr std::uint64_t kMaxCodeSize{24'576};

struct Receipt {
    Hash tx_hash;
    bool accepted{false};
    Gas gas_used{0};
    Wei fee{0};  // == gas_used * gas_price
    std::optional<TxError> error;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

[[nodiscard]] canon::Value to_value(const Receipt& receipt);

struct BlockContext {
    std::uint64_t block_index{0};
    Timestamp timestamp{0};
    Address sealer;
};

//! The genesis-level parameters apply_tx needs.
struct ChainRules {
    GasParams gas;
    Wei faucet_amount{kDefaultFaucetAmount};
    Timestamp faucet_cooldown{kDefaultFaucetCooldown};

    static ChainRules from(const GenesisConfig& genesis) {
        return {genesis.gas, genesis.faucet_amount, genesis.faucet_cooldown};
    }
};

struct ApplyResult {
    RegistryState state;
    Receipt receipt;
};

//! Pure transition: the input state is never modified.
[[nodiscard]] ApplyResult apply_tx(const RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx,
                                   const ChainRules& rules);

//! In-place form used by replay loops; same semantics as apply_tx.
Receipt apply_tx_in_place(RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx,
                          const ChainRules& rules);

//! Outcome of the variant rule alone (step 4) against the current state.
[[nodiscard]] std::optional<TxError> check_variant(const RegistryState& state, const TxEnvelope& tx,
                                                   const BlockContext& ctx, const ChainRules& rules);

//! Gas the transaction would use if applied now.
[[nodiscard]] Gas gas_for_tx(const TxEnvelope& tx, const RegistryState& state, const BlockContext& ctx,
                             const ChainRules& rules);

//! Trailing 20 bytes of sha256(sender bytes || nonce as 8-byte big-endian).
[[nodiscard]] Address derive_contract_address(const Address& sender, std::uint64_t nonce);

struct VerificationResult {
    bool exists{false};
    Status status{Status::kAvailable};
    Address manufacturer;
    Address current_owner;
    std::vector<Address> history;

    friend bool operator==(const VerificationResult&, const VerificationResult&) = default;
};

[[nodiscard]] canon::Value to_value(const VerificationResult& result);

//! Read-only lookup; exists == false means the id was never registered (suspected counterfeit).
[[nodiscard]] VerificationResult verify_product(const RegistryState& state, std::string_view product_id);

}  // namespace provchain
