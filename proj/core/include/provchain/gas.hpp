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

#include <provchain/canonical.hpp>
#include <provchain/state.hpp>
#include <provchain/tx.hpp>

namespace provchain {

//! Default gas price in wei per gas.
//!
//! Chosen by tools/calibrate_gas_price so that one contract deployment at the
//! default code size, one registration and one sale together cost 0.00064428 ETH
//! (to within rounding of the price to whole wei).
inline constexpr std::uint64_t kCalibratedGasPrice{1'095'162'979};

//! EVM-inspired cost constants. Every field must be strictly positive.
struct GasParams {
    Gas base_tx{21'000};
    Gas calldata_zero_byte{4};
    Gas calldata_nonzero_byte{16};
    Gas sstore_new{20'000};
    Gas sstore_update{5'000};
    Gas create_base{32'000};
    Gas code_byte{200};
    std::uint64_t default_code_size{2'000};
    std::uint64_t default_gas_price{kCalibratedGasPrice};

    // Storage-slot layout of the registry contract, per operation.
    std::uint64_t register_new_slots{3};  // record, owner slot, history slot
    std::uint64_t transfer_update_slots{1};
    std::uint64_t transfer_new_slots{1};
    std::uint64_t sell_update_slots{2};  // owner + status
    std::uint64_t sell_new_slots{1};

    friend bool operator==(const GasParams&, const GasParams&) = default;
};

//! Throws std::invalid_argument naming the first non-positive field.
void validate(const GasParams& params);

[[nodiscard]] canon::Value to_value(const GasParams& params);
//! Missing fields keep their defaults.
[[nodiscard]] GasParams gas_params_from_value(const canon::Value& value);

//! Per-byte calldata cost: zero bytes and non-zero bytes are priced separately.
[[nodiscard]] Gas calldata_gas(ByteView calldata, const GasParams& params) noexcept;

//! base_tx + calldata cost of the canonical kind bytes. Faucet claims are free.
[[nodiscard]] Gas intrinsic_gas(const TxKind& kind, const GasParams& params);

//! Storage / creation cost charged only when the operation is accepted.
[[nodiscard]] Gas storage_gas(const TxKind& kind, const GasParams& params) noexcept;

//! Gas charged for a transaction whose variant rule accepted (or rejected) it.
[[nodiscard]] Gas gas_for_tx(const TxEnvelope& tx, const GasParams& params, bool accepted);

//! Exact wei product.
[[nodiscard]] constexpr Wei fee(Gas gas, std::uint64_t gas_price) noexcept {
    return Wei{gas} * Wei{gas_price};
}

class InsufficientFunds : public std::runtime_error {
  public:
    InsufficientFunds() : std::runtime_error{"InsufficientFunds"} {}
};

//! Moves `amount` from payer to sealer, creating the sealer's account (Authority) if
//! needed. Returns false and leaves the state untouched when the payer cannot cover it.
[[nodiscard]] bool settle_in_place(RegistryState& state, const Address& payer, const Address& sealer, Wei amount);

//! Pure form of settle_in_place; throws InsufficientFunds.
[[nodiscard]] RegistryState settle(const RegistryState& state, const Address& payer, const Address& sealer,
                                   Wei amount);

}  // namespace provchain
