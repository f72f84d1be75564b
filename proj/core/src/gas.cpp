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

#include <provchain/gas.hpp>

#include <algorithm>

namespace provchain {

namespace {

    // One table drives validation and (de)serialization.
    struct Field {
        std::string_view name;
        std::uint64_t GasParams::*member;
    };

    constexpr Field kFields[]{
        {"base_tx", &GasParams::base_tx},
        {"calldata_nonzero_byte", &GasParams::calldata_nonzero_byte},
        {"calldata_zero_byte", &GasParams::calldata_zero_byte},
        {"code_byte", &GasParams::code_byte},
        {"create_base", &GasParams::create_base},
        {"default_code_size", &GasParams::default_code_size},
        {"default_gas_price", &GasParams::default_gas_price},
        {"register_new_slots", &GasParams::register_new_slots},
        {"sell_new_slots", &GasParams::sell_new_slots},
        {"sell_update_slots", &GasParams::sell_update_slots},
        {"sstore_new", &GasParams::sstore_new},
        {"sstore_update", &GasParams::sstore_update},
        {"transfer_new_slots", &GasParams::transfer_new_slots},
        {"transfer_update_slots", &GasParams::transfer_update_slots},
    };

}  // namespace

void validate(const GasParams& params) {
    for (const auto& f : kFields) {
        if (params.*(f.member) == 0) {
            throw std::invalid_argument{"gas parameter '" + std::string{f.name} + "' must be positive"};
        }
    }
}

canon::Value to_value(const GasParams& params) {
    canon::Object out;
    for (const auto& f : kFields) out.emplace(std::string{f.name}, params.*(f.member));
    return out;
}

GasParams gas_params_from_value(const canon::Value& value) {
    GasParams params;
    const auto& obj{value.as_object()};
    for (const auto& [key, v] : obj) {
        auto it{std::find_if(std::begin(kFields), std::end(kFields), [&](const Field& f) { return f.name == key; })};
        if (it == std::end(kFields)) throw ParseError{"unknown gas parameter '" + key + "'"};
        params.*(it->member) = v.as_u64();
    }
    return params;
}

Gas calldata_gas(ByteView calldata, const GasParams& params) noexcept {
    const auto non_zero{static_cast<Gas>(std::count_if(calldata.begin(), calldata.end(), [](auto b) { return b != 0; }))};
    const Gas zero{calldata.size() - non_zero};
    return non_zero * params.calldata_nonzero_byte + zero * params.calldata_zero_byte;
}

Gas intrinsic_gas(const TxKind& kind, const GasParams& params) {
    if (std::holds_alternative<op::FaucetClaim>(kind)) return 0;
    return params.base_tx + calldata_gas(calldata_of(kind), params);
}

Gas storage_gas(const TxKind& kind, const GasParams& p) noexcept {
    switch (category_of(kind)) {
        case TxCategory::kDeploy: return p.create_base + p.code_byte * std::get<op::Deploy>(kind).code_size;
        case TxCategory::kRegister: return p.register_new_slots * p.sstore_new;
        case TxCategory::kTransfer: return p.transfer_update_slots * p.sstore_update + p.transfer_new_slots * p.sstore_new;
        case TxCategory::kSell: return p.sell_update_slots * p.sstore_update + p.sell_new_slots * p.sstore_new;
        case TxCategory::kFaucetClaim: return 0;
    }
    return 0;
}

Gas gas_for_tx(const TxEnvelope& tx, const GasParams& params, bool accepted) {
    Gas gas{intrinsic_gas(tx.kind, params)};
    if (accepted) gas += storage_gas(tx.kind, params);
    return gas;
}

bool settle_in_place(RegistryState& state, const Address& payer, const Address& sealer, Wei amount) {
    if (amount == 0) return true;
    auto payer_it{state.accounts.find(payer)};
    if (payer_it == state.accounts.end() || payer_it->second.balance < amount) return false;
    payer_it->second.balance -= amount;
    auto [sealer_it, inserted]{state.accounts.try_emplace(sealer)};
    if (inserted) {
        sealer_it->second.address = sealer;
        sealer_it->second.role = Role::kAuthority;
    }
    sealer_it->second.balance += amount;
    return true;
}

RegistryState settle(const RegistryState& state, const Address& payer, const Address& sealer, Wei amount) {
    RegistryState next{state};
    if (!settle_in_place(next, payer, sealer, amount)) throw InsufficientFunds{};
    return next;
}

}  // namespace provchain
