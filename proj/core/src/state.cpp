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

#include <provchain/state.hpp>

#include <provchain/crypto.hpp>

namespace provchain {

std::string_view role_name(Role r) noexcept {
    switch (r) {
        case Role::kManufacturer: return "Manufacturer";
        case Role::kDistributor: return "Distributor";
        case Role::kRetailer: return "Retailer";
        case Role::kConsumer: return "Consumer";
        case Role::kAuthority: return "Authority";
    }
    return "?";
}

std::optional<Role> parse_role(std::string_view name) noexcept {
    for (auto r : {Role::kManufacturer, Role::kDistributor, Role::kRetailer, Role::kConsumer, Role::kAuthority}) {
        if (role_name(r) == name) return r;
    }
    return std::nullopt;
}

std::string_view status_name(Status s) noexcept {
    return s == Status::kAvailable ? "Available" : "Unavailable";
}

bool is_valid_product_id(std::string_view id) noexcept {
    if (id.empty() || id.size() > kMaxProductIdLength) return false;
    for (char c : id) {
        const bool ok{(c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
                      c == '_' || c == '-'};
        if (!ok) return false;
    }
    return true;
}

const Account* RegistryState::find_account(const Address& a) const noexcept {
    auto it{accounts.find(a)};
    return it == accounts.end() ? nullptr : &it->second;
}

const ProductRecord* RegistryState::find_product(std::string_view id) const noexcept {
    auto it{products.find(id)};
    return it == products.end() ? nullptr : &it->second;
}

Wei RegistryState::total_supply() const noexcept {
    Wei sum{0};
    for (const auto& [_, acct] : accounts) sum += acct.balance;
    return sum;
}

canon::Value to_value(const Account& a) {
    return canon::Object{
        {"address", a.address},
        {"balance", a.balance},
        {"last_faucet_claim", a.last_faucet_claim ? canon::Value{*a.last_faucet_claim} : canon::Value{}},
        {"nonce", a.nonce},
        {"role", role_name(a.role)},
    };
}

canon::Value to_value(const ProductRecord& p) {
    canon::Array history;
    history.reserve(p.history.size());
    for (const auto& h : p.history) history.emplace_back(h);
    return canon::Object{
        {"current_owner", p.current_owner},
        {"history", std::move(history)},
        {"manufacturer", p.manufacturer},
        {"metadata", p.metadata},
        {"name", p.name},
        {"product_id", p.product_id},
        {"registered_at", p.registered_at},
        {"status", status_name(p.status)},
    };
}

canon::Value to_value(const RegistryState& s) {
    canon::Object accounts;
    for (const auto& [addr, acct] : s.accounts) accounts.emplace(addr.hex(), to_value(acct));
    canon::Object products;
    for (const auto& [id, rec] : s.products) products.emplace(id, to_value(rec));
    canon::Value contract{};
    if (s.contract) {
        contract = canon::Object{{"address", s.contract->address}, {"deployer", s.contract->deployer}};
    }
    canon::Object out;
    out.emplace("accounts", std::move(accounts));
    out.emplace("chain_id", s.chain_id);
    out.emplace("contract", std::move(contract));
    out.emplace("products", std::move(products));
    return out;
}

Hash state_commitment(const RegistryState& state) {
    return hash_of(to_value(state));
}

}  // namespace provchain
