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

#include <provchain/genesis.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <provchain/crypto.hpp>

namespace provchain {

void validate(const GenesisConfig& config) {
    if (config.chain_id == 0) throw GenesisError{"chain_id must be positive"};
    if (config.authorities.empty()) throw GenesisError{"at least one authority is required"};
    std::set<Address> seen;
    for (const auto& a : config.authorities) {
        if (!seen.insert(a.address).second) throw GenesisError{"duplicate authority " + a.address.hex()};
        if (address_of(a.public_key) != a.address) {
            throw GenesisError{"authority " + a.address.hex() + " does not match its public key"};
        }
        auto role{config.roles.find(a.address)};
        if (role != config.roles.end() && role->second != Role::kAuthority) {
            throw GenesisError{"authority " + a.address.hex() + " has role " + std::string{role_name(role->second)}};
        }
    }
    try {
        validate(config.gas);
    } catch (const std::invalid_argument& ex) {
        throw GenesisError{ex.what()};
    }
}

canon::Value to_value(const GenesisConfig& config) {
    canon::Array authorities;
    for (const auto& a : config.authorities) {
        authorities.emplace_back(canon::Object{{"address", a.address}, {"public_key", a.public_key}});
    }
    canon::Object roles;
    for (const auto& [addr, role] : config.roles) roles.emplace(addr.hex(), role_name(role));
    canon::Object balances;
    for (const auto& [addr, wei] : config.initial_balances) balances.emplace(addr.hex(), wei);
    return canon::Object{
        {"authorities", std::move(authorities)},
        {"chain_id", config.chain_id},
        {"faucet_amount", config.faucet_amount},
        {"faucet_cooldown", config.faucet_cooldown},
        {"gas", to_value(config.gas)},
        {"initial_balances", std::move(balances)},
        {"roles", std::move(roles)},
    };
}

GenesisConfig genesis_from_value(const canon::Value& value) {
    static constexpr std::string_view kKnown[]{"authorities", "chain_id",         "faucet_amount", "faucet_cooldown",
                                               "gas",         "initial_balances", "roles"};
    for (const auto& [key, _] : value.as_object()) {
        if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
            throw ParseError{"genesis: unexpected field '" + key + "'"};
        }
    }
    GenesisConfig config;
    const auto& obj{value.as_object()};
    config.chain_id = value.at("chain_id").as_u64();
    for (const auto& a : value.at("authorities").as_array()) {
        canon::expect_keys(a, {"address", "public_key"}, "authority");
        config.authorities.push_back({a.at("address").as_fixed<Address>(), a.at("public_key").as_fixed<PublicKey>()});
    }
    if (obj.contains("roles")) {
        for (const auto& [addr, role] : value.at("roles").as_object()) {
            auto r{parse_role(role.as_string())};
            if (!r) throw ParseError{"genesis: unknown role '" + role.as_string() + "'"};
            config.roles.emplace(Address::from_hex(addr), *r);
        }
    }
    if (obj.contains("initial_balances")) {
        for (const auto& [addr, wei] : value.at("initial_balances").as_object()) {
            config.initial_balances.emplace(Address::from_hex(addr), wei.as_wei());
        }
    }
    if (obj.contains("gas")) config.gas = gas_params_from_value(value.at("gas"));
    if (obj.contains("faucet_amount")) config.faucet_amount = value.at("faucet_amount").as_wei();
    if (obj.contains("faucet_cooldown")) config.faucet_cooldown = value.at("faucet_cooldown").as_u64();
    return config;
}

GenesisConfig load_genesis(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw GenesisError{"cannot open genesis file " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    GenesisConfig config;
    try {
        config = genesis_from_value(canon::parse(text.str()));
    } catch (const ParseError& ex) {
        throw GenesisError{path.string() + ": " + ex.what()};
    }
    validate(config);
    return config;
}

void save_genesis(const GenesisConfig& config, const std::filesystem::path& path) {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out) throw GenesisError{"cannot write genesis file " + path.string()};
    out << canon::serialize(to_value(config)) << '\n';
    if (!out.flush()) throw GenesisError{"write failed for " + path.string()};
}

RegistryState genesis_state(const GenesisConfig& config) {
    RegistryState state;
    state.chain_id = config.chain_id;
    auto touch = [&state](const Address& a, Role role) -> Account& {
        auto [it, inserted]{state.accounts.try_emplace(a)};
        if (inserted) {
            it->second.address = a;
            it->second.role = role;
        }
        return it->second;
    };
    for (const auto& [addr, role] : config.roles) touch(addr, role);
    for (const auto& a : config.authorities) touch(a.address, Role::kAuthority);
    for (const auto& [addr, wei] : config.initial_balances) touch(addr, Role::kConsumer).balance = wei;
    return state;
}

}  // namespace provchain
