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

#include <filesystem>
#include <map>
#include <vector>

#include <provchain/gas.hpp>
#include <provchain/state.hpp>

namespace provchain {

inline constexpr std::uint64_t kDefaultChainId{5};
inline constexpr Wei kDefaultFaucetAmount{500'000'000'000'000'000ull};  // 0.5 ETH
inline constexpr Timestamp kDefaultFaucetCooldown{86'400};

struct AuthorityEntry {
    Address address;
    PublicKey public_key;

    friend bool operator==(const AuthorityEntry&, const AuthorityEntry&) = default;
};

//! Trust root of a chain. Block 0 is synthesized from it.
struct GenesisConfig {
    std::uint64_t chain_id{kDefaultChainId};
    std::vector<AuthorityEntry> authorities;  // sealing order
    std::map<Address, Role> roles;
    std::map<Address, Wei> initial_balances;
    GasParams gas;
    Wei faucet_amount{kDefaultFaucetAmount};
    Timestamp faucet_cooldown{kDefaultFaucetCooldown};

    friend bool operator==(const GenesisConfig&, const GenesisConfig&) = default;
};

class GenesisError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! At least one authority, chain_id > 0, distinct authorities whose public keys hash
//! to their addresses, authorities not given a non-Authority role, positive gas params.
void validate(const GenesisConfig& config);

[[nodiscard]] canon::Value to_value(const GenesisConfig& config);
//! Optional fields (gas, faucet_*, roles, initial_balances) fall back to defaults.
[[nodiscard]] GenesisConfig genesis_from_value(const canon::Value& value);

[[nodiscard]] GenesisConfig load_genesis(const std::filesystem::path& path);
void save_genesis(const GenesisConfig& config, const std::filesystem::path& path);

//! Registry state before any transaction: one account per role entry, authority or
//! funded address; authorities default to the Authority role, others to Consumer.
[[nodiscard]] RegistryState genesis_state(const GenesisConfig& config);

}  // namespace provchain
