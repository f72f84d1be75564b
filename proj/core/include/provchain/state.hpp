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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <provchain/canonical.hpp>
#include <provchain/types.hpp>

namespace provchain {

enum class Role : std::uint8_t { kManufacturer, kDistributor, kRetailer, kConsumer, kAuthority };

[[nodiscard]] std::string_view role_name(Role r) noexcept;
[[nodiscard]] std::optional<Role> parse_role(std::string_view name) noexcept;

//! Manufacturers, distributors and retailers may hold and move products.
[[nodiscard]] constexpr bool is_trusted_node(Role r) noexcept {
    return r == Role::kManufacturer || r == Role::kDistributor || r == Role::kRetailer;
}

//! Available -> Unavailable is the only transition.
enum class Status : std::uint8_t { kAvailable, kUnavailable };

[[nodiscard]] std::string_view status_name(Status s) noexcept;

inline constexpr std::size_t kMaxProductIdLength{64};
inline constexpr std::size_t kMaxProductNameLength{256};
inline constexpr std::size_t kMaxMetadataLength{1024};

//! 1-64 characters of [A-Za-z0-9._-].
[[nodiscard]] bool is_valid_product_id(std::string_view id) noexcept;

struct Account {
    Address address;
    Role role{Role::kConsumer};
    Wei balance{0};
    std::uint64_t nonce{0};
    std::optional<Timestamp> last_faucet_claim;

    friend bool operator==(const Account&, const Account&) = default;
};

struct ProductRecord {
    std::string product_id;
    std::string name;
    std::string metadata;
    Address manufacturer;
    Address current_owner;
    Status status{Status::kAvailable};
    std::vector<Address> history;  // history.front() == manufacturer, history.back() == current_owner
    std::uint64_t registered_at{0};

    friend bool operator==(const ProductRecord&, const ProductRecord&) = default;
};

struct ContractInfo {
    Address address;
    Address deployer;

    friend bool operator==(const ContractInfo&, const ContractInfo&) = default;
};

//! Complete registry state. A plain value: copies are independent.
struct RegistryState {
    std::uint64_t chain_id{0};
    std::optional<ContractInfo> contract;
    std::map<Address, Account> accounts;
    std::map<std::string, ProductRecord, std::less<>> products;

    [[nodiscard]] const Account* find_account(const Address& a) const noexcept;
    [[nodiscard]] const ProductRecord* find_product(std::string_view id) const noexcept;
    [[nodiscard]] Wei total_supply() const noexcept;

    friend bool operator==(const RegistryState&, const RegistryState&) = default;
};

[[nodiscard]] canon::Value to_value(const Account& account);
[[nodiscard]] canon::Value to_value(const ProductRecord& product);
[[nodiscard]] canon::Value to_value(const RegistryState& state);

//! hash_of(canonical state); maps are emitted in sorted key order.
[[nodiscard]] Hash state_commitment(const RegistryState& state);

}  // namespace provchain
