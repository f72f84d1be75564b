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

#include <provchain/registry.hpp>

#include <array>
#include <cstring>
#include <unordered_map>

#include <provchain/crypto.hpp>

namespace provchain {

namespace {

    constexpr std::array<std::pair<TxError, std::string_view>, 17> kErrorNames{{
        {TxError::kBadSignature, "BadSignature"},
        {TxError::kUnknownAccount, "UnknownAccount"},
        {TxError::kBadNonce, "BadNonce"},
        {TxError::kInsufficientFunds, "InsufficientFunds"},
        {TxError::kAlreadyDeployed, "AlreadyDeployed"},
        {TxError::kNotTrustedNode, "NotTrustedNode"},
        {TxError::kCodeTooLarge, "CodeTooLarge"},
        {TxError::kNotDeployed, "NotDeployed"},
        {TxError::kNotManufacturer, "NotManufacturer"},
        {TxError::kBadProductId, "BadProductId"},
        {TxError::kBadMetadata, "BadMetadata"},
        {TxError::kDuplicateProductId, "DuplicateProductId"},
        {TxError::kUnknownProduct, "UnknownProduct"},
        {TxError::kProductUnavailable, "ProductUnavailable"},
        {TxError::kNotOwner, "NotOwner"},
        {TxError::kNotConsumer, "NotConsumer"},
        {TxError::kFaucetCooldown, "FaucetCooldown"},
    }};

    // Verified-signature cache. tx_hash commits to sender, key, nonce, kind, price and
    // signature, so (tx_hash, chain_id) pins the whole signed message. Per thread, bounded.
    struct SignatureCacheKey {
        Hash tx_hash;
        std::uint64_t chain_id{0};
        friend bool operator==(const SignatureCacheKey&, const SignatureCacheKey&) = default;
    };
    struct SignatureCacheKeyHash {
        std::size_t operator()(const SignatureCacheKey& k) const noexcept {
            std::size_t h;
            std::memcpy(&h, k.tx_hash.bytes.data(), sizeof h);
            return h ^ static_cast<std::size_t>(k.chain_id);
        }
    };
    constexpr std::size_t kSignatureCacheLimit{1u << 16};

    bool signature_ok(const TxEnvelope& tx, const Hash& hash, std::uint64_t chain_id) {
        thread_local std::unordered_map<SignatureCacheKey, bool, SignatureCacheKeyHash> cache;
        const SignatureCacheKey key{hash, chain_id};
        if (auto it{cache.find(key)}; it != cache.end()) return it->second;
        if (cache.size() >= kSignatureCacheLimit) cache.clear();
        const bool ok{verify_tx_signature(tx, chain_id)};
        cache.emplace(key, ok);
        return ok;
    }

    std::optional<Role> role_of(const RegistryState& state, const Address& a) {
        const Account* acct{state.find_account(a)};
        return acct ? std::optional{acct->role} : std::nullopt;
    }

    std::optional<TxError> check_deploy(const RegistryState& state, const Account& sender, const op::Deploy& d) {
        if (state.contract) return TxError::kAlreadyDeployed;
        if (!is_trusted_node(sender.role) && sender.role != Role::kAuthority) return TxError::kNotTrustedNode;
        if (d.code_size > kMaxCodeSize) return TxError::kCodeTooLarge;
        return std::nullopt;
    }

    std::optional<TxError> check_register(const RegistryState& state, const Account& sender, const op::Register& r) {
        if (!state.contract) return TxError::kNotDeployed;
        if (sender.role != Role::kManufacturer) return TxError::kNotManufacturer;
        if (!is_valid_product_id(r.product_id)) return TxError::kBadProductId;
        if (r.name.size() > kMaxProductNameLength || r.metadata.size() > kMaxMetadataLength) {
            return TxError::kBadMetadata;
        }
        if (state.find_product(r.product_id)) return TxError::kDuplicateProductId;
        return std::nullopt;
    }

    // Shared gate for Transfer and Sell.
    std::optional<TxError> check_movable(const RegistryState& state, const Account& sender, std::string_view id) {
        if (!state.contract) return TxError::kNotDeployed;
        const ProductRecord* product{state.find_product(id)};
        if (!product) return TxError::kUnknownProduct;
        if (product->status != Status::kAvailable) return TxError::kProductUnavailable;
        if (product->current_owner != sender.address) return TxError::kNotOwner;
        return std::nullopt;
    }

    std::optional<TxError> check_transfer(const RegistryState& state, const Account& sender, const op::Transfer& t) {
        if (auto err{check_movable(state, sender, t.product_id)}) return err;
        auto target{role_of(state, t.new_owner)};
        if (!target || !is_trusted_node(*target)) return TxError::kNotTrustedNode;
        return std::nullopt;
    }

    std::optional<TxError> check_sell(const RegistryState& state, const Account& sender, const op::Sell& s) {
        if (auto err{check_movable(state, sender, s.product_id)}) return err;
        auto target{role_of(state, s.consumer)};
        if (!target || *target != Role::kConsumer) return TxError::kNotConsumer;
        return std::nullopt;
    }

    std::optional<TxError> check_faucet(const Account& sender, Timestamp now, const ChainRules& rules) {
        if (!sender.last_faucet_claim) return std::nullopt;
        const Timestamp last{*sender.last_faucet_claim};
        if (now < last || now - last < rules.faucet_cooldown) return TxError::kFaucetCooldown;
        return std::nullopt;
    }

    std::optional<TxError> check_with(const RegistryState& state, const Account& sender, const TxEnvelope& tx,
                                      const BlockContext& ctx, const ChainRules& rules) {
        switch (category_of(tx.kind)) {
            case TxCategory::kDeploy: return check_deploy(state, sender, std::get<op::Deploy>(tx.kind));
            case TxCategory::kRegister: return check_register(state, sender, std::get<op::Register>(tx.kind));
            case TxCategory::kTransfer: return check_transfer(state, sender, std::get<op::Transfer>(tx.kind));
            case TxCategory::kSell: return check_sell(state, sender, std::get<op::Sell>(tx.kind));
            case TxCategory::kFaucetClaim: return check_faucet(sender, ctx.timestamp, rules);
        }
        return std::nullopt;
    }

    void apply_effect(RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx, const ChainRules& rules) {
        switch (category_of(tx.kind)) {
            case TxCategory::kDeploy:
                state.contract = ContractInfo{derive_contract_address(tx.sender, tx.nonce), tx.sender};
                break;
            case TxCategory::kRegister: {
                const auto& r{std::get<op::Register>(tx.kind)};
                ProductRecord rec;
                rec.product_id = r.product_id;
                rec.name = r.name;
                rec.metadata = r.metadata;
                rec.manufacturer = tx.sender;
                rec.current_owner = tx.sender;
                rec.status = Status::kAvailable;
                rec.history = {tx.sender};
                rec.registered_at = ctx.block_index;
                state.products.emplace(r.product_id, std::move(rec));
                break;
            }
            case TxCategory::kTransfer: {
                const auto& t{std::get<op::Transfer>(tx.kind)};
                auto& rec{state.products.find(t.product_id)->second};
                rec.current_owner = t.new_owner;
                rec.history.push_back(t.new_owner);
                break;
            }
            case TxCategory::kSell: {
                const auto& s{std::get<op::Sell>(tx.kind)};
                auto& rec{state.products.find(s.product_id)->second};
                rec.current_owner = s.consumer;
                rec.history.push_back(s.consumer);
                rec.status = Status::kUnavailable;
                break;
            }
            case TxCategory::kFaucetClaim: {
                auto& acct{state.accounts.find(tx.sender)->second};
                acct.balance += rules.faucet_amount;
                acct.last_faucet_claim = ctx.timestamp;
                break;
            }
        }
    }

}  // namespace

std::string_view error_name(TxError e) noexcept {
    for (const auto& [code, name] : kErrorNames) {
        if (code == e) return name;
    }
    return "?";
}

std::optional<TxError> parse_error_name(std::string_view name) noexcept {
    for (const auto& [code, n] : kErrorNames) {
        if (n == name) return code;
    }
    return std::nullopt;
}

canon::Value to_value(const Receipt& r) {
    return canon::Object{
        {"accepted", r.accepted},
        {"error", r.error ? canon::Value{error_name(*r.error)} : canon::Value{}},
        {"fee", r.fee},
        {"gas_used", r.gas_used},
        {"tx_hash", r.tx_hash},
    };
}

std::optional<TxError> check_variant(const RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx,
                                     const ChainRules& rules) {
    const Account* sender{state.find_account(tx.sender)};
    if (!sender) return TxError::kUnknownAccount;
    return check_with(state, *sender, tx, ctx, rules);
}

Gas gas_for_tx(const TxEnvelope& tx, const RegistryState& state, const BlockContext& ctx, const ChainRules& rules) {
    return gas_for_tx(tx, rules.gas, !check_variant(state, tx, ctx, rules).has_value());
}

Receipt apply_tx_in_place(RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx,
                          const ChainRules& rules) {
    Receipt receipt;
    receipt.tx_hash = tx_hash(tx);

    if (!signature_ok(tx, receipt.tx_hash, state.chain_id)) {
        receipt.error = TxError::kBadSignature;
        return receipt;
    }
    auto sender_it{state.accounts.find(tx.sender)};
    if (sender_it == state.accounts.end()) {
        receipt.error = TxError::kUnknownAccount;
        return receipt;
    }
    if (tx.nonce != sender_it->second.nonce) {
        receipt.error = TxError::kBadNonce;
        return receipt;
    }

    const auto variant_error{check_with(state, sender_it->second, tx, ctx, rules)};
    const Gas gas{gas_for_tx(tx, rules.gas, !variant_error)};
    const Wei charge{fee(gas, tx.gas_price)};
    if (!settle_in_place(state, tx.sender, ctx.sealer, charge)) {
        receipt.error = TxError::kInsufficientFunds;
        return receipt;
    }
    ++sender_it->second.nonce;

    receipt.gas_used = gas;
    receipt.fee = charge;
    if (variant_error) {
        receipt.error = variant_error;
        return receipt;
    }
    apply_effect(state, tx, ctx, rules);
    receipt.accepted = true;
    return receipt;
}

ApplyResult apply_tx(const RegistryState& state, const TxEnvelope& tx, const BlockContext& ctx,
                     const ChainRules& rules) {
    ApplyResult result{state, {}};
    result.receipt = apply_tx_in_place(result.state, tx, ctx, rules);
    return result;
}

Address derive_contract_address(const Address& sender, std::uint64_t nonce) {
    Bytes preimage(sender.bytes.begin(), sender.bytes.end());
    for (int shift{56}; shift >= 0; shift -= 8) preimage.push_back(static_cast<std::uint8_t>(nonce >> shift));
    const Hash h{sha256(preimage)};
    Address out;
    std::copy(h.bytes.end() - Address::kSize, h.bytes.end(), out.bytes.begin());
    return out;
}

canon::Value to_value(const VerificationResult& r) {
    canon::Array history;
    for (const auto& h : r.history) history.emplace_back(h);
    if (!r.exists) return canon::Object{{"exists", false}};
    return canon::Object{
        {"current_owner", r.current_owner},
        {"exists", true},
        {"history", std::move(history)},
        {"manufacturer", r.manufacturer},
        {"status", status_name(r.status)},
    };
}

VerificationResult verify_product(const RegistryState& state, std::string_view product_id) {
    VerificationResult out;
    const ProductRecord* rec{state.find_product(product_id)};
    if (!rec) return out;
    out.exists = true;
    out.status = rec->status;
    out.manufacturer = rec->manufacturer;
    out.current_owner = rec->current_owner;
    out.history = rec->history;
    return out;
}

}  // namespace provchain
