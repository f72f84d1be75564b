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

#include "random_log.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include <provchain/simnet.hpp>

#include "reference_registry.hpp"

namespace provchain::test {

namespace {

    using sim::DeterministicRng;

    std::string random_text(DeterministicRng& rng, std::size_t len) {
        // mostly printable, with the characters that need escaping and some UTF-8
        static const std::vector<std::string> kPieces{"a", "Z", "7", " ", "-", "\"", "\\", "\n", "\t",
                                                      std::string(1, '\x01'), "\xc3\xa9", "\xe2\x82\xac", "/"};
        std::string s;
        while (s.size() < len) s += kPieces[rng.below(kPieces.size())];
        return s;
    }

    std::string product_id(DeterministicRng& rng, std::size_t products) {
        switch (rng.below(40)) {
            case 0: return "";
            case 1: return "bad id";
            case 2: return std::string(65, 'x');
            case 3: return std::string(64, 'y');
            default: return "P-" + std::to_string(rng.below(products));
        }
    }

    std::string receipt_error(const Receipt& r) { return r.error ? std::string{error_name(*r.error)} : ""; }

}  // namespace

RandomLog random_log(std::uint64_t seed, const LogLimits& limits) {
    DeterministicRng rng{seed};
    RandomLog log;
    GenesisConfig& g{log.genesis};

    const std::size_t n_accounts{2 + rng.below(limits.max_accounts - 1)};
    const std::size_t n_authorities{1 + rng.below(std::min<std::size_t>(3, n_accounts - 1))};
    const std::size_t n_products{1 + rng.below(limits.max_products)};

    std::vector<KeyPair> keys;
    for (std::size_t i{0}; i < n_accounts; ++i) keys.push_back(KeyPair::from_seed(rng.seed_bytes()));
    // one outsider never appears in genesis
    const KeyPair stranger{KeyPair::from_seed(rng.seed_bytes())};

    static constexpr Role kRoles[]{Role::kManufacturer, Role::kDistributor, Role::kRetailer, Role::kConsumer};
    for (std::size_t i{0}; i < n_accounts; ++i) {
        const Address a{keys[i].address()};
        if (i < n_authorities) {
            g.authorities.push_back({a, keys[i].public_key});
        } else if (i == n_authorities) {
            g.roles[a] = Role::kManufacturer;  // at least one
        } else if (rng.below(8) != 0) {
            g.roles[a] = kRoles[rng.below(4)];
        }
        switch (rng.below(4)) {
            case 0: break;
            case 1: g.initial_balances[a] = rng.below(1'000'000'000'000'000ull); break;
            default: g.initial_balances[a] = Wei{1 + rng.below(3)} * kWeiPerEth; break;
        }
    }

    RegistryState state{genesis_state(g)};
    const ChainRules rules{ChainRules::from(g)};
    const std::size_t n_txs{rng.below(limits.max_txs + 1)};

    BlockContext ctx{1, 0, g.authorities[1 % g.authorities.size()].address};
    std::size_t left_in_block{1 + rng.below(8)};

    auto any_address = [&]() -> Address {
        if (rng.below(20) == 0) return stranger.address();
        return keys[rng.below(keys.size())].address();
    };

    for (std::size_t n{0}; n < n_txs; ++n) {
        if (left_in_block == 0) {
            ++ctx.block_index;
            ctx.sealer = g.authorities[ctx.block_index % g.authorities.size()].address;
            static constexpr Timestamp kSteps[]{0, 1, 3600, 86'399, 86'400, 86'401};
            ctx.timestamp += rng.below(4) == 0 ? rng.below(200'000) : kSteps[rng.below(6)];
            left_in_block = 1 + rng.below(8);
        }
        --left_in_block;

        TxKind kind;
        std::string id{product_id(rng, n_products)};
        std::optional<std::size_t> sender_idx;
        const std::uint64_t pick{rng.below(20)};
        // moves mostly name a product that exists
        if (pick >= 7 && pick <= 15 && !state.products.empty() && rng.below(4) != 0) {
            auto it{state.products.begin()};
            std::advance(it, static_cast<std::ptrdiff_t>(rng.below(state.products.size())));
            id = it->first;
        }
        const ProductRecord* rec{state.find_product(id)};
        auto holder_of = [&](auto wanted) -> Address {
            std::vector<Address> pool;
            for (const auto& [a, acct] : state.accounts) {
                if (wanted(acct.role)) pool.push_back(a);
            }
            return pool.empty() ? any_address() : pool[rng.below(pool.size())];
        };
        switch (pick) {
            case 0:
            case 1: {
                std::uint64_t size{g.gas.default_code_size};
                if (rng.below(6) == 0) size = kMaxCodeSize + rng.below(2);
                if (rng.below(6) == 0) size = rng.below(100);
                kind = op::Deploy{size};
                break;
            }
            case 2:
            case 3:
            case 4:
            case 5:
            case 6: {
                std::size_t name_len{rng.below(24)};
                std::size_t meta_len{rng.below(48)};
                if (rng.below(20) == 0) name_len = kMaxProductNameLength + rng.below(2);
                if (rng.below(20) == 0) meta_len = kMaxMetadataLength + rng.below(2);
                kind = op::Register{id, random_text(rng, name_len), random_text(rng, meta_len)};
                if (rng.below(4) != 0) {
                    for (std::size_t i{0}; i < keys.size(); ++i) {
                        if (g.roles.count(keys[i].address()) && g.roles.at(keys[i].address()) == Role::kManufacturer &&
                            (!sender_idx || rng.below(2) == 0)) {
                            sender_idx = i;
                        }
                    }
                }
                break;
            }
            case 7:
            case 8:
            case 9:
            case 10:
            case 11:
                kind = op::Transfer{id, rng.below(2) == 0 ? holder_of(is_trusted_node) : any_address()};
                break;
            case 12:
            case 13:
            case 14:
            case 15:
                kind = op::Sell{id, rng.below(2) == 0 ? holder_of([](Role r) { return r == Role::kConsumer; })
                                                      : any_address()};
                break;
            default:
                kind = op::FaucetClaim{};
                break;
        }
        // steer Transfer/Sell toward the current owner most of the time
        const bool moves{std::holds_alternative<op::Transfer>(kind) || std::holds_alternative<op::Sell>(kind)};
        if (moves && rec && rng.below(4) != 0) {
            for (std::size_t i{0}; i < keys.size(); ++i) {
                if (keys[i].address() == rec->current_owner) sender_idx = i;
            }
        }

        const bool outsider{rng.below(40) == 0};
        const KeyPair& key{outsider ? stranger : keys[sender_idx.value_or(rng.below(keys.size()))]};
        const Account* acct{state.find_account(key.address())};
        std::uint64_t nonce{acct ? acct->nonce : 0};
        if (rng.below(15) == 0) nonce += 1 + rng.below(2);
        if (rng.below(30) == 0 && nonce > 0) nonce -= 1;

        static constexpr std::uint64_t kPrices[]{1, 1'000, kCalibratedGasPrice, 50'000'000'000ull};
        const std::uint64_t price{kPrices[rng.below(4)]};

        TxEnvelope tx{ReferenceRegistry::sign(key, g.chain_id, nonce, kind, price)};
        switch (rng.below(40)) {
            case 0: tx.signature.bytes[rng.below(Signature::kSize)] ^= 0x01; break;
            case 1: tx.public_key = keys[rng.below(keys.size())].public_key; break;
            case 2: tx.nonce += 1; break;  // tampered after signing
            default: break;
        }

        (void)apply_tx_in_place(state, tx, ctx, rules);
        log.entries.push_back({std::move(tx), ctx});
    }
    log.keys = keys;
    log.keys.push_back(stranger);
    return log;
}

FoldCheck compare_fold(const RandomLog& log) {
    FoldCheck out;
    const ChainRules rules{ChainRules::from(log.genesis)};
    RegistryState state{genesis_state(log.genesis)};
    ReferenceRegistry oracle{log.genesis};
    oracle.know_keys(log.keys);
    const Wei initial{state.total_supply()};
    std::set<std::string> errors;

    auto mismatch = [&out](std::size_t i, const std::string& what) {
        if (out.equivalent) out.detail = "tx " + std::to_string(i) + ": " + what;
        out.equivalent = false;
    };

    for (std::size_t i{0}; i < log.entries.size(); ++i) {
        const auto& [tx, ctx]{log.entries[i]};
        const Receipt r{apply_tx_in_place(state, tx, ctx, rules)};
        const auto o{oracle.apply(tx, ctx.block_index, ctx.timestamp, ctx.sealer)};
        ++out.txs;
        if (r.accepted) ++out.accepted;
        if (r.accepted && std::holds_alternative<op::FaucetClaim>(tx.kind)) ++out.faucet_grants;
        errors.insert(receipt_error(r));

        if (r.tx_hash.hex() != o.tx_hash_hex) mismatch(i, "tx_hash " + r.tx_hash.hex() + " vs " + o.tx_hash_hex);
        if (receipt_error(r) != o.error) mismatch(i, "error '" + receipt_error(r) + "' vs '" + o.error + "'");
        if (r.accepted != o.accepted) mismatch(i, "accepted flag differs");
        if (r.gas_used != o.gas) mismatch(i, "gas " + std::to_string(r.gas_used) + " vs " + std::to_string(o.gas));
        if (r.fee != o.fee) mismatch(i, "fee " + to_string(r.fee) + " vs " + to_string(o.fee));
        const bool included{!(r.error && is_unchargeable(*r.error))};
        if (included != o.included) mismatch(i, "inclusion differs");
    }

    const std::string ours{state_commitment(state).hex()};
    const std::string theirs{oracle.commitment_hex()};
    if (ours != theirs) {
        if (out.equivalent) out.detail = "final commitment " + ours + " vs " + theirs;
        out.equivalent = false;
    }

    const Wei expected{initial + log.genesis.faucet_amount * out.faucet_grants};
    out.conserved = state.total_supply() == expected && oracle.total_supply() == expected &&
                    oracle.faucet_grants() == out.faucet_grants;
    out.errors_seen.assign(errors.begin(), errors.end());
    return out;
}

ExhaustiveCheck exhaustive_equivalence(std::size_t max_len) {
    ExhaustiveCheck out;
    auto seed = [](std::uint8_t tag) {
        std::array<std::uint8_t, 32> s{};
        s.fill(tag);
        return KeyPair::from_seed(s);
    };
    const KeyPair authority{seed(0xa0)};
    const std::array<KeyPair, 3> actors{seed(0xa1), seed(0xa2), seed(0xa3)};

    GenesisConfig g;
    g.authorities.push_back({authority.address(), authority.public_key});
    g.roles[actors[0].address()] = Role::kManufacturer;
    g.roles[actors[1].address()] = Role::kDistributor;
    g.roles[actors[2].address()] = Role::kConsumer;
    g.initial_balances[authority.address()] = kWeiPerEth;
    for (const auto& a : actors) g.initial_balances[a.address()] = 10 * kWeiPerEth;
    g.roles[authority.address()] = Role::kAuthority;

    const ChainRules rules{ChainRules::from(g)};
    const std::string id{"P-1"};

    // alphabet: 3 registers, 9 transfers, 9 sells
    std::vector<std::pair<std::size_t, TxKind>> symbols;
    for (std::size_t s{0}; s < 3; ++s) symbols.emplace_back(s, op::Register{id, "Widget", "lot=1"});
    for (std::size_t s{0}; s < 3; ++s) {
        for (std::size_t t{0}; t < 3; ++t) symbols.emplace_back(s, op::Transfer{id, actors[t].address()});
    }
    for (std::size_t s{0}; s < 3; ++s) {
        for (std::size_t t{0}; t < 3; ++t) symbols.emplace_back(s, op::Sell{id, actors[t].address()});
    }

    // every tx is chargeable at these balances, so a sender's nonce is its count of earlier txs
    std::vector<std::vector<TxEnvelope>> signed_txs(symbols.size());
    for (std::size_t i{0}; i < symbols.size(); ++i) {
        for (std::uint64_t nonce{0}; nonce < max_len; ++nonce) {
            signed_txs[i].push_back(
                make_signed_tx(actors[symbols[i].first], g.chain_id, nonce, symbols[i].second, g.gas.default_gas_price));
        }
    }

    RegistryState root{genesis_state(g)};
    ReferenceRegistry root_oracle{g};
    root_oracle.know_keys({authority, actors[0], actors[1], actors[2]});
    const TxEnvelope deploy{make_signed_tx(authority, g.chain_id, 0, op::Deploy{g.gas.default_code_size},
                                           g.gas.default_gas_price)};
    const BlockContext deploy_ctx{1, 3600, authority.address()};
    (void)apply_tx_in_place(root, deploy, deploy_ctx, rules);
    (void)root_oracle.apply(deploy, 1, 3600, authority.address());

    std::vector<std::size_t> path;
    std::array<std::uint64_t, 3> nonces{};

    auto visit = [&](auto&& self, const RegistryState& state, const ReferenceRegistry& oracle) -> void {
        ++out.sequences;
        // full canonical text, not just its hash
        if (canon::serialize(to_value(state)) != oracle.state_json()) {
            if (out.equivalent) {
                out.detail = "sequence [";
                for (std::size_t i{0}; i < path.size(); ++i) out.detail += (i ? "," : "") + std::to_string(path[i]);
                out.detail += "] diverges";
            }
            out.equivalent = false;
        }
        if (path.size() == max_len || !out.equivalent) return;
        const BlockContext ctx{2 + path.size(), 3600 * (2 + path.size()), authority.address()};
        for (std::size_t sym{0}; sym < symbols.size(); ++sym) {
            const std::size_t sender{symbols[sym].first};
            const TxEnvelope& tx{signed_txs[sym][nonces[sender]]};
            RegistryState next{state};
            ReferenceRegistry next_oracle{oracle};
            (void)apply_tx_in_place(next, tx, ctx, rules);
            (void)next_oracle.apply(tx, ctx.block_index, ctx.timestamp, ctx.sealer);
            path.push_back(sym);
            ++nonces[sender];
            self(self, next, next_oracle);
            --nonces[sender];
            path.pop_back();
        }
    };
    visit(visit, root, root_oracle);
    return out;
}

}  // namespace provchain::test
