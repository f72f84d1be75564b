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

#include <fstream>

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <provchain/registry.hpp>

#include "random_log.hpp"

namespace provchain {

namespace {

    std::array<std::uint8_t, 32> filled(std::uint8_t b) {
        std::array<std::uint8_t, 32> s{};
        s.fill(b);
        return s;
    }

    struct World {
        KeyPair authority{KeyPair::from_seed(filled(1))};
        KeyPair maker{KeyPair::from_seed(filled(2))};
        KeyPair dist{KeyPair::from_seed(filled(3))};
        KeyPair shop{KeyPair::from_seed(filled(4))};
        KeyPair buyer{KeyPair::from_seed(filled(5))};
        KeyPair buyer2{KeyPair::from_seed(filled(6))};
        KeyPair outsider{KeyPair::from_seed(filled(7))};
        GenesisConfig genesis;
        ChainRules rules;
        RegistryState state;
        BlockContext ctx;

        World() {
            genesis.authorities.push_back({authority.address(), authority.public_key});
            genesis.roles[maker.address()] = Role::kManufacturer;
            genesis.roles[dist.address()] = Role::kDistributor;
            genesis.roles[shop.address()] = Role::kRetailer;
            genesis.roles[buyer.address()] = Role::kConsumer;
            genesis.roles[buyer2.address()] = Role::kConsumer;
            for (const auto* k : {&maker, &dist, &shop, &buyer}) genesis.initial_balances[k->address()] = kWeiPerEth;
            rules = ChainRules::from(genesis);
            state = genesis_state(genesis);
            ctx = {1, 3600, authority.address()};
        }

        std::uint64_t nonce_of(const KeyPair& k) const {
            const Account* a{state.find_account(k.address())};
            return a ? a->nonce : 0;
        }

        Receipt send(const KeyPair& k, TxKind kind, std::uint64_t price = 1'000'000'000) {
            return apply_tx_in_place(state, make_signed_tx(k, genesis.chain_id, nonce_of(k), std::move(kind), price), ctx,
                                     rules);
        }

        void deploy() { REQUIRE(send(maker, op::Deploy{2000}).accepted); }
        void register_product(const std::string& id) { REQUIRE(send(maker, op::Register{id, "Widget", "lot 1"}).accepted); }
    };

    std::string err(const Receipt& r) { return r.error ? std::string{error_name(*r.error)} : "ok"; }

}  // namespace

TEST_CASE("error names round-trip") {
    for (auto e : {TxError::kBadSignature, TxError::kUnknownAccount, TxError::kBadNonce, TxError::kInsufficientFunds,
                   TxError::kAlreadyDeployed, TxError::kNotTrustedNode, TxError::kCodeTooLarge, TxError::kNotDeployed,
                   TxError::kNotManufacturer, TxError::kBadProductId, TxError::kBadMetadata,
                   TxError::kDuplicateProductId, TxError::kUnknownProduct, TxError::kProductUnavailable,
                   TxError::kNotOwner, TxError::kNotConsumer, TxError::kFaucetCooldown}) {
        CHECK(parse_error_name(error_name(e)) == e);
    }
    CHECK_FALSE(parse_error_name("Nope"));
}

TEST_CASE("full lifecycle M -> D -> R -> C") {
    World w;
    w.deploy();
    w.register_product("P-001");
    CHECK(w.send(w.maker, op::Transfer{"P-001", w.dist.address()}).accepted);
    CHECK(w.send(w.dist, op::Transfer{"P-001", w.shop.address()}).accepted);
    CHECK(w.send(w.shop, op::Sell{"P-001", w.buyer.address()}).accepted);

    const VerificationResult v{verify_product(w.state, "P-001")};
    CHECK(v.exists);
    CHECK(v.status == Status::kUnavailable);
    CHECK(v.manufacturer == w.maker.address());
    CHECK(v.current_owner == w.buyer.address());
    CHECK(v.history == std::vector<Address>{w.maker.address(), w.dist.address(), w.shop.address(), w.buyer.address()});

    // sold is absorbing
    const Receipt again{w.send(w.shop, op::Sell{"P-001", w.buyer2.address()})};
    CHECK(err(again) == "ProductUnavailable");
    CHECK(err(w.send(w.dist, op::Transfer{"P-001", w.shop.address()})) == "ProductUnavailable");
    CHECK(verify_product(w.state, "P-001").history.size() == 4);
    CHECK_FALSE(verify_product(w.state, "FAKE-1").exists);
}

TEST_CASE("deploy rules") {
    World w;
    CHECK(err(w.send(w.buyer, op::Deploy{10})) == "NotTrustedNode");
    CHECK(err(w.send(w.maker, op::Deploy{kMaxCodeSize + 1})) == "CodeTooLarge");
    CHECK_FALSE(w.state.contract);
    CHECK(w.send(w.dist, op::Deploy{kMaxCodeSize}).accepted);
    REQUIRE(w.state.contract);
    CHECK(w.state.contract->deployer == w.dist.address());
    CHECK(err(w.send(w.maker, op::Deploy{10})) == "AlreadyDeployed");
}

TEST_CASE("contract address matches the fixture") {
    std::ifstream in{std::string{PROVCHAIN_FIXTURE_DIR} + "/golden.json"};
    const auto g = nlohmann::json::parse(in);
    World w;
    CHECK(derive_contract_address(w.maker.address(), 0).hex() == g["contract_address"].get<std::string>());
    CHECK(derive_contract_address(w.maker.address(), 1) != derive_contract_address(w.maker.address(), 0));
    w.deploy();
    CHECK(w.state.contract->address.hex() == g["contract_address"].get<std::string>());
}

TEST_CASE("register rules in order") {
    World w;
    CHECK(err(w.send(w.maker, op::Register{"P-1", "n", ""})) == "NotDeployed");
    w.deploy();
    CHECK(err(w.send(w.dist, op::Register{"P-1", "n", ""})) == "NotManufacturer");
    CHECK(err(w.send(w.maker, op::Register{"", "n", ""})) == "BadProductId");
    CHECK(err(w.send(w.maker, op::Register{"has space", "n", ""})) == "BadProductId");
    CHECK(err(w.send(w.maker, op::Register{std::string(65, 'a'), "n", ""})) == "BadProductId");
    CHECK(w.send(w.maker, op::Register{std::string(64, 'a'), "n", ""}).accepted);
    CHECK(err(w.send(w.maker, op::Register{"P-1", std::string(257, 'n'), ""})) == "BadMetadata");
    CHECK(err(w.send(w.maker, op::Register{"P-1", "n", std::string(1025, 'm')})) == "BadMetadata");
    CHECK(w.send(w.maker, op::Register{"P-1", std::string(256, 'n'), std::string(1024, 'm')}).accepted);
    CHECK(err(w.send(w.maker, op::Register{"P-1", "n", ""})) == "DuplicateProductId");
    // precedence: the role check fires before the id check
    CHECK(err(w.send(w.dist, op::Register{"", "n", ""})) == "NotManufacturer");
}

TEST_CASE("transfer and sell rules") {
    World w;
    CHECK(err(w.send(w.maker, op::Transfer{"P-1", w.dist.address()})) == "NotDeployed");
    w.deploy();
    CHECK(err(w.send(w.maker, op::Transfer{"P-1", w.dist.address()})) == "UnknownProduct");
    w.register_product("P-1");
    CHECK(err(w.send(w.dist, op::Transfer{"P-1", w.shop.address()})) == "NotOwner");
    CHECK(err(w.send(w.maker, op::Transfer{"P-1", w.buyer.address()})) == "NotTrustedNode");
    CHECK(err(w.send(w.maker, op::Transfer{"P-1", w.authority.address()})) == "NotTrustedNode");
    CHECK(err(w.send(w.maker, op::Transfer{"P-1", w.outsider.address()})) == "NotTrustedNode");
    CHECK(err(w.send(w.maker, op::Sell{"P-1", w.dist.address()})) == "NotConsumer");
    CHECK(err(w.send(w.maker, op::Sell{"P-1", w.outsider.address()})) == "NotConsumer");
    CHECK(err(w.send(w.buyer, op::Sell{"P-1", w.buyer2.address()})) == "NotOwner");
    // a manufacturer may sell directly, and may hand to itself
    CHECK(w.send(w.maker, op::Transfer{"P-1", w.maker.address()}).accepted);
    CHECK(w.send(w.maker, op::Sell{"P-1", w.buyer.address()}).accepted);
    CHECK(verify_product(w.state, "P-1").history ==
          std::vector<Address>{w.maker.address(), w.maker.address(), w.buyer.address()});
}

TEST_CASE("faucet cooldown boundaries") {
    World w;
    const Address who{w.buyer2.address()};
    auto claim = [&](Timestamp t) {
        w.ctx.timestamp = t;
        return w.send(w.buyer2, op::FaucetClaim{});
    };
    const Receipt first{claim(0)};
    CHECK(first.accepted);
    CHECK(first.gas_used == 0);
    CHECK(w.state.find_account(who)->balance == Wei{500'000'000'000'000'000ull});

    const Receipt early{claim(86'399)};
    CHECK(err(early) == "FaucetCooldown");
    CHECK(w.state.find_account(who)->balance == Wei{500'000'000'000'000'000ull});
    CHECK(w.state.find_account(who)->nonce == 2);  // the refused claim still used its nonce

    CHECK(claim(86'400).accepted);
    CHECK(w.state.find_account(who)->balance == kWeiPerEth);
    CHECK(*w.state.find_account(who)->last_faucet_claim == 86'400);

    // a clock behind the last claim never grants
    CHECK(err(claim(10)) == "FaucetCooldown");
}

TEST_CASE("unchargeable failures leave state untouched") {
    World w;
    w.deploy();
    const RegistryState before{w.state};

    TxEnvelope bad_sig{make_signed_tx(w.maker, 5, w.nonce_of(w.maker), op::Register{"P-1", "n", ""}, 1)};
    bad_sig.signature.bytes[0] ^= 1;
    Receipt r{apply_tx_in_place(w.state, bad_sig, w.ctx, w.rules)};
    CHECK(err(r) == "BadSignature");

    r = apply_tx_in_place(w.state, make_signed_tx(w.outsider, 5, 0, op::FaucetClaim{}, 1), w.ctx, w.rules);
    CHECK(err(r) == "UnknownAccount");

    r = apply_tx_in_place(w.state, make_signed_tx(w.maker, 5, 7, op::Register{"P-1", "n", ""}, 1), w.ctx, w.rules);
    CHECK(err(r) == "BadNonce");

    r = apply_tx_in_place(w.state, make_signed_tx(w.maker, 6, w.nonce_of(w.maker), op::Register{"P-1", "n", ""}, 1),
                          w.ctx, w.rules);
    CHECK(err(r) == "BadSignature");  // wrong chain id

    // buyer2 has no balance
    r = w.send(w.buyer2, op::Deploy{1});
    CHECK(err(r) == "InsufficientFunds");
    CHECK(r.gas_used == 0);
    CHECK(r.fee == 0);
    CHECK(w.state == before);
}

TEST_CASE("rejected variants pay intrinsic gas and use the nonce") {
    World w;
    w.deploy();
    const Wei maker_before{w.state.find_account(w.maker.address())->balance};
    const Wei sealer_before{w.state.find_account(w.authority.address())->balance};
    const std::uint64_t nonce_before{w.nonce_of(w.maker)};
    const TxKind kind{op::Sell{"NOPE", w.buyer.address()}};
    const Receipt r{w.send(w.maker, kind, 3)};
    CHECK(err(r) == "UnknownProduct");
    CHECK_FALSE(r.accepted);
    CHECK(r.gas_used == intrinsic_gas(kind, w.rules.gas));
    CHECK(r.fee == fee(r.gas_used, 3));
    CHECK(w.state.find_account(w.maker.address())->balance == maker_before - r.fee);
    CHECK(w.state.find_account(w.authority.address())->balance == sealer_before + r.fee);
    CHECK(w.nonce_of(w.maker) == nonce_before + 1);
}

TEST_CASE("fee conservation per accepted tx") {
    World w;
    w.deploy();
    const Wei supply{w.state.total_supply()};
    const Wei payer0{w.state.find_account(w.maker.address())->balance};
    const Wei sealer0{w.state.find_account(w.authority.address())->balance};
    const Receipt r{w.send(w.maker, op::Register{"P-9", "x", "y"}, 1'234)};
    REQUIRE(r.accepted);
    const Wei paid{payer0 - w.state.find_account(w.maker.address())->balance};
    const Wei got{w.state.find_account(w.authority.address())->balance - sealer0};
    CHECK(paid == got);
    CHECK(paid == Wei{r.gas_used} * 1'234);
    CHECK(w.state.total_supply() == supply);
}

TEST_CASE("apply_tx is pure") {
    World w;
    w.deploy();
    const RegistryState before{w.state};
    const TxEnvelope tx{make_signed_tx(w.maker, 5, w.nonce_of(w.maker), op::Register{"P-2", "n", ""}, 1)};
    const ApplyResult a{apply_tx(before, tx, w.ctx, w.rules)};
    const ApplyResult b{apply_tx(before, tx, w.ctx, w.rules)};
    CHECK(w.state == before);
    CHECK(a.state == b.state);
    CHECK(a.receipt == b.receipt);
    CHECK(state_commitment(a.state) == state_commitment(b.state));
}

TEST_CASE("registry agrees with the reference on a few random logs") {
    for (std::uint64_t seed{1}; seed <= 20; ++seed) {
        const auto log{test::random_log(seed)};
        const auto check{test::compare_fold(log)};
        INFO("seed " << seed << ": " << check.detail);
        CHECK(check.equivalent);
        CHECK(check.conserved);
    }
}

}  // namespace provchain
