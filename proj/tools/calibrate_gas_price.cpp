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

// Derives kCalibratedGasPrice.
//
// Builds the reference three-transaction chain (Deploy at default_code_size, Register,
// Sell straight from the manufacturer to a consumer), sums the gas its receipts report
// and picks the wei-per-gas price that makes the total fee hit the target:
//
//     price = round(target_wei / total_gas)
//
// The reference transactions use the same shapes as the simulator (product "P-001",
// name "Product 1", metadata "batch=1"), so the result carries over to scenario chains.
// Re-run after changing GasParams defaults or the transaction encoding, then paste the
// printed value into gas.hpp.

#include <cstdio>
#include <string>

#include <provchain/gas_report.hpp>
#include <provchain/ledger.hpp>

using namespace provchain;

namespace {

// 0.00064428 ETH
constexpr Wei kTargetWei{644'280'000'000'000ull};

KeyPair fixed_key(std::uint8_t tag) {
    std::array<std::uint8_t, 32> seed{};
    seed.fill(tag);
    return KeyPair::from_seed(seed);
}

}  // namespace

int main() {
    const KeyPair authority{fixed_key(1)};
    const KeyPair manufacturer{fixed_key(2)};
    const KeyPair consumer{fixed_key(3)};

    GenesisConfig genesis;
    genesis.authorities.push_back({authority.address(), authority.public_key});
    genesis.roles[authority.address()] = Role::kAuthority;
    genesis.roles[manufacturer.address()] = Role::kManufacturer;
    genesis.roles[consumer.address()] = Role::kConsumer;
    genesis.initial_balances[manufacturer.address()] = kWeiPerEth;
    // price 1 wei/gas: fees equal gas, so the receipts give the gas directly
    genesis.gas.default_gas_price = 1;

    const std::vector<TxKind> kinds{
        op::Deploy{genesis.gas.default_code_size},
        op::Register{"P-001", "Product 1", "batch=1"},
        op::Sell{"P-001", consumer.address()},
    };

    std::vector<Block> blocks{make_genesis_block(genesis)};
    RegistryState state{genesis_state(genesis)};
    for (std::size_t i{0}; i < kinds.size(); ++i) {
        BlockBuilder builder{genesis, blocks.back().header, state, 3600 * (i + 1)};
        const Receipt r{builder.add(make_signed_tx(manufacturer, genesis.chain_id, i, kinds[i], 1))};
        if (!r.accepted) {
            std::fprintf(stderr, "reference tx %zu rejected: %s\n", i, std::string{error_name(*r.error)}.c_str());
            return 1;
        }
        blocks.push_back(builder.seal(authority));
        state = builder.state();
    }

    const GasReport report{gas_report(blocks, genesis)};
    const Gas total_gas{report.total.total_gas};
    const Wei price{(kTargetWei + total_gas / 2) / total_gas};
    const Wei total_fee{fee(total_gas, static_cast<std::uint64_t>(price))};

    for (const auto& row : report.rows) {
        if (row.tx_count) std::printf("%-10s %llu gas\n", row.category.c_str(), static_cast<unsigned long long>(row.total_gas));
    }
    std::printf("total      %llu gas\n", static_cast<unsigned long long>(total_gas));
    std::printf("target     %s wei\n", to_string(kTargetWei).c_str());
    std::printf("price      %s wei/gas\n", to_string(price).c_str());
    std::printf("fee        %s wei (%s ETH)\n", to_string(total_fee).c_str(), format_eth(total_fee).c_str());
    std::printf("shipped    %llu wei/gas%s\n", static_cast<unsigned long long>(kCalibratedGasPrice),
                price == kCalibratedGasPrice ? "" : "  (differs; update gas.hpp)");
    return price == kCalibratedGasPrice ? 0 : 2;
}
