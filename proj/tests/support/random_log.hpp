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

// Seeded random transaction logs and the registry-vs-reference comparison used by the
// equivalence and conservation tests.

#include <cstdint>
#include <string>
#include <vector>

#include <provchain/genesis.hpp>
#include <provchain/registry.hpp>

namespace provchain::test {

struct LogEntry {
    TxEnvelope tx;
    BlockContext ctx;
};

struct RandomLog {
    GenesisConfig genesis;
    std::vector<LogEntry> entries;
    std::vector<KeyPair> keys;  // every key that signed an entry
};

struct LogLimits {
    std::size_t max_txs{200};
    std::size_t max_accounts{10};
    std::size_t max_products{20};
};

//! Sender choice and nonces are steered by a registry fold run alongside generation, so
//! that most transactions get past the cheap checks and reach the product rules.
[[nodiscard]] RandomLog random_log(std::uint64_t seed, const LogLimits& limits = {});

struct FoldCheck {
    bool equivalent{true};
    bool conserved{true};  // supply == initial + faucet_amount * accepted claims, on both sides
    std::string detail;    // first mismatch
    std::size_t txs{0};
    std::size_t accepted{0};
    std::size_t faucet_grants{0};
    std::vector<std::string> errors_seen;
};

//! Folds the log through apply_tx and through ReferenceRegistry, comparing every receipt
//! and the final state commitment.
[[nodiscard]] FoldCheck compare_fold(const RandomLog& log);

struct ExhaustiveCheck {
    bool equivalent{true};
    std::string detail;
    std::size_t sequences{0};  // including the empty sequence
};

//! Every sequence of length <= max_len over {Register, Transfer, Sell} x 3 senders (x 3
//! targets for Transfer/Sell), one product, on a deployed contract. Compares state
//! canonical state text after each sequence.
[[nodiscard]] ExhaustiveCheck exhaustive_equivalence(std::size_t max_len = 4);

}  // namespace provchain::test
