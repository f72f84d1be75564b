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

// Deterministic supply-chain simulator.
//
// A scenario runs `steps` sealing rounds. Round r seals block r at logical time
// r * clock_step and carries up to txs_per_block transactions drawn from:
//
//   * faucet bootstrap of every trusted node
//   * one contract deployment by the first manufacturer
//   * per product: Register by a random manufacturer, a distributor hop (if any
//     distributors exist; a second, different distributor with probability 1/2),
//     a retailer hop (if any retailers exist), Sell to a random consumer, then a
//     consumer Verify
//   * adversarial noise: a re-sell attempt after a sale (p = 1/4), a counterfeit
//     probe of an unregistered id (p = 1/4), and an early faucet re-claim by a random
//     trusted node (p = 1/8 per round)
//
// Products are interleaved: each slot advances a uniformly chosen in-flight product.
// Rounds with no work seal empty blocks, so the chain always has steps + 1 blocks.
//
// All randomness comes from DeterministicRng (below), so (scenario) fully determines
// the chain bytes and the trace.

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <provchain/gas_report.hpp>
#include <provchain/ledger.hpp>
#include <provchain/registry.hpp>

namespace provchain::sim {

//! Portable seeded generator: std::mt19937_64 (its output sequence is fixed by the
//! C++ standard) with bounded draws by rejection sampling, so the same seed yields the
//! same decisions on every platform and standard library.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : engine_{seed} {}

    std::uint64_t next() { return engine_(); }

    //! Uniform in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    //! True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    //! 32 bytes from four draws, little-endian.
    std::array<std::uint8_t, 32> seed_bytes();

  private:
    std::mt19937_64 engine_;
};

struct ActorCounts {
    std::uint64_t manufacturers{1};
    std::uint64_t distributors{1};
    std::uint64_t retailers{1};
    std::uint64_t consumers{1};
    std::uint64_t authorities{1};

    friend bool operator==(const ActorCounts&, const ActorCounts&) = default;
};

//! Single-byte edit of the persisted chain file: line `target` (block index), byte
//! `byte_offset` within that line.
struct Mutation {
    std::uint64_t target{0};
    std::uint64_t byte_offset{0};
    std::uint8_t new_byte{0};

    friend bool operator==(const Mutation&, const Mutation&) = default;
};

struct Scenario {
    std::uint64_t seed{42};
    ActorCounts actors;
    std::uint64_t products{1};
    std::uint64_t steps{64};
    std::uint64_t txs_per_block{4};
    Timestamp clock_step{3600};
    std::vector<Mutation> tamper_plan;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioInvalid : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void validate(const Scenario& scenario);
[[nodiscard]] canon::Value to_value(const Scenario& scenario);
//! Missing fields take their defaults.
[[nodiscard]] Scenario scenario_from_value(const canon::Value& value);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

struct VerifyAction {
    std::string product_id;
    friend bool operator==(const VerifyAction&, const VerifyAction&) = default;
};

struct TraceEvent {
    std::uint64_t step{0};
    std::uint64_t block{0};  // block the tx landed in, or whose pending state a Verify read
    Address actor;
    std::variant<TxKind, VerifyAction> action;
    std::variant<Receipt, VerificationResult> outcome;
    bool included{true};  // false for transactions the sealer refused

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

[[nodiscard]] canon::Value to_value(const TraceEvent& event);

struct Actor {
    Role role{Role::kConsumer};
    KeyPair key;
    [[nodiscard]] Address address() const { return key.address(); }
};

struct SimulationResult {
    Scenario scenario;
    GenesisConfig genesis;
    std::vector<Actor> actors;  // authorities, manufacturers, distributors, retailers, consumers
    std::vector<Block> blocks;
    std::string chain_text;  // ledger file bytes, after the tamper plan
    std::vector<TraceEvent> trace;
    RegistryState final_state;  // before tampering

    [[nodiscard]] std::vector<Address> addresses(Role role) const;
    [[nodiscard]] std::string trace_text() const;  // one canonical event per line
};

//! Throws ScenarioInvalid.
[[nodiscard]] SimulationResult run_scenario(const Scenario& scenario);

//! Applies byte edits to ledger text. Throws ScenarioInvalid for out-of-range targets.
[[nodiscard]] std::string apply_mutations(std::string chain_text, const std::vector<Mutation>& mutations);

//! Writes genesis.json, chain.log and trace.jsonl into `dir` (created if needed).
void write_outputs(const SimulationResult& result, const std::filesystem::path& dir);

//! Verification of an id the adversary made up; exists is false unless it was registered.
[[nodiscard]] VerificationResult counterfeit_probe(const RegistryState& state, std::string_view fake_id);

}  // namespace provchain::sim
