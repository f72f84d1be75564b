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
#include <optional>
#include <string>
#include <vector>

#include <provchain/crypto.hpp>
#include <provchain/genesis.hpp>
#include <provchain/registry.hpp>
#include <provchain/tx.hpp>

namespace provchain {

struct BlockHeader {
    std::uint64_t index{0};
    Timestamp timestamp{0};
    Hash prev_hash;
    Hash tx_root;
    Address sealer;
    Hash state_root;

    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
    BlockHeader header;
    std::vector<TxEnvelope> txs;
    Signature seal;  // over header_hash(header); all zero for the genesis block

    friend bool operator==(const Block&, const Block&) = default;
};

[[nodiscard]] canon::Value to_value(const BlockHeader& header);
[[nodiscard]] BlockHeader header_from_value(const canon::Value& value);
[[nodiscard]] canon::Value to_value(const Block& block);
[[nodiscard]] Block block_from_value(const canon::Value& value);

//! One ledger-file line, without the trailing newline.
[[nodiscard]] std::string serialize_block(const Block& block);
//! Strict: the text must be exactly the canonical form of the block it encodes.
[[nodiscard]] Block parse_block(std::string_view line);

[[nodiscard]] Hash header_hash(const BlockHeader& header);

//! acc = sha256(""); acc = sha256(acc || tx_hash(tx)) for each tx in order.
[[nodiscard]] Hash compute_tx_root(const std::vector<TxEnvelope>& txs);

//! Round-robin proof-of-authority schedule: authorities[index mod n].
[[nodiscard]] const AuthorityEntry& scheduled_sealer(const GenesisConfig& genesis, std::uint64_t index);

[[nodiscard]] Block make_genesis_block(const GenesisConfig& genesis);

class SealError : public std::runtime_error {
  public:
    enum class Code { kNotAuthority, kWrongTurn, kClockRegression };
    SealError(Code code, const std::string& message) : std::runtime_error{message}, code_{code} {}
    [[nodiscard]] Code code() const noexcept { return code_; }

  private:
    Code code_;
};

//! Builds and signs the next block on `parent`. Inputs are not modified.
[[nodiscard]] Block seal_block(const std::vector<TxEnvelope>& pending, const BlockHeader& parent,
                               const Hash& state_root, const KeyPair& sealer_key, Timestamp timestamp,
                               const GenesisConfig& genesis);

//! Result of chain validation. Failures are values, never exceptions.
struct ValidationReport {
    bool ok{true};
    std::uint64_t block_index{0};  // first offending block
    std::string rule;              // parse, canonical, genesis, index, timestamp, linkage, round_robin,
                                   // seal, tx_root, signature, nonce, funds, state_root, length
    std::string detail;

    static ValidationReport pass() { return {}; }
    static ValidationReport fail(std::uint64_t index, std::string rule, std::string detail = {}) {
        return {false, index, std::move(rule), std::move(detail)};
    }
};

//! Incremental replay of a chain: validates each block against the current tip and
//! applies it. Used by validate_chain, the ledger store, and reporting.
class ChainReplayer {
  public:
    explicit ChainReplayer(GenesisConfig genesis);

    //! Block 0 must be the synthesized genesis block; later blocks must extend the tip.
    //! On failure nothing changes. `receipts` receives one receipt per transaction.
    [[nodiscard]] ValidationReport apply(const Block& block, std::vector<Receipt>* receipts = nullptr);

    [[nodiscard]] const GenesisConfig& genesis() const noexcept { return genesis_; }
    [[nodiscard]] const ChainRules& rules() const noexcept { return rules_; }
    [[nodiscard]] const RegistryState& state() const noexcept { return state_; }
    [[nodiscard]] const std::optional<BlockHeader>& tip() const noexcept { return tip_; }
    [[nodiscard]] std::uint64_t height() const noexcept { return tip_ ? tip_->index + 1 : 0; }

  private:
    GenesisConfig genesis_;
    ChainRules rules_;
    RegistryState state_;
    std::optional<BlockHeader> tip_;
};

[[nodiscard]] ValidationReport validate_chain(const std::vector<Block>& blocks, const GenesisConfig& genesis);

//! Validates ledger-file text line by line; parse failures are reported against the
//! block whose line is malformed.
[[nodiscard]] ValidationReport validate_ledger_text(std::string_view text, const GenesisConfig& genesis);

//! Accumulates transactions on top of a tip state and seals them into a block.
//! Transactions that cannot be charged (bad signature/nonce, unknown sender,
//! insufficient funds) are refused and leave the builder unchanged.
class BlockBuilder {
  public:
    BlockBuilder(const GenesisConfig& genesis, const BlockHeader& parent, RegistryState state, Timestamp timestamp);

    //! Applies tx; returns its receipt. Included iff !receipt.error || !is_unchargeable(*receipt.error).
    Receipt add(const TxEnvelope& tx);

    [[nodiscard]] Block seal(const KeyPair& sealer_key) const;

    [[nodiscard]] const RegistryState& state() const noexcept { return state_; }
    [[nodiscard]] const BlockContext& context() const noexcept { return ctx_; }
    [[nodiscard]] const std::vector<TxEnvelope>& txs() const noexcept { return txs_; }

  private:
    GenesisConfig genesis_;
    ChainRules rules_;
    BlockHeader parent_;
    BlockContext ctx_;
    RegistryState state_;
    std::vector<TxEnvelope> txs_;
};

class LedgerError : public std::runtime_error {
  public:
    enum class Code { kNotFound, kAlreadyExists, kParseError, kValidationFailed, kStorageFailure };

    LedgerError(Code code, const std::string& message, ValidationReport report = {})
        : std::runtime_error{message}, code_{code}, report_{std::move(report)} {}

    [[nodiscard]] Code code() const noexcept { return code_; }
    [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

  private:
    Code code_;
    ValidationReport report_;
};

//! Append-only ledger file: one canonical block per LF-terminated line, genesis first.
//!
//! Appends rewrite the file through a temporary and rename it into place, so a
//! block is either fully present or absent.
class LedgerStore {
  public:
    //! Writes a new file holding only the genesis block. Fails if the path exists.
    static LedgerStore create(const std::filesystem::path& path, const GenesisConfig& genesis);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const std::vector<std::vector<Receipt>>& receipts() const noexcept { return receipts_; }
    [[nodiscard]] const BlockHeader& tip() const noexcept { return blocks_.back().header; }
    [[nodiscard]] const RegistryState& state() const noexcept { return replayer_.state(); }
    [[nodiscard]] const GenesisConfig& genesis() const noexcept { return replayer_.genesis(); }
    [[nodiscard]] std::size_t size() const noexcept { return blocks_.size(); }

    //! Validates against the tip, then persists. Throws LedgerError (kValidationFailed or
    //! kStorageFailure); on failure neither memory nor disk changes.
    void append_block(const Block& block);

  private:
    friend LedgerStore load_chain(const std::filesystem::path& path, const GenesisConfig& genesis);

    LedgerStore(std::filesystem::path path, const GenesisConfig& genesis);

    std::filesystem::path path_;
    ChainReplayer replayer_;
    std::vector<Block> blocks_;
    std::vector<std::vector<Receipt>> receipts_;
};

//! Loads and fully validates a ledger file. Throws LedgerError: kNotFound,
//! kParseError (message names the line), kValidationFailed.
[[nodiscard]] LedgerStore load_chain(const std::filesystem::path& path, const GenesisConfig& genesis);

}  // namespace provchain
