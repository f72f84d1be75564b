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

#include <provchain/ledger.hpp>

#include <fstream>
#include <sstream>

namespace provchain {

namespace {

    std::string read_file(const std::filesystem::path& path) {
        std::ifstream in{path, std::ios::binary};
        if (!in) throw LedgerError{LedgerError::Code::kNotFound, "cannot open ledger file " + path.string()};
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    }

    // Writes `content` to a sibling temporary and renames it over `path`.
    void write_atomically(const std::filesystem::path& path, const std::string& content) {
        std::filesystem::path tmp{path};
        tmp += ".tmp";
        {
            std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
            if (!out) throw LedgerError{LedgerError::Code::kStorageFailure, "cannot write " + tmp.string()};
            out << content;
            if (!out.flush()) {
                throw LedgerError{LedgerError::Code::kStorageFailure, "write failed for " + tmp.string()};
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
            throw LedgerError{LedgerError::Code::kStorageFailure, "cannot replace " + path.string()};
        }
    }

    std::string_view rule_for(TxError e) {
        switch (e) {
            case TxError::kBadNonce: return "nonce";
            case TxError::kInsufficientFunds: return "funds";
            default: return "signature";
        }
    }

}  // namespace

canon::Value to_value(const BlockHeader& h) {
    return canon::Object{
        {"index", h.index},   {"prev_hash", h.prev_hash},   {"sealer", h.sealer},
        {"state_root", h.state_root}, {"timestamp", h.timestamp}, {"tx_root", h.tx_root},
    };
}

BlockHeader header_from_value(const canon::Value& v) {
    canon::expect_keys(v, {"index", "prev_hash", "sealer", "state_root", "timestamp", "tx_root"}, "header");
    BlockHeader h;
    h.index = v.at("index").as_u64();
    h.prev_hash = v.at("prev_hash").as_fixed<Hash>();
    h.sealer = v.at("sealer").as_fixed<Address>();
    h.state_root = v.at("state_root").as_fixed<Hash>();
    h.timestamp = v.at("timestamp").as_u64();
    h.tx_root = v.at("tx_root").as_fixed<Hash>();
    return h;
}

canon::Value to_value(const Block& b) {
    canon::Array txs;
    txs.reserve(b.txs.size());
    for (const auto& tx : b.txs) txs.push_back(to_value(tx));
    // emplace, not an initializer list: that would deep-copy the transactions
    canon::Object out;
    out.emplace("header", to_value(b.header));
    out.emplace("seal", b.seal);
    out.emplace("txs", std::move(txs));
    return out;
}

Block block_from_value(const canon::Value& v) {
    canon::expect_keys(v, {"header", "seal", "txs"}, "block");
    Block b;
    b.header = header_from_value(v.at("header"));
    b.seal = v.at("seal").as_fixed<Signature>();
    for (const auto& tx : v.at("txs").as_array()) b.txs.push_back(tx_from_value(tx));
    return b;
}

std::string serialize_block(const Block& block) {
    return canon::serialize(to_value(block));
}

Block parse_block(std::string_view line) {
    Block block{block_from_value(canon::parse(line))};
    if (serialize_block(block) != line) throw ParseError{"block is not in canonical form"};
    return block;
}

Hash header_hash(const BlockHeader& header) {
    return hash_of(to_value(header));
}

Hash compute_tx_root(const std::vector<TxEnvelope>& txs) {
    Hash acc{sha256(std::string_view{})};
    Bytes buf(2 * Hash::kSize);
    for (const auto& tx : txs) {
        const Hash h{tx_hash(tx)};
        std::copy(acc.bytes.begin(), acc.bytes.end(), buf.begin());
        std::copy(h.bytes.begin(), h.bytes.end(), buf.begin() + Hash::kSize);
        acc = sha256(buf);
    }
    return acc;
}

const AuthorityEntry& scheduled_sealer(const GenesisConfig& genesis, std::uint64_t index) {
    return genesis.authorities.at(index % genesis.authorities.size());
}

Block make_genesis_block(const GenesisConfig& genesis) {
    Block b;
    b.header.index = 0;
    b.header.timestamp = 0;
    b.header.tx_root = compute_tx_root({});
    b.header.sealer = scheduled_sealer(genesis, 0).address;
    b.header.state_root = state_commitment(genesis_state(genesis));
    return b;
}

Block seal_block(const std::vector<TxEnvelope>& pending, const BlockHeader& parent, const Hash& state_root,
                 const KeyPair& sealer_key, Timestamp timestamp, const GenesisConfig& genesis) {
    const Address sealer{sealer_key.address()};
    bool known{false};
    for (const auto& a : genesis.authorities) known = known || a.address == sealer;
    if (!known) throw SealError{SealError::Code::kNotAuthority, sealer.hex() + " is not an authority"};
    const std::uint64_t index{parent.index + 1};
    if (scheduled_sealer(genesis, index).address != sealer) {
        throw SealError{SealError::Code::kWrongTurn, "block " + std::to_string(index) + " belongs to " +
                                                         scheduled_sealer(genesis, index).address.hex()};
    }
    if (timestamp < parent.timestamp) {
        throw SealError{SealError::Code::kClockRegression, "timestamp " + std::to_string(timestamp) +
                                                               " precedes parent " + std::to_string(parent.timestamp)};
    }

    Block b;
    b.header.index = index;
    b.header.timestamp = timestamp;
    b.header.prev_hash = header_hash(parent);
    b.header.tx_root = compute_tx_root(pending);
    b.header.sealer = sealer;
    b.header.state_root = state_root;
    b.txs = pending;
    b.seal = sign(sealer_key.secret_key, header_hash(b.header).view());
    return b;
}

// ChainReplayer

ChainReplayer::ChainReplayer(GenesisConfig genesis)
    : genesis_{std::move(genesis)}, rules_{ChainRules::from(genesis_)}, state_{genesis_state(genesis_)} {}

ValidationReport ChainReplayer::apply(const Block& block, std::vector<Receipt>* receipts) {
    const std::uint64_t index{block.header.index};
    if (!tip_) {
        if (block != make_genesis_block(genesis_)) {
            return ValidationReport::fail(0, "genesis", "block 0 differs from the configured genesis");
        }
        tip_ = block.header;
        if (receipts) receipts->clear();
        return ValidationReport::pass();
    }

    const std::uint64_t expected{tip_->index + 1};
    const auto& h{block.header};
    if (index != expected) {
        return ValidationReport::fail(expected, "index", "found index " + std::to_string(index));
    }
    if (h.timestamp < tip_->timestamp) return ValidationReport::fail(index, "timestamp");
    if (h.prev_hash != header_hash(*tip_)) return ValidationReport::fail(index, "linkage");
    const AuthorityEntry& scheduled{scheduled_sealer(genesis_, index)};
    if (h.sealer != scheduled.address) {
        return ValidationReport::fail(index, "round_robin", "expected sealer " + scheduled.address.hex());
    }
    if (!verify(scheduled.public_key, header_hash(h).view(), block.seal)) {
        return ValidationReport::fail(index, "seal");
    }
    if (h.tx_root != compute_tx_root(block.txs)) return ValidationReport::fail(index, "tx_root");

    RegistryState next{state_};
    const BlockContext ctx{index, h.timestamp, h.sealer};
    std::vector<Receipt> out;
    out.reserve(block.txs.size());
    for (std::size_t i{0}; i < block.txs.size(); ++i) {
        Receipt r{apply_tx_in_place(next, block.txs[i], ctx, rules_)};
        if (r.error && is_unchargeable(*r.error)) {
            return ValidationReport::fail(index, std::string{rule_for(*r.error)},
                                          "tx " + std::to_string(i) + ": " + std::string{error_name(*r.error)});
        }
        out.push_back(std::move(r));
    }
    if (h.state_root != state_commitment(next)) return ValidationReport::fail(index, "state_root");

    state_ = std::move(next);
    tip_ = h;
    if (receipts) *receipts = std::move(out);
    return ValidationReport::pass();
}

ValidationReport validate_chain(const std::vector<Block>& blocks, const GenesisConfig& genesis) {
    if (blocks.empty()) return ValidationReport::fail(0, "length", "chain has no genesis block");
    ChainReplayer replayer{genesis};
    for (const auto& b : blocks) {
        auto report{replayer.apply(b)};
        if (!report.ok) return report;
    }
    return ValidationReport::pass();
}

ValidationReport validate_ledger_text(std::string_view text, const GenesisConfig& genesis) {
    if (text.empty()) return ValidationReport::fail(0, "parse", "empty ledger: genesis block required");
    ChainReplayer replayer{genesis};
    std::uint64_t line_no{0};
    while (!text.empty()) {
        const auto nl{text.find('\n')};
        if (nl == std::string_view::npos) {
            return ValidationReport::fail(line_no, "parse", "line " + std::to_string(line_no + 1) + " is truncated");
        }
        Block block;
        try {
            block = parse_block(text.substr(0, nl));
        } catch (const ParseError& ex) {
            return ValidationReport::fail(line_no, "parse", "line " + std::to_string(line_no + 1) + ": " + ex.what());
        }
        auto report{replayer.apply(block)};
        if (!report.ok) return report;
        text.remove_prefix(nl + 1);
        ++line_no;
    }
    return ValidationReport::pass();
}

// BlockBuilder

BlockBuilder::BlockBuilder(const GenesisConfig& genesis, const BlockHeader& parent, RegistryState state,
                           Timestamp timestamp)
    : genesis_{genesis},
      rules_{ChainRules::from(genesis)},
      parent_{parent},
      ctx_{parent.index + 1, timestamp, scheduled_sealer(genesis, parent.index + 1).address},
      state_{std::move(state)} {}

Receipt BlockBuilder::add(const TxEnvelope& tx) {
    RegistryState next{state_};
    Receipt r{apply_tx_in_place(next, tx, ctx_, rules_)};
    if (r.error && is_unchargeable(*r.error)) return r;
    state_ = std::move(next);
    txs_.push_back(tx);
    return r;
}

Block BlockBuilder::seal(const KeyPair& sealer_key) const {
    return seal_block(txs_, parent_, state_commitment(state_), sealer_key, ctx_.timestamp, genesis_);
}

// LedgerStore

LedgerStore::LedgerStore(std::filesystem::path path, const GenesisConfig& genesis)
    : path_{std::move(path)}, replayer_{genesis} {}

LedgerStore LedgerStore::create(const std::filesystem::path& path, const GenesisConfig& genesis) {
    if (std::filesystem::exists(path)) {
        throw LedgerError{LedgerError::Code::kAlreadyExists, path.string() + " already exists"};
    }
    validate(genesis);
    LedgerStore store{path, genesis};
    const Block g{make_genesis_block(genesis)};
    (void)store.replayer_.apply(g);
    write_atomically(path, serialize_block(g) + "\n");
    store.blocks_.push_back(g);
    store.receipts_.emplace_back();
    return store;
}

void LedgerStore::append_block(const Block& block) {
    ChainReplayer candidate{replayer_};
    std::vector<Receipt> receipts;
    auto report{candidate.apply(block, &receipts)};
    if (!report.ok) {
        throw LedgerError{LedgerError::Code::kValidationFailed,
                          "block " + std::to_string(report.block_index) + " violates " + report.rule, report};
    }
    std::string content;
    for (const auto& b : blocks_) content += serialize_block(b) + "\n";
    content += serialize_block(block) + "\n";
    write_atomically(path_, content);

    replayer_ = std::move(candidate);
    blocks_.push_back(block);
    receipts_.push_back(std::move(receipts));
}

LedgerStore load_chain(const std::filesystem::path& path, const GenesisConfig& genesis) {
    if (!std::filesystem::exists(path)) {
        throw LedgerError{LedgerError::Code::kNotFound, path.string() + " does not exist"};
    }
    const std::string text{read_file(path)};
    LedgerStore store{path, genesis};
    if (text.empty()) {
        throw LedgerError{LedgerError::Code::kParseError, "line 1: empty ledger, genesis block required"};
    }
    std::string_view rest{text};
    std::uint64_t line_no{1};
    while (!rest.empty()) {
        const auto nl{rest.find('\n')};
        if (nl == std::string_view::npos) {
            throw LedgerError{LedgerError::Code::kParseError,
                              "line " + std::to_string(line_no) + ": truncated (missing line terminator)"};
        }
        Block block;
        try {
            block = parse_block(rest.substr(0, nl));
        } catch (const ParseError& ex) {
            throw LedgerError{LedgerError::Code::kParseError, "line " + std::to_string(line_no) + ": " + ex.what()};
        }
        std::vector<Receipt> receipts;
        auto report{store.replayer_.apply(block, &receipts)};
        if (!report.ok) {
            throw LedgerError{LedgerError::Code::kValidationFailed,
                              "block " + std::to_string(report.block_index) + " violates " + report.rule, report};
        }
        store.blocks_.push_back(std::move(block));
        store.receipts_.push_back(std::move(receipts));
        rest.remove_prefix(nl + 1);
        ++line_no;
    }
    return store;
}

}  // namespace provchain
