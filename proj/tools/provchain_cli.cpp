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

// provchain: command-line front end for the product-provenance chain.
//
// Exit codes: 0 success, 1 chain or validation failure, 2 usage error,
// 3 verification negative (suspected counterfeit).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <provchain/gas_report.hpp>
#include <provchain/keyfile.hpp>
#include <provchain/ledger.hpp>
#include <provchain/qr.hpp>
#include <provchain/registry.hpp>
#include <provchain/simnet.hpp>

namespace fs = std::filesystem;
using namespace provchain;

namespace {

enum ExitCode : int {
    kExitOk = 0,
    kExitChainFailure = 1,
    kExitUsage = 2,
    kExitCounterfeit = 3,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kKeyWarning{"warning: key files are stored unencrypted; protect them like passwords"};

struct Globals {
    fs::path db{"chain.log"};
    fs::path genesis{"genesis.json"};
    fs::path key_dir;  // defaults to <db>.keys

    [[nodiscard]] fs::path keys() const { return key_dir.empty() ? fs::path{db.string() + ".keys"} : key_dir; }
};

std::string lowercase(std::string_view s) {
    std::string out{s};
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

Role role_arg(const std::string& text) {
    for (Role r : {Role::kManufacturer, Role::kDistributor, Role::kRetailer, Role::kConsumer, Role::kAuthority}) {
        if (lowercase(role_name(r)) == lowercase(text)) return r;
    }
    throw UsageError{"unknown role '" + text + "'"};
}

Address address_arg(const std::string& text) {
    auto a{Address::try_from_hex(text)};
    if (!a) throw UsageError{"'" + text + "' is not an address (0x + 40 lowercase hex digits)"};
    return *a;
}

std::uint64_t gas_price_arg(const std::string& gwei) {
    auto wei{parse_decimal_amount(gwei, kWeiPerGwei)};
    if (!wei || *wei == 0 || *wei > Wei{UINT64_MAX}) throw UsageError{"bad --gas-price '" + gwei + "' (gwei)"};
    return static_cast<std::uint64_t>(*wei);
}

GenesisConfig read_genesis(const Globals& g) {
    try {
        return load_genesis(g.genesis);
    } catch (const std::exception& ex) {
        throw ChainFailure{ex.what()};
    }
}

LedgerStore open_chain(const Globals& g, const GenesisConfig& genesis) {
    try {
        return load_chain(g.db, genesis);
    } catch (const LedgerError& ex) {
        std::ostringstream msg;
        msg << ex.what();
        if (!ex.report().ok) msg << " (block " << ex.report().block_index << ", rule " << ex.report().rule << ")";
        throw ChainFailure{msg.str()};
    }
}

std::string role_of(const RegistryState& state, const Address& a) {
    const Account* acct{state.find_account(a)};
    return acct ? std::string{role_name(acct->role)} : "unknown";
}

// ---------------------------------------------------------------- init / keygen

struct InitOptions {
    std::uint64_t chain_id{kDefaultChainId};
    std::uint64_t authorities{1};
    std::vector<std::string> authority_keys;
    std::vector<std::string> members;
    std::vector<std::string> balances;
    std::string gas_price;
};

int cmd_init(const Globals& g, const InitOptions& o) {
    if (fs::exists(g.db)) throw ChainFailure{g.db.string() + " already exists"};
    if (fs::exists(g.genesis)) throw ChainFailure{g.genesis.string() + " already exists"};

    GenesisConfig genesis;
    genesis.chain_id = o.chain_id;
    if (!o.gas_price.empty()) genesis.gas.default_gas_price = gas_price_arg(o.gas_price);

    std::vector<std::pair<fs::path, KeyFile>> fresh;
    for (const auto& path : o.authority_keys) {
        KeyFile k{load_key_file(path)};
        if (k.role != Role::kAuthority) throw UsageError{path + " is not an Authority key"};
        genesis.authorities.push_back({k.key.address(), k.key.public_key});
        genesis.roles[k.key.address()] = Role::kAuthority;
    }
    if (o.authority_keys.empty()) {
        if (o.authorities < 1) throw UsageError{"--authorities must be at least 1"};
        for (std::uint64_t i{0}; i < o.authorities; ++i) {
            KeyFile k{Role::kAuthority, KeyPair::generate()};
            genesis.authorities.push_back({k.key.address(), k.key.public_key});
            genesis.roles[k.key.address()] = Role::kAuthority;
            fresh.emplace_back(g.keys() / ("authority-" + std::to_string(i) + ".key"), std::move(k));
        }
    }
    for (const auto& path : o.members) {
        KeyFile k{load_key_file(path)};
        if (k.role == Role::kAuthority) throw UsageError{path + ": pass Authority keys with --authority"};
        genesis.roles[k.key.address()] = k.role;
    }
    for (const auto& entry : o.balances) {
        const auto eq{entry.find('=')};
        if (eq == std::string::npos) throw UsageError{"--balance expects <address>=<eth>"};
        auto amount{parse_decimal_amount(entry.substr(eq + 1), kWeiPerEth)};
        if (!amount) throw UsageError{"bad amount in --balance " + entry};
        genesis.initial_balances[address_arg(entry.substr(0, eq))] = *amount;
    }
    try {
        validate(genesis);
    } catch (const GenesisError& ex) {
        throw UsageError{ex.what()};
    }
    for (const auto& [path, _] : fresh) {
        if (fs::exists(path)) throw ChainFailure{path.string() + " already exists"};
    }

    if (!fresh.empty()) fs::create_directories(g.keys());
    for (const auto& [path, k] : fresh) save_key_file(k, path);
    save_genesis(genesis, g.genesis);
    try {
        (void)LedgerStore::create(g.db, genesis);
    } catch (const LedgerError& ex) {
        throw ChainFailure{ex.what()};
    }

    std::cout << "chain id:  " << genesis.chain_id << "\n"
              << "genesis:   " << g.genesis.string() << "\n"
              << "ledger:    " << g.db.string() << "\n";
    for (std::size_t i{0}; i < genesis.authorities.size(); ++i) {
        std::cout << "authority: " << genesis.authorities[i].address.hex() << "\n";
    }
    for (const auto& [path, _] : fresh) std::cout << "key:       " << path.string() << "\n";
    if (!fresh.empty()) std::cerr << kKeyWarning << "\n";
    return kExitOk;
}

int cmd_keygen(const std::string& role, const std::string& out) {
    KeyFile k{role_arg(role), KeyPair::generate()};
    const fs::path path{out.empty() ? fs::path{lowercase(role_name(k.role)) + "-" + k.key.address().hex().substr(2, 8) +
                                               ".key"}
                                    : fs::path{out}};
    try {
        save_key_file(k, path);
    } catch (const std::runtime_error& ex) {
        throw ChainFailure{ex.what()};
    }
    std::cout << k.key.address().hex() << "\n";
    std::cerr << "wrote " << path.string() << "\n" << kKeyWarning << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- tx

struct TxOptions {
    std::string key;
    std::string gas_price;
    std::optional<Timestamp> at;
    std::uint64_t code_size{0};
    std::string id;
    std::string name;
    std::string metadata;
    std::string to;
};

KeyPair find_sealer_key(const Globals& g, const Address& sealer) {
    const fs::path dir{g.keys()};
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator{dir, ec}) {
        if (entry.path().extension() != ".key") continue;
        try {
            KeyFile k{load_key_file(entry.path())};
            if (k.key.address() == sealer) return k.key;
        } catch (const std::exception&) {
            // not ours to judge; keep looking
        }
    }
    throw ChainFailure{"no key for scheduled sealer " + sealer.hex() + " in " + dir.string()};
}

int cmd_tx(const Globals& g, const std::string& kind_name, const TxOptions& o) {
    const GenesisConfig genesis{read_genesis(g)};
    LedgerStore store{open_chain(g, genesis)};

    KeyFile sender;
    try {
        sender = load_key_file(o.key);
    } catch (const std::runtime_error& ex) {
        throw UsageError{ex.what()};
    }

    TxKind kind;
    if (kind_name == "deploy") {
        kind = op::Deploy{o.code_size ? o.code_size : genesis.gas.default_code_size};
    } else if (kind_name == "register") {
        kind = op::Register{o.id, o.name, o.metadata};
    } else if (kind_name == "transfer") {
        kind = op::Transfer{o.id, address_arg(o.to)};
    } else if (kind_name == "sell") {
        kind = op::Sell{o.id, address_arg(o.to)};
    } else {
        kind = op::FaucetClaim{};
    }

    const BlockHeader& tip{store.tip()};
    const Timestamp ts{o.at.value_or(tip.timestamp)};
    if (ts < tip.timestamp) {
        throw UsageError{"--at " + std::to_string(ts) + " is earlier than the tip (" + std::to_string(tip.timestamp) + ")"};
    }
    const Account* acct{store.state().find_account(sender.key.address())};
    const std::uint64_t price{o.gas_price.empty() ? genesis.gas.default_gas_price : gas_price_arg(o.gas_price)};
    const TxEnvelope tx{make_signed_tx(sender.key, genesis.chain_id, acct ? acct->nonce : 0, kind, price)};

    BlockBuilder builder{genesis, tip, store.state(), ts};
    const Receipt receipt{builder.add(tx)};
    std::cout << canon::serialize(to_value(receipt)) << "\n";
    if (receipt.error && is_unchargeable(*receipt.error)) {
        std::cerr << "rejected: " << error_name(*receipt.error) << " (not sealed)\n";
        return kExitChainFailure;
    }

    const Address sealer{scheduled_sealer(genesis, tip.index + 1).address};
    const Block block{builder.seal(find_sealer_key(g, sealer))};
    try {
        store.append_block(block);
    } catch (const LedgerError& ex) {
        throw ChainFailure{ex.what()};
    }
    std::cout << "block " << block.header.index << " sealed by " << sealer.hex() << "\n";

    if (receipt.error) {
        std::cerr << "rejected: " << error_name(*receipt.error) << "\n";
        return kExitChainFailure;
    }
    const RegistryState& state{store.state()};
    if (std::holds_alternative<op::Deploy>(kind) && state.contract) {
        std::cout << "contract " << state.contract->address.hex() << "\n";
    }
    if (const auto* reg{std::get_if<op::Register>(&kind)}; reg && state.contract) {
        std::cout << "qr " << qr::encode_payload(genesis.chain_id, state.contract->address, reg->product_id) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- queries

void print_history(const RegistryState& state, const VerificationResult& r) {
    std::cout << "history:\n";
    for (std::size_t i{0}; i < r.history.size(); ++i) {
        std::cout << "  " << i << ". " << r.history[i].hex() << " (" << role_of(state, r.history[i]) << ")\n";
    }
}

int counterfeit(const std::string& why) {
    std::cout << "SUSPECTED COUNTERFEIT: " << why << "\n";
    return kExitCounterfeit;
}

int cmd_verify(const Globals& g, const std::string& payload) {
    const GenesisConfig genesis{read_genesis(g)};
    const LedgerStore store{open_chain(g, genesis)};
    const RegistryState& state{store.state()};

    qr::QrPayload p;
    try {
        p = qr::decode_payload(payload);
    } catch (const qr::QrError& ex) {
        return counterfeit(std::string{"payload rejected ("} + std::string{qr::code_name(ex.code())} + "): " + ex.what());
    }
    if (!state.contract || !qr::binds_to(p, genesis.chain_id, state.contract->address)) {
        return counterfeit("payload belongs to chain " + std::to_string(p.chain_id) + " contract " + p.contract.hex() +
                           ", not this registry");
    }
    const VerificationResult r{verify_product(state, p.product_id)};
    if (!r.exists) return counterfeit("product " + p.product_id + " is not registered");

    std::cout << "product:      " << p.product_id << "\n"
              << "status:       " << status_name(r.status) << "\n"
              << "manufacturer: " << r.manufacturer.hex() << "\n"
              << "owner:        " << r.current_owner.hex() << " (" << role_of(state, r.current_owner) << ")\n";
    print_history(state, r);
    return kExitOk;
}

int cmd_history(const Globals& g, const std::string& id) {
    const GenesisConfig genesis{read_genesis(g)};
    const LedgerStore store{open_chain(g, genesis)};
    const VerificationResult r{verify_product(store.state(), id)};
    if (!r.exists) return counterfeit("product " + id + " is not registered");
    print_history(store.state(), r);
    return kExitOk;
}

int cmd_gas_report(const Globals& g, const std::string& csv_path) {
    const GenesisConfig genesis{read_genesis(g)};
    const LedgerStore store{open_chain(g, genesis)};
    const GasReport report{gas_report_from_receipts(store.blocks(), store.receipts())};
    const std::string csv{report.to_csv()};

    if (csv_path == "-") {
        std::cout << csv;
        return kExitOk;
    }
    if (!csv_path.empty()) {
        std::ofstream out{csv_path, std::ios::binary | std::ios::trunc};
        if (!(out << csv) || !out.flush()) throw ChainFailure{"cannot write " + csv_path};
    }
    std::printf("%-12s %8s %14s %14s %26s\n", "category", "txs", "total gas", "avg gas/tx", "total fee (wei)");
    auto row = [](const GasReportRow& r) {
        std::printf("%-12s %8llu %14llu %14llu %26s\n", r.category.c_str(), static_cast<unsigned long long>(r.tx_count),
                    static_cast<unsigned long long>(r.total_gas), static_cast<unsigned long long>(r.avg_gas_per_tx),
                    to_string(r.total_fee).c_str());
    };
    for (const auto& r : report.rows) row(r);
    row(report.total);
    std::cout << "grand total: " << to_string(report.total.total_fee) << " wei = " << format_eth(report.total.total_fee)
              << " ETH (~" << format_eth_rounded(report.total.total_fee, 8) << " ETH)\n";
    return kExitOk;
}

int cmd_validate(const Globals& g) {
    const GenesisConfig genesis{read_genesis(g)};
    std::ifstream in{g.db, std::ios::binary};
    if (!in) throw ChainFailure{"cannot open " + g.db.string()};
    std::ostringstream text;
    text << in.rdbuf();

    const ValidationReport report{validate_ledger_text(text.str(), genesis)};
    if (!report.ok) {
        std::cout << "INVALID block " << report.block_index << " rule " << report.rule;
        if (!report.detail.empty()) std::cout << ": " << report.detail;
        std::cout << "\n";
        return kExitChainFailure;
    }
    const LedgerStore store{open_chain(g, genesis)};
    std::cout << "OK " << store.size() << " blocks\n"
              << "tip:   " << header_hash(store.tip()).hex() << "\n"
              << "state: " << state_commitment(store.state()).hex() << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::string& out) {
    sim::Scenario sc;
    try {
        sc = sim::load_scenario(scenario_path);
    } catch (const sim::ScenarioInvalid& ex) {
        throw UsageError{ex.what()};
    }
    if (seed) sc.seed = *seed;

    sim::SimulationResult result;
    try {
        result = sim::run_scenario(sc);
    } catch (const sim::ScenarioInvalid& ex) {
        throw UsageError{ex.what()};
    }
    sim::write_outputs(result, out);

    std::size_t txs{0};
    for (const auto& b : result.blocks) txs += b.txs.size();
    const ValidationReport report{validate_ledger_text(result.chain_text, result.genesis)};
    std::cout << "seed:   " << sc.seed << "\n"
              << "blocks: " << result.blocks.size() << "\n"
              << "txs:    " << txs << "\n"
              << "events: " << result.trace.size() << "\n"
              << "state:  " << state_commitment(result.final_state).hex() << "\n"
              << "output: " << out << "\n";
    if (report.ok) {
        std::cout << "chain:  valid\n";
    } else {
        std::cout << "chain:  INVALID block " << report.block_index << " rule " << report.rule << "\n";
    }
    std::cerr << kKeyWarning << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"provchain: permissioned product-provenance chain"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--db", g.db, "ledger file")->capture_default_str();
    app.add_option("--genesis", g.genesis, "genesis file")->capture_default_str();
    app.add_option("--key-dir", g.key_dir, "authority key directory (default <db>.keys)");

    InitOptions init;
    auto* init_cmd{app.add_subcommand("init", "create genesis and an empty chain")};
    init_cmd->add_option("--chain-id", init.chain_id)->capture_default_str();
    init_cmd->add_option("--authorities", init.authorities, "authority keys to generate")->capture_default_str();
    init_cmd->add_option("--authority", init.authority_keys, "existing Authority key file (repeatable)");
    init_cmd->add_option("--member", init.members, "key file whose role is registered (repeatable)");
    init_cmd->add_option("--balance", init.balances, "<address>=<eth> initial balance (repeatable)");
    init_cmd->add_option("--gas-price", init.gas_price, "default gas price in gwei");

    std::string keygen_role, keygen_out;
    auto* keygen_cmd{app.add_subcommand("keygen", "create a key pair and print its address")};
    keygen_cmd->add_option("--role", keygen_role)->required();
    keygen_cmd->add_option("--out", keygen_out, "key file (default <role>-<address prefix>.key)");

    TxOptions tx;
    auto* tx_cmd{app.add_subcommand("tx", "sign, seal and append one transaction")};
    tx_cmd->require_subcommand(1);
    auto common = [&tx](CLI::App* sub) {
        sub->add_option("--key", tx.key, "sender key file")->required();
        sub->add_option("--gas-price", tx.gas_price, "gas price in gwei");
        sub->add_option("--at", tx.at, "block timestamp, logical seconds (default: the tip's)");
        return sub;
    };
    auto* deploy_cmd{common(tx_cmd->add_subcommand("deploy", "deploy the registry contract"))};
    deploy_cmd->add_option("--code-size", tx.code_size, "bytecode size (default from genesis)");
    auto* register_cmd{common(tx_cmd->add_subcommand("register", "register a product"))};
    register_cmd->add_option("--id", tx.id)->required();
    register_cmd->add_option("--name", tx.name)->required();
    register_cmd->add_option("--metadata", tx.metadata);
    auto* transfer_cmd{common(tx_cmd->add_subcommand("transfer", "hand a product to a trusted node"))};
    transfer_cmd->add_option("--id", tx.id)->required();
    transfer_cmd->add_option("--to", tx.to)->required();
    auto* sell_cmd{common(tx_cmd->add_subcommand("sell", "sell a product to a consumer"))};
    sell_cmd->add_option("--id", tx.id)->required();
    sell_cmd->add_option("--to", tx.to)->required();
    common(tx_cmd->add_subcommand("faucet", "claim test ether"));

    std::string qr_payload;
    auto* verify_cmd{app.add_subcommand("verify", "check a product QR payload")};
    verify_cmd->add_option("--qr", qr_payload)->required();

    std::string history_id;
    auto* history_cmd{app.add_subcommand("history", "print a product's owner history")};
    history_cmd->add_option("--id", history_id)->required();

    std::string csv_path;
    auto* gas_cmd{app.add_subcommand("gas-report", "gas and fee totals by transaction category")};
    gas_cmd->add_option("--csv", csv_path, "write the CSV table here ('-' for stdout)");

    auto* validate_cmd{app.add_subcommand("validate", "check every block of the ledger")};

    std::string scenario_path, sim_out{"sim-out"};
    std::optional<std::uint64_t> sim_seed;
    auto* sim_cmd{app.add_subcommand("simulate", "run a deterministic scenario")};
    sim_cmd->add_option("--scenario", scenario_path)->required();
    sim_cmd->add_option("--seed", sim_seed);
    sim_cmd->add_option("--out", sim_out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*init_cmd) return cmd_init(g, init);
        if (*keygen_cmd) return cmd_keygen(keygen_role, keygen_out);
        if (*tx_cmd) {
            for (auto* sub : tx_cmd->get_subcommands()) {
                if (*sub) return cmd_tx(g, sub->get_name(), tx);
            }
        }
        if (*verify_cmd) return cmd_verify(g, qr_payload);
        if (*history_cmd) return cmd_history(g, history_id);
        if (*gas_cmd) return cmd_gas_report(g, csv_path);
        if (*validate_cmd) return cmd_validate(g);
        if (*sim_cmd) return cmd_simulate(scenario_path, sim_seed, sim_out);
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitChainFailure;
    }
    return kExitUsage;
}
