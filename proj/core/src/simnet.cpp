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

#include <provchain/simnet.hpp>

#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include <provchain/keyfile.hpp>

namespace provchain::sim {

std::uint64_t DeterministicRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument{"DeterministicRng::below(0)"};
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit{UINT64_MAX - (UINT64_MAX % bound + 1) % bound};
    std::uint64_t x{engine_()};
    while (x > limit) x = engine_();
    return x % bound;
}

std::array<std::uint8_t, 32> DeterministicRng::seed_bytes() {
    std::array<std::uint8_t, 32> out{};
    for (std::size_t word{0}; word < 4; ++word) {
        const std::uint64_t x{engine_()};
        for (std::size_t i{0}; i < 8; ++i) out[word * 8 + i] = static_cast<std::uint8_t>(x >> (8 * i));
    }
    return out;
}

namespace {

    constexpr std::uint64_t kMaxActorsPerRole{1'000};
    constexpr std::uint64_t kMaxProducts{100'000};

    struct Action {
        enum class Type { kTx, kVerify, kProbe };
        Type type{Type::kTx};
        std::size_t actor{0};
        TxKind kind;
        std::string product_id;
    };

    struct ProductPlan {
        std::deque<Action> actions;
    };

    std::string product_id_for(std::uint64_t n) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "P-%03llu", static_cast<unsigned long long>(n));
        return buf;
    }

    class Simulation {
      public:
        explicit Simulation(const Scenario& sc) : sc_{sc}, rng_{sc.seed} {}

        SimulationResult run() {
            make_actors();
            make_genesis();
            plan_work();

            out_.blocks.push_back(make_genesis_block(out_.genesis));
            state_ = genesis_state(out_.genesis);
            for (std::uint64_t round{1}; round <= sc_.steps; ++round) seal_round(round);

            out_.final_state = state_;
            std::string text;
            for (const auto& b : out_.blocks) text += serialize_block(b) + "\n";
            out_.chain_text = apply_mutations(std::move(text), sc_.tamper_plan);
            return std::move(out_);
        }

      private:
        void make_actors() {
            auto add = [this](Role role, std::uint64_t count) {
                for (std::uint64_t i{0}; i < count; ++i) {
                    const std::size_t idx{out_.actors.size()};
                    out_.actors.push_back(Actor{role, KeyPair::from_seed(rng_.seed_bytes())});
                    by_role_[role].push_back(idx);
                    if (is_trusted_node(role)) trusted_.push_back(idx);
                }
            };
            add(Role::kAuthority, sc_.actors.authorities);
            add(Role::kManufacturer, sc_.actors.manufacturers);
            add(Role::kDistributor, sc_.actors.distributors);
            add(Role::kRetailer, sc_.actors.retailers);
            add(Role::kConsumer, sc_.actors.consumers);
        }

        void make_genesis() {
            GenesisConfig& g{out_.genesis};
            g.chain_id = kDefaultChainId;
            for (std::size_t idx : by_role_[Role::kAuthority]) {
                g.authorities.push_back({out_.actors[idx].address(), out_.actors[idx].key.public_key});
            }
            for (const auto& a : out_.actors) g.roles.emplace(a.address(), a.role);
            validate(g);
            rules_ = ChainRules::from(g);
        }

        std::size_t pick(Role role) {
            const auto& pool{by_role_[role]};
            return pool[rng_.below(pool.size())];
        }

        void plan_work() {
            for (std::size_t idx : trusted_) bootstrap_.push_back(Action{Action::Type::kTx, idx, op::FaucetClaim{}, {}});
            const std::size_t deployer{by_role_[Role::kManufacturer].front()};
            bootstrap_.push_back(
                Action{Action::Type::kTx, deployer, op::Deploy{out_.genesis.gas.default_code_size}, {}});

            const bool have_consumers{!by_role_[Role::kConsumer].empty()};
            for (std::uint64_t n{1}; n <= sc_.products; ++n) {
                ProductPlan plan;
                const std::string id{product_id_for(n)};
                std::size_t holder{pick(Role::kManufacturer)};
                plan.actions.push_back(Action{Action::Type::kTx, holder,
                                              op::Register{id, "Product " + std::to_string(n), "batch=" + std::to_string(n)},
                                              id});
                std::vector<std::size_t> hops;
                const auto& distributors{by_role_[Role::kDistributor]};
                if (!distributors.empty()) {
                    const std::size_t first{rng_.below(distributors.size())};
                    hops.push_back(distributors[first]);
                    if (distributors.size() >= 2 && rng_.chance(1, 2)) {
                        const std::size_t offset{1 + rng_.below(distributors.size() - 1)};
                        hops.push_back(distributors[(first + offset) % distributors.size()]);
                    }
                }
                if (!by_role_[Role::kRetailer].empty()) hops.push_back(pick(Role::kRetailer));
                for (std::size_t hop : hops) {
                    plan.actions.push_back(
                        Action{Action::Type::kTx, holder, op::Transfer{id, out_.actors[hop].address()}, id});
                    holder = hop;
                }
                if (have_consumers) {
                    const std::size_t consumer{pick(Role::kConsumer)};
                    plan.actions.push_back(
                        Action{Action::Type::kTx, holder, op::Sell{id, out_.actors[consumer].address()}, id});
                    if (rng_.chance(1, 4)) {
                        const std::size_t other{pick(Role::kConsumer)};
                        plan.actions.push_back(
                            Action{Action::Type::kTx, holder, op::Sell{id, out_.actors[other].address()}, id});
                    }
                    plan.actions.push_back(Action{Action::Type::kVerify, consumer, {}, id});
                    if (rng_.chance(1, 4)) {
                        plan.actions.push_back(
                            Action{Action::Type::kProbe, consumer, {}, "FAKE-" + std::to_string(rng_.below(1'000'000))});
                    }
                }
                in_flight_.push_back(std::move(plan));
            }
        }

        std::optional<Action> next_action() {
            if (!bootstrap_.empty()) {
                Action a{std::move(bootstrap_.front())};
                bootstrap_.pop_front();
                return a;
            }
            if (in_flight_.empty()) return std::nullopt;
            const std::size_t i{rng_.below(in_flight_.size())};
            Action a{std::move(in_flight_[i].actions.front())};
            in_flight_[i].actions.pop_front();
            if (in_flight_[i].actions.empty()) in_flight_.erase(in_flight_.begin() + static_cast<std::ptrdiff_t>(i));
            return a;
        }

        TxEnvelope make_tx(const BlockBuilder& builder, std::size_t actor, const TxKind& kind) const {
            const Actor& a{out_.actors[actor]};
            const Account* acct{builder.state().find_account(a.address())};
            return make_signed_tx(a.key, out_.genesis.chain_id, acct ? acct->nonce : 0, kind,
                                  out_.genesis.gas.default_gas_price);
        }

        void submit(BlockBuilder& builder, std::size_t actor, const TxKind& kind, std::uint64_t& slots) {
            TxEnvelope tx{make_tx(builder, actor, kind)};
            const Account* acct{builder.state().find_account(tx.sender)};
            const Wei cost{fee(gas_for_tx(tx, builder.state(), builder.context(), rules_), tx.gas_price)};
            if (slots > 1 && acct && acct->balance < cost &&
                !std::holds_alternative<op::FaucetClaim>(kind)) {
                TxEnvelope claim{make_tx(builder, actor, op::FaucetClaim{})};
                if (!check_variant(builder.state(), claim, builder.context(), rules_)) {
                    record(builder, actor, claim);
                    --slots;
                    tx = make_tx(builder, actor, kind);
                }
            }
            record(builder, actor, tx);
            --slots;
        }

        void record(BlockBuilder& builder, std::size_t actor, const TxEnvelope& tx) {
            Receipt r{builder.add(tx)};
            TraceEvent ev;
            ev.step = step_++;
            ev.block = builder.context().block_index;
            ev.actor = out_.actors[actor].address();
            ev.action = tx.kind;
            ev.included = !(r.error && is_unchargeable(*r.error));
            ev.outcome = std::move(r);
            out_.trace.push_back(std::move(ev));
        }

        void observe(const BlockBuilder& builder, const Action& a) {
            TraceEvent ev;
            ev.step = step_++;
            ev.block = builder.context().block_index;
            ev.actor = out_.actors[a.actor].address();
            ev.action = VerifyAction{a.product_id};
            ev.outcome = a.type == Action::Type::kProbe ? counterfeit_probe(builder.state(), a.product_id)
                                                        : verify_product(builder.state(), a.product_id);
            out_.trace.push_back(std::move(ev));
        }

        void seal_round(std::uint64_t round) {
            BlockBuilder builder{out_.genesis, out_.blocks.back().header, state_, round * sc_.clock_step};
            std::uint64_t slots{sc_.txs_per_block};

            if (!trusted_.empty() && rng_.chance(1, 8)) {
                submit(builder, trusted_[rng_.below(trusted_.size())], op::FaucetClaim{}, slots);
            }
            while (slots > 0) {
                auto action{next_action()};
                if (!action) break;
                if (action->type == Action::Type::kTx) {
                    submit(builder, action->actor, action->kind, slots);
                } else {
                    observe(builder, *action);
                }
            }

            const std::size_t sealer_idx{by_role_[Role::kAuthority][round % by_role_[Role::kAuthority].size()]};
            Block block{builder.seal(out_.actors[sealer_idx].key)};
            state_ = builder.state();
            out_.blocks.push_back(std::move(block));
        }

        const Scenario& sc_;
        DeterministicRng rng_;
        SimulationResult out_;
        ChainRules rules_;
        RegistryState state_;
        std::map<Role, std::vector<std::size_t>> by_role_;
        std::vector<std::size_t> trusted_;
        std::deque<Action> bootstrap_;
        std::vector<ProductPlan> in_flight_;
        std::uint64_t step_{0};
    };

}  // namespace

void validate(const Scenario& sc) {
    if (sc.actors.manufacturers < 1) throw ScenarioInvalid{"at least one manufacturer is required"};
    if (sc.actors.authorities < 1) throw ScenarioInvalid{"at least one authority is required"};
    for (auto n : {sc.actors.manufacturers, sc.actors.distributors, sc.actors.retailers, sc.actors.consumers,
                   sc.actors.authorities}) {
        if (n > kMaxActorsPerRole) throw ScenarioInvalid{"too many actors for one role"};
    }
    if (sc.products > kMaxProducts) throw ScenarioInvalid{"too many products"};
    if (sc.steps < 1) throw ScenarioInvalid{"steps must be at least 1"};
    if (sc.txs_per_block < 1) throw ScenarioInvalid{"txs_per_block must be at least 1"};
}

canon::Value to_value(const Scenario& sc) {
    canon::Array plan;
    for (const auto& m : sc.tamper_plan) {
        plan.emplace_back(canon::Object{{"byte_offset", m.byte_offset},
                                        {"new_byte", static_cast<std::uint64_t>(m.new_byte)},
                                        {"target", m.target}});
    }
    return canon::Object{
        {"actors", canon::Object{{"Authority", sc.actors.authorities},
                                 {"Consumer", sc.actors.consumers},
                                 {"Distributor", sc.actors.distributors},
                                 {"Manufacturer", sc.actors.manufacturers},
                                 {"Retailer", sc.actors.retailers}}},
        {"clock_step", sc.clock_step},
        {"products", sc.products},
        {"seed", sc.seed},
        {"steps", sc.steps},
        {"tamper_plan", std::move(plan)},
        {"txs_per_block", sc.txs_per_block},
    };
}

Scenario scenario_from_value(const canon::Value& v) {
    Scenario sc;
    for (const auto& [key, field] : v.as_object()) {
        if (key == "seed") {
            sc.seed = field.as_u64();
        } else if (key == "products") {
            sc.products = field.as_u64();
        } else if (key == "steps") {
            sc.steps = field.as_u64();
        } else if (key == "txs_per_block") {
            sc.txs_per_block = field.as_u64();
        } else if (key == "clock_step") {
            sc.clock_step = field.as_u64();
        } else if (key == "actors") {
            for (const auto& [role_key, count] : field.as_object()) {
                auto role{parse_role(role_key)};
                if (!role) throw ParseError{"scenario: unknown role '" + role_key + "'"};
                const std::uint64_t n{count.as_u64()};
                switch (*role) {
                    case Role::kManufacturer: sc.actors.manufacturers = n; break;
                    case Role::kDistributor: sc.actors.distributors = n; break;
                    case Role::kRetailer: sc.actors.retailers = n; break;
                    case Role::kConsumer: sc.actors.consumers = n; break;
                    case Role::kAuthority: sc.actors.authorities = n; break;
                }
            }
        } else if (key == "tamper_plan") {
            for (const auto& m : field.as_array()) {
                canon::expect_keys(m, {"byte_offset", "new_byte", "target"}, "mutation");
                const std::uint64_t byte{m.at("new_byte").as_u64()};
                if (byte > 0xff) throw ParseError{"mutation new_byte must be 0-255"};
                sc.tamper_plan.push_back(
                    {m.at("target").as_u64(), m.at("byte_offset").as_u64(), static_cast<std::uint8_t>(byte)});
            }
        } else {
            throw ParseError{"scenario: unexpected field '" + key + "'"};
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw ScenarioInvalid{"cannot open scenario file " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return scenario_from_value(canon::parse(text.str()));
    } catch (const ParseError& ex) {
        throw ScenarioInvalid{path.string() + ": " + ex.what()};
    }
}

canon::Value to_value(const TraceEvent& ev) {
    canon::Value action{std::visit(
        [](const auto& a) -> canon::Value {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, VerifyAction>) {
                return canon::Object{{"product_id", a.product_id}, {"type", "Verify"}};
            } else {
                return provchain::to_value(a);
            }
        },
        ev.action)};
    canon::Value outcome{std::visit([](const auto& o) { return to_value(o); }, ev.outcome)};
    return canon::Object{
        {"action", std::move(action)}, {"actor", ev.actor}, {"block", ev.block},
        {"included", ev.included},     {"outcome", std::move(outcome)}, {"step", ev.step},
    };
}

std::vector<Address> SimulationResult::addresses(Role role) const {
    std::vector<Address> out;
    for (const auto& a : actors) {
        if (a.role == role) out.push_back(a.address());
    }
    return out;
}

std::string SimulationResult::trace_text() const {
    std::string out;
    for (const auto& ev : trace) out += canon::serialize(to_value(ev)) + "\n";
    return out;
}

SimulationResult run_scenario(const Scenario& scenario) {
    validate(scenario);
    SimulationResult result{Simulation{scenario}.run()};
    result.scenario = scenario;
    return result;
}

std::string apply_mutations(std::string chain_text, const std::vector<Mutation>& mutations) {
    if (mutations.empty()) return chain_text;
    // line starts are taken from the unmutated text so that every target is stable
    std::vector<std::size_t> starts{0};
    for (std::size_t i{0}; i < chain_text.size(); ++i) {
        if (chain_text[i] == '\n' && i + 1 < chain_text.size()) starts.push_back(i + 1);
    }
    std::vector<std::size_t> positions;
    for (const auto& m : mutations) {
        if (m.target >= starts.size()) {
            throw ScenarioInvalid{"mutation targets block " + std::to_string(m.target) + " but the chain has " +
                                  std::to_string(starts.size()) + " blocks"};
        }
        const std::size_t begin{starts[m.target]};
        const std::size_t end{chain_text.find('\n', begin)};
        if (m.byte_offset >= end - begin) {
            throw ScenarioInvalid{"mutation offset " + std::to_string(m.byte_offset) + " is outside block " +
                                  std::to_string(m.target)};
        }
        positions.push_back(begin + m.byte_offset);
    }
    for (std::size_t i{0}; i < mutations.size(); ++i) chain_text[positions[i]] = static_cast<char>(mutations[i].new_byte);
    return chain_text;
}

void write_outputs(const SimulationResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& p, const std::string& content) {
        std::ofstream out{p, std::ios::binary | std::ios::trunc};
        if (!out) throw std::runtime_error{"cannot write " + p.string()};
        out << content;
        if (!out.flush()) throw std::runtime_error{"write failed for " + p.string()};
    };
    std::filesystem::remove(dir / "genesis.json");
    save_genesis(result.genesis, dir / "genesis.json");
    write(dir / "chain.log", result.chain_text);
    write(dir / "trace.jsonl", result.trace_text());

    const auto keys{dir / "keys"};
    std::filesystem::create_directories(keys);
    std::map<Role, std::size_t> seen;
    for (const auto& a : result.actors) {
        std::string name{role_name(a.role)};
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const auto path{keys / (name + "-" + std::to_string(seen[a.role]++) + ".key")};
        std::filesystem::remove(path);
        save_key_file({a.role, a.key}, path);
    }
}

VerificationResult counterfeit_probe(const RegistryState& state, std::string_view fake_id) {
    return verify_product(state, fake_id);
}

}  // namespace provchain::sim
