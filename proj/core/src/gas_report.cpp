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

#include <provchain/gas_report.hpp>

namespace provchain {

namespace {

    void finish(GasReportRow& row) {
        row.avg_gas_per_tx = row.tx_count == 0 ? 0 : row.total_gas / row.tx_count;
    }

    void csv_line(std::string& out, const GasReportRow& row) {
        out += row.category;
        out += ',' + std::to_string(row.tx_count);
        out += ',' + std::to_string(row.total_gas);
        out += ',' + std::to_string(row.avg_gas_per_tx);
        out += ',' + to_string(row.total_fee);
        out += ',' + format_eth(row.total_fee);
        out += '\n';
    }

}  // namespace

std::string GasReport::to_csv() const {
    std::string out{"category,tx_count,total_gas,avg_gas_per_tx,total_fee_wei,total_fee_eth\n"};
    for (const auto& row : rows) csv_line(out, row);
    csv_line(out, total);
    return out;
}

GasReport gas_report_from_receipts(const std::vector<Block>& blocks,
                                   const std::vector<std::vector<Receipt>>& receipts) {
    GasReport report;
    for (std::size_t c{0}; c < kTxCategoryCount; ++c) {
        report.rows[c].category = std::string{category_name(static_cast<TxCategory>(c))};
    }
    report.total.category = "TOTAL";

    for (std::size_t b{0}; b < blocks.size() && b < receipts.size(); ++b) {
        const auto& txs{blocks[b].txs};
        for (std::size_t i{0}; i < txs.size() && i < receipts[b].size(); ++i) {
            auto& row{report.rows[static_cast<std::size_t>(category_of(txs[i].kind))]};
            const Receipt& r{receipts[b][i]};
            ++row.tx_count;
            row.total_gas += r.gas_used;
            row.total_fee += r.fee;
            ++report.total.tx_count;
            report.total.total_gas += r.gas_used;
            report.total.total_fee += r.fee;
        }
    }
    for (auto& row : report.rows) finish(row);
    finish(report.total);
    return report;
}

GasReport gas_report(const std::vector<Block>& blocks, const GenesisConfig& genesis) {
    ChainReplayer replayer{genesis};
    std::vector<std::vector<Receipt>> receipts;
    receipts.reserve(blocks.size());
    if (blocks.empty()) {
        throw LedgerError{LedgerError::Code::kValidationFailed, "chain has no genesis block",
                          ValidationReport::fail(0, "length")};
    }
    for (const auto& b : blocks) {
        std::vector<Receipt> block_receipts;
        auto report{replayer.apply(b, &block_receipts)};
        if (!report.ok) {
            throw LedgerError{LedgerError::Code::kValidationFailed,
                              "block " + std::to_string(report.block_index) + " violates " + report.rule, report};
        }
        receipts.push_back(std::move(block_receipts));
    }
    return gas_report_from_receipts(blocks, receipts);
}

}  // namespace provchain
