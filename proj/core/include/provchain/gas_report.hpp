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

#include <array>
#include <string>
#include <vector>

#include <provchain/ledger.hpp>

namespace provchain {

struct GasReportRow {
    std::string category;
    std::uint64_t tx_count{0};
    Gas total_gas{0};
    Gas avg_gas_per_tx{0};  // total_gas / tx_count, truncated; 0 when tx_count == 0
    Wei total_fee{0};

    friend bool operator==(const GasReportRow&, const GasReportRow&) = default;
};

//! Per-category gas and fee totals over every transaction receipt on a chain,
//! rejected ones included.
struct GasReport {
    std::array<GasReportRow, kTxCategoryCount> rows;  // Deploy, Register, Transfer, Sell, FaucetClaim
    GasReportRow total;

    //! Header line plus one line per row and TOTAL, LF-terminated.
    [[nodiscard]] std::string to_csv() const;

    friend bool operator==(const GasReport&, const GasReport&) = default;
};

[[nodiscard]] GasReport gas_report_from_receipts(const std::vector<Block>& blocks,
                                                 const std::vector<std::vector<Receipt>>& receipts);

//! Replays and validates the chain first; throws LedgerError(kValidationFailed).
[[nodiscard]] GasReport gas_report(const std::vector<Block>& blocks, const GenesisConfig& genesis);

}  // namespace provchain
