// Copyright 2026 The cvclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "result_table.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "cvclone/csv.hpp"

namespace cvclone::cli {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) {
        throw std::invalid_argument("ResultTable: no columns");
    }
}

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("ResultTable: row has " + std::to_string(row.size()) +
                                    " values, expected " + std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string &name) const {
    auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) {
        throw std::out_of_range("ResultTable: no column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns_.begin());
}

double ResultTable::at(std::size_t row, const std::string &column) const {
    return rows_.at(row).at(column_index(column));
}

bool ResultTable::all_pass() const {
    auto it = std::find(columns_.begin(), columns_.end(), "pass");
    if (it == columns_.end()) {
        return true;
    }
    auto k = static_cast<std::size_t>(it - columns_.begin());
    return std::all_of(rows_.begin(), rows_.end(), [k](const auto &r) { return r[k] == 1.0; });
}

void ResultTable::write_csv(std::ostream &out) const {
    for (const auto &[key, value] : metadata_) {
        out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << columns_[i];
    }
    out << '\n';
    for (const auto &row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
}

}  // namespace cvclone::cli
