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

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cvclone::cli {

inline constexpr const char *kEngineVersion = "cvclone 1.0.0";

/// Numeric table with a metadata preamble. Each checked row carries its own
/// `tol` and `pass` (0/1) columns.
class ResultTable {
   public:
    explicit ResultTable(std::vector<std::string> columns);

    const std::vector<std::string> &columns() const {
        return columns_;
    }
    const std::vector<std::vector<double>> &rows() const {
        return rows_;
    }
    std::map<std::string, std::string> &metadata() {
        return metadata_;
    }
    const std::map<std::string, std::string> &metadata() const {
        return metadata_;
    }

    /// Throws std::invalid_argument unless row.size() == columns().size().
    void add_row(std::vector<double> row);
    std::size_t column_index(const std::string &name) const;
    double at(std::size_t row, const std::string &column) const;

    /// Every value in the `pass` column is 1. Tables without one pass vacuously.
    bool all_pass() const;

    /// `# key=value` lines in key order, then a header and the rows.
    void write_csv(std::ostream &out) const;

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::map<std::string, std::string> metadata_;
};

}  // namespace cvclone::cli
