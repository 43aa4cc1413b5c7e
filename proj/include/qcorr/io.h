// Copyright 2026 The qcorr Authors
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

#ifndef QCORR_IO_H
#define QCORR_IO_H

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcorr/state.h"

namespace qcorr {

/// 9 significant digits, '.' decimal point regardless of locale.
std::string format_number(double v);

class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable &row();
    CsvTable &add(double v);
    CsvTable &add(int64_t v);
    CsvTable &add(int v) {
        return add(static_cast<int64_t>(v));
    }
    CsvTable &add(const std::string &v);

    /// Header line plus one line per row, each newline-terminated.
    std::string str() const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Numeric CSV with a header row. Returns the columns in file order.
struct NumericCsv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    const std::vector<double> &column(const std::string &name) const;
};
NumericCsv read_numeric_csv(const std::filesystem::path &path);

/// Writes the whole file or throws std::runtime_error naming the path.
void write_text_file(const std::filesystem::path &path, const std::string &contents);
std::string read_text_file(const std::filesystem::path &path);

/// {"n_qubits": n, "amplitudes": [[re, im], ...]} gives a pure state,
/// {"n_qubits": n, "matrix": [[[re, im], ...], ...]} a density matrix.
DensityMatrix state_from_json(const nlohmann::json &j);
nlohmann::json state_to_json(const PureState &psi);
nlohmann::json state_to_json(const DensityMatrix &rho);
DensityMatrix load_state(const std::filesystem::path &path);

}  // namespace qcorr

#endif
