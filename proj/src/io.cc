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

#include "qcorr/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcorr {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        v = 0.0;  // drop the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    std::string s(buf);
    // snprintf follows LC_NUMERIC; the library never changes it, but a host
    // program might.
    for (char &c : s) {
        if (c == ',') {
            c = '.';
        }
    }
    return s;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
}

CsvTable &CsvTable::row() {
    rows_.emplace_back();
    return *this;
}

CsvTable &CsvTable::add(double v) {
    return add(format_number(v));
}

CsvTable &CsvTable::add(int64_t v) {
    return add(std::to_string(v));
}

CsvTable &CsvTable::add(const std::string &v) {
    if (rows_.empty()) {
        throw std::logic_error("CsvTable::add before row()");
    }
    rows_.back().push_back(v);
    return *this;
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto &r : rows_) {
        if (r.size() != header_.size()) {
            throw std::logic_error("CSV row width does not match header");
        }
        line(r);
    }
    return out;
}

const std::vector<double> &NumericCsv::column(const std::string &name) const {
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return columns[i];
        }
    }
    throw std::invalid_argument("CSV has no column '" + name + "'");
}

NumericCsv read_numeric_csv(const std::filesystem::path &path) {
    std::istringstream in(read_text_file(path));
    NumericCsv csv;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path.string() + ": empty CSV");
    }
    auto split = [](const std::string &l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(l);
        while (std::getline(ls, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
                cell.pop_back();
            }
            while (!cell.empty() && cell.front() == ' ') {
                cell.erase(cell.begin());
            }
            cells.push_back(cell);
        }
        return cells;
    };
    csv.header = split(line);
    csv.columns.resize(csv.header.size());
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != csv.header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(csv.header.size()) + " fields");
        }
        for (size_t i = 0; i < cells.size(); ++i) {
            size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cells[i], &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != cells[i].size() || cells[i].empty()) {
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": '" + cells[i] +
                                         "' is not a number");
            }
            csv.columns[i].push_back(v);
        }
    }
    return csv;
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

Complex complex_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument("complex numbers are written as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_to_json(Complex c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

}  // namespace

DensityMatrix state_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("n_qubits")) {
        throw std::invalid_argument("state JSON needs an object with n_qubits");
    }
    for (const auto &[key, _] : j.items()) {
        if (key != "n_qubits" && key != "amplitudes" && key != "matrix") {
            throw std::invalid_argument("unknown key '" + key + "' in state JSON");
        }
    }
    const int n = j.at("n_qubits").get<int>();
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("n_qubits outside 1..8");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (j.contains("amplitudes") == j.contains("matrix")) {
        throw std::invalid_argument("state JSON needs exactly one of amplitudes / matrix");
    }
    if (j.contains("amplitudes")) {
        const auto &a = j.at("amplitudes");
        if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != dim) {
            throw std::invalid_argument("amplitudes must have 2^n entries");
        }
        CVector amps(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            amps(i) = complex_from_json(a[static_cast<size_t>(i)]);
        }
        return pure_to_density(PureState(n, std::move(amps)));
    }
    const auto &m = j.at("matrix");
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != dim) {
        throw std::invalid_argument("matrix must have 2^n rows");
    }
    CMatrix rho(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto &row = m[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw std::invalid_argument("matrix must be square");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            rho(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
        }
    }
    return DensityMatrix(n, std::move(rho));
}

nlohmann::json state_to_json(const PureState &psi) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        amps.push_back(complex_to_json(psi.amplitudes()(i)));
    }
    return {{"n_qubits", psi.n_qubits()}, {"amplitudes", amps}};
}

nlohmann::json state_to_json(const DensityMatrix &rho) {
    nlohmann::json m = nlohmann::json::array();
    for (size_t r = 0; r < rho.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < rho.dim(); ++c) {
            row.push_back(complex_to_json(rho(r, c)));
        }
        m.push_back(row);
    }
    return {{"n_qubits", rho.n_qubits()}, {"matrix", m}};
}

DensityMatrix load_state(const std::filesystem::path &path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return state_from_json(j);
}

}  // namespace qcorr
