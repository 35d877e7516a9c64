// Copyright 2026 The hgpointer Authors
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
#include "hgp/serialization.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "hgp/error.h"

namespace hgp {

namespace {

using nlohmann::json;

const char kFieldMagic[4] = {'H', 'G', 'P', 'F'};
const char kPhaseMagic[4] = {'H', 'G', 'P', 'M'};

std::string index_map_name() {
    return "m*(C+1)+n";
}

template <typename T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
            std::swap(b[i], b[sizeof(T) - 1 - i]);
        }
        std::memcpy(&v, b, sizeof(T));
    }
    return v;
}

template <typename T>
void put(std::ostream &out, T v) {
    v = to_little(v);
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(std::istream &in) {
    T v;
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in) {
        fail(ErrorCode::kIo, "truncated binary stream");
    }
    return to_little(v);
}

void check_magic(std::istream &in, const char *magic) {
    char buf[4];
    in.read(buf, 4);
    if (!in || std::memcmp(buf, magic, 4) != 0) {
        fail(ErrorCode::kIo, "bad magic in binary stream");
    }
    auto version = get<std::uint32_t>(in);
    if (version != kBinaryFormatVersion) {
        fail(ErrorCode::kIo, "unsupported binary format version " + std::to_string(version));
    }
}

std::uint64_t read_side(std::istream &in) {
    auto side = get<std::uint64_t>(in);
    if (side == 0 || side > (1u << 16)) {
        fail(ErrorCode::kIo, "implausible grid side " + std::to_string(side));
    }
    return side;
}

json parse_json(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        fail(ErrorCode::kIo, std::string("invalid JSON: ") + e.what());
    }
}

int json_cutoff(const json &j) {
    if (!j.contains("cutoff") || !j["cutoff"].is_number_integer()) {
        fail(ErrorCode::kIo, "JSON document lacks an integer cutoff");
    }
    if (j.contains("index_map") && j["index_map"] != index_map_name()) {
        fail(ErrorCode::kIo, "unsupported index map");
    }
    return j["cutoff"].get<int>();
}

std::string trim(const std::string &s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_json(const ModeState &state) {
    json j;
    j["cutoff"] = state.cutoff();
    j["index_map"] = index_map_name();
    std::vector<double> re(state.dim());
    std::vector<double> im(state.dim());
    for (int i = 0; i < state.dim(); ++i) {
        re[i] = state.amplitudes()(i).real();
        im[i] = state.amplitudes()(i).imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

std::string to_json(const OperatorMatrix &op) {
    json j;
    j["cutoff"] = op.cutoff();
    j["index_map"] = index_map_name();
    j["hermitian"] = op.hermitian();
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < op.dim(); ++r) {
        std::vector<double> rr(op.dim());
        std::vector<double> ii(op.dim());
        for (int c = 0; c < op.dim(); ++c) {
            rr[c] = op.entries()(r, c).real();
            ii[c] = op.entries()(r, c).imag();
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

ModeState mode_state_from_json(const std::string &text) {
    json j = parse_json(text);
    int cutoff = json_cutoff(j);
    try {
        auto re = j.at("re").get<std::vector<double>>();
        auto im = j.at("im").get<std::vector<double>>();
        if (re.size() != im.size() || static_cast<int>(re.size()) != ModeState::dimension(cutoff)) {
            fail(ErrorCode::kIo, "amplitude arrays do not match the cutoff");
        }
        CVector v(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) {
            v(i) = Complex(re[i], im[i]);
        }
        return ModeState::from_amplitudes(cutoff, std::move(v));
    } catch (const json::exception &e) {
        fail(ErrorCode::kIo, std::string("malformed mode state: ") + e.what());
    }
}

OperatorMatrix operator_from_json(const std::string &text) {
    json j = parse_json(text);
    int cutoff = json_cutoff(j);
    int dim = ModeState::dimension(cutoff);
    try {
        auto re = j.at("re").get<std::vector<std::vector<double>>>();
        auto im = j.at("im").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim) {
            fail(ErrorCode::kIo, "operator rows do not match the cutoff");
        }
        CMatrix m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            if (static_cast<int>(re[r].size()) != dim || static_cast<int>(im[r].size()) != dim) {
                fail(ErrorCode::kIo, "operator columns do not match the cutoff");
            }
            for (int c = 0; c < dim; ++c) {
                m(r, c) = Complex(re[r][c], im[r][c]);
            }
        }
        bool herm = j.value("hermitian", false);
        return OperatorMatrix(cutoff, std::move(m), herm);
    } catch (const json::exception &e) {
        fail(ErrorCode::kIo, std::string("malformed operator: ") + e.what());
    }
}

void write_field_binary(const FieldGrid &field, std::ostream &out) {
    const GridSpec &s = field.spec();
    out.write(kFieldMagic, 4);
    put<std::uint32_t>(out, kBinaryFormatVersion);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(s.side));
    put<double>(out, s.pitch);
    put<double>(out, s.sigma0);
    put<double>(out, s.wavelength);
    put<double>(out, s.z);
    for (int r = 0; r < s.side; ++r) {
        for (int c = 0; c < s.side; ++c) {
            put<double>(out, field.samples()(r, c).real());
            put<double>(out, field.samples()(r, c).imag());
        }
    }
    if (!out) {
        fail(ErrorCode::kIo, "failed to write field");
    }
}

FieldGrid read_field_binary(std::istream &in) {
    check_magic(in, kFieldMagic);
    GridSpec s;
    s.side = static_cast<int>(read_side(in));
    s.pitch = get<double>(in);
    s.sigma0 = get<double>(in);
    s.wavelength = get<double>(in);
    s.z = get<double>(in);
    CMatrix m(s.side, s.side);
    for (int r = 0; r < s.side; ++r) {
        for (int c = 0; c < s.side; ++c) {
            double re = get<double>(in);
            double im = get<double>(in);
            m(r, c) = Complex(re, im);
        }
    }
    return FieldGrid::create(s, std::move(m));
}

void write_phase_binary(const PhaseMap &phase, std::ostream &out) {
    int side = static_cast<int>(phase.values.rows());
    if (phase.values.cols() != side) {
        fail(ErrorCode::kInvalidArgument, "phase map must be square");
    }
    out.write(kPhaseMagic, 4);
    put<std::uint32_t>(out, kBinaryFormatVersion);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(side));
    put<double>(out, phase.grating_period);
    put<double>(out, phase.clipped_fraction);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            put<double>(out, phase.values(r, c));
        }
    }
    if (!out) {
        fail(ErrorCode::kIo, "failed to write phase map");
    }
}

PhaseMap read_phase_binary(std::istream &in) {
    check_magic(in, kPhaseMagic);
    int side = static_cast<int>(read_side(in));
    PhaseMap p;
    p.grating_period = get<double>(in);
    p.clipped_fraction = get<double>(in);
    p.values.resize(side, side);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            double v = get<double>(in);
            if (!(std::abs(v) <= std::numbers::pi)) {
                fail(ErrorCode::kIo, "phase value outside [-pi, pi]");
            }
            p.values(r, c) = v;
        }
    }
    return p;
}

void write_phase_pgm(const PhaseMap &phase, std::ostream &out) {
    int rows = static_cast<int>(phase.values.rows());
    int cols = static_cast<int>(phase.values.cols());
    out << "P5\n" << cols << " " << rows << "\n255\n";
    std::string line(cols, '\0');
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double u = (phase.values(r, c) + std::numbers::pi) / (2.0 * std::numbers::pi);
            long level = std::lround(std::clamp(u, 0.0, 1.0) * 255.0);
            line[c] = static_cast<char>(static_cast<unsigned char>(level));
        }
        out.write(line.data(), cols);
    }
    if (!out) {
        fail(ErrorCode::kIo, "failed to write phase image");
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        fail(ErrorCode::kInvalidArgument, "CSV row width does not match the header");
    }
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::ostringstream out;
    for (const std::string &c : comments) {
        out << "# " << c << "\n";
    }
    auto emit = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << ",";
            }
            out << csv_field(cells[i]);
        }
        out << "\n";
    };
    emit(header);
    for (const auto &r : rows) {
        emit(r);
    }
    return out.str();
}

KeyValueConfig parse_key_value(std::istream &in) {
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            fail(ErrorCode::kConfig, "line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            fail(ErrorCode::kConfig, "line " + std::to_string(lineno) + ": empty key or value");
        }
        if (!cfg.emplace(key, value).second) {
            fail(ErrorCode::kConfig, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }
    return cfg;
}

KeyValueConfig read_key_value_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::kConfig, "cannot open config file '" + path + "'");
    }
    return parse_key_value(in);
}

void atomic_write(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(std::hash<std::string>{}(content) & 0xffffff);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorCode::kIo, "cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            fail(ErrorCode::kIo, "failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorCode::kIo, "cannot move output into place at '" + path + "'");
    }
}

}  // namespace hgp
