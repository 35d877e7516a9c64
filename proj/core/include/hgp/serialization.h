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
// File formats.
//
// ModeState JSON:   {"cutoff": C, "index_map": "m*(C+1)+n", "re": [...], "im": [...]}
// Operator JSON:    {"cutoff": C, "index_map": ..., "hermitian": b, "re": [[...]], "im": [[...]]}
// FieldGrid binary: "HGPF", u32 version, u64 side, f64 pitch, f64 sigma0,
//                   f64 wavelength, f64 z, then side*side (re, im) f64 pairs,
//                   row-major with rows indexing y. All little-endian.
// PhaseMap binary:  "HGPM", u32 version, u64 side, f64 grating_period,
//                   f64 clipped_fraction, then side*side f64 radians, row-major.
// PhaseMap image:   binary PGM (P5), 8-bit, [-pi, pi] mapped linearly to [0, 255].
// Config:           one "key = value" per line, '#' starts a comment, SI units.

#ifndef HGP_SERIALIZATION_H
#define HGP_SERIALIZATION_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hgp/field_optics.h"
#include "hgp/mode_algebra.h"

namespace hgp {

inline constexpr std::uint32_t kBinaryFormatVersion = 1;

std::string to_json(const ModeState &state);
std::string to_json(const OperatorMatrix &op);
ModeState mode_state_from_json(const std::string &text);
OperatorMatrix operator_from_json(const std::string &text);

void write_field_binary(const FieldGrid &field, std::ostream &out);
FieldGrid read_field_binary(std::istream &in);
void write_phase_binary(const PhaseMap &phase, std::ostream &out);
PhaseMap read_phase_binary(std::istream &in);
void write_phase_pgm(const PhaseMap &phase, std::ostream &out);

/// Shortest round-tripping decimal form.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// Lines starting with '#' emitted before the header.
    std::vector<std::string> comments;

    void add_row(std::vector<std::string> row);
    std::string str() const;
};

using KeyValueConfig = std::map<std::string, std::string>;

/// Throws kConfig naming the offending line for malformed or duplicate keys.
KeyValueConfig parse_key_value(std::istream &in);
KeyValueConfig read_key_value_file(const std::string &path);

/// Writes to a sibling temp file and renames it over path. Throws kIo.
void atomic_write(const std::string &path, const std::string &content);

}  // namespace hgp

#endif  // HGP_SERIALIZATION_H
