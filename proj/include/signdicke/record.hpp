// Copyright 2026 The signdicke Authors
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

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/errors.hpp"

namespace signdicke {

/// Measurement outcomes of n-qubit shots, concatenated shot-major. Each symbol
/// is +1 for an observed 1 and -1 for an observed 0.
struct BitstringRecord {
    int n = 0;
    std::size_t shots = 0;
    std::vector<std::int8_t> symbols;

    std::size_t length() const { return symbols.size(); }

    void append_shot(Bits outcome) {
        for (int q = 0; q < n; ++q) {
            symbols.push_back((outcome & qubit_mask(n, q)) ? std::int8_t{1} : std::int8_t{-1});
        }
        ++shots;
    }

    void validate() const {
        if (symbols.empty() || symbols.size() != static_cast<std::size_t>(n) * shots) {
            throw DomainError("BitstringRecord: length must be n * shots and positive");
        }
        for (auto s : symbols) {
            if (s != 1 && s != -1) {
                throw DomainError("BitstringRecord: symbols must be +1 or -1");
            }
        }
    }
};

/// Writes one shot per line as a 0/1 string.
inline void write_record(std::ostream& out, const BitstringRecord& rec) {
    for (std::size_t s = 0; s < rec.shots; ++s) {
        std::string line(static_cast<std::size_t>(rec.n), '0');
        for (int q = 0; q < rec.n; ++q) {
            if (rec.symbols[s * static_cast<std::size_t>(rec.n) + static_cast<std::size_t>(q)] > 0) {
                line[static_cast<std::size_t>(q)] = '1';
            }
        }
        out << line << '\n';
    }
}

/// Reads one shot per line. A line is either a 0/1 string ("0110") or +-1
/// tokens separated by whitespace or commas ("-1 +1 +1 -1"). Blank lines and
/// lines starting with '#' are skipped. All shots must have the same width.
inline BitstringRecord read_record(std::istream& in) {
    BitstringRecord rec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::vector<std::int8_t> shot;
        bool binary = line.find_first_not_of("01 \t\r", first) == std::string::npos &&
                      line.find_first_of(" \t", first) == std::string::npos;
        if (binary) {
            for (char ch : line) {
                if (ch == '0' || ch == '1') {
                    shot.push_back(ch == '1' ? 1 : -1);
                }
            }
        } else {
            std::string cleaned = line;
            for (char& ch : cleaned) {
                if (ch == ',') {
                    ch = ' ';
                }
            }
            std::istringstream ls(cleaned);
            std::string tok;
            while (ls >> tok) {
                if (tok == "1" || tok == "+1") {
                    shot.push_back(1);
                } else if (tok == "-1") {
                    shot.push_back(-1);
                } else {
                    throw DomainError("record line " + std::to_string(line_no) + ": bad symbol '" + tok + "'");
                }
            }
        }
        if (rec.shots == 0) {
            rec.n = static_cast<int>(shot.size());
        } else if (static_cast<int>(shot.size()) != rec.n) {
            throw DomainError("record line " + std::to_string(line_no) + ": shot width differs from the first shot");
        }
        rec.symbols.insert(rec.symbols.end(), shot.begin(), shot.end());
        ++rec.shots;
    }
    if (rec.shots == 0 || rec.n == 0) {
        throw DomainError("record: no shots");
    }
    return rec;
}

inline BitstringRecord read_record_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open record file '" + path + "'");
    }
    return read_record(in);
}

}  // namespace signdicke
