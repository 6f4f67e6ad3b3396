//  Copyright 2026 The apsyn authors.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apsyn/weighting.hpp"

namespace apsyn {

struct RankedEntry {
    std::uint32_t context;
    double weight;
    std::uint32_t rank;  // 1-based
};

// A word's top-N contexts by descending LMI. Ties break by raw
// co-occurrence count descending, then context word ascending, so the
// order is total and every query is reproducible.
struct RankedList {
    std::uint32_t word_id = 0;
    std::uint32_t n = 0;
    std::vector<RankedEntry> entries;
};

// Returns nullopt when the word is not in the vocabulary; a word with
// fewer than n positive-LMI contexts returns all of them.
std::optional<RankedList> top_n(const WeightedSpace& space,
                                std::string_view word, std::uint32_t n);
RankedList top_n_by_id(const WeightedSpace& space, std::uint32_t word_id,
                       std::uint32_t n);

// Single-file binary format: "APSV" magic, u32 version, header (log-base
// tag + config digest), vocabulary block, CSR blocks for weights and raw
// counts, trailing CRC32 of the payload. Little-endian throughout; see
// docs/space_format.md for the annotated layout.
void save_space(const WeightedSpace& space, const std::string& path);
WeightedSpace load_space(const std::string& path);

}  // namespace apsyn
