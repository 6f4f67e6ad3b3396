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
#include <span>
#include <string_view>
#include <vector>

#include "apsyn/counts.hpp"

namespace apsyn {

// Local mutual information in base 2:
//
//     joint * log2(joint * total / (target_marginal * context_marginal))
//
// Zero joint counts map to 0. The log base only rescales weights; both
// similarity measures downstream are invariant to positive rescaling.
double lmi(std::uint64_t joint, std::uint64_t target_marginal,
           std::uint64_t context_marginal, std::uint64_t total);

struct WeightedEntry {
    std::uint32_t context;
    double weight;
};

// Per-target sparse LMI vectors (CSR rows sorted by context id) over the
// retained raw counts. Entries with non-positive LMI are dropped: they
// mark contexts co-occurring at or below chance, which must not compete
// for a slot in a top-N related-context list. Immutable once built; safe
// for unbounded concurrent readers.
struct WeightedSpace {
    CoocCounts raw;
    std::vector<std::uint64_t> offsets;       // vocab size + 1
    std::vector<WeightedEntry> entries;

    std::span<const WeightedEntry> vector_of(std::uint32_t id) const {
        return {entries.data() + offsets[id],
                static_cast<size_t>(offsets[id + 1] - offsets[id])};
    }
    const Vocabulary& vocab() const { return raw.vocab; }
    std::optional<std::uint32_t> id_of(std::string_view word) const {
        return raw.vocab.id_of(word);
    }
    std::uint64_t nnz() const { return entries.size(); }
};

// Applies lmi to every stored pair. Throws DomainError when total is 0.
WeightedSpace weight_space(CoocCounts counts);

}  // namespace apsyn
