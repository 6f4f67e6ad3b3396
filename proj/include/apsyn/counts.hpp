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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "apsyn/corpus.hpp"

namespace apsyn {

// Word <-> id map with per-word corpus frequencies. Ids are assigned in
// first-occurrence order, which keeps single-pass and ordered shard-merge
// builds bit-identical.
struct Vocabulary {
    std::vector<std::string> words;
    std::vector<std::uint64_t> freqs;
    std::unordered_map<std::string, std::uint32_t> index;

    std::uint32_t add(std::string_view word);
    std::optional<std::uint32_t> id_of(std::string_view word) const;
    const std::string& word(std::uint32_t id) const { return words[id]; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(words.size()); }
};

// Sparse target x context co-occurrence counts with marginals and the
// grand total. Not safe for concurrent mutation; a finished instance is
// immutable and safe for concurrent reads.
struct CoocCounts {
    Vocabulary vocab;
    std::unordered_map<std::uint64_t, std::uint64_t> pairs;  // key(t,c) -> count
    std::vector<std::uint64_t> target_marginals;
    std::vector<std::uint64_t> context_marginals;
    std::uint64_t total = 0;
    std::string config_digest;
    IngestStats stats;

    static std::uint64_t key(std::uint32_t target, std::uint32_t context) {
        return (static_cast<std::uint64_t>(target) << 32) | context;
    }
    static std::uint32_t key_target(std::uint64_t k) {
        return static_cast<std::uint32_t>(k >> 32);
    }
    static std::uint32_t key_context(std::uint64_t k) {
        return static_cast<std::uint32_t>(k & 0xffffffffu);
    }

    std::uint64_t pair_count(std::uint32_t target, std::uint32_t context) const;
    void add_pair(std::uint32_t target, std::uint32_t context, std::uint64_t n = 1);

    // Throws DomainError if the structural invariants do not hold
    // (marginal/total conservation, ids in range, no zero entries).
    void check() const;
};

// Adds every within-window ordered pair over the sentence's content-word
// subsequence; non-content words are transparent and windows never cross
// the sentence.
void count_sentence(const Sentence& sentence, const IngestConfig& config,
                    CoocCounts& counts);

// Elementwise sum over a unified vocabulary. Throws UsageError when the
// two sides were built with different configurations.
CoocCounts merge_counts(const CoocCounts& a, const CoocCounts& b);

// Folds count_sentence over every line of the stream. No frequency
// pruning; `name` labels I/O errors.
CoocCounts count_stream(std::istream& in, const IngestConfig& config,
                        std::string_view name = "<stream>");

// Drops words with corpus frequency below min_freq and recomputes pairs,
// marginals and the total.
CoocCounts prune_min_freq(const CoocCounts& counts, std::uint64_t min_freq);

CoocCounts build_counts(std::istream& in, const IngestConfig& config,
                        std::string_view name = "<stream>");

// Shard-parallel build: one worker per file, ordered merge, then pruning.
CoocCounts build_counts(const std::vector<std::string>& paths,
                        const IngestConfig& config, unsigned threads = 1);

// Equality up to id relabeling: word frequencies, word-keyed pair counts
// and totals all agree.
bool same_counts_by_word(const CoocCounts& a, const CoocCounts& b);

}  // namespace apsyn
