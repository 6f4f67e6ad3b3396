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
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "apsyn/errors.hpp"

namespace apsyn {

// One corpus token. The text format is either a plain surface form or
// `surface|POS|lemma`; lemma and pos are empty when absent.
struct Token {
    std::string surface;
    std::string pos;
    std::string lemma;

    bool has_pos() const { return !pos.empty(); }
    bool has_lemma() const { return !lemma.empty(); }
};

using Sentence = std::vector<Token>;

// How content words are selected: by coarse POS tag, or by everything
// not on a function-word stoplist.
enum class ContentFilter { PosSet, Stoplist };

struct IngestConfig {
    int window = 5;  // content words per side
    ContentFilter filter = ContentFilter::Stoplist;
    std::unordered_set<std::string> stoplist;       // empty -> built-in default
    std::unordered_set<std::string> pos_tagset;     // empty -> built-in default
    std::vector<std::string> content_pos;           // coarse tag prefixes; empty -> default
    std::uint64_t min_word_freq = 0;
    bool use_lemma = false;

    // Throws UsageError on invalid settings (window < 1).
    void validate() const;

    // Short textual summary of every count-affecting field; counts built
    // with different digests refuse to merge.
    std::string digest() const;
};

// Per-stream ingestion diagnostics. Degraded tokens are annotated tokens
// that failed validation and fell back to surface-only form.
struct IngestStats {
    std::uint64_t sentences = 0;
    std::uint64_t tokens = 0;
    std::uint64_t content_tokens = 0;
    std::uint64_t degraded_tokens = 0;
    std::uint64_t posless_tokens = 0;  // POS filter applied to a POS-less token

    IngestStats& operator+=(const IngestStats& other);
};

// ASCII-only lowercasing; non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view s);

const std::unordered_set<std::string>& default_stoplist();
const std::unordered_set<std::string>& default_pos_tagset();
const std::vector<std::string>& default_content_pos();

// Splits one corpus line into tokens. Malformed annotated tokens degrade
// to surface-only tokens; the parse never fails.
Sentence parse_corpus_line(std::string_view line, const IngestConfig& config,
                           IngestStats* stats = nullptr);

bool is_content_word(const Token& token, const IngestConfig& config,
                     IngestStats* stats = nullptr);

// The identity a token counts under: lowercased lemma when configured and
// present, else lowercased surface.
std::string word_key(const Token& token, const IngestConfig& config);

// One lowercase word per line; '#' lines are ignored.
std::unordered_set<std::string> load_stoplist(const std::string& path);

}  // namespace apsyn
