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

#include "apsyn/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace apsyn {

namespace {

// Penn Treebank tags plus the TreeTagger variants (NP/NPS proper nouns,
// VV*/VH* verbs, SENT) common in web corpora, plus punctuation tags.
const char* const kPosTags[] = {
    "CC", "CD", "DT", "EX", "FW", "IN", "IN/that", "JJ", "JJR", "JJS", "LS",
    "MD", "NN", "NNS", "NNP", "NNPS", "NP", "NPS", "PDT", "POS", "PP", "PP$",
    "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SENT", "SYM", "TO", "UH", "VB",
    "VBD", "VBG", "VBN", "VBP", "VBZ", "VH", "VHD", "VHG", "VHN", "VHP",
    "VHZ", "VV", "VVD", "VVG", "VVN", "VVP", "VVZ", "WDT", "WP", "WP$",
    "WRB", ".", ",", ":", ";", "(", ")", "''", "``", "\"", "$", "#",
    "-LRB-", "-RRB-",
};

const char* const kStopWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an",
    "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
    "before", "being", "below", "between", "both", "but", "by", "can",
    "cannot", "can't", "could", "couldn't", "did", "didn't", "do", "does",
    "doesn't", "doing", "don't", "down", "during", "each", "few", "for",
    "from", "further", "had", "hadn't", "has", "hasn't", "have", "haven't",
    "having", "he", "he'd", "he'll", "he's", "her", "here", "here's", "hers",
    "herself", "him", "himself", "his", "how", "how's", "i", "i'd", "i'll",
    "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its",
    "itself", "let's", "me", "more", "most", "mustn't", "my", "myself", "no",
    "nor", "not", "of", "off", "on", "once", "only", "or", "other", "ought",
    "our", "ours", "ourselves", "out", "over", "own", "same", "shan't",
    "she", "she'd", "she'll", "she's", "should", "shouldn't", "so", "some",
    "such", "than", "that", "that's", "the", "their", "theirs", "them",
    "themselves", "then", "there", "there's", "these", "they", "they'd",
    "they'll", "they're", "they've", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "wasn't", "we", "we'd", "we'll",
    "we're", "we've", "were", "weren't", "what", "what's", "when", "when's",
    "where", "where's", "which", "while", "who", "who's", "whom", "why",
    "why's", "with", "won't", "would", "wouldn't", "you", "you'd", "you'll",
    "you're", "you've", "your", "yours", "yourself", "yourselves",
};

std::uint32_t crc_of_sorted(const std::unordered_set<std::string>& words) {
    std::vector<std::string> sorted(words.begin(), words.end());
    std::sort(sorted.begin(), sorted.end());
    uLong crc = crc32(0L, Z_NULL, 0);
    for (const auto& w : sorted) {
        crc = crc32(crc, reinterpret_cast<const Bytef*>(w.data()),
                    static_cast<uInt>(w.size()));
        crc = crc32(crc, reinterpret_cast<const Bytef*>("\n"), 1);
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

const std::unordered_set<std::string>& default_stoplist() {
    static const std::unordered_set<std::string> stoplist(
        std::begin(kStopWords), std::end(kStopWords));
    return stoplist;
}

const std::unordered_set<std::string>& default_pos_tagset() {
    static const std::unordered_set<std::string> tagset(std::begin(kPosTags),
                                                        std::end(kPosTags));
    return tagset;
}

const std::vector<std::string>& default_content_pos() {
    // Noun, verb, adjective and adverb coarse prefixes, covering both the
    // Penn (NN*, VB*) and the TreeTagger (NP*, VV*, VH*) spellings.
    static const std::vector<std::string> prefixes = {"NN", "NP", "VB",
                                                      "VH", "VV", "JJ", "RB"};
    return prefixes;
}

void IngestConfig::validate() const {
    if (window < 1) {
        throw UsageError("window must be >= 1, got " + std::to_string(window));
    }
}

std::string IngestConfig::digest() const {
    const auto& stop = stoplist.empty() ? default_stoplist() : stoplist;
    std::ostringstream out;
    out << "w" << window << ";filter="
        << (filter == ContentFilter::PosSet ? "pos" : "stop")
        << ";minfreq=" << min_word_freq << ";lemma=" << (use_lemma ? 1 : 0);
    if (filter == ContentFilter::Stoplist) {
        out << ";stop=" << std::hex << crc_of_sorted(stop);
    } else {
        std::string tags;
        auto prefixes = content_pos.empty() ? default_content_pos() : content_pos;
        std::sort(prefixes.begin(), prefixes.end());
        for (const auto& p : prefixes) tags += p + ",";
        out << ";pos=" << tags;
    }
    return out.str();
}

IngestStats& IngestStats::operator+=(const IngestStats& other) {
    sentences += other.sentences;
    tokens += other.tokens;
    content_tokens += other.content_tokens;
    degraded_tokens += other.degraded_tokens;
    posless_tokens += other.posless_tokens;
    return *this;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    }
    return out;
}

Sentence parse_corpus_line(std::string_view line, const IngestConfig& config,
                           IngestStats* stats) {
    const auto& tagset =
        config.pos_tagset.empty() ? default_pos_tagset() : config.pos_tagset;

    Sentence sentence;
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t end = line.find(' ', pos);
        if (end == std::string_view::npos) end = line.size();
        std::string_view raw = line.substr(pos, end - pos);
        pos = end + 1;
        if (raw.empty()) continue;
        if (stats) ++stats->tokens;

        size_t p1 = raw.find('|');
        if (p1 == std::string_view::npos) {
            sentence.push_back(Token{std::string(raw), "", ""});
            continue;
        }

        // Annotated token: exactly surface|POS|lemma, POS from the tagset.
        size_t p2 = raw.find('|', p1 + 1);
        size_t p3 = p2 == std::string_view::npos
                        ? std::string_view::npos
                        : raw.find('|', p2 + 1);
        std::string_view surface = raw.substr(0, p1);
        bool well_formed = p2 != std::string_view::npos &&
                           p3 == std::string_view::npos && !surface.empty();
        if (well_formed) {
            std::string_view tag = raw.substr(p1 + 1, p2 - p1 - 1);
            std::string_view lemma = raw.substr(p2 + 1);
            if (!tag.empty() && tagset.contains(std::string(tag))) {
                sentence.push_back(Token{std::string(surface), std::string(tag),
                                         std::string(lemma)});
                continue;
            }
        }
        if (stats) ++stats->degraded_tokens;
        sentence.push_back(
            Token{std::string(surface.empty() ? raw : surface), "", ""});
    }
    if (stats && !sentence.empty()) ++stats->sentences;
    return sentence;
}

bool is_content_word(const Token& token, const IngestConfig& config,
                     IngestStats* stats) {
    if (config.filter == ContentFilter::PosSet) {
        if (!token.has_pos()) {
            if (stats) ++stats->posless_tokens;
            return false;
        }
        const auto& prefixes =
            config.content_pos.empty() ? default_content_pos() : config.content_pos;
        for (const auto& prefix : prefixes) {
            if (token.pos.starts_with(prefix)) return true;
        }
        return false;
    }
    const auto& stop =
        config.stoplist.empty() ? default_stoplist() : config.stoplist;
    return !stop.contains(ascii_lower(token.surface));
}

std::string word_key(const Token& token, const IngestConfig& config) {
    if (config.use_lemma && token.has_lemma()) return ascii_lower(token.lemma);
    return ascii_lower(token.surface);
}

std::unordered_set<std::string> load_stoplist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stoplist: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.insert(ascii_lower(line));
    }
    return words;
}

}  // namespace apsyn
