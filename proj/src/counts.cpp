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

#include "apsyn/counts.hpp"

#include <atomic>
#include <fstream>
#include <istream>
#include <numeric>
#include <thread>

namespace apsyn {

std::uint32_t Vocabulary::add(std::string_view word) {
    auto it = index.find(std::string(word));
    if (it != index.end()) return it->second;
    auto id = static_cast<std::uint32_t>(words.size());
    words.emplace_back(word);
    freqs.push_back(0);
    index.emplace(words.back(), id);
    return id;
}

std::optional<std::uint32_t> Vocabulary::id_of(std::string_view word) const {
    auto it = index.find(std::string(word));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::uint64_t CoocCounts::pair_count(std::uint32_t target,
                                     std::uint32_t context) const {
    auto it = pairs.find(key(target, context));
    return it == pairs.end() ? 0 : it->second;
}

void CoocCounts::add_pair(std::uint32_t target, std::uint32_t context,
                          std::uint64_t n) {
    if (n == 0) return;
    pairs[key(target, context)] += n;
    if (target_marginals.size() < vocab.size()) target_marginals.resize(vocab.size(), 0);
    if (context_marginals.size() < vocab.size()) context_marginals.resize(vocab.size(), 0);
    target_marginals[target] += n;
    context_marginals[context] += n;
    total += n;
}

void CoocCounts::check() const {
    std::uint64_t sum = 0;
    for (const auto& [k, n] : pairs) {
        if (n == 0) throw DomainError("counts: stored zero pair entry");
        if (key_target(k) >= vocab.size() || key_context(k) >= vocab.size()) {
            throw DomainError("counts: pair id outside vocabulary");
        }
        sum += n;
    }
    auto tm = std::accumulate(target_marginals.begin(), target_marginals.end(),
                              std::uint64_t{0});
    auto cm = std::accumulate(context_marginals.begin(), context_marginals.end(),
                              std::uint64_t{0});
    if (sum != total || tm != total || cm != total) {
        throw DomainError("counts: marginal/total conservation violated");
    }
}

void count_sentence(const Sentence& sentence, const IngestConfig& config,
                    CoocCounts& counts) {
    std::vector<std::uint32_t> content;
    content.reserve(sentence.size());
    for (const auto& token : sentence) {
        if (!is_content_word(token, config, &counts.stats)) continue;
        auto id = counts.vocab.add(word_key(token, config));
        counts.vocab.freqs[id] += 1;
        content.push_back(id);
        ++counts.stats.content_tokens;
    }
    if (counts.target_marginals.size() < counts.vocab.size()) {
        counts.target_marginals.resize(counts.vocab.size(), 0);
        counts.context_marginals.resize(counts.vocab.size(), 0);
    }

    const auto len = content.size();
    const auto window = static_cast<size_t>(config.window);
    for (size_t i = 0; i < len; ++i) {
        size_t lo = i > window ? i - window : 0;
        size_t hi = std::min(len, i + window + 1);
        for (size_t j = lo; j < hi; ++j) {
            if (j == i) continue;
            counts.add_pair(content[i], content[j]);
        }
    }
}

CoocCounts merge_counts(const CoocCounts& a, const CoocCounts& b) {
    if (a.config_digest != b.config_digest) {
        throw UsageError("merge_counts: shards built with different configs (" +
                         a.config_digest + " vs " + b.config_digest + ")");
    }

    CoocCounts out;
    out.config_digest = a.config_digest;
    out.stats = a.stats;
    out.stats += b.stats;

    out.vocab = a.vocab;
    out.pairs = a.pairs;
    out.target_marginals = a.target_marginals;
    out.context_marginals = a.context_marginals;
    out.total = a.total;
    out.target_marginals.resize(out.vocab.size(), 0);
    out.context_marginals.resize(out.vocab.size(), 0);

    // b's ids remapped in id order so merged ids stay in global
    // first-occurrence order.
    std::vector<std::uint32_t> remap(b.vocab.size());
    for (std::uint32_t id = 0; id < b.vocab.size(); ++id) {
        auto merged = out.vocab.add(b.vocab.word(id));
        out.vocab.freqs[merged] += b.vocab.freqs[id];
        remap[id] = merged;
    }
    out.target_marginals.resize(out.vocab.size(), 0);
    out.context_marginals.resize(out.vocab.size(), 0);
    for (const auto& [k, n] : b.pairs) {
        out.add_pair(remap[CoocCounts::key_target(k)],
                     remap[CoocCounts::key_context(k)], n);
    }
    return out;
}

CoocCounts count_stream(std::istream& in, const IngestConfig& config,
                        std::string_view name) {
    config.validate();
    CoocCounts counts;
    counts.config_digest = config.digest();

    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Sentence sentence = parse_corpus_line(line, config, &counts.stats);
        if (sentence.empty()) continue;
        count_sentence(sentence, config, counts);
    }
    if (in.bad()) {
        throw IoError("read failure in " + std::string(name) + " at line " +
                      std::to_string(line_no + 1));
    }
    return counts;
}

CoocCounts prune_min_freq(const CoocCounts& counts, std::uint64_t min_freq) {
    if (min_freq <= 1) return counts;

    CoocCounts out;
    out.config_digest = counts.config_digest;
    out.stats = counts.stats;

    std::vector<std::uint32_t> remap(counts.vocab.size(), UINT32_MAX);
    for (std::uint32_t id = 0; id < counts.vocab.size(); ++id) {
        if (counts.vocab.freqs[id] < min_freq) continue;
        auto kept = out.vocab.add(counts.vocab.word(id));
        out.vocab.freqs[kept] = counts.vocab.freqs[id];
        remap[id] = kept;
    }
    out.target_marginals.assign(out.vocab.size(), 0);
    out.context_marginals.assign(out.vocab.size(), 0);
    for (const auto& [k, n] : counts.pairs) {
        auto t = remap[CoocCounts::key_target(k)];
        auto c = remap[CoocCounts::key_context(k)];
        if (t == UINT32_MAX || c == UINT32_MAX) continue;
        out.add_pair(t, c, n);
    }
    return out;
}

CoocCounts build_counts(std::istream& in, const IngestConfig& config,
                        std::string_view name) {
    return prune_min_freq(count_stream(in, config, name), config.min_word_freq);
}

CoocCounts build_counts(const std::vector<std::string>& paths,
                        const IngestConfig& config, unsigned threads) {
    config.validate();
    if (paths.empty()) throw UsageError("build_counts: no corpus files given");
    for (const auto& path : paths) {
        std::ifstream probe(path);
        if (!probe) throw UsageError("cannot read corpus file: " + path);
    }

    std::vector<CoocCounts> shards(paths.size());
    if (threads <= 1 || paths.size() == 1) {
        for (size_t i = 0; i < paths.size(); ++i) {
            std::ifstream in(paths[i]);
            shards[i] = count_stream(in, config, paths[i]);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(paths.size());
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < paths.size();
                 i = next.fetch_add(1)) {
                try {
                    std::ifstream in(paths[i]);
                    if (!in) throw IoError("cannot read corpus file: " + paths[i]);
                    shards[i] = count_stream(in, config, paths[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        auto n = std::min<size_t>(threads, paths.size());
        for (size_t t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (const auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    // Merge in file order; result is then independent of scheduling.
    CoocCounts merged = std::move(shards[0]);
    for (size_t i = 1; i < shards.size(); ++i) {
        merged = merge_counts(merged, shards[i]);
    }
    return prune_min_freq(merged, config.min_word_freq);
}

bool same_counts_by_word(const CoocCounts& a, const CoocCounts& b) {
    if (a.total != b.total) return false;
    if (a.vocab.size() != b.vocab.size() || a.pairs.size() != b.pairs.size()) {
        return false;
    }
    for (std::uint32_t id = 0; id < a.vocab.size(); ++id) {
        auto other = b.vocab.id_of(a.vocab.word(id));
        if (!other || b.vocab.freqs[*other] != a.vocab.freqs[id]) return false;
        if (b.target_marginals[*other] != a.target_marginals[id]) return false;
        if (b.context_marginals[*other] != a.context_marginals[id]) return false;
    }
    for (const auto& [k, n] : a.pairs) {
        auto t = b.vocab.id_of(a.vocab.word(CoocCounts::key_target(k)));
        auto c = b.vocab.id_of(a.vocab.word(CoocCounts::key_context(k)));
        if (!t || !c || b.pair_count(*t, *c) != n) return false;
    }
    return true;
}

}  // namespace apsyn
