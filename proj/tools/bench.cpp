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
//
// Throughput harness over a synthetic corpus: tokens/sec for ingestion
// and pairs/sec for weighting. Numbers are recorded in
// docs/benchmarks.md; nothing here gates the test suite.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "apsyn/weighting.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Skewed unigram draw so frequent words dominate, like natural text.
std::vector<std::string> make_corpus(size_t sentences, size_t length,
                                     size_t vocab, std::uint64_t seed) {
    std::vector<double> mass(vocab);
    for (size_t k = 0; k < vocab; ++k) mass[k] = 1.0 / static_cast<double>(k + 10);
    std::discrete_distribution<size_t> pick(mass.begin(), mass.end());
    std::mt19937_64 rng(seed);

    std::vector<std::string> lines;
    lines.reserve(sentences);
    char word[16];
    for (size_t s = 0; s < sentences; ++s) {
        std::string line;
        for (size_t i = 0; i < length; ++i) {
            std::snprintf(word, sizeof word, "w%05zu", pick(rng));
            if (i) line += ' ';
            line += word;
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ingestion and weighting throughput harness"};
    size_t sentences = 20000, length = 18, vocab = 5000;
    int window = 5;
    unsigned threads = 1;
    std::uint64_t seed = 42;
    app.add_option("--sentences", sentences, "synthetic sentence count");
    app.add_option("--length", length, "tokens per sentence");
    app.add_option("--vocab", vocab, "distinct word count");
    app.add_option("--window", window, "window size");
    app.add_option("--threads", threads, "ingestion shards");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    apsyn::IngestConfig config;
    config.window = window;
    config.filter = apsyn::ContentFilter::Stoplist;
    config.stoplist = {"w00000"};  // give the filter one hit to chew on

    std::cerr << "[bench] generating " << sentences << " sentences, vocab "
              << vocab << "\n";
    auto lines = make_corpus(sentences, length, vocab, seed);

    auto start = Clock::now();
    apsyn::CoocCounts counts;
    if (threads <= 1) {
        std::ostringstream blob;
        for (const auto& line : lines) blob << line << '\n';
        std::istringstream in(blob.str());
        start = Clock::now();  // charge ingestion, not blob assembly
        counts = apsyn::count_stream(in, config, "bench");
    } else {
        std::vector<std::string> blobs(threads);
        for (size_t i = 0; i < lines.size(); ++i) {
            blobs[i % threads] += lines[i];
            blobs[i % threads] += '\n';
        }
        start = Clock::now();
        std::vector<apsyn::CoocCounts> shards(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                std::istringstream in(blobs[t]);
                shards[t] = apsyn::count_stream(in, config, "bench");
            });
        }
        for (auto& t : pool) t.join();
        counts = std::move(shards[0]);
        for (unsigned t = 1; t < threads; ++t) {
            counts = apsyn::merge_counts(counts, shards[t]);
        }
    }
    double ingest_s = seconds_since(start);
    auto tokens = counts.stats.tokens;

    auto pairs = counts.pairs.size();
    start = Clock::now();
    auto space = apsyn::weight_space(std::move(counts));
    double weight_s = seconds_since(start);

    std::cout << "corpus_tokens\t" << tokens << "\n";
    std::cout << "cooc_pairs\t" << pairs << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ingest_s);
    std::cout << "ingest_seconds\t" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.0f", static_cast<double>(tokens) / ingest_s);
    std::cout << "ingest_tokens_per_sec\t" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.3f", weight_s);
    std::cout << "weight_seconds\t" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.0f", static_cast<double>(pairs) / weight_s);
    std::cout << "weight_pairs_per_sec\t" << buf << "\n";
    std::cerr << "[bench] space nnz " << space.nnz() << "\n";
    return 0;
}
