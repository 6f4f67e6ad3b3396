// Copyright 2026 The apsyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "apsyn/corpus.hpp"
#include "apsyn/counts.hpp"
#include "test_util.hpp"

using namespace apsyn;

namespace {

IngestConfig stop_config(std::unordered_set<std::string> stop, int window = 5) {
    IngestConfig cfg;
    cfg.window = window;
    cfg.filter = ContentFilter::Stoplist;
    cfg.stoplist = std::move(stop);
    return cfg;
}

CoocCounts count_one(const std::string& line, const IngestConfig& cfg) {
    CoocCounts counts;
    counts.config_digest = cfg.digest();
    count_sentence(parse_corpus_line(line, cfg), cfg, counts);
    return counts;
}

std::uint64_t sum_pairs(const CoocCounts& c) {
    std::uint64_t sum = 0;
    for (const auto& [k, v] : c.pairs) sum += v;
    return sum;
}

}  // namespace

TEST_CASE("ascii_lower folds ASCII only") {
    CHECK(ascii_lower("The CAT") == "the cat");
    CHECK(ascii_lower("abc-123") == "abc-123");
    CHECK(ascii_lower("caf\xc3\xa9") == "caf\xc3\xa9");  // UTF-8 bytes untouched
}

TEST_CASE("parse_corpus_line splits plain and annotated tokens") {
    IngestConfig cfg;
    IngestStats stats;

    auto plain = parse_corpus_line("the cat sat", cfg, &stats);
    REQUIRE(plain.size() == 3);
    CHECK(plain[1].surface == "cat");
    CHECK_FALSE(plain[1].has_pos());
    CHECK_FALSE(plain[1].has_lemma());

    auto tagged = parse_corpus_line("The|DT|the cats|NNS|cat", cfg, &stats);
    REQUIRE(tagged.size() == 2);
    CHECK(tagged[0].surface == "The");
    CHECK(tagged[0].pos == "DT");
    CHECK(tagged[0].lemma == "the");
    CHECK(tagged[1].pos == "NNS");
    CHECK(tagged[1].lemma == "cat");

    CHECK(stats.tokens == 5);
    CHECK(stats.degraded_tokens == 0);
    CHECK(stats.sentences == 2);
}

TEST_CASE("parse_corpus_line degrades malformed annotations to surface") {
    IngestConfig cfg;
    IngestStats stats;

    // Two fields, four fields, unknown tag, empty tag: all keep the surface.
    auto s = parse_corpus_line("Broken|XYZ a|b|c|d ok|NN|ok odd||x", cfg, &stats);
    REQUIRE(s.size() == 4);
    CHECK(s[0].surface == "Broken");
    CHECK_FALSE(s[0].has_pos());
    CHECK(s[1].surface == "a");
    CHECK_FALSE(s[1].has_pos());
    CHECK(s[2].pos == "NN");
    CHECK(s[3].surface == "odd");
    CHECK_FALSE(s[3].has_pos());
    CHECK(stats.degraded_tokens == 3);
}

TEST_CASE("parse_corpus_line handles blank input and repeated spaces") {
    IngestConfig cfg;
    IngestStats stats;
    CHECK(parse_corpus_line("", cfg, &stats).empty());
    CHECK(parse_corpus_line("   ", cfg, &stats).empty());
    CHECK(stats.sentences == 0);
    auto s = parse_corpus_line("a  b", cfg, &stats);
    CHECK(s.size() == 2);
}

TEST_CASE("stoplist filter drops function words case-insensitively") {
    auto cfg = stop_config({"the", "on"});
    CHECK(is_content_word(Token{"cat", "", ""}, cfg));
    CHECK_FALSE(is_content_word(Token{"The", "", ""}, cfg));
    CHECK_FALSE(is_content_word(Token{"ON", "", ""}, cfg));
}

TEST_CASE("pos filter keeps noun/verb/adjective/adverb prefixes") {
    IngestConfig cfg;
    cfg.filter = ContentFilter::PosSet;
    IngestStats stats;

    CHECK(is_content_word(Token{"cats", "NNS", "cat"}, cfg, &stats));
    CHECK(is_content_word(Token{"ran", "VBD", "run"}, cfg, &stats));
    CHECK(is_content_word(Token{"Paris", "NP", "Paris"}, cfg, &stats));
    CHECK(is_content_word(Token{"quickly", "RB", "quickly"}, cfg, &stats));
    CHECK_FALSE(is_content_word(Token{"the", "DT", "the"}, cfg, &stats));
    CHECK_FALSE(is_content_word(Token{"of", "IN", "of"}, cfg, &stats));
    CHECK(stats.posless_tokens == 0);

    // POS-less token under the POS filter: not content, and counted.
    CHECK_FALSE(is_content_word(Token{"cat", "", ""}, cfg, &stats));
    CHECK(stats.posless_tokens == 1);
}

TEST_CASE("word_key prefers the lemma only when configured") {
    IngestConfig surface_cfg;
    IngestConfig lemma_cfg;
    lemma_cfg.use_lemma = true;

    Token cats{"Cats", "NNS", "Cat"};
    CHECK(word_key(cats, surface_cfg) == "cats");
    CHECK(word_key(cats, lemma_cfg) == "cat");

    Token bare{"Cats", "", ""};
    CHECK(word_key(bare, lemma_cfg) == "cats");  // no lemma -> surface
}

TEST_CASE("load_stoplist reads one word per line, skipping comments") {
    auto stop = load_stoplist(testutil::fixture("micro_stoplist.txt"));
    CHECK(stop.size() == 4);
    CHECK(stop.contains("the"));
    CHECK(stop.contains("on"));
    CHECK(stop.contains("a"));
    CHECK(stop.contains("in"));
    CHECK_THROWS_AS(load_stoplist(testutil::fixture("no_such_file.txt")), IoError);
}

TEST_CASE("config digest separates count-affecting settings") {
    auto a = stop_config({"the"});
    auto b = stop_config({"the"});
    CHECK(a.digest() == b.digest());

    auto c = stop_config({"the"}, 4);
    CHECK(a.digest() != c.digest());

    auto d = stop_config({"the", "of"});
    CHECK(a.digest() != d.digest());

    IngestConfig e;
    e.filter = ContentFilter::PosSet;
    CHECK(a.digest() != e.digest());

    auto f = stop_config({"the"});
    f.min_word_freq = 2;
    CHECK(a.digest() != f.digest());
}

TEST_CASE("config validation rejects windows below one") {
    IngestConfig cfg;
    cfg.window = 0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.window = -3;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.window = 1;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("count_sentence: three content words, all within the window") {
    auto cfg = stop_config({"the", "on"});
    auto counts = count_one("the cat sat on the mat", cfg);

    REQUIRE(counts.vocab.size() == 3);
    auto cat = *counts.vocab.id_of("cat");
    auto sat = *counts.vocab.id_of("sat");
    auto mat = *counts.vocab.id_of("mat");

    CHECK(counts.vocab.freqs[cat] == 1);
    CHECK(counts.vocab.freqs[sat] == 1);
    CHECK(counts.vocab.freqs[mat] == 1);

    // Every unordered pair once, recorded in both directions.
    CHECK(counts.pair_count(cat, sat) == 1);
    CHECK(counts.pair_count(sat, cat) == 1);
    CHECK(counts.pair_count(cat, mat) == 1);
    CHECK(counts.pair_count(mat, cat) == 1);
    CHECK(counts.pair_count(sat, mat) == 1);
    CHECK(counts.pair_count(mat, sat) == 1);
    CHECK(counts.total == 6);
    CHECK(counts.pairs.size() == 6);
    counts.check();
}

TEST_CASE("count_sentence: a single content word yields no pairs") {
    auto cfg = stop_config({"the", "on"});
    auto counts = count_one("the cat on the", cfg);
    CHECK(counts.vocab.size() == 1);
    CHECK(counts.total == 0);
    CHECK(counts.pairs.empty());
}

TEST_CASE("count_sentence: window 1 links only adjacent content words") {
    auto cfg = stop_config({}, 1);
    cfg.stoplist = {"zzz"};  // nothing in the sentence is stopped
    auto counts = count_one("a b c d", cfg);

    auto a = *counts.vocab.id_of("a");
    auto b = *counts.vocab.id_of("b");
    auto c = *counts.vocab.id_of("c");
    auto d = *counts.vocab.id_of("d");

    CHECK(counts.pair_count(a, b) == 1);
    CHECK(counts.pair_count(b, c) == 1);
    CHECK(counts.pair_count(c, d) == 1);
    CHECK(counts.pair_count(a, c) == 0);
    CHECK(counts.pair_count(a, d) == 0);
    CHECK(counts.pair_count(b, d) == 0);
    CHECK(counts.total == 6);  // three adjacencies, both directions
}

TEST_CASE("count_sentence: window distance ignores non-content words") {
    auto cfg = stop_config({"the"}, 1);
    auto counts = count_one("x the the the y", cfg);
    auto x = *counts.vocab.id_of("x");
    auto y = *counts.vocab.id_of("y");
    CHECK(counts.pair_count(x, y) == 1);
    CHECK(counts.pair_count(y, x) == 1);
    CHECK(counts.total == 2);
}

TEST_CASE("count_sentence: windows never cross sentence boundaries") {
    auto cfg = stop_config({"zzz"});
    CoocCounts counts;
    counts.config_digest = cfg.digest();
    count_sentence(parse_corpus_line("p q", cfg), cfg, counts);
    count_sentence(parse_corpus_line("r s", cfg), cfg, counts);
    auto q = *counts.vocab.id_of("q");
    auto r = *counts.vocab.id_of("r");
    CHECK(counts.pair_count(q, r) == 0);
    CHECK(counts.total == 4);
}

TEST_CASE("count_sentence: full-coverage window yields k*(k-1) increments") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint64_t k = 2 + rng() % 9;
        std::string line;
        for (std::uint64_t i = 0; i < k; ++i) {
            if (i) line += ' ';
            line += "w" + std::to_string(i);
        }
        auto cfg = stop_config({"zzz"}, static_cast<int>(k));
        auto counts = count_one(line, cfg);
        CHECK(counts.total == k * (k - 1));
        CHECK(sum_pairs(counts) == counts.total);
    }
}

TEST_CASE("count_sentence: repeated words accumulate under one key") {
    auto cfg = stop_config({"zzz"}, 5);
    auto counts = count_one("dog Dog DOG", cfg);
    REQUIRE(counts.vocab.size() == 1);
    auto dog = *counts.vocab.id_of("dog");
    CHECK(counts.vocab.freqs[dog] == 3);
    CHECK(counts.pair_count(dog, dog) == 6);  // 3 positions, 2 neighbors each
    counts.check();
}

TEST_CASE("counting is symmetric and conserves marginals") {
    std::istringstream in(testutil::synthetic_corpus(11, 120, 10, 40));
    auto cfg = testutil::synthetic_config(3);
    auto counts = count_stream(in, cfg, "synthetic");
    counts.check();

    for (const auto& [key, value] : counts.pairs) {
        auto t = CoocCounts::key_target(key);
        auto c = CoocCounts::key_context(key);
        CHECK(counts.pair_count(c, t) == value);
    }

    std::uint64_t tm = std::accumulate(counts.target_marginals.begin(),
                                       counts.target_marginals.end(),
                                       std::uint64_t{0});
    std::uint64_t cm = std::accumulate(counts.context_marginals.begin(),
                                       counts.context_marginals.end(),
                                       std::uint64_t{0});
    CHECK(tm == counts.total);
    CHECK(cm == counts.total);
    CHECK(sum_pairs(counts) == counts.total);
    // Symmetric counting makes the two marginal vectors coincide.
    CHECK(counts.target_marginals == counts.context_marginals);
}

TEST_CASE("counts are independent of sentence order") {
    auto corpus = testutil::synthetic_corpus(13, 60, 8, 25);
    std::vector<std::string> lines;
    std::istringstream split(corpus);
    std::string line;
    while (std::getline(split, line)) lines.push_back(line);

    auto cfg = testutil::synthetic_config(4);
    std::istringstream in1(corpus);
    auto counts1 = count_stream(in1, cfg, "a");

    std::mt19937 rng(99);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";
    std::istringstream in2(shuffled);
    auto counts2 = count_stream(in2, cfg, "b");

    CHECK(same_counts_by_word(counts1, counts2));
}

TEST_CASE("merge_counts adds elementwise over a unified vocabulary") {
    auto cfg = stop_config({"the"});
    CoocCounts a = count_one("cat sat mat", cfg);
    CoocCounts b = count_one("sat hat", cfg);
    auto merged = merge_counts(a, b);
    merged.check();

    CHECK(merged.total == a.total + b.total);
    auto sat = *merged.vocab.id_of("sat");
    auto hat = *merged.vocab.id_of("hat");
    auto cat = *merged.vocab.id_of("cat");
    CHECK(merged.vocab.freqs[sat] == 2);
    CHECK(merged.pair_count(sat, hat) == 1);
    CHECK(merged.pair_count(cat, sat) == 1);

    // New words from the right side keep their relative order at the end.
    CHECK(merged.vocab.words.back() == "hat");
}

TEST_CASE("merge_counts with an empty side is the identity") {
    auto cfg = stop_config({"the"});
    CoocCounts a = count_one("cat sat mat", cfg);
    CoocCounts empty;
    empty.config_digest = cfg.digest();
    auto m1 = merge_counts(empty, a);
    auto m2 = merge_counts(a, empty);
    CHECK(same_counts_by_word(m1, a));
    CHECK(same_counts_by_word(m2, a));
    CHECK(m1.vocab.words == a.vocab.words);
}

TEST_CASE("merge_counts is commutative up to word identity") {
    auto cfg = testutil::synthetic_config(3);
    std::istringstream in1(testutil::synthetic_corpus(21, 30, 9, 20));
    std::istringstream in2(testutil::synthetic_corpus(22, 30, 9, 20));
    auto a = count_stream(in1, cfg, "a");
    auto b = count_stream(in2, cfg, "b");
    auto ab = merge_counts(a, b);
    auto ba = merge_counts(b, a);
    ab.check();
    CHECK(same_counts_by_word(ab, ba));
}

TEST_CASE("merge_counts refuses mismatched configurations") {
    auto a = count_one("cat sat", stop_config({"the"}));
    auto b = count_one("cat sat", stop_config({"the"}, 3));
    CHECK_THROWS_AS(merge_counts(a, b), UsageError);
}

TEST_CASE("sharded counting equals single-pass counting exactly") {
    auto corpus = testutil::synthetic_corpus(31, 90, 10, 30);
    std::vector<std::string> lines;
    std::istringstream split(corpus);
    std::string line;
    while (std::getline(split, line)) lines.push_back(line);

    auto cfg = testutil::synthetic_config(5);
    std::istringstream whole(corpus);
    auto single = count_stream(whole, cfg, "all");

    // Contiguous 3-way split merged in order: identical ids, not merely
    // word-keyed equality.
    std::string s1, s2, s3;
    for (size_t i = 0; i < lines.size(); ++i) {
        auto& dst = i < 30 ? s1 : i < 60 ? s2 : s3;
        dst += lines[i] + "\n";
    }
    std::istringstream in1(s1), in2(s2), in3(s3);
    auto merged = merge_counts(
        merge_counts(count_stream(in1, cfg, "s1"), count_stream(in2, cfg, "s2")),
        count_stream(in3, cfg, "s3"));

    CHECK(merged.vocab.words == single.vocab.words);
    CHECK(merged.vocab.freqs == single.vocab.freqs);
    CHECK(merged.pairs == single.pairs);
    CHECK(merged.target_marginals == single.target_marginals);
    CHECK(merged.total == single.total);
}

TEST_CASE("prune_min_freq removes rare words and their pairs") {
    auto counts = testutil::micro_counts();
    auto bit = counts.vocab.id_of("bit");
    REQUIRE(bit.has_value());
    CHECK(counts.vocab.freqs[*bit] == 1);

    auto pruned = prune_min_freq(counts, 2);
    pruned.check();
    CHECK_FALSE(pruned.vocab.id_of("bit").has_value());
    CHECK(pruned.vocab.size() == 5);
    CHECK(pruned.vocab.words ==
          std::vector<std::string>{"cat", "sat", "mat", "hat", "dog"});
    // Four ordered pair increments involved the dropped word.
    CHECK(pruned.total == counts.total - 4);
    auto dog = *pruned.vocab.id_of("dog");
    auto mat = *pruned.vocab.id_of("mat");
    CHECK(pruned.pair_count(dog, mat) == 1);
}

TEST_CASE("prune_min_freq at thresholds 0 and 1 is the identity") {
    auto counts = testutil::micro_counts();
    auto p0 = prune_min_freq(counts, 0);
    auto p1 = prune_min_freq(counts, 1);
    CHECK(same_counts_by_word(p0, counts));
    CHECK(same_counts_by_word(p1, counts));
    CHECK(p1.vocab.words == counts.vocab.words);
}

TEST_CASE("build_counts matches the hand-checked micro corpus goldens") {
    auto counts = testutil::micro_counts();
    counts.check();
    auto golden = testutil::load_golden_counts();

    CHECK(counts.total == golden.total);
    CHECK(counts.vocab.size() == golden.freq.size());
    for (const auto& [word, freq] : golden.freq) {
        auto id = counts.vocab.id_of(word);
        REQUIRE(id.has_value());
        CHECK(counts.vocab.freqs[*id] == freq);
    }
    std::uint64_t nnz_expected = 0;
    for (const auto& [pair, count] : golden.pairs) {
        auto t = counts.vocab.id_of(pair.first);
        auto c = counts.vocab.id_of(pair.second);
        REQUIRE(t.has_value());
        REQUIRE(c.has_value());
        CHECK(counts.pair_count(*t, *c) == count);
        CHECK(counts.pair_count(*c, *t) == count);
        nnz_expected += 2;
    }
    CHECK(counts.pairs.size() == nnz_expected);
}

TEST_CASE("build_counts skips blank lines and strips CR line endings") {
    auto cfg = stop_config({"the"});
    std::istringstream in("cat sat\r\n\r\n\nmat sat\r\n");
    auto counts = build_counts(in, cfg, "crlf");
    CHECK(counts.stats.sentences == 2);
    auto sat = *counts.vocab.id_of("sat");
    CHECK(counts.vocab.freqs[sat] == 2);
    CHECK_FALSE(counts.vocab.id_of("sat\r").has_value());
}

TEST_CASE("build_counts over files rejects unreadable input up front") {
    auto cfg = testutil::micro_config();
    CHECK_THROWS_WITH_AS(
        build_counts({testutil::fixture("missing_corpus.txt")}, cfg, 2),
        doctest::Contains("cannot read corpus file"), UsageError);
}

TEST_CASE("multi-threaded file build equals the single-threaded build") {
    // Four shards of one synthetic corpus, written to temp files.
    auto corpus = testutil::synthetic_corpus(41, 200, 12, 50);
    std::vector<std::string> lines;
    std::istringstream split(corpus);
    std::string line;
    while (std::getline(split, line)) lines.push_back(line);

    std::vector<std::string> paths;
    for (int s = 0; s < 4; ++s) {
        std::string body;
        for (size_t i = s * 50; i < (s + 1) * 50 && i < lines.size(); ++i)
            body += lines[i] + "\n";
        std::string path = "shard_" + std::to_string(s) + ".txt";
        testutil::write_file(path, body);
        paths.push_back(path);
    }

    auto cfg = testutil::synthetic_config(5);
    cfg.min_word_freq = 2;
    auto seq = build_counts(paths, cfg, 1);
    auto par = build_counts(paths, cfg, 4);
    seq.check();
    par.check();
    CHECK(seq.vocab.words == par.vocab.words);
    CHECK(seq.pairs == par.pairs);
    CHECK(seq.total == par.total);
}

TEST_CASE("pos filter with lemmas counts under the lemma key") {
    IngestConfig cfg;
    cfg.filter = ContentFilter::PosSet;
    cfg.use_lemma = true;
    cfg.window = 5;

    std::istringstream in(
        "The|DT|the cats|NNS|cat sat|VBD|sit on|IN|on mats|NNS|mat\n"
        "A|DT|a cat|NN|cat sits|VBZ|sit on|IN|on a|DT|a mat|NN|mat\n");
    auto counts = build_counts(in, cfg, "tagged");
    counts.check();

    auto cat = counts.vocab.id_of("cat");
    auto sit = counts.vocab.id_of("sit");
    auto mat = counts.vocab.id_of("mat");
    REQUIRE(cat.has_value());
    REQUIRE(sit.has_value());
    REQUIRE(mat.has_value());
    CHECK_FALSE(counts.vocab.id_of("cats").has_value());
    CHECK_FALSE(counts.vocab.id_of("the").has_value());
    CHECK(counts.vocab.freqs[*cat] == 2);
    CHECK(counts.vocab.freqs[*sit] == 2);
    CHECK(counts.pair_count(*cat, *sit) == 2);
    CHECK(counts.pair_count(*cat, *mat) == 2);
}
