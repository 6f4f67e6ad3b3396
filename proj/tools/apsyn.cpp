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
// Command-line driver: build a weighted space from corpora, inspect
// top-N context lists, score word pairs, and run the multiple-choice
// synonym evaluation. stdout carries only data; diagnostics go to
// stderr. Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "apsyn/eval.hpp"
#include "apsyn/space.hpp"

namespace {

int g_log_level = 1;  // 0 errors only, 1 info, 2 debug

void log_info(const std::string& msg) {
    if (g_log_level >= 1) std::cerr << "[apsyn] " << msg << "\n";
}

unsigned default_threads() {
    auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

std::vector<std::uint32_t> parse_n_list(const std::string& text) {
    std::vector<std::uint32_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            auto v = std::stoul(item, &used);
            if (used != item.size() || v == 0) throw std::invalid_argument(item);
            values.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw apsyn::UsageError("invalid N list entry '" + item + "'");
        }
    }
    if (values.empty()) throw apsyn::UsageError("empty N list");
    return values;
}

void require_readable(const std::string& path, const std::string& what) {
    std::ifstream probe(path);
    if (!probe) throw apsyn::UsageError("cannot read " + what + ": " + path);
}

int cmd_build(const std::vector<std::string>& corpora, int window,
              const std::string& filter, const std::string& stoplist_path,
              std::uint64_t min_freq, bool use_lemma, const std::string& out,
              unsigned threads) {
    apsyn::IngestConfig config;
    config.window = window;
    config.min_word_freq = min_freq;
    config.use_lemma = use_lemma;
    if (filter == "pos") {
        config.filter = apsyn::ContentFilter::PosSet;
    } else if (filter == "stoplist") {
        config.filter = apsyn::ContentFilter::Stoplist;
    } else {
        throw apsyn::UsageError("unknown filter '" + filter +
                                "' (expected pos or stoplist)");
    }
    if (!stoplist_path.empty()) {
        require_readable(stoplist_path, "stoplist");
        config.stoplist = apsyn::load_stoplist(stoplist_path);
    }
    config.validate();

    log_info("counting " + std::to_string(corpora.size()) + " corpus file(s), " +
             std::to_string(threads) + " thread(s)");
    auto counts = apsyn::build_counts(corpora, config, threads);
    log_info("weighting " + std::to_string(counts.pairs.size()) + " pairs");
    auto space = apsyn::weight_space(std::move(counts));
    apsyn::save_space(space, out);
    log_info("space written to " + out);
    if (space.raw.stats.degraded_tokens > 0) {
        log_info("degraded tokens: " + std::to_string(space.raw.stats.degraded_tokens));
    }

    std::cout << "vocab\t" << space.vocab().size() << "\n";
    std::cout << "pairs\t" << space.raw.pairs.size() << "\n";
    std::cout << "total\t" << space.raw.total << "\n";
    return 0;
}

int cmd_topn(const std::string& space_path, const std::string& word,
             std::uint32_t n) {
    auto space = apsyn::load_space(space_path);
    auto list = apsyn::top_n(space, apsyn::ascii_lower(word), n);
    if (!list) {
        std::cout << "absent\t" << word << "\n";
        return 0;
    }
    char buf[64];
    for (const auto& e : list->entries) {
        std::snprintf(buf, sizeof buf, "%.6f", e.weight);
        std::cout << e.rank << "\t" << space.vocab().word(e.context) << "\t"
                  << buf << "\n";
    }
    return 0;
}

int cmd_sim(const std::string& space_path, const std::string& measure_name,
            std::uint32_t n, const std::string& w1, const std::string& w2) {
    auto measure = apsyn::parse_measure(measure_name);
    if (measure == apsyn::Measure::Apsyn && n == 0) {
        throw apsyn::UsageError("--n is required for apsyn");
    }
    auto space = apsyn::load_space(space_path);
    auto score = apsyn::score_pair(measure, apsyn::ascii_lower(w1),
                                   apsyn::ascii_lower(w2), space, n);
    if (!score.defined) {
        std::cout << "undefined\n";
        return 0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score.value);
    std::cout << buf << "\n";
    return 0;
}

int cmd_eval(const std::string& space_path,
             const std::vector<std::string>& measure_names, std::uint32_t n,
             const std::string& n_sweep, const std::string& questions_path,
             const std::string& lemma_map_path, const std::string& report_path,
             unsigned threads) {
    std::vector<std::uint32_t> sweep;
    if (!n_sweep.empty()) {
        sweep = parse_n_list(n_sweep);
    } else if (n > 0) {
        sweep.push_back(n);
    }
    for (const auto& name : measure_names) {
        if (apsyn::parse_measure(name) == apsyn::Measure::Apsyn && sweep.empty()) {
            throw apsyn::UsageError("--n or --n-sweep is required for apsyn");
        }
    }
    require_readable(questions_path, "question file");

    auto space = apsyn::load_space(space_path);
    auto questions = apsyn::parse_esl(questions_path);
    apsyn::LemmaMap lemmas;
    const apsyn::LemmaMap* lemmas_ptr = nullptr;
    if (!lemma_map_path.empty()) {
        require_readable(lemma_map_path, "lemma map");
        lemmas = apsyn::load_lemma_map(lemma_map_path);
        lemmas_ptr = &lemmas;
    }
    log_info("evaluating " + std::to_string(questions.size()) + " questions");

    std::vector<apsyn::EvalReport> reports;
    for (const auto& name : measure_names) {
        auto measure = apsyn::parse_measure(name);
        if (measure == apsyn::Measure::Apsyn) {
            for (auto sweep_n : sweep) {
                reports.push_back(apsyn::evaluate(questions, measure, space,
                                                  sweep_n, lemmas_ptr, threads));
            }
        } else {
            reports.push_back(
                apsyn::evaluate(questions, measure, space, 0, lemmas_ptr, threads));
        }
    }

    std::cout << apsyn::report_table(reports);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw apsyn::IoError("cannot write report: " + report_path);
        out << apsyn::report_machine(reports);
        log_info("report written to " + report_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"window-based distributional similarity toolkit"};
    app.require_subcommand(1);

    unsigned threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default: hardware)");
    app.add_option("--log-level", g_log_level, "0=errors, 1=info, 2=debug");

    auto* build = app.add_subcommand("build", "count a corpus and write a weighted space");
    std::vector<std::string> corpora;
    int window = 5;
    std::string filter = "stoplist", stoplist_path, out_path;
    std::uint64_t min_freq = 0;
    bool use_lemma = false;
    build->add_option("corpus", corpora, "corpus file(s), one sentence per line")
        ->required();
    build->add_option("--window", window, "content words per side (default 5)");
    build->add_option("--filter", filter, "content filter: pos or stoplist");
    build->add_option("--stoplist", stoplist_path, "stoplist file (default: built-in)");
    build->add_option("--min-freq", min_freq, "drop words rarer than this");
    build->add_flag("--use-lemma", use_lemma, "count lemmas instead of surfaces");
    build->add_option("--out", out_path, "output space file")->required();

    auto* topn = app.add_subcommand("topn", "print a word's top-N contexts");
    std::string space_path, word;
    std::uint32_t n = 0;
    topn->add_option("--space", space_path, "space file")->required();
    topn->add_option("--word", word, "target word")->required();
    topn->add_option("--n", n, "list length")->required();

    auto* sim = app.add_subcommand("sim", "score one word pair");
    std::string sim_space, sim_measure = "apsyn", sim_w1, sim_w2;
    std::uint32_t sim_n = 0;
    sim->add_option("--space", sim_space, "space file")->required();
    sim->add_option("--measure", sim_measure, "cosine, apsyn or cooc");
    sim->add_option("--n", sim_n, "top-N size (apsyn only)");
    sim->add_option("word1", sim_w1)->required();
    sim->add_option("word2", sim_w2)->required();

    auto* eval = app.add_subcommand("eval", "run the synonym-question evaluation");
    std::string eval_space, eval_sweep, eval_questions, eval_lemmas, eval_report;
    std::vector<std::string> eval_measures;
    std::uint32_t eval_n = 0;
    eval->add_option("--space", eval_space, "space file")->required();
    eval->add_option("--measure", eval_measures, "measure(s): cosine, apsyn, cooc")
        ->required();
    eval->add_option("--n", eval_n, "top-N size (apsyn)");
    eval->add_option("--n-sweep", eval_sweep, "comma-separated N values (apsyn)");
    eval->add_option("--questions", eval_questions, "question TSV")->required();
    eval->add_option("--lemma-map", eval_lemmas, "word->lemma TSV");
    eval->add_option("--report", eval_report, "machine-readable report path");

    try {
        app.parse(argc, argv);
        if (build->parsed()) {
            return cmd_build(corpora, window, filter, stoplist_path, min_freq,
                             use_lemma, out_path, threads);
        }
        if (topn->parsed()) return cmd_topn(space_path, word, n);
        if (sim->parsed()) return cmd_sim(sim_space, sim_measure, sim_n, sim_w1, sim_w2);
        if (eval->parsed()) {
            return cmd_eval(eval_space, eval_measures, eval_n, eval_sweep,
                            eval_questions, eval_lemmas, eval_report, threads);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const apsyn::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
