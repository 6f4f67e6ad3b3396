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

#include "apsyn/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace apsyn {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

std::string resolve(const std::string& word, const LemmaMap* lemmas) {
    auto lowered = ascii_lower(word);
    if (lemmas) {
        auto it = lemmas->find(lowered);
        if (it != lemmas->end()) return it->second;
    }
    return lowered;
}

}  // namespace

std::vector<EslQuestion> parse_esl(std::istream& in, std::string_view name) {
    std::vector<EslQuestion> questions;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        auto where = [&] {
            return std::string(name) + ":" + std::to_string(line_no) + ": ";
        };
        auto fields = split_tabs(line);
        if (fields.size() < 4 || fields.size() > 5) {
            throw FormatError(where() + "expected 4 or 5 tab-separated fields, got " +
                              std::to_string(fields.size()));
        }
        for (const auto& f : fields) {
            if (f.empty()) throw FormatError(where() + "empty field");
        }

        EslQuestion q;
        q.problem = fields[0];
        q.choices.assign(fields.begin() + 1, fields.end());
        q.correct_index = 0;

        for (size_t i = 0; i < q.choices.size(); ++i) {
            if (q.choices[i] == q.problem) {
                throw FormatError(where() + "problem word repeated as a choice");
            }
            for (size_t j = i + 1; j < q.choices.size(); ++j) {
                if (q.choices[i] == q.choices[j]) {
                    throw FormatError(where() + "duplicate choice '" +
                                      q.choices[i] + "'");
                }
            }
        }
        if (q.correct_index >= q.choices.size()) {
            throw FormatError(where() + "correct answer index out of range");
        }
        questions.push_back(std::move(q));
    }
    if (in.bad()) throw IoError("read failure in " + std::string(name));
    return questions;
}

std::vector<EslQuestion> parse_esl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open question file: " + path);
    return parse_esl(in, path);
}

LemmaMap load_lemma_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lemma map: " + path);
    LemmaMap lemmas;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": expected 2 tab-separated fields");
        }
        lemmas[ascii_lower(fields[0])] = ascii_lower(fields[1]);
    }
    return lemmas;
}

QuestionOutcome evaluate_question(const EslQuestion& question, Measure measure,
                                  const WeightedSpace& space, std::uint32_t n,
                                  const LemmaMap* lemmas) {
    QuestionOutcome outcome;
    auto problem = resolve(question.problem, lemmas);
    outcome.scores.reserve(question.choices.size());
    for (const auto& choice : question.choices) {
        outcome.scores.push_back(
            score_pair(measure, problem, resolve(choice, lemmas), space, n));
    }

    const auto& correct = outcome.scores[question.correct_index];
    if (!correct.defined) {
        outcome.kind = OutcomeKind::Excluded;
        outcome.credit = 0.0;
        return outcome;
    }

    size_t missing = 4 - question.choices.size();
    bool on_top = true;
    for (size_t i = 0; i < outcome.scores.size(); ++i) {
        if (i == question.correct_index) continue;
        const auto& score = outcome.scores[i];
        if (!score.defined) {
            ++missing;  // ranks below every defined score
        } else if (score.value >= correct.value) {
            on_top = false;  // ties do not count as correct
        }
    }

    if (!on_top) {
        outcome.kind = OutcomeKind::Incorrect;
        outcome.credit = 0.0;
    } else if (missing == 0) {
        outcome.kind = OutcomeKind::Full;
        outcome.credit = 1.0;
    } else {
        outcome.kind = OutcomeKind::Partial;
        outcome.credit = 0.75;
    }
    return outcome;
}

EvalReport evaluate(const std::vector<EslQuestion>& questions, Measure measure,
                    const WeightedSpace& space, std::uint32_t n,
                    const LemmaMap* lemmas, unsigned threads) {
    if (questions.empty()) throw UsageError("evaluate: empty question list");

    std::vector<QuestionOutcome> outcomes(questions.size());
    auto run = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            outcomes[i] = evaluate_question(questions[i], measure, space, n, lemmas);
        }
    };
    if (threads <= 1 || questions.size() < 2) {
        run(0, questions.size());
    } else {
        auto workers = std::min<size_t>(threads, questions.size());
        std::vector<std::thread> pool;
        size_t chunk = (questions.size() + workers - 1) / workers;
        for (size_t w = 0; w < workers; ++w) {
            size_t begin = w * chunk;
            size_t end = std::min(questions.size(), begin + chunk);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    std::uint64_t full = 0, partial = 0, excluded = 0, incorrect = 0;
    for (const auto& o : outcomes) {
        switch (o.kind) {
            case OutcomeKind::Full: ++full; break;
            case OutcomeKind::Partial: ++partial; break;
            case OutcomeKind::Excluded: ++excluded; break;
            case OutcomeKind::Incorrect: ++incorrect; break;
        }
    }
    std::optional<std::uint32_t> report_n;
    if (measure == Measure::Apsyn) report_n = n;
    return make_report(std::string(measure_name(measure)), report_n, full,
                       partial, excluded, incorrect);
}

EvalReport make_report(std::string measure, std::optional<std::uint32_t> n,
                       std::uint64_t full, std::uint64_t partial,
                       std::uint64_t excluded, std::uint64_t incorrect) {
    EvalReport report{std::move(measure), n, full, partial, excluded, incorrect};
    if (report.valid() == 0) {
        throw DomainError("report: no valid questions (all excluded or empty)");
    }
    return report;
}

std::string report_table(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    out << std::left << std::setw(9) << "Measure" << std::setw(7) << "N"
        << std::setw(7) << "Full+" << std::setw(6) << "75%+"
        << "Correct\n";
    for (const auto& r : reports) {
        Measure m = parse_measure(r.measure);
        out << std::left << std::setw(9) << measure_display_name(m)
            << std::setw(7) << (r.n ? std::to_string(*r.n) : "---")
            << std::setw(7) << r.full << std::setw(6) << r.partial
            << std::fixed << std::setprecision(2) << r.points() << "/"
            << r.valid() << " = " << 100.0 * r.accuracy() << "%\n";
    }
    return out.str();
}

std::string report_machine(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    bool first = true;
    for (const auto& r : reports) {
        if (!first) out << "\n";
        first = false;
        out << "measure\t" << r.measure << "\n";
        out << "n\t" << (r.n ? std::to_string(*r.n) : "-") << "\n";
        out << "full\t" << r.full << "\n";
        out << "partial\t" << r.partial << "\n";
        out << "excluded\t" << r.excluded << "\n";
        out << "incorrect\t" << r.incorrect << "\n";
        out << "valid\t" << r.valid() << "\n";
        out << std::fixed << std::setprecision(2) << "points\t" << r.points()
            << "\n";
        out << std::setprecision(6) << "accuracy\t" << r.accuracy() << "\n";
    }
    return out.str();
}

}  // namespace apsyn
