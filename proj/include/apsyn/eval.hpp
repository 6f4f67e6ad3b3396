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

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "apsyn/measures.hpp"

namespace apsyn {

// One multiple-choice synonym question. choices[correct_index] is the
// correct answer; the file format fixes it to choices[0].
struct EslQuestion {
    std::string problem;
    std::vector<std::string> choices;  // 3 or 4, distinct, problem excluded
    size_t correct_index = 0;
};

enum class OutcomeKind { Full, Partial, Excluded, Incorrect };

struct QuestionOutcome {
    OutcomeKind kind = OutcomeKind::Incorrect;
    double credit = 0.0;                   // 1.0 / 0.75 / 0.0
    std::vector<SimilarityScore> scores;   // per choice, question order
};

// Tallies for one measure/N run; the arithmetic mirrors the accuracy
// column: (full + 0.75 * partial) / (total - excluded).
struct EvalReport {
    std::string measure;
    std::optional<std::uint32_t> n;
    std::uint64_t full = 0;
    std::uint64_t partial = 0;
    std::uint64_t excluded = 0;
    std::uint64_t incorrect = 0;

    std::uint64_t total() const { return full + partial + excluded + incorrect; }
    std::uint64_t valid() const { return total() - excluded; }
    double points() const { return static_cast<double>(full) + 0.75 * static_cast<double>(partial); }
    double accuracy() const { return points() / static_cast<double>(valid()); }
};

using LemmaMap = std::unordered_map<std::string, std::string>;

// Headerless TSV: problem, correct answer, then 2 or 3 distractors.
std::vector<EslQuestion> parse_esl(const std::string& path);
std::vector<EslQuestion> parse_esl(std::istream& in, std::string_view name);

// TSV word -> lemma sidecar; both columns lowercased on load.
LemmaMap load_lemma_map(const std::string& path);

// Scores every (problem, choice) pair. An undefined score for the
// correct answer excludes the question; undefined distractors sort below
// every defined score. The correct answer strictly on top earns full
// credit with four defined choices and 0.75 when a wrong choice is
// missing (from the file or from the space); any tie at the top counts
// as incorrect.
QuestionOutcome evaluate_question(const EslQuestion& question, Measure measure,
                                  const WeightedSpace& space, std::uint32_t n,
                                  const LemmaMap* lemmas = nullptr);

EvalReport evaluate(const std::vector<EslQuestion>& questions, Measure measure,
                    const WeightedSpace& space, std::uint32_t n,
                    const LemmaMap* lemmas = nullptr, unsigned threads = 1);

// Builds a report from raw tallies, enforcing the non-empty-valid guard.
EvalReport make_report(std::string measure, std::optional<std::uint32_t> n,
                       std::uint64_t full, std::uint64_t partial,
                       std::uint64_t excluded, std::uint64_t incorrect);

// Human-readable table, one row per report.
std::string report_table(const std::vector<EvalReport>& reports);

// Machine-readable blocks: one key-value line per report field, blank
// line between reports.
std::string report_machine(const std::vector<EvalReport>& reports);

}  // namespace apsyn
