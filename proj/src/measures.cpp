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

#include "apsyn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace apsyn {

Measure parse_measure(std::string_view name) {
    if (name == "cosine") return Measure::Cosine;
    if (name == "apsyn") return Measure::Apsyn;
    if (name == "cooc") return Measure::Cooc;
    throw UsageError("unknown measure '" + std::string(name) +
                     "' (expected cosine, apsyn or cooc)");
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::Cosine: return "cosine";
        case Measure::Apsyn: return "apsyn";
        case Measure::Cooc: return "cooc";
    }
    return "?";
}

std::string_view measure_display_name(Measure m) {
    switch (m) {
        case Measure::Cosine: return "Cosine";
        case Measure::Apsyn: return "APSyn";
        case Measure::Cooc: return "Co-occ.";
    }
    return "?";
}

SimilarityScore cosine(std::span<const WeightedEntry> v1,
                       std::span<const WeightedEntry> v2) {
    if (v1.empty() || v2.empty()) return {0.0, false};

    double dot = 0.0;
    size_t i = 0, j = 0;
    while (i < v1.size() && j < v2.size()) {
        if (v1[i].context == v2[j].context) {
            dot += v1[i].weight * v2[j].weight;
            ++i;
            ++j;
        } else if (v1[i].context < v2[j].context) {
            ++i;
        } else {
            ++j;
        }
    }
    double norm1 = 0.0, norm2 = 0.0;
    for (const auto& e : v1) norm1 += e.weight * e.weight;
    for (const auto& e : v2) norm2 += e.weight * e.weight;

    double value = dot / (std::sqrt(norm1) * std::sqrt(norm2));
    return {std::clamp(value, 0.0, 1.0), true};
}

SimilarityScore apsyn(const RankedList& r1, const RankedList& r2) {
    if (r1.n != r2.n) {
        throw UsageError("apsyn: ranked lists built with different n (" +
                         std::to_string(r1.n) + " vs " + std::to_string(r2.n) + ")");
    }

    // Shared contexts with their rank sums, via a merge over id-sorted
    // copies of both lists.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> by_id1, by_id2;
    by_id1.reserve(r1.entries.size());
    by_id2.reserve(r2.entries.size());
    for (const auto& e : r1.entries) by_id1.emplace_back(e.context, e.rank);
    for (const auto& e : r2.entries) by_id2.emplace_back(e.context, e.rank);
    std::sort(by_id1.begin(), by_id1.end());
    std::sort(by_id2.begin(), by_id2.end());

    std::vector<std::pair<std::uint64_t, std::uint32_t>> shared;  // (rank sum, id)
    size_t i = 0, j = 0;
    while (i < by_id1.size() && j < by_id2.size()) {
        if (by_id1[i].first == by_id2[j].first) {
            shared.emplace_back(
                static_cast<std::uint64_t>(by_id1[i].second) + by_id2[j].second,
                by_id1[i].first);
            ++i;
            ++j;
        } else if (by_id1[i].first < by_id2[j].first) {
            ++i;
        } else {
            ++j;
        }
    }

    // Accumulate best-ranked contexts first. The order is symmetric in
    // the two lists and makes self-comparison sum 1/1 + 1/2 + ... + 1/k,
    // the harmonic number, with no reordering slack.
    std::sort(shared.begin(), shared.end());
    double sum = 0.0;
    for (const auto& [rank_sum, _] : shared) {
        sum += 1.0 / (static_cast<double>(rank_sum) / 2.0);
    }
    return {sum, true};
}

SimilarityScore cooccurrence(std::string_view w1, std::string_view w2,
                             const CoocCounts& counts) {
    auto id1 = counts.vocab.id_of(w1);
    auto id2 = counts.vocab.id_of(w2);
    if (!id1 || !id2) return {0.0, false};
    return {static_cast<double>(counts.pair_count(*id1, *id2)), true};
}

SimilarityScore score_pair(Measure measure, std::string_view w1,
                           std::string_view w2, const WeightedSpace& space,
                           std::uint32_t n) {
    switch (measure) {
        case Measure::Cooc:
            return cooccurrence(w1, w2, space.raw);
        case Measure::Cosine: {
            auto id1 = space.id_of(w1);
            auto id2 = space.id_of(w2);
            if (!id1 || !id2) return {0.0, false};
            return cosine(space.vector_of(*id1), space.vector_of(*id2));
        }
        case Measure::Apsyn: {
            if (n < 1) throw UsageError("apsyn requires n >= 1");
            auto r1 = top_n(space, w1, n);
            auto r2 = top_n(space, w2, n);
            if (!r1 || !r2) return {0.0, false};
            return apsyn(*r1, *r2);
        }
    }
    throw UsageError("unhandled measure");
}

}  // namespace apsyn
