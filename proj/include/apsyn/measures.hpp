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

#include <span>
#include <string_view>

#include "apsyn/space.hpp"

namespace apsyn {

// defined is false when a word is absent from the space (or a vector is
// empty); distinct from a score of 0 so the evaluation protocol can
// exclude such questions. All operations here are pure; safe for
// unbounded concurrent use.
struct SimilarityScore {
    double value = 0.0;
    bool defined = false;
};

enum class Measure { Cosine, Apsyn, Cooc };

Measure parse_measure(std::string_view name);  // UsageError on unknown name
std::string_view measure_name(Measure m);
std::string_view measure_display_name(Measure m);

// Normalized dot product over the shared contexts of two sparse weight
// vectors; in [0,1] since weights are strictly positive. Either vector
// empty -> undefined.
SimilarityScore cosine(std::span<const WeightedEntry> v1,
                       std::span<const WeightedEntry> v2);

// Sum over the contexts shared by the two top-N lists of 1 divided by
// the average of the context's ranks in the two lists. Bounded by the
// harmonic number H_N; self-comparison yields exactly H_k for a list of
// length k. Terms accumulate in ascending rank-sum order, so the result
// is bit-for-bit symmetric in its arguments.
SimilarityScore apsyn(const RankedList& r1, const RankedList& r2);

// Raw window co-occurrence count between the two words.
SimilarityScore cooccurrence(std::string_view w1, std::string_view w2,
                             const CoocCounts& counts);

// Dispatch by measure; n is consulted only by the rank-based measure.
SimilarityScore score_pair(Measure measure, std::string_view w1,
                           std::string_view w2, const WeightedSpace& space,
                           std::uint32_t n = 0);

}  // namespace apsyn
