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

#include "apsyn/weighting.hpp"

#include <algorithm>
#include <cmath>

namespace apsyn {

double lmi(std::uint64_t joint, std::uint64_t target_marginal,
           std::uint64_t context_marginal, std::uint64_t total) {
    if (total == 0) throw DomainError("lmi: total must be positive");
    if (joint == 0) return 0.0;
    if (target_marginal == 0 || context_marginal == 0) {
        throw DomainError("lmi: zero marginal with nonzero joint count");
    }
    double ratio = (static_cast<double>(joint) * static_cast<double>(total)) /
                   (static_cast<double>(target_marginal) *
                    static_cast<double>(context_marginal));
    return static_cast<double>(joint) * std::log2(ratio);
}

WeightedSpace weight_space(CoocCounts counts) {
    if (counts.total == 0) {
        throw DomainError("weight_space: empty counts (total is 0)");
    }

    const auto vocab_size = counts.vocab.size();
    std::vector<std::vector<WeightedEntry>> rows(vocab_size);
    for (const auto& [k, joint] : counts.pairs) {
        auto t = CoocCounts::key_target(k);
        auto c = CoocCounts::key_context(k);
        double w = lmi(joint, counts.target_marginals[t],
                       counts.context_marginals[c], counts.total);
        if (w > 0.0) rows[t].push_back(WeightedEntry{c, w});
    }

    WeightedSpace space;
    space.offsets.resize(vocab_size + 1, 0);
    std::uint64_t nnz = 0;
    for (std::uint32_t t = 0; t < vocab_size; ++t) {
        nnz += rows[t].size();
        space.offsets[t + 1] = nnz;
    }
    space.entries.reserve(nnz);
    for (auto& row : rows) {
        std::sort(row.begin(), row.end(),
                  [](const WeightedEntry& a, const WeightedEntry& b) {
                      return a.context < b.context;
                  });
        space.entries.insert(space.entries.end(), row.begin(), row.end());
    }
    space.raw = std::move(counts);
    return space;
}

}  // namespace apsyn
