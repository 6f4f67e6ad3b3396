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

#include "apsyn/space.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

namespace apsyn {

namespace {

constexpr char kMagic[4] = {'A', 'P', 'S', 'V'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kLogBase = 2;

class PayloadWriter {
public:
    explicit PayloadWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open for writing: " + path);
        out_.write(kMagic, 4);
        raw_u32(kVersion);
    }

    void u32(std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        bytes(b, 4);
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v));
        u32(static_cast<std::uint32_t>(v >> 32));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes(s.data(), s.size());
    }

    void finish(const std::string& path) {
        auto checksum = static_cast<std::uint32_t>(crc_);
        unsigned char b[4] = {static_cast<unsigned char>(checksum),
                              static_cast<unsigned char>(checksum >> 8),
                              static_cast<unsigned char>(checksum >> 16),
                              static_cast<unsigned char>(checksum >> 24)};
        out_.write(reinterpret_cast<const char*>(b), 4);
        out_.flush();
        if (!out_) throw IoError("write failure: " + path);
    }

private:
    void bytes(const void* data, size_t size) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        crc_ = crc32(crc_, static_cast<const Bytef*>(data), static_cast<uInt>(size));
    }
    void raw_u32(std::uint32_t v) {  // prelude only, outside the checksum
        unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        out_.write(reinterpret_cast<const char*>(b), 4);
    }

    std::ofstream out_;
    uLong crc_ = crc32(0L, Z_NULL, 0);
};

class PayloadReader {
public:
    PayloadReader(const unsigned char* data, size_t size, const std::string& path)
        : data_(data), size_(size), path_(path) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) |
                          static_cast<std::uint32_t>(data_[pos_ + 1]) << 8 |
                          static_cast<std::uint32_t>(data_[pos_ + 2]) << 16 |
                          static_cast<std::uint32_t>(data_[pos_ + 3]) << 24;
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        auto lo = u32();
        auto hi = u32();
        return static_cast<std::uint64_t>(hi) << 32 | lo;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        auto len = u32();
        need(len);
        std::string s(reinterpret_cast<const char*>(data_ + pos_), len);
        pos_ += len;
        return s;
    }
    bool exhausted() const { return pos_ == size_; }

private:
    void need(size_t n) {
        if (size_ - pos_ < n) {
            throw FormatError("truncated space file: " + path_);
        }
    }

    const unsigned char* data_;
    size_t size_;
    size_t pos_ = 0;
    const std::string& path_;
};

// Raw rows in (target id, context id) order, same canonical order the
// weight rows already have.
std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> raw_rows(
    const CoocCounts& counts) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(
        counts.vocab.size());
    for (const auto& [k, n] : counts.pairs) {
        rows[CoocCounts::key_target(k)].emplace_back(CoocCounts::key_context(k), n);
    }
    for (auto& row : rows) std::sort(row.begin(), row.end());
    return rows;
}

}  // namespace

RankedList top_n_by_id(const WeightedSpace& space, std::uint32_t word_id,
                       std::uint32_t n) {
    if (n < 1) throw UsageError("top_n: n must be >= 1");

    auto row = space.vector_of(word_id);
    std::vector<RankedEntry> entries;
    entries.reserve(row.size());
    for (const auto& e : row) entries.push_back(RankedEntry{e.context, e.weight, 0});

    auto order = [&](const RankedEntry& a, const RankedEntry& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        auto raw_a = space.raw.pair_count(word_id, a.context);
        auto raw_b = space.raw.pair_count(word_id, b.context);
        if (raw_a != raw_b) return raw_a > raw_b;
        return space.vocab().word(a.context) < space.vocab().word(b.context);
    };
    auto keep = std::min<size_t>(n, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + keep, entries.end(), order);
    entries.resize(keep);
    for (size_t i = 0; i < entries.size(); ++i) {
        entries[i].rank = static_cast<std::uint32_t>(i + 1);
    }
    return RankedList{word_id, n, std::move(entries)};
}

std::optional<RankedList> top_n(const WeightedSpace& space,
                                std::string_view word, std::uint32_t n) {
    auto id = space.id_of(word);
    if (!id) return std::nullopt;
    return top_n_by_id(space, *id, n);
}

void save_space(const WeightedSpace& space, const std::string& path) {
    PayloadWriter w(path);
    const auto& vocab = space.vocab();

    w.u32(kLogBase);
    w.str(space.raw.config_digest);
    w.u32(vocab.size());
    w.u64(space.raw.total);
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
        w.str(vocab.word(id));
        w.u64(vocab.freqs[id]);
    }

    w.u64(space.nnz());
    for (auto off : space.offsets) w.u64(off);
    for (const auto& e : space.entries) w.u32(e.context);
    for (const auto& e : space.entries) w.f64(e.weight);

    auto rows = raw_rows(space.raw);
    w.u64(space.raw.pairs.size());
    std::uint64_t off = 0;
    w.u64(off);
    for (const auto& row : rows) {
        off += row.size();
        w.u64(off);
    }
    for (const auto& row : rows) {
        for (const auto& [c, _] : row) w.u32(c);
    }
    for (const auto& row : rows) {
        for (const auto& [_, count] : row) w.u64(count);
    }

    w.finish(path);
}

WeightedSpace load_space(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open space file: " + path);
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure: " + path);

    if (data.size() < 12) {
        throw FormatError("truncated space file (no header): " + path);
    }
    if (!std::equal(kMagic, kMagic + 4, data.begin())) {
        throw FormatError("bad magic (not a space file): " + path);
    }
    PayloadReader prelude(data.data() + 4, 4, path);
    if (auto version = prelude.u32(); version != kVersion) {
        throw FormatError("unsupported space format version " +
                          std::to_string(version) + ": " + path);
    }

    const unsigned char* payload = data.data() + 8;
    const size_t payload_size = data.size() - 12;
    auto stored = static_cast<std::uint32_t>(data[data.size() - 4]) |
                  static_cast<std::uint32_t>(data[data.size() - 3]) << 8 |
                  static_cast<std::uint32_t>(data[data.size() - 2]) << 16 |
                  static_cast<std::uint32_t>(data[data.size() - 1]) << 24;
    auto actual = static_cast<std::uint32_t>(
        crc32(crc32(0L, Z_NULL, 0), payload, static_cast<uInt>(payload_size)));
    if (stored != actual) {
        throw FormatError("checksum mismatch (corrupt space file): " + path);
    }

    PayloadReader r(payload, payload_size, path);
    if (auto base = r.u32(); base != kLogBase) {
        throw FormatError("unsupported log-base tag " + std::to_string(base) +
                          ": " + path);
    }

    WeightedSpace space;
    space.raw.config_digest = r.str();
    auto vocab_size = r.u32();
    space.raw.total = r.u64();
    for (std::uint32_t id = 0; id < vocab_size; ++id) {
        auto word = r.str();
        auto freq = r.u64();
        if (space.raw.vocab.add(word) != id) {
            throw FormatError("duplicate vocabulary entry '" + word + "': " + path);
        }
        space.raw.vocab.freqs[id] = freq;
    }

    auto nnz_w = r.u64();
    space.offsets.resize(vocab_size + 1);
    for (auto& off : space.offsets) off = r.u64();
    if (space.offsets.front() != 0 || space.offsets.back() != nnz_w ||
        !std::is_sorted(space.offsets.begin(), space.offsets.end())) {
        throw FormatError("inconsistent weight row offsets: " + path);
    }
    space.entries.resize(nnz_w);
    for (auto& e : space.entries) {
        e.context = r.u32();
        if (e.context >= vocab_size) {
            throw FormatError("context id out of range: " + path);
        }
    }
    for (auto& e : space.entries) {
        e.weight = r.f64();
        if (!std::isfinite(e.weight) || e.weight <= 0.0) {
            throw FormatError("non-positive or non-finite weight: " + path);
        }
    }

    auto nnz_r = r.u64();
    std::vector<std::uint64_t> raw_offsets(vocab_size + 1);
    for (auto& off : raw_offsets) off = r.u64();
    if (raw_offsets.front() != 0 || raw_offsets.back() != nnz_r ||
        !std::is_sorted(raw_offsets.begin(), raw_offsets.end())) {
        throw FormatError("inconsistent raw row offsets: " + path);
    }
    std::vector<std::uint32_t> raw_ctx(nnz_r);
    for (auto& c : raw_ctx) {
        c = r.u32();
        if (c >= vocab_size) throw FormatError("context id out of range: " + path);
    }
    space.raw.target_marginals.assign(vocab_size, 0);
    space.raw.context_marginals.assign(vocab_size, 0);
    space.raw.pairs.reserve(nnz_r);
    std::uint64_t sum = 0;
    for (std::uint32_t t = 0; t < vocab_size; ++t) {
        for (auto i = raw_offsets[t]; i < raw_offsets[t + 1]; ++i) {
            auto count = r.u64();
            if (count == 0) throw FormatError("zero raw pair count: " + path);
            space.raw.pairs.emplace(CoocCounts::key(t, raw_ctx[i]), count);
            space.raw.target_marginals[t] += count;
            space.raw.context_marginals[raw_ctx[i]] += count;
            sum += count;
        }
    }
    if (sum != space.raw.total) {
        throw FormatError("stored total disagrees with raw counts: " + path);
    }
    if (!r.exhausted()) {
        throw FormatError("trailing bytes after payload: " + path);
    }

    // Every weighted entry must come from a stored raw pair.
    for (std::uint32_t t = 0; t < vocab_size; ++t) {
        for (const auto& e : space.vector_of(t)) {
            if (space.raw.pair_count(t, e.context) == 0) {
                throw FormatError("weighted entry without raw pair: " + path);
            }
        }
    }
    return space;
}

}  // namespace apsyn
