#include "krag/index/vector_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "krag/kernels/dot.hpp"
#include "krag/util/fnv.hpp"
#include "krag/util/io.hpp"
#include "krag/util/strings.hpp"

namespace krag::index {

EmbeddingVector HashedBowEmbedder::embed(const std::string& text) const {
    std::vector<float> v(dims_, 0.0f);
    for (const auto& token : util::word_tokens(text))
        v[util::fnv1a64(token) % dims_] += 1.0f;

    double norm_sq = 0.0;
    for (float x : v) norm_sq += static_cast<double>(x) * x;
    if (norm_sq == 0.0) {
        v[0] = 1.0f;  // empty text still embeds to a valid unit vector
        norm_sq = 1.0;
    }
    float inv = static_cast<float>(1.0 / std::sqrt(norm_sq));
    for (float& x : v) x *= inv;
    return EmbeddingVector{std::move(v)};
}

VectorIndex::VectorIndex(std::size_t dims, std::string embedder_tag)
    : dims_(dims), embedder_tag_(std::move(embedder_tag)) {
    if (dims_ == 0) throw SchemaError("index dims must be positive");
}

void VectorIndex::upsert(const corpus::ChunkRef& ref, EmbeddingVector vec) {
    if (vec.dims() != dims_)
        throw SchemaError("vector dims " + std::to_string(vec.dims()) +
                          " do not match index dims " + std::to_string(dims_));
    for (float x : vec.values)
        if (!std::isfinite(x)) throw SchemaError("non-finite vector component");

    auto key = std::make_pair(ref.doc_id, ref.seq);
    auto it = by_ref_.find(key);
    if (it != by_ref_.end()) {
        rows_[it->second].values = std::move(vec.values);
        return;
    }
    by_ref_[key] = rows_.size();
    rows_.push_back(Row{ref, std::move(vec.values)});
}

std::vector<SearchHit> VectorIndex::search_top_k(const EmbeddingVector& query,
                                                 std::size_t k) const {
    if (k == 0 || rows_.empty()) return {};
    if (query.dims() != dims_) throw SchemaError("query dims do not match index dims");

    std::vector<SearchHit> hits;
    hits.reserve(rows_.size());
    std::span<const float> q(query.values);
    for (const auto& row : rows_)
        hits.push_back(SearchHit{row.ref, kernels::dot(q, std::span<const float>(row.values))});

    auto better = [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.ref < b.ref;
    };
    std::size_t take = std::min(k, hits.size());
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(take), hits.end(),
                      better);
    hits.resize(take);
    return hits;
}

namespace {

constexpr char kMagic[] = "kragvec 1";

std::string encode_values(const std::vector<float>& values) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(values.size() * 9);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(' ');
        std::uint32_t bits = std::bit_cast<std::uint32_t>(values[i]);
        for (int shift = 28; shift >= 0; shift -= 4) out.push_back(digits[(bits >> shift) & 0xf]);
    }
    return out;
}

std::vector<float> decode_values(std::string_view text, std::size_t dims) {
    std::vector<float> values;
    values.reserve(dims);
    std::uint32_t bits = 0;
    int nibbles = 0;
    for (char c : text) {
        if (c == ' ') continue;
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw IndexLoadError("bad hex digit in vector row");
        bits = (bits << 4) | static_cast<std::uint32_t>(d);
        if (++nibbles == 8) {
            values.push_back(std::bit_cast<float>(bits));
            bits = 0;
            nibbles = 0;
        }
    }
    if (nibbles != 0 || values.size() != dims)
        throw IndexLoadError("vector row has wrong length (truncated file?)");
    return values;
}

}  // namespace

void VectorIndex::save(const std::filesystem::path& path) const {
    std::ostringstream out;
    out << kMagic << '\n';
    out << "dims " << dims_ << '\n';
    out << "embedder " << embedder_tag_ << '\n';
    out << "count " << rows_.size() << '\n';
    // Values as raw IEEE bits in hex so the round-trip is bit-exact.
    for (const auto& row : rows_)
        out << row.ref.doc_id << '\t' << row.ref.seq << '\t' << encode_values(row.values) << '\n';
    util::write_file(path, out.str());
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
    std::vector<std::string> lines;
    try {
        lines = util::read_lines(path);
    } catch (const std::exception& e) {
        throw IndexLoadError(e.what());
    }
    if (lines.size() < 4 || lines[0] != kMagic)
        throw IndexLoadError("not a vector index file: " + path.string());
    auto field = [&](std::size_t i, std::string_view prefix) -> std::string {
        if (!lines[i].starts_with(prefix))
            throw IndexLoadError("corrupt index header at line " + std::to_string(i + 1));
        return lines[i].substr(prefix.size());
    };
    std::size_t dims = std::stoull(field(1, "dims "));
    std::string tag = field(2, "embedder ");
    std::size_t count = std::stoull(field(3, "count "));
    if (lines.size() != 4 + count)
        throw IndexLoadError("row count mismatch: header says " + std::to_string(count) +
                             ", file has " + std::to_string(lines.size() - 4));

    VectorIndex idx(dims, tag);
    for (std::size_t i = 0; i < count; ++i) {
        const std::string& line = lines[4 + i];
        auto t1 = line.find('\t');
        auto t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw IndexLoadError("corrupt vector row at line " + std::to_string(5 + i));
        corpus::ChunkRef ref;
        ref.doc_id = line.substr(0, t1);
        ref.seq = static_cast<std::uint32_t>(std::stoul(line.substr(t1 + 1, t2 - t1 - 1)));
        idx.upsert(ref, EmbeddingVector{decode_values(std::string_view(line).substr(t2 + 1), dims)});
    }
    return idx;
}

std::size_t upsert_chunks(VectorIndex& index, const std::vector<corpus::Chunk>& chunks,
                          const Embedder& embedder) {
    if (embedder.tag() != index.embedder_tag())
        throw SchemaError("embedder tag mismatch: index built with " + index.embedder_tag());
    for (const auto& chunk : chunks) index.upsert(chunk.ref(), embedder.embed(chunk.text));
    return chunks.size();
}

}  // namespace krag::index
